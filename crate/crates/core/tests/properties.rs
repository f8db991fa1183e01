mod common;

use std::collections::BTreeSet;

use lexfst::apply::reverse_apply;
use lexfst::determinize::{determinize, Limits};
use lexfst::io::{read_binary, read_text, write_binary, write_text};
use lexfst::{
    build_trie, compile, minimize_p, minimize_sequential, push_outputs, is_onward, Lexicon, NondetTransducer, StateId,
    SymbolTable, Tokenize, Transducer, REVERSE_BUDGET,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn lexicon_strategy() -> impl Strategy<Value = Lexicon> {
    prop::collection::vec(("[a-d]{1,6}", "[A-D]{0,5}"), 1..30).prop_map(|pairs| {
        let mut lex = Lexicon::new(Tokenize::Chars);
        for (i, o) in pairs {
            lex.insert(&i, &o);
        }
        lex
    })
}

fn acyclic() -> impl Strategy<Value = Transducer> {
    any::<u64>().prop_map(|seed| random_acyclic(&mut ChaCha8Rng::seed_from_u64(seed), 12))
}

fn cyclic() -> impl Strategy<Value = Transducer> {
    any::<u64>().prop_map(|seed| random_cyclic(&mut ChaCha8Rng::seed_from_u64(seed), 8))
}

/// Same machine with states and symbols renumbered.
fn relabel(t: &Transducer, seed: u64) -> Transducer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = t.num_states();
    let mut perm: Vec<StateId> = (0..n as StateId).collect();
    perm.shuffle(&mut rng);
    let mut ins: Vec<(u32, &str)> = t.input_symbols().iter().collect();
    let mut outs: Vec<(u32, &str)> = t.output_symbols().iter().collect();
    ins.shuffle(&mut rng);
    outs.shuffle(&mut rng);
    let mut isyms = SymbolTable::new();
    let mut osyms = SymbolTable::new();
    for (_, s) in &ins {
        isyms.intern(s);
    }
    for (_, s) in &outs {
        osyms.intern(s);
    }
    let imap = |l: u32| isyms.get(t.input_symbols().symbol(l).unwrap()).unwrap();
    let omap = |w: &[u32]| -> Vec<u32> {
        w.iter().map(|&l| osyms.get(t.output_symbols().symbol(l).unwrap()).unwrap()).collect()
    };
    let mut r = Transducer::new(isyms.clone(), osyms.clone());
    r.set_p_bound(t.p_bound());
    for _ in 1..n {
        r.add_state();
    }
    for q in 0..n as StateId {
        for a in t.arcs(q) {
            r.add_transition(perm[q as usize], imap(a.label), omap(&a.output), perm[a.target as usize])
                .unwrap();
        }
        for f in t.finals(q) {
            r.add_final_output(perm[q as usize], omap(f)).unwrap();
        }
    }
    r.set_initial(perm[t.initial() as usize]).unwrap();
    r.set_initial_output(omap(t.initial_output()));
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trim_is_idempotent(t in cyclic()) {
        let once = t.trim();
        prop_assert_eq!(once.trim(), once.clone());
        prop_assert!(once.is_trim() || once.is_empty_language());
    }

    #[test]
    fn trim_preserves_function(t in cyclic()) {
        prop_assert_eq!(first_difference(&[&t, &t.trim()], 5), None);
    }

    #[test]
    fn push_preserves_function_and_is_idempotent(t in cyclic()) {
        let t = t.trim();
        prop_assume!(!t.is_empty_language());
        let p = push_outputs(&t).unwrap();
        prop_assert_eq!(first_difference(&[&t, &p], 5), None);
        prop_assert!(is_onward(&p));
        prop_assert_eq!(push_outputs(&p).unwrap(), p);
    }

    #[test]
    fn minimize_preserves_function_and_is_idempotent(t in cyclic()) {
        let m = minimize_sequential(&t).unwrap();
        prop_assert_eq!(first_difference(&[&t, &m], 5), None);
        prop_assert!(m.num_states() <= t.trim().num_states().max(1));
        prop_assert!(minimize_sequential(&m).unwrap().canonical_eq(&m));
    }

    #[test]
    fn minimize_p_agrees_with_direct_minimization(t in cyclic()) {
        let a = minimize_sequential(&t).unwrap();
        let b = minimize_p(&t).unwrap();
        prop_assert_eq!(a.num_states(), b.num_states());
        prop_assert_eq!(first_difference(&[&a, &b], 5), None);
    }

    #[test]
    fn minimal_acyclic_states_are_pairwise_distinct(t in acyclic()) {
        let m = minimize_sequential(&t).unwrap();
        let fs = state_functions(&m);
        prop_assert_eq!(count_classes(&fs), fs.len());
    }

    #[test]
    fn canonical_form_ignores_numbering(t in cyclic(), seed in any::<u64>()) {
        let r = relabel(&t, seed);
        prop_assert_eq!(first_difference(&[&t, &r], 4), None);
        let (t, r) = (t.trim(), r.trim());
        prop_assert!(t.canonical_eq(&r));
        prop_assert_eq!(write_binary(&t.canonical()), write_binary(&r.canonical()));
    }

    #[test]
    fn compile_realizes_the_lexicon(lex in lexicon_strategy()) {
        let t = compile(&lex, None).unwrap();
        let f = lexicon_function(&lex);
        for w in live_words(&[&t], 7) {
            prop_assert_eq!(run(&t, &w), f.get(&w).cloned().unwrap_or_default());
        }
        prop_assert!(is_onward(&t));
        prop_assert!(t.num_states() <= build_trie(&lex, None).unwrap().num_states());
    }

    #[test]
    fn reverse_apply_matches_brute_force(lex in lexicon_strategy(), y in "[A-D]{0,5}") {
        let t = compile(&lex, None).unwrap();
        let f = lexicon_function(&lex);
        let target = chars(&y);
        let expected: BTreeSet<Tokens> =
            f.iter().filter(|(_, outs)| outs.contains(&target)).map(|(w, _)| w.clone()).collect();
        let labels: Option<Vec<u32>> = target.iter().map(|s| t.output_symbols().get(s)).collect();
        let got: BTreeSet<Tokens> = match labels {
            Some(labels) => reverse_apply(&t, &labels, REVERSE_BUDGET)
                .unwrap()
                .inputs
                .iter()
                .map(|w| w.iter().map(|&l| t.input_symbols().symbol(l).unwrap().to_string()).collect())
                .collect(),
            None => BTreeSet::new(),
        };
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn determinize_keeps_sequential_machines(t in cyclic()) {
        let d = determinize(&NondetTransducer::from(&t), Limits::default()).unwrap();
        prop_assert_eq!(first_difference(&[&t, &d], 5), None);
    }

    #[test]
    fn symbols_round_trip_through_both_formats(
        symbols in prop::collection::vec("[a-z |\\\\\t\n\u{e9}\u{3b1}-]{1,4}", 1..8),
    ) {
        let mut t = Transducer::default();
        let q = t.add_state();
        let mut outs = Vec::new();
        for s in &symbols {
            prop_assume!(s != "<eps>");
            let l = t.input_symbols_mut().intern(s);
            let o = t.output_symbols_mut().intern(s);
            prop_assert_eq!(t.input_symbols().symbol(l), Some(s.as_str()));
            prop_assert_eq!(t.input_symbols().get(s), Some(l));
            outs.push(o);
            if t.arcs(0).iter().all(|a| a.label != l) {
                t.add_transition(0, l, outs.clone(), q).unwrap();
            }
        }
        t.add_final_output(q, outs.clone()).unwrap();
        let from_text = read_text(&write_text(&t)).unwrap();
        prop_assert!(from_text.canonical_eq(&t));
        let from_bin = read_binary(&write_binary(&t)).unwrap();
        prop_assert_eq!(from_bin, t);
    }

    #[test]
    fn binary_reader_rejects_garbage_without_panicking(t in cyclic(), flips in prop::collection::vec((any::<usize>(), any::<u8>()), 1..4)) {
        let mut bytes = write_binary(&t);
        for (pos, val) in flips {
            let i = pos % bytes.len();
            bytes[i] = val;
        }
        if let Ok(back) = read_binary(&bytes) {
            prop_assert_eq!(read_binary(&write_binary(&back)).unwrap(), back);
        }
    }

    #[test]
    fn text_reader_never_panics(s in "(#lexfst v1 initial=0 lambda=<eps> p=1\n)?([0-9\t a|<>eps\\\\]{0,12}\n){0,6}") {
        let _ = read_text(&s);
    }
}
