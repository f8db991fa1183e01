//! Reference implementations used as oracles. They read machines only
//! through public accessors and share no code with the library algorithms.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use lexfst::{Lexicon, StateId, Transducer};
use rand::Rng;

pub type Tokens = Vec<String>;
/// Input word to its set of outputs.
pub type Function = BTreeMap<Tokens, BTreeSet<Tokens>>;

fn out_tokens(t: &Transducer, w: &[u32]) -> Tokens {
    w.iter()
        .map(|&l| t.output_symbols().symbol(l).unwrap().to_string())
        .collect()
}

fn in_token(t: &Transducer, l: u32) -> String {
    t.input_symbols().symbol(l).unwrap().to_string()
}

/// Runs `t` on `input` with a linear scan over arcs.
pub fn run(t: &Transducer, input: &[String]) -> BTreeSet<Tokens> {
    let mut q = t.initial();
    let mut acc = out_tokens(t, t.initial_output());
    for sym in input {
        let Some(arc) = t.arcs(q).iter().find(|a| &in_token(t, a.label) == sym) else {
            return BTreeSet::new();
        };
        acc.extend(out_tokens(t, &arc.output));
        q = arc.target;
    }
    t.finals(q)
        .iter()
        .map(|f| {
            let mut o = acc.clone();
            o.extend(out_tokens(t, f));
            o
        })
        .collect()
}

pub fn chars(s: &str) -> Tokens {
    s.chars().map(String::from).collect()
}

pub fn join(w: &[String]) -> String {
    w.concat()
}

/// The lexicon as a function.
pub fn lexicon_function(lex: &Lexicon) -> Function {
    let mut f = Function::new();
    for e in lex.entries() {
        let input = e
            .input
            .iter()
            .map(|&l| lex.input_symbols().symbol(l).unwrap().to_string())
            .collect();
        let output = e
            .output
            .iter()
            .map(|&l| lex.output_symbols().symbol(l).unwrap().to_string())
            .collect();
        f.entry(input).or_default().insert(output);
    }
    f
}

pub fn gcp<'a>(words: impl IntoIterator<Item = &'a Tokens>) -> Tokens {
    let mut it = words.into_iter();
    let Some(first) = it.next() else {
        return Tokens::new();
    };
    let mut n = first.len();
    for w in it {
        n = n.min(first.iter().zip(w).take_while(|(a, b)| a == b).count());
    }
    first[..n].to_vec()
}

/// Every (suffix input, suffix output) readable from each state, for acyclic
/// machines, excluding the initial output.
pub fn state_functions(t: &Transducer) -> Vec<Function> {
    fn go(t: &Transducer, q: StateId, memo: &mut Vec<Option<Function>>) -> Function {
        if let Some(f) = &memo[q as usize] {
            return f.clone();
        }
        let mut f = Function::new();
        for fin in t.finals(q) {
            f.entry(Tokens::new()).or_default().insert(out_tokens(t, fin));
        }
        for a in t.arcs(q) {
            let sym = in_token(t, a.label);
            let head = out_tokens(t, &a.output);
            for (w, outs) in go(t, a.target, memo) {
                let mut input = vec![sym.clone()];
                input.extend(w);
                let set = f.entry(input).or_default();
                for o in outs {
                    let mut x = head.clone();
                    x.extend(o);
                    set.insert(x);
                }
            }
        }
        memo[q as usize] = Some(f.clone());
        f
    }
    let mut memo = vec![None; t.num_states()];
    (0..t.num_states() as StateId).map(|q| go(t, q, &mut memo)).collect()
}

/// Greatest common prefix of all outputs of a state function.
pub fn function_prefix(f: &Function) -> Tokens {
    gcp(f.values().flatten())
}

/// Same domain, and equal outputs once each side drops its own common prefix.
pub fn equivalent_up_to_prefix(f: &Function, g: &Function) -> bool {
    if f.len() != g.len() || f.keys().ne(g.keys()) {
        return false;
    }
    let (pf, pg) = (function_prefix(f).len(), function_prefix(g).len());
    f.values().zip(g.values()).all(|(a, b)| {
        let a: BTreeSet<&[String]> = a.iter().map(|o| &o[pf..]).collect();
        let b: BTreeSet<&[String]> = b.iter().map(|o| &o[pg..]).collect();
        a == b
    })
}

/// Number of classes of the relation over the given functions.
pub fn count_classes(fs: &[Function]) -> usize {
    let mut reps: Vec<&Function> = Vec::new();
    for f in fs {
        if !reps.iter().any(|r| equivalent_up_to_prefix(r, f)) {
            reps.push(f);
        }
    }
    reps.len()
}

/// Input symbols on arcs of `t`.
pub fn input_alphabet(t: &Transducer) -> BTreeSet<String> {
    t.states()
        .iter()
        .flat_map(|s| s.arcs())
        .map(|a| in_token(t, a.label))
        .collect()
}

/// All words up to `max_len` on which at least one machine has a live path.
/// Words outside this set are rejected by every machine.
pub fn live_words(machines: &[&Transducer], max_len: usize) -> Vec<Tokens> {
    let alphabet: BTreeSet<String> = machines.iter().flat_map(|t| input_alphabet(t)).collect();
    let step = |t: &Transducer, q: Option<StateId>, sym: &str| -> Option<StateId> {
        let q = q?;
        t.arcs(q).iter().find(|a| in_token(t, a.label) == sym).map(|a| a.target)
    };
    let mut words = Vec::new();
    let mut stack: Vec<(Tokens, Vec<Option<StateId>>)> =
        vec![(Tokens::new(), machines.iter().map(|t| Some(t.initial())).collect())];
    while let Some((w, qs)) = stack.pop() {
        if w.len() < max_len {
            for sym in &alphabet {
                let next: Vec<Option<StateId>> = machines.iter().zip(&qs).map(|(t, &q)| step(t, q, sym)).collect();
                if next.iter().any(Option::is_some) {
                    let mut w2 = w.clone();
                    w2.push(sym.clone());
                    stack.push((w2, next));
                }
            }
        }
        words.push(w);
    }
    words.sort();
    words
}

/// Random acyclic sequential machine with at most `max_states` states over
/// inputs a..c and outputs x, y. Some states are cloned with every outgoing
/// output shifted by one symbol, creating states that differ by a prefix.
pub fn random_acyclic<R: Rng>(rng: &mut R, max_states: usize) -> Transducer {
    let n = rng.gen_range(1..=max_states.max(1));
    let base = if n > 3 { n - rng.gen_range(0..=n / 3) } else { n };
    let mut t = Transducer::default();
    t.set_p_bound(1);
    let ins: Vec<u32> = ["a", "b", "c"].iter().map(|s| t.input_symbols_mut().intern(s)).collect();
    let outs: Vec<u32> = ["x", "y"].iter().map(|s| t.output_symbols_mut().intern(s)).collect();
    for _ in 1..base {
        t.add_state();
    }
    let word = |rng: &mut R| -> Vec<u32> { (0..rng.gen_range(0..=2)).map(|_| outs[rng.gen_range(0..2)]).collect() };
    for q in 0..base {
        if q + 1 < base {
            for &l in &ins {
                if rng.gen_bool(0.5) {
                    let r = rng.gen_range(q + 1..base) as StateId;
                    let w = word(rng);
                    t.add_transition(q as StateId, l, w, r).unwrap();
                }
            }
        }
        if q + 1 == base || rng.gen_bool(0.4) {
            let w = word(rng);
            t.add_final_output(q as StateId, w).unwrap();
        }
    }
    // clone states with shifted outputs and redirect one incoming arc
    for _ in base..n {
        let arcs: Vec<(StateId, u32, Vec<u32>, StateId)> = (0..t.num_states() as StateId)
            .flat_map(|q| t.arcs(q).iter().map(move |a| (q, a.label, a.output.clone(), a.target)).collect::<Vec<_>>())
            .collect();
        if arcs.is_empty() {
            break;
        }
        let (src, label, _, target) = arcs[rng.gen_range(0..arcs.len())].clone();
        let shift = outs[rng.gen_range(0..2)];
        let clone = t.add_state();
        let old: Vec<_> = t.arcs(target).to_vec();
        for a in old {
            let mut o = vec![shift];
            o.extend(a.output);
            t.add_transition(clone, a.label, o, a.target).unwrap();
        }
        for f in t.finals(target).to_vec() {
            let mut o = vec![shift];
            o.extend(f);
            t.add_final_output(clone, o).unwrap();
        }
        // rebuild src with the redirected arc
        let mut rebuilt = Transducer::new(t.input_symbols().clone(), t.output_symbols().clone());
        rebuilt.set_p_bound(1);
        for _ in 1..t.num_states() {
            rebuilt.add_state();
        }
        for q in 0..t.num_states() as StateId {
            for a in t.arcs(q) {
                let to = if q == src && a.label == label { clone } else { a.target };
                rebuilt.add_transition(q, a.label, a.output.clone(), to).unwrap();
            }
            for f in t.finals(q) {
                rebuilt.add_final_output(q, f.clone()).unwrap();
            }
        }
        t = rebuilt;
    }
    t
}

/// Random sequential machine whose arcs may point anywhere, so cycles are
/// common. Not necessarily trim.
pub fn random_cyclic<R: Rng>(rng: &mut R, max_states: usize) -> Transducer {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut t = Transducer::default();
    t.set_p_bound(2);
    let ins: Vec<u32> = ["a", "b", "c"].iter().map(|s| t.input_symbols_mut().intern(s)).collect();
    let outs: Vec<u32> = ["x", "y", "z"].iter().map(|s| t.output_symbols_mut().intern(s)).collect();
    for _ in 1..n {
        t.add_state();
    }
    for q in 0..n as StateId {
        for &l in &ins {
            if rng.gen_bool(0.45) {
                let w = (0..rng.gen_range(0..=2)).map(|_| outs[rng.gen_range(0..3)]).collect();
                t.add_transition(q, l, w, rng.gen_range(0..n) as StateId).unwrap();
            }
        }
        for _ in 0..rng.gen_range(0..=2) {
            if rng.gen_bool(0.4) {
                let w = (0..rng.gen_range(0..=2)).map(|_| outs[rng.gen_range(0..3)]).collect();
                t.add_final_output(q, w).unwrap();
            }
        }
    }
    t
}

/// Runs every live word up to `max_len` through each machine and returns
/// the first word on which two machines disagree.
pub fn first_difference(machines: &[&Transducer], max_len: usize) -> Option<Tokens> {
    live_words(machines, max_len).into_iter().find(|w| {
        let first = run(machines[0], w);
        machines[1..].iter().any(|t| run(t, w) != first)
    })
}
