//! Lexicon compilation: prefix tree, then end-marker encoding, pushing,
//! minimization and decoding.

use crate::error::{Error, Result};
use crate::lexicon::Lexicon;
use crate::psubseq::minimize_p;
use crate::transducer::{Arc, State, StateId, Transducer};

/// Deterministic prefix tree over the lexicon inputs. Transition outputs
/// are empty; each entry's output is a final output of its word-end state.
///
/// `p` defaults to the observed ambiguity.
pub fn build_trie(lex: &Lexicon, p: Option<usize>) -> Result<Transducer> {
    if lex.is_empty() {
        return Err(Error::EmptyLexicon);
    }
    let observed = lex.ambiguity();
    let p = p.unwrap_or(observed);
    if observed > p {
        return Err(Error::AmbiguityExceeded { p, found: observed });
    }

    let mut states: Vec<State> = vec![State::default()];
    for entry in lex.entries() {
        let mut q: StateId = 0;
        for &label in &entry.input {
            let next = states.len() as StateId;
            let arcs = &mut states[q as usize].arcs;
            q = match arcs.binary_search_by_key(&label, |a| a.label) {
                Ok(i) => arcs[i].target,
                Err(i) => {
                    arcs.insert(
                        i,
                        Arc {
                            label,
                            target: next,
                            output: Vec::new(),
                        },
                    );
                    states.push(State::default());
                    next
                }
            };
        }
        let finals = &mut states[q as usize].finals;
        if let Err(i) = finals.binary_search(&entry.output) {
            finals.insert(i, entry.output.clone());
        }
    }
    Ok(Transducer::from_parts(
        lex.input_symbols().clone(),
        lex.output_symbols().clone(),
        states,
        0,
        Vec::new(),
        p.max(1),
    ))
}

/// Compiles a lexicon into its minimal p-subsequential transducer.
pub fn compile(lex: &Lexicon, p: Option<usize>) -> Result<Transducer> {
    minimize_p(&build_trie(lex, p)?)
}
