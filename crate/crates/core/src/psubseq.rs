//! End-marker encoding of p-subsequential transducers.
//!
//! The final outputs `[w₁..wₖ]` of each final state become transitions on
//! fresh input symbols `#1..#k` into a single new final state, turning a
//! p-subsequential machine into a plain sequential one. Pushing and
//! minimization then apply unchanged, and decoding folds the marker
//! transitions back into final outputs.

use crate::error::{Error, Result};
use crate::minimize::minimize_sequential;
use crate::symbol::{Label, SymbolTable};
use crate::transducer::{Arc, State, StateId, Transducer};
use crate::word::Word;

pub fn marker_name(j: usize) -> String {
    format!("#{j}")
}

fn is_marker(symbol: &str) -> bool {
    symbol
        .strip_prefix('#')
        .is_some_and(|d| !d.is_empty() && !d.starts_with('0') && d.bytes().all(|b| b.is_ascii_digit()))
}

/// Marker ids present in an input alphabet.
pub fn marker_labels(symbols: &SymbolTable) -> Vec<Label> {
    symbols.iter().filter(|(_, s)| is_marker(s)).map(|(l, _)| l).collect()
}

/// Encodes `t` as a sequential transducer over `A ∪ {#1..#p}`, where
/// `p = max(p_bound, observed ambiguity)`. Final outputs are taken in
/// sorted order, so `#j` carries the j-th smallest.
pub fn encode_p(t: &Transducer) -> Result<Transducer> {
    let p = t.p_bound().max(t.max_ambiguity());
    let mut isyms = t.input_symbols().clone();
    let mut markers = Vec::with_capacity(p);
    for j in 1..=p {
        let name = marker_name(j);
        if isyms.get(&name).is_some() {
            return Err(Error::MarkerCollision(name));
        }
        markers.push(isyms.intern(&name));
    }
    let sink = t.num_states() as StateId;
    let mut states: Vec<State> = t
        .states()
        .iter()
        .map(|s| {
            let mut arcs = s.arcs().to_vec();
            arcs.extend(s.finals().iter().zip(&markers).map(|(w, &m)| Arc {
                label: m,
                target: sink,
                output: w.clone(),
            }));
            State {
                arcs,
                finals: Vec::new(),
            }
        })
        .collect();
    states.push(State {
        arcs: Vec::new(),
        finals: vec![Word::new()],
    });
    Ok(Transducer::from_parts(
        isyms,
        t.output_symbols().clone(),
        states,
        t.initial(),
        t.initial_output().to_vec(),
        1,
    ))
}

/// Inverse of [`encode_p`]. The marker count of the alphabet becomes the
/// declared p of the result.
pub fn decode_p(t: &Transducer) -> Result<Transducer> {
    let markers = marker_labels(t.input_symbols());
    if markers.is_empty() {
        return Err(Error::MalformedEncoding("no end markers in the input alphabet".into()));
    }
    let mut sink: Option<StateId> = None;
    for s in t.states() {
        for a in s.arcs().iter().filter(|a| markers.contains(&a.label)) {
            match sink {
                None => sink = Some(a.target),
                Some(f) if f != a.target => {
                    return Err(Error::MalformedEncoding("marker transitions reach different states".into()))
                }
                Some(_) => {}
            }
        }
    }
    let sink = sink.ok_or_else(|| Error::MalformedEncoding("no marker transitions".into()))?;
    let sink_state = &t.states()[sink as usize];
    if !sink_state.arcs().is_empty() {
        return Err(Error::MalformedEncoding(format!("final state {sink} has outgoing transitions")));
    }
    if sink_state.finals() != [Word::new()] {
        return Err(Error::MalformedEncoding(format!("final state {sink} must have one empty final output")));
    }
    if sink == t.initial() {
        return Err(Error::MalformedEncoding("the final state is the initial state".into()));
    }

    let (isyms, remap) = t.input_symbols().without(&markers);
    let shift = |q: StateId| if q > sink { q - 1 } else { q };
    let mut states = Vec::with_capacity(t.num_states() - 1);
    for (q, s) in t.states().iter().enumerate() {
        let q = q as StateId;
        if q == sink {
            continue;
        }
        if s.is_final() {
            return Err(Error::MalformedEncoding(format!("state {q} is final besides the marker target")));
        }
        let mut arcs = Vec::with_capacity(s.arcs().len());
        let mut finals = Vec::new();
        for a in s.arcs() {
            if markers.contains(&a.label) {
                finals.push(a.output.clone());
            } else if a.target == sink {
                return Err(Error::MalformedEncoding(format!(
                    "non-marker transition from {q} reaches the final state"
                )));
            } else {
                arcs.push(Arc {
                    label: remap[a.label as usize].expect("non-marker symbols survive"),
                    target: shift(a.target),
                    output: a.output.clone(),
                });
            }
        }
        arcs.sort_by_key(|a| a.label);
        finals.sort();
        finals.dedup();
        states.push(State { arcs, finals });
    }
    Ok(Transducer::from_parts(
        isyms,
        t.output_symbols().clone(),
        states,
        shift(t.initial()),
        t.initial_output().to_vec(),
        markers.len(),
    ))
}

/// `decode_p(minimize_sequential(encode_p(t)))`, numbered breadth-first.
pub fn minimize_p(t: &Transducer) -> Result<Transducer> {
    let trimmed = t.trim();
    if trimmed.is_empty_language() {
        return Ok(trimmed);
    }
    let encoded = encode_p(&trimmed)?;
    let minimal = minimize_sequential(&encoded)?;
    Ok(decode_p(&minimal)?.renumber_bfs())
}
