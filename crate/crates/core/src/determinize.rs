//! Subset construction with output residuals.
//!
//! Each state of the result is a set of `(state, residual)` pairs: the
//! residual is output already read on the input side but not yet emitted.
//! A transition emits the longest common prefix of every candidate
//! `residual · σ` and keeps the remainders as new residuals. Final outputs
//! are collected from the residuals of final members, so ambiguity up to
//! `p` is resolved at acceptance.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::nondet::NondetTransducer;
use crate::symbol::{Label, EPSILON};
use crate::transducer::{StateId, Transducer};
use crate::word::{concat, gcp, Word};

pub const DEFAULT_MAX_STATES: usize = 1_000_000;
pub const DEFAULT_MAX_RESIDUAL_LEN: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
    pub max_residual_len: usize,
    /// Declared bound on final outputs per state; discovered when absent.
    pub p: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: DEFAULT_MAX_STATES,
            max_residual_len: DEFAULT_MAX_RESIDUAL_LEN,
            p: None,
        }
    }
}

/// A normalized set of `(state, residual)` pairs, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedSubset(Vec<(StateId, Word)>);

impl WeightedSubset {
    pub fn pairs(&self) -> &[(StateId, Word)] {
        &self.0
    }

    /// Removes the common prefix of all residuals and returns it.
    fn normalize(mut pairs: Vec<(StateId, Word)>) -> (Word, WeightedSubset) {
        let prefix = gcp(pairs.iter().map(|(_, w)| w.as_slice())).unwrap_or_default();
        if !prefix.is_empty() {
            for (_, w) in pairs.iter_mut() {
                w.drain(..prefix.len());
            }
        }
        pairs.sort();
        pairs.dedup();
        (prefix, WeightedSubset(pairs))
    }

    pub fn is_normalized(&self) -> bool {
        gcp(self.0.iter().map(|(_, w)| w.as_slice())).is_none_or(|p| p.is_empty())
    }
}

/// Determinizes `t`. Fails with [`Error::NonSubsequential`] when the
/// search exceeds `limits`, which is how a relation that is not a bounded
/// p-subsequential function shows up.
pub fn determinize(t: &NondetTransducer, limits: Limits) -> Result<Transducer> {
    determinize_with_subsets(t, limits).map(|(d, _)| d)
}

/// Like [`determinize`], also returning the subset behind each result state.
pub fn determinize_with_subsets(t: &NondetTransducer, limits: Limits) -> Result<(Transducer, Vec<WeightedSubset>)> {
    if limits.max_states == 0 || limits.max_residual_len == 0 {
        return Err(Error::NonSubsequential("limits must be positive".into()));
    }
    for (q, s) in t.states().iter().enumerate() {
        if s.arcs().iter().any(|a| a.label == EPSILON) {
            return Err(Error::InputEpsilon(q as StateId));
        }
    }
    let coacc = coaccessible(t);

    let mut result = Transducer::new(t.input_symbols().clone(), t.output_symbols().clone());
    result.set_p_bound(usize::MAX);
    result.set_initial_output(t.initial_output().to_vec());

    let start = WeightedSubset(vec![(t.initial(), Word::new())]);
    let mut subsets = vec![start.clone()];
    let mut index: HashMap<WeightedSubset, StateId> = HashMap::from([(start, 0)]);
    let mut queue: VecDeque<StateId> = VecDeque::from([0]);
    let mut max_ambiguity = 0;

    while let Some(id) = queue.pop_front() {
        let subset = subsets[id as usize].clone();

        let mut finals: Vec<Word> = subset
            .0
            .iter()
            .flat_map(|(q, res)| t.states()[*q as usize].finals().iter().map(move |f| concat(res, f)))
            .collect();
        finals.sort();
        finals.dedup();
        if let Some(p) = limits.p {
            if finals.len() > p {
                return Err(Error::AmbiguityExceeded { p, found: finals.len() });
            }
        }
        max_ambiguity = max_ambiguity.max(finals.len());
        if !finals.is_empty() {
            result.set_finals(id, finals)?;
        }

        let mut by_label: BTreeMap<Label, Vec<(StateId, Word)>> = BTreeMap::new();
        for (q, res) in &subset.0 {
            for a in t.states()[*q as usize].arcs() {
                if coacc[a.target as usize] {
                    by_label
                        .entry(a.label)
                        .or_default()
                        .push((a.target, concat(res, &a.output)));
                }
            }
        }

        for (label, pairs) in by_label {
            let (output, next) = WeightedSubset::normalize(pairs);
            if let Some(len) = next.0.iter().map(|(_, w)| w.len()).max() {
                if len > limits.max_residual_len {
                    return Err(Error::NonSubsequential(format!(
                        "residual of length {len} exceeds {}",
                        limits.max_residual_len
                    )));
                }
            }
            let target = match index.get(&next) {
                Some(&r) => r,
                None => {
                    if subsets.len() >= limits.max_states {
                        return Err(Error::NonSubsequential(format!(
                            "more than {} subset states",
                            limits.max_states
                        )));
                    }
                    let r = result.add_state();
                    subsets.push(next.clone());
                    index.insert(next, r);
                    queue.push_back(r);
                    r
                }
            };
            result.add_transition(id, label, output, target)?;
        }
    }
    result.set_p_bound(limits.p.unwrap_or(max_ambiguity).max(1));
    Ok((result, subsets))
}

fn coaccessible(t: &NondetTransducer) -> Vec<bool> {
    let n = t.num_states();
    let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for (q, s) in t.states().iter().enumerate() {
        for a in s.arcs() {
            preds[a.target as usize].push(q as StateId);
        }
    }
    let mut seen: Vec<bool> = t.states().iter().map(|s| !s.finals().is_empty()).collect();
    let mut stack: Vec<StateId> = (0..n as StateId).filter(|&q| seen[q as usize]).collect();
    while let Some(q) = stack.pop() {
        for &r in &preds[q as usize] {
            if !seen[r as usize] {
                seen[r as usize] = true;
                stack.push(r);
            }
        }
    }
    seen
}
