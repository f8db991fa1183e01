//! Output prefix pushing.
//!
//! For every state `q`, `P(q)` is the greatest common prefix of all output
//! words readable from `q` to acceptance (final outputs included). Pushing
//! rewrites each transition output to `P(q)⁻¹ · σ(q,a) · P(δ(q,a))`, each
//! final output to `P(q)⁻¹ · φ`, and prepends `P(i)` to the initial output.
//! The state graph is unchanged and the realized function is preserved.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::symbol::Label;
use crate::transducer::{Arc, State, StateId, Transducer};
use crate::word::{common_prefix_len, common_prefix_len_concat, concat, strip_prefix, Word};

/// Future-output prefix per state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixMap {
    prefixes: Vec<Word>,
}

impl PrefixMap {
    pub fn get(&self, q: StateId) -> &[Label] {
        &self.prefixes[q as usize]
    }

    pub fn len(&self) -> usize {
        self.prefixes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefixes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, &[Label])> {
        self.prefixes
            .iter()
            .enumerate()
            .map(|(q, p)| (q as StateId, p.as_slice()))
    }

    /// One `state<TAB>prefix` line per state, `<eps>` for the empty prefix.
    pub fn to_text(&self, t: &Transducer) -> String {
        let mut s = String::new();
        for (q, p) in self.iter() {
            let rendered = if p.is_empty() {
                crate::symbol::EPSILON_STR.to_string()
            } else {
                t.output_symbols().render(p, "|")
            };
            let _ = writeln!(s, "{q}\t{rendered}");
        }
        s
    }
}

/// Computes `P(q)` for every state. Every state must be co-accessible.
///
/// Values start undefined (absorbing for gcp) and only shrink, so the
/// worklist relaxation terminates on cyclic machines too. On acyclic
/// machines the reverse topological seeding makes it a single pass.
pub fn compute_prefix_map(t: &Transducer) -> Result<PrefixMap> {
    let coacc = t.coaccessible();
    if let Some(q) = coacc.iter().position(|&c| !c) {
        return Err(Error::NotCoaccessible(q as StateId));
    }
    let n = t.num_states();
    let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for (q, s) in t.states().iter().enumerate() {
        for a in s.arcs() {
            preds[a.target as usize].push(q as StateId);
        }
    }

    let seed: Vec<StateId> = match t.topological_order() {
        Some(mut order) => {
            order.reverse();
            order
        }
        None => postorder(t),
    };
    let mut prefix: Vec<Option<Word>> = vec![None; n];
    let mut queued = vec![true; n];
    let mut queue: VecDeque<StateId> = seed.into_iter().collect();

    while let Some(q) = queue.pop_front() {
        queued[q as usize] = false;
        let Some(new) = relax(&t.states()[q as usize], &prefix) else {
            continue;
        };
        let changed = match &prefix[q as usize] {
            None => true,
            Some(old) => old.len() != new.len(),
        };
        if changed {
            prefix[q as usize] = Some(new);
            for &r in &preds[q as usize] {
                if !queued[r as usize] {
                    queued[r as usize] = true;
                    queue.push_back(r);
                }
            }
        }
    }

    let prefixes = prefix
        .into_iter()
        .enumerate()
        .map(|(q, p)| p.ok_or(Error::NotCoaccessible(q as StateId)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PrefixMap { prefixes })
}

/// gcp over the final outputs of `s` and `σ(s,a)·P(δ(s,a))` for defined targets.
fn relax(s: &State, prefix: &[Option<Word>]) -> Option<Word> {
    let mut acc: Option<Word> = None;
    for f in s.finals() {
        acc = Some(match acc {
            None => f.clone(),
            Some(mut w) => {
                w.truncate(common_prefix_len(&w, f));
                w
            }
        });
        if acc.as_ref().is_some_and(Vec::is_empty) {
            return acc;
        }
    }
    for a in s.arcs() {
        let Some(p) = &prefix[a.target as usize] else {
            continue;
        };
        acc = Some(match acc {
            None => concat(&a.output, p),
            Some(mut w) => {
                w.truncate(common_prefix_len_concat(&w, &a.output, p));
                w
            }
        });
        if acc.as_ref().is_some_and(Vec::is_empty) {
            return acc;
        }
    }
    acc
}

fn postorder(t: &Transducer) -> Vec<StateId> {
    let n = t.num_states();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n as StateId {
        if visited[root as usize] {
            continue;
        }
        visited[root as usize] = true;
        let mut stack: Vec<(StateId, usize)> = vec![(root, 0)];
        while let Some((q, i)) = stack.pop() {
            let arcs = t.arcs(q);
            if i < arcs.len() {
                stack.push((q, i + 1));
                let r = arcs[i].target;
                if !visited[r as usize] {
                    visited[r as usize] = true;
                    stack.push((r, 0));
                }
            } else {
                order.push(q);
            }
        }
    }
    order
}

/// Pushes outputs toward the initial state. Requires every state to be
/// co-accessible (trim first if needed).
pub fn push_outputs(t: &Transducer) -> Result<Transducer> {
    let prefix = compute_prefix_map(t)?;
    Ok(apply_prefix_map(t, &prefix))
}

/// Rewrites outputs of `t` according to `prefix`.
pub fn apply_prefix_map(t: &Transducer, prefix: &PrefixMap) -> Transducer {
    let states = t
        .states()
        .iter()
        .enumerate()
        .map(|(q, s)| {
            let pq = prefix.get(q as StateId);
            let arcs = s
                .arcs()
                .iter()
                .map(|a| {
                    let full = concat(&a.output, prefix.get(a.target));
                    let output = strip_prefix(pq, &full)
                        .expect("P(q) must prefix σ(q,a)·P(δ(q,a))")
                        .to_vec();
                    Arc {
                        label: a.label,
                        target: a.target,
                        output,
                    }
                })
                .collect();
            let finals = s
                .finals()
                .iter()
                .map(|f| strip_prefix(pq, f).expect("P(q) must prefix every final output").to_vec())
                .collect();
            State { arcs, finals }
        })
        .collect();
    Transducer::from_parts(
        t.input_symbols().clone(),
        t.output_symbols().clone(),
        states,
        t.initial(),
        concat(t.initial_output(), prefix.get(t.initial())),
        t.p_bound(),
    )
}

/// True if every useful state has an empty future-output prefix.
pub fn is_onward(t: &Transducer) -> bool {
    let trimmed = t.trim();
    if trimmed.is_empty_language() {
        return true;
    }
    match compute_prefix_map(&trimmed) {
        Ok(p) => p.iter().all(|(_, w)| w.is_empty()),
        Err(_) => false,
    }
}
