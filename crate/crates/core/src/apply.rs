//! Running transducers: forward lookup, prefix completion and reverse
//! (output-side) application.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::symbol::Label;
use crate::transducer::{StateId, Transducer};
use crate::word::{concat, Word};

/// Walks the unique path for `input`, returning the end state and the
/// accumulated output including the initial output.
pub fn walk(t: &Transducer, input: &[Label]) -> Option<(StateId, Word)> {
    let mut q = t.initial();
    let mut out = t.initial_output().to_vec();
    for &a in input {
        let (r, o) = t.step(q, a)?;
        out.extend_from_slice(o);
        q = r;
    }
    Some((q, out))
}

/// All outputs for `input`, sorted. Empty if `input` is rejected.
pub fn lookup(t: &Transducer, input: &[Label]) -> Vec<Word> {
    match walk(t, input) {
        Some((q, out)) => t.finals(q).iter().map(|f| concat(&out, f)).collect(),
        None => Vec::new(),
    }
}

/// Tokenizes `input` with the input alphabet and looks it up. Unknown
/// symbols reject.
pub fn lookup_symbols<'a, I>(t: &Transducer, input: I) -> Vec<Word>
where
    I: IntoIterator<Item = &'a str>,
{
    match encode_input(t, input) {
        Some(w) => lookup(t, &w),
        None => Vec::new(),
    }
}

pub fn encode_input<'a, I>(t: &Transducer, input: I) -> Option<Word>
where
    I: IntoIterator<Item = &'a str>,
{
    input.into_iter().map(|s| t.input_symbols().get(s)).collect()
}

/// Output emitted along the path for `prefix`, including the initial
/// output. On an onward machine this is the longest common prefix of the
/// outputs of every accepted word that starts with `prefix`.
pub fn complete(t: &Transducer, prefix: &[Label]) -> Result<Word> {
    walk(t, prefix).map(|(_, out)| out).ok_or(Error::PrefixNotPresent)
}

/// Default step budget for [`reverse_apply`].
pub const REVERSE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReverseResult {
    /// Every input word with `y` among its outputs, sorted.
    pub inputs: Vec<Word>,
    /// Largest number of distinct (state, output position) pairs alive
    /// after the same number of input symbols.
    pub max_active: usize,
    /// Active pair count after each step, starting with step 0.
    pub active_per_step: Vec<usize>,
}

type Pair = (StateId, usize);

/// Finds every input whose output set contains `y`.
///
/// The traversal advances all live (state, position) pairs one input
/// symbol at a time. A transition is followed from `(q, k)` only if its
/// output matches `y` at position `k`, so a path dies as soon as its output
/// disagrees with `y`. Pairs are deduplicated per step.
pub fn reverse_apply(t: &Transducer, y: &[Label], budget: usize) -> Result<ReverseResult> {
    let mut spent = 0usize;
    let mut active_per_step = Vec::new();
    let mut edges: HashMap<Pair, Vec<(Label, Pair)>> = HashMap::new();
    let mut seen: HashSet<Pair> = HashSet::new();

    let mut frontier: BTreeSet<Pair> = BTreeSet::new();
    let lambda = t.initial_output();
    if y.starts_with(lambda) {
        frontier.insert((t.initial(), lambda.len()));
    }
    let start = frontier.iter().next().copied();
    // the next frontier depends only on the current one, so a repeat means
    // the remaining steps cycle
    let mut history: HashSet<Vec<Pair>> = HashSet::new();

    while !frontier.is_empty() && history.insert(frontier.iter().copied().collect()) {
        active_per_step.push(frontier.len());
        let mut next = BTreeSet::new();
        for &(q, k) in &frontier {
            let fresh = seen.insert((q, k));
            for a in t.arcs(q) {
                spent += 1;
                if spent > budget {
                    return Err(Error::SearchBudgetExceeded(budget));
                }
                if y[k..].starts_with(&a.output) {
                    let to = (a.target, k + a.output.len());
                    if fresh {
                        edges.entry((q, k)).or_default().push((a.label, to));
                    }
                    next.insert(to);
                }
            }
        }
        frontier = next;
    }
    let max_active = active_per_step.iter().copied().max().unwrap_or(0);

    let accepting = |&(q, k): &Pair| t.finals(q).iter().any(|f| y[k..] == f[..]);
    let mut inputs = Vec::new();
    if let Some(start) = start {
        let useful = co_reachable(&seen, &edges, accepting);
        let mut stack: Vec<(Pair, Word)> = vec![(start, Word::new())];
        while let Some((pair, word)) = stack.pop() {
            spent += 1;
            if spent > budget {
                return Err(Error::SearchBudgetExceeded(budget));
            }
            if accepting(&pair) {
                inputs.push(word.clone());
            }
            for &(label, to) in edges.get(&pair).into_iter().flatten() {
                if useful.contains(&to) {
                    let mut w = word.clone();
                    w.push(label);
                    stack.push((to, w));
                }
            }
        }
    }
    inputs.sort();
    inputs.dedup();
    Ok(ReverseResult {
        inputs,
        max_active,
        active_per_step,
    })
}

fn co_reachable(
    nodes: &HashSet<Pair>,
    edges: &HashMap<Pair, Vec<(Label, Pair)>>,
    accepting: impl Fn(&Pair) -> bool,
) -> HashSet<Pair> {
    let mut preds: HashMap<Pair, Vec<Pair>> = HashMap::new();
    for (&from, outs) in edges {
        for &(_, to) in outs {
            preds.entry(to).or_default().push(from);
        }
    }
    let mut useful: HashSet<Pair> = nodes.iter().copied().filter(|p| accepting(p)).collect();
    let mut stack: Vec<Pair> = useful.iter().copied().collect();
    while let Some(p) = stack.pop() {
        for &r in preds.get(&p).into_iter().flatten() {
            if useful.insert(r) {
                stack.push(r);
            }
        }
    }
    useful
}
