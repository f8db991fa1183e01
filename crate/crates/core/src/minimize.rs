//! Minimization of sequential transducers.
//!
//! After pushing, a transducer is minimized as an automaton over composite
//! labels `(input symbol, output word)`: states are merged when they agree on
//! final outputs and, for every input symbol, on the transition output and
//! the block of the target.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::push::push_outputs;
use crate::symbol::Label;
use crate::transducer::{Arc, State, StateId, Transducer};
use crate::word::{concat, gcp, Word};

/// Arc label, output and target block, for every arc of a state.
type Signature<'a> = Vec<(Label, &'a [Label], u32)>;

/// A partition of the states of a transducer into blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    block_of: Vec<u32>,
    num_blocks: usize,
}

impl Partition {
    pub fn block(&self, q: StateId) -> u32 {
        self.block_of[q as usize]
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn num_states(&self) -> usize {
        self.block_of.len()
    }

    /// Blocks as sorted state lists, ordered by their smallest member.
    pub fn blocks(&self) -> Vec<Vec<StateId>> {
        let mut blocks = vec![Vec::new(); self.num_blocks];
        for (q, &b) in self.block_of.iter().enumerate() {
            blocks[b as usize].push(q as StateId);
        }
        blocks.sort();
        blocks
    }

    pub fn same_block(&self, q: StateId, r: StateId) -> bool {
        self.block(q) == self.block(r)
    }
}

/// Coarsest stable partition under the composite-label equivalence,
/// computed by Moore-style rounds: each round splits blocks by the signature
/// `(block, [(label, output, target block)])` until the block count is
/// stable. Block ids are assigned by first appearance in state order.
pub fn partition_refine(t: &Transducer) -> Partition {
    let n = t.num_states();
    let mut block_of = vec![0u32; n];
    let mut num_blocks;
    {
        let mut ids: HashMap<&[Word], u32> = HashMap::new();
        for (q, s) in t.states().iter().enumerate() {
            let next = ids.len() as u32;
            block_of[q] = *ids.entry(s.finals()).or_insert(next);
        }
        num_blocks = ids.len();
    }
    loop {
        let mut ids: HashMap<(u32, Signature), u32> = HashMap::with_capacity(num_blocks * 2);
        let mut next_block = vec![0u32; n];
        for (q, s) in t.states().iter().enumerate() {
            let sig: Signature = s
                .arcs()
                .iter()
                .map(|a| (a.label, a.output.as_slice(), block_of[a.target as usize]))
                .collect();
            let next = ids.len() as u32;
            next_block[q] = *ids.entry((block_of[q], sig)).or_insert(next);
        }
        let stable = ids.len() == num_blocks;
        num_blocks = ids.len();
        block_of = next_block;
        if stable {
            break;
        }
    }
    Partition { block_of, num_blocks }
}

/// Quotient of `t` by `partition`, states numbered by block id.
pub fn merge(t: &Transducer, partition: &Partition) -> Transducer {
    let mut rep: Vec<Option<StateId>> = vec![None; partition.num_blocks()];
    for q in 0..t.num_states() as StateId {
        rep[partition.block(q) as usize].get_or_insert(q);
    }
    let states = rep
        .iter()
        .map(|r| {
            let s = &t.states()[r.expect("every block has a member") as usize];
            State {
                arcs: s
                    .arcs()
                    .iter()
                    .map(|a| Arc {
                        label: a.label,
                        target: partition.block(a.target),
                        output: a.output.clone(),
                    })
                    .collect(),
                finals: s.finals().to_vec(),
            }
        })
        .collect();
    Transducer::from_parts(
        t.input_symbols().clone(),
        t.output_symbols().clone(),
        states,
        partition.block(t.initial()),
        t.initial_output().to_vec(),
        t.p_bound(),
    )
}

/// Trim, push, refine, merge. The result is the minimal sequential
/// transducer for the function of `t`, numbered breadth-first.
pub fn minimize_sequential(t: &Transducer) -> Result<Transducer> {
    let trimmed = t.trim();
    if trimmed.is_empty_language() {
        return Ok(trimmed);
    }
    let pushed = push_outputs(&trimmed)?;
    let partition = partition_refine(&pushed);
    Ok(merge(&pushed, &partition).renumber_bfs())
}

/// Default exploration depth for [`states_equivalent_oracle`] on cyclic machines.
pub const ORACLE_DEPTH: usize = 64;

/// Decides state equivalence directly from the definition, by enumerating
/// the functions computed from `q` and `r`: equal domains, and outputs that
/// agree once each side's own common prefix is removed.
///
/// Exact on acyclic machines. On cyclic machines whose paths exceed
/// [`ORACLE_DEPTH`] it fails with [`Error::CyclicUnsupported`].
pub fn states_equivalent_oracle(t: &Transducer, q: StateId, r: StateId) -> Result<bool> {
    let depth = if t.is_acyclic() {
        t.num_states()
    } else {
        ORACLE_DEPTH
    };
    let fq = state_function(t, q, depth, true)?;
    let fr = state_function(t, r, depth, true)?;
    Ok(same_up_to_prefix(&fq, &fr))
}

/// Depth-bounded approximation of [`states_equivalent_oracle`]: compares
/// the functions restricted to inputs of length at most `depth`.
pub fn states_equivalent_bounded(t: &Transducer, q: StateId, r: StateId, depth: usize) -> bool {
    let fq = state_function(t, q, depth, false).expect("bounded enumeration does not fail");
    let fr = state_function(t, r, depth, false).expect("bounded enumeration does not fail");
    same_up_to_prefix(&fq, &fr)
}

type StateFunction = BTreeMap<Word, Vec<Word>>;

fn state_function(t: &Transducer, q: StateId, depth: usize, strict: bool) -> Result<StateFunction> {
    let mut f = StateFunction::new();
    let mut stack: Vec<(StateId, Word, Word)> = vec![(q, Word::new(), Word::new())];
    while let Some((s, input, output)) = stack.pop() {
        for fin in t.finals(s) {
            f.entry(input.clone()).or_default().push(concat(&output, fin));
        }
        if input.len() == depth {
            if strict && !t.arcs(s).is_empty() {
                return Err(Error::CyclicUnsupported(depth));
            }
            continue;
        }
        for a in t.arcs(s) {
            let mut i = input.clone();
            i.push(a.label);
            stack.push((a.target, i, concat(&output, &a.output)));
        }
    }
    for outs in f.values_mut() {
        outs.sort();
        outs.dedup();
    }
    Ok(f)
}

fn same_up_to_prefix(fq: &StateFunction, fr: &StateFunction) -> bool {
    if !fq.keys().eq(fr.keys()) {
        return false;
    }
    let gq = gcp(fq.values().flatten().map(Vec::as_slice)).unwrap_or_default();
    let gr = gcp(fr.values().flatten().map(Vec::as_slice)).unwrap_or_default();
    fq.values().zip(fr.values()).all(|(a, b)| {
        let mut a: Vec<&[Label]> = a.iter().map(|w| &w[gq.len()..]).collect();
        let mut b: Vec<&[Label]> = b.iter().map(|w| &w[gr.len()..]).collect();
        a.sort();
        b.sort();
        a == b
    })
}
