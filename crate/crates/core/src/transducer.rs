//! The (p-)subsequential transducer model.
//!
//! A [`Transducer`] has one transition per (state, input symbol), output
//! words on transitions, an initial output emitted before any input, and up
//! to `p` final outputs per final state.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::symbol::{Label, SymbolTable, EPSILON};
use crate::word::Word;

pub type StateId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arc {
    pub label: Label,
    pub target: StateId,
    pub output: Word,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct State {
    /// Sorted by input label, at most one arc per label.
    pub(crate) arcs: Vec<Arc>,
    /// Sorted, deduplicated. Non-empty iff the state is final.
    pub(crate) finals: Vec<Word>,
}

impl State {
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn finals(&self) -> &[Word] {
        &self.finals
    }

    pub fn is_final(&self) -> bool {
        !self.finals.is_empty()
    }

    pub(crate) fn arc(&self, label: Label) -> Option<&Arc> {
        self.arcs
            .binary_search_by_key(&label, |a| a.label)
            .ok()
            .map(|i| &self.arcs[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transducer {
    pub(crate) input_symbols: SymbolTable,
    pub(crate) output_symbols: SymbolTable,
    pub(crate) states: Vec<State>,
    pub(crate) initial: StateId,
    pub(crate) initial_output: Word,
    pub(crate) p_bound: usize,
}

impl Default for Transducer {
    fn default() -> Self {
        Self::new(SymbolTable::new(), SymbolTable::new())
    }
}

impl Transducer {
    /// A single non-final initial state and no transitions.
    pub fn new(input_symbols: SymbolTable, output_symbols: SymbolTable) -> Self {
        Transducer {
            input_symbols,
            output_symbols,
            states: vec![State::default()],
            initial: 0,
            initial_output: Word::new(),
            p_bound: 1,
        }
    }

    /// Empty-language transducer sharing this one's alphabets.
    pub fn empty_like(&self) -> Self {
        let mut t = Transducer::new(self.input_symbols.clone(), self.output_symbols.clone());
        t.p_bound = self.p_bound;
        t
    }

    pub fn input_symbols(&self) -> &SymbolTable {
        &self.input_symbols
    }

    pub fn output_symbols(&self) -> &SymbolTable {
        &self.output_symbols
    }

    pub fn input_symbols_mut(&mut self) -> &mut SymbolTable {
        &mut self.input_symbols
    }

    pub fn output_symbols_mut(&mut self) -> &mut SymbolTable {
        &mut self.output_symbols
    }

    pub fn add_state(&mut self) -> StateId {
        self.states.push(State::default());
        (self.states.len() - 1) as StateId
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.states.iter().map(|s| s.arcs.len()).sum()
    }

    pub fn num_finals(&self) -> usize {
        self.states.iter().filter(|s| s.is_final()).count()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, q: StateId) -> Option<&State> {
        self.states.get(q as usize)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn set_initial(&mut self, q: StateId) -> Result<()> {
        self.check_state(q)?;
        self.initial = q;
        Ok(())
    }

    pub fn initial_output(&self) -> &[Label] {
        &self.initial_output
    }

    pub fn set_initial_output(&mut self, out: Word) {
        self.initial_output = out;
    }

    /// Declared maximum number of final outputs per state.
    pub fn p_bound(&self) -> usize {
        self.p_bound
    }

    pub fn set_p_bound(&mut self, p: usize) {
        self.p_bound = p;
    }

    /// Largest number of final outputs carried by any state.
    pub fn max_ambiguity(&self) -> usize {
        self.states.iter().map(|s| s.finals.len()).max().unwrap_or(0)
    }

    pub fn arcs(&self, q: StateId) -> &[Arc] {
        &self.states[q as usize].arcs
    }

    pub fn finals(&self, q: StateId) -> &[Word] {
        &self.states[q as usize].finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.states[q as usize].is_final()
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if (q as usize) < self.states.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(q))
        }
    }

    pub fn add_transition(&mut self, q: StateId, label: Label, output: Word, target: StateId) -> Result<()> {
        self.check_state(q)?;
        self.check_state(target)?;
        if label == EPSILON {
            return Err(Error::InputEpsilon(q));
        }
        let arcs = &mut self.states[q as usize].arcs;
        match arcs.binary_search_by_key(&label, |a| a.label) {
            Ok(_) => Err(Error::DuplicateInput { state: q, label }),
            Err(pos) => {
                arcs.insert(pos, Arc { label, target, output });
                Ok(())
            }
        }
    }

    /// Adds one final output to `q`, making it final. Duplicates are ignored.
    pub fn add_final_output(&mut self, q: StateId, output: Word) -> Result<()> {
        self.check_state(q)?;
        let p = self.p_bound;
        let finals = &mut self.states[q as usize].finals;
        if let Err(pos) = finals.binary_search(&output) {
            if finals.len() + 1 > p {
                return Err(Error::AmbiguityExceeded {
                    p,
                    found: finals.len() + 1,
                });
            }
            finals.insert(pos, output);
        }
        Ok(())
    }

    pub fn set_finals(&mut self, q: StateId, mut outputs: Vec<Word>) -> Result<()> {
        self.check_state(q)?;
        outputs.sort();
        outputs.dedup();
        if outputs.len() > self.p_bound {
            return Err(Error::AmbiguityExceeded {
                p: self.p_bound,
                found: outputs.len(),
            });
        }
        self.states[q as usize].finals = outputs;
        Ok(())
    }

    /// `(δ(q,a), σ(q,a))` if defined.
    pub fn step(&self, q: StateId, label: Label) -> Option<(StateId, &[Label])> {
        self.states
            .get(q as usize)?
            .arc(label)
            .map(|a| (a.target, a.output.as_slice()))
    }

    pub fn step_symbol(&self, q: StateId, symbol: &str) -> Option<(StateId, &[Label])> {
        self.step(q, self.input_symbols.get(symbol)?)
    }

    pub fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![self.initial];
        seen[self.initial as usize] = true;
        while let Some(q) = stack.pop() {
            for a in &self.states[q as usize].arcs {
                if !seen[a.target as usize] {
                    seen[a.target as usize] = true;
                    stack.push(a.target);
                }
            }
        }
        seen
    }

    pub fn coaccessible(&self) -> Vec<bool> {
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); self.states.len()];
        for (q, s) in self.states.iter().enumerate() {
            for a in &s.arcs {
                preds[a.target as usize].push(q as StateId);
            }
        }
        let mut seen: Vec<bool> = self.states.iter().map(State::is_final).collect();
        let mut stack: Vec<StateId> = (0..self.states.len() as StateId)
            .filter(|&q| seen[q as usize])
            .collect();
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

    pub fn is_trim(&self) -> bool {
        let acc = self.accessible();
        let coacc = self.coaccessible();
        acc.iter().zip(&coacc).all(|(a, c)| *a && *c)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// States in topological order (sources first), or `None` if there is a cycle.
    pub fn topological_order(&self) -> Option<Vec<StateId>> {
        let n = self.states.len();
        let mut indegree = vec![0usize; n];
        for s in &self.states {
            for a in &s.arcs {
                indegree[a.target as usize] += 1;
            }
        }
        let mut queue: VecDeque<StateId> = (0..n as StateId).filter(|&q| indegree[q as usize] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for a in &self.states[q as usize].arcs {
                let d = &mut indegree[a.target as usize];
                *d -= 1;
                if *d == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Keeps only states that are both accessible and co-accessible.
    /// An empty language yields [`Transducer::empty_like`].
    pub fn trim(&self) -> Transducer {
        let acc = self.accessible();
        let coacc = self.coaccessible();
        if !coacc[self.initial as usize] {
            return self.empty_like();
        }
        let keep: Vec<bool> = acc.iter().zip(&coacc).map(|(a, c)| *a && *c).collect();
        self.retain_states(&keep)
    }

    /// Like [`Transducer::trim`] but fails on an empty language.
    pub fn trim_checked(&self) -> Result<Transducer> {
        if !self.coaccessible()[self.initial as usize] {
            return Err(Error::EmptyLanguage);
        }
        Ok(self.trim())
    }

    pub fn is_empty_language(&self) -> bool {
        !self.coaccessible()[self.initial as usize]
    }

    /// Keeps the flagged states, preserving their relative order. Arcs into
    /// dropped states are removed. `keep[initial]` must hold.
    fn retain_states(&self, keep: &[bool]) -> Transducer {
        let mut remap = vec![StateId::MAX; self.states.len()];
        let mut next = 0;
        for (q, &k) in keep.iter().enumerate() {
            if k {
                remap[q] = next;
                next += 1;
            }
        }
        let states = self
            .states
            .iter()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|(s, _)| State {
                arcs: s
                    .arcs
                    .iter()
                    .filter(|a| keep[a.target as usize])
                    .map(|a| Arc {
                        label: a.label,
                        target: remap[a.target as usize],
                        output: a.output.clone(),
                    })
                    .collect(),
                finals: s.finals.clone(),
            })
            .collect();
        Transducer {
            input_symbols: self.input_symbols.clone(),
            output_symbols: self.output_symbols.clone(),
            states,
            initial: remap[self.initial as usize],
            initial_output: self.initial_output.clone(),
            p_bound: self.p_bound,
        }
    }

    /// Renumbers states breadth-first from the initial state, visiting arcs
    /// in ascending input id order. Inaccessible states are dropped.
    pub fn renumber_bfs(&self) -> Transducer {
        let mut remap = vec![StateId::MAX; self.states.len()];
        let mut order = Vec::with_capacity(self.states.len());
        let mut queue = VecDeque::new();
        remap[self.initial as usize] = 0;
        order.push(self.initial);
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            for a in &self.states[q as usize].arcs {
                if remap[a.target as usize] == StateId::MAX {
                    remap[a.target as usize] = order.len() as StateId;
                    order.push(a.target);
                    queue.push_back(a.target);
                }
            }
        }
        let states = order
            .iter()
            .map(|&q| {
                let s = &self.states[q as usize];
                State {
                    arcs: s
                        .arcs
                        .iter()
                        .map(|a| Arc {
                            label: a.label,
                            target: remap[a.target as usize],
                            output: a.output.clone(),
                        })
                        .collect(),
                    finals: s.finals.clone(),
                }
            })
            .collect();
        Transducer {
            input_symbols: self.input_symbols.clone(),
            output_symbols: self.output_symbols.clone(),
            states,
            initial: 0,
            initial_output: self.initial_output.clone(),
            p_bound: self.p_bound,
        }
    }

    /// Canonical form: alphabets reduced to the symbols in use and sorted by
    /// string, arcs and final outputs re-sorted, states renumbered by BFS.
    /// Two machines are considered equal iff their canonical forms are.
    pub fn canonical(&self) -> Transducer {
        let acc = self.accessible();
        let mut in_used = Vec::new();
        let mut out_used: Vec<Label> = self.initial_output.clone();
        for (s, _) in self.states.iter().zip(&acc).filter(|(_, &a)| a) {
            for a in &s.arcs {
                in_used.push(a.label);
                out_used.extend_from_slice(&a.output);
            }
            for f in &s.finals {
                out_used.extend_from_slice(f);
            }
        }
        let (isyms, imap) = self.input_symbols.sorted_subset(in_used);
        let (osyms, omap) = self.output_symbols.sorted_subset(out_used);
        let relabel = |w: &[Label]| -> Word { w.iter().map(|&l| omap[l as usize]).collect() };
        let states = self
            .states
            .iter()
            .zip(&acc)
            .map(|(s, &reachable)| {
                if !reachable {
                    return State::default();
                }
                let mut arcs: Vec<Arc> = s
                    .arcs
                    .iter()
                    .map(|a| Arc {
                        label: imap[a.label as usize],
                        target: a.target,
                        output: relabel(&a.output),
                    })
                    .collect();
                arcs.sort_by_key(|a| a.label);
                let mut finals: Vec<Word> = s.finals.iter().map(|f| relabel(f)).collect();
                finals.sort();
                State { arcs, finals }
            })
            .collect();
        let relabeled = Transducer {
            input_symbols: isyms,
            output_symbols: osyms,
            states,
            initial: self.initial,
            initial_output: relabel(&self.initial_output),
            p_bound: self.p_bound,
        };
        relabeled.renumber_bfs()
    }

    pub fn canonical_eq(&self, other: &Transducer) -> bool {
        self.canonical() == other.canonical()
    }

    /// Builds a transducer from raw parts, validating state references.
    pub(crate) fn from_parts(
        input_symbols: SymbolTable,
        output_symbols: SymbolTable,
        states: Vec<State>,
        initial: StateId,
        initial_output: Word,
        p_bound: usize,
    ) -> Transducer {
        debug_assert!((initial as usize) < states.len());
        Transducer {
            input_symbols,
            output_symbols,
            states,
            initial,
            initial_output,
            p_bound,
        }
    }

    #[cfg(test)]
    pub(crate) fn states_mut(&mut self) -> &mut Vec<State> {
        &mut self.states
    }
}
