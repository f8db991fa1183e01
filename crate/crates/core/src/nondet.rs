//! Transducers that may carry several transitions per (state, input symbol).
//! These are the input to [`crate::determinize`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::symbol::{Label, SymbolTable, EPSILON};
use crate::transducer::{Arc, StateId, Transducer};
use crate::word::{concat, Word};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NondetState {
    pub(crate) arcs: Vec<Arc>,
    pub(crate) finals: Vec<Word>,
}

impl NondetState {
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn finals(&self) -> &[Word] {
        &self.finals
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondetTransducer {
    pub(crate) input_symbols: SymbolTable,
    pub(crate) output_symbols: SymbolTable,
    pub(crate) states: Vec<NondetState>,
    pub(crate) initial: StateId,
    pub(crate) initial_output: Word,
    /// Declared bound on final outputs, if any.
    pub(crate) p_bound: Option<usize>,
}

impl NondetTransducer {
    pub fn new(input_symbols: SymbolTable, output_symbols: SymbolTable) -> Self {
        NondetTransducer {
            input_symbols,
            output_symbols,
            states: vec![NondetState::default()],
            initial: 0,
            initial_output: Word::new(),
            p_bound: None,
        }
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
        self.states.push(NondetState::default());
        (self.states.len() - 1) as StateId
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.states.iter().map(|s| s.arcs.len()).sum()
    }

    pub fn states(&self) -> &[NondetState] {
        &self.states
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

    pub fn p_bound(&self) -> Option<usize> {
        self.p_bound
    }

    pub fn set_p_bound(&mut self, p: Option<usize>) {
        self.p_bound = p;
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if (q as usize) < self.states.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(q))
        }
    }

    /// Adds a transition. Repeated (state, label) pairs are allowed, as are
    /// epsilon inputs, although [`crate::determinize`] rejects the latter.
    pub fn add_transition(&mut self, q: StateId, label: Label, output: Word, target: StateId) -> Result<()> {
        self.check_state(q)?;
        self.check_state(target)?;
        let arc = Arc { label, target, output };
        let arcs = &mut self.states[q as usize].arcs;
        if !arcs.contains(&arc) {
            arcs.push(arc);
        }
        Ok(())
    }

    pub fn add_final_output(&mut self, q: StateId, output: Word) -> Result<()> {
        self.check_state(q)?;
        let finals = &mut self.states[q as usize].finals;
        if let Err(pos) = finals.binary_search(&output) {
            finals.insert(pos, output);
        }
        Ok(())
    }

    /// Every output the machine associates with `input`, sorted and
    /// deduplicated. Epsilon-input transitions are not followed.
    pub fn lookup(&self, input: &[Label]) -> Vec<Word> {
        let mut configs: BTreeSet<(StateId, Word)> = BTreeSet::new();
        configs.insert((self.initial, self.initial_output.clone()));
        for &label in input {
            let mut next = BTreeSet::new();
            for (q, out) in &configs {
                for a in self.states[*q as usize].arcs.iter().filter(|a| a.label == label) {
                    next.insert((a.target, concat(out, &a.output)));
                }
            }
            if next.is_empty() {
                return Vec::new();
            }
            configs = next;
        }
        let outputs: BTreeSet<Word> = configs
            .iter()
            .flat_map(|(q, out)| self.states[*q as usize].finals.iter().map(move |f| concat(out, f)))
            .collect();
        outputs.into_iter().collect()
    }

    /// Converts to a sequential transducer, failing on a repeated
    /// (state, input) pair or an epsilon input.
    pub fn to_sequential(&self) -> Result<Transducer> {
        let mut t = Transducer::new(self.input_symbols.clone(), self.output_symbols.clone());
        for _ in 1..self.states.len() {
            t.add_state();
        }
        t.set_initial(self.initial)?;
        t.set_initial_output(self.initial_output.clone());
        t.set_p_bound(self.p_bound.unwrap_or(0).max(self.max_ambiguity()).max(1));
        for (q, s) in self.states.iter().enumerate() {
            for a in &s.arcs {
                if a.label == EPSILON {
                    return Err(Error::InputEpsilon(q as StateId));
                }
                t.add_transition(q as StateId, a.label, a.output.clone(), a.target)?;
            }
            if !s.finals.is_empty() {
                t.set_finals(q as StateId, s.finals.clone())?;
            }
        }
        Ok(t)
    }

    pub fn max_ambiguity(&self) -> usize {
        self.states.iter().map(|s| s.finals.len()).max().unwrap_or(0)
    }
}

impl From<&Transducer> for NondetTransducer {
    fn from(t: &Transducer) -> Self {
        NondetTransducer {
            input_symbols: t.input_symbols.clone(),
            output_symbols: t.output_symbols.clone(),
            states: t
                .states
                .iter()
                .map(|s| NondetState {
                    arcs: s.arcs.clone(),
                    finals: s.finals.clone(),
                })
                .collect(),
            initial: t.initial,
            initial_output: t.initial_output.clone(),
            p_bound: Some(t.p_bound),
        }
    }
}
