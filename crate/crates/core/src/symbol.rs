//! Interned alphabets.
//!
//! Input and output alphabets map external UTF-8 strings to dense ids.
//! Id 0 is always epsilon, written `<eps>`.

use std::collections::HashMap;

pub type Label = u32;

pub const EPSILON: Label = 0;
pub const EPSILON_STR: &str = "<eps>";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    symbols: Vec<String>,
    index: HashMap<String, Label>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymbolTable {
    pub fn new() -> Self {
        let mut index = HashMap::new();
        index.insert(EPSILON_STR.to_string(), EPSILON);
        SymbolTable {
            symbols: vec![EPSILON_STR.to_string()],
            index,
        }
    }

    /// Returns the id of `symbol`, adding it if needed.
    pub fn intern(&mut self, symbol: &str) -> Label {
        if let Some(&id) = self.index.get(symbol) {
            return id;
        }
        let id = self.symbols.len() as Label;
        self.symbols.push(symbol.to_string());
        self.index.insert(symbol.to_string(), id);
        id
    }

    pub fn get(&self, symbol: &str) -> Option<Label> {
        self.index.get(symbol).copied()
    }

    pub fn symbol(&self, id: Label) -> Option<&str> {
        self.symbols.get(id as usize).map(String::as_str)
    }

    /// Number of ids in use, epsilon included.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.len() == 1
    }

    /// Non-epsilon symbols in id order.
    pub fn iter(&self) -> impl Iterator<Item = (Label, &str)> {
        self.symbols
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, s)| (i as Label, s.as_str()))
    }

    /// Builds a table holding only the given ids (epsilon is implicit),
    /// ordered by their string form. Returns the table and an old-to-new
    /// id map indexed by old id.
    pub fn sorted_subset(&self, keep: impl IntoIterator<Item = Label>) -> (SymbolTable, Vec<Label>) {
        let mut ids: Vec<Label> = keep.into_iter().filter(|&l| l != EPSILON).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.sort_by(|a, b| self.symbols[*a as usize].cmp(&self.symbols[*b as usize]));
        let mut table = SymbolTable::new();
        let mut remap = vec![EPSILON; self.symbols.len()];
        for old in ids {
            remap[old as usize] = table.intern(&self.symbols[old as usize]);
        }
        (table, remap)
    }

    /// Drops the listed ids, compacting the remaining ones in order.
    pub fn without(&self, drop: &[Label]) -> (SymbolTable, Vec<Option<Label>>) {
        let mut table = SymbolTable::new();
        let mut remap = vec![None; self.symbols.len()];
        remap[0] = Some(EPSILON);
        for (id, s) in self.iter() {
            if !drop.contains(&id) {
                remap[id as usize] = Some(table.intern(s));
            }
        }
        (table, remap)
    }

    /// Renders a label sequence by concatenating symbol strings with `sep`.
    pub fn render(&self, word: &[Label], sep: &str) -> String {
        word.iter()
            .map(|&l| self.symbol(l).unwrap_or("?"))
            .collect::<Vec<_>>()
            .join(sep)
    }
}
