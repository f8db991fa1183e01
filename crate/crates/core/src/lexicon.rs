//! Word/output association lists, the source of compilation.
//!
//! The text form is one `input<TAB>output` pair per line. Inputs are split
//! into characters; outputs are split per [`Tokenize`]. Repeating an input
//! with a different output expresses ambiguity.

use std::collections::{HashMap, HashSet};
use std::io::BufRead;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symbol::{Label, SymbolTable, EPSILON_STR};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Tokenize {
    /// One symbol per Unicode scalar value.
    #[default]
    Chars,
    /// Whitespace-separated tokens.
    Space,
}

impl Tokenize {
    pub fn split(self, s: &str) -> Vec<&str> {
        match self {
            Tokenize::Chars => s.char_indices().map(|(i, c)| &s[i..i + c.len_utf8()]).collect(),
            Tokenize::Space => s.split_whitespace().collect(),
        }
    }

    /// Separator used when rendering a token sequence back to text.
    pub fn separator(self) -> &'static str {
        match self {
            Tokenize::Chars => "",
            Tokenize::Space => " ",
        }
    }
}

impl FromStr for Tokenize {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "chars" => Ok(Tokenize::Chars),
            "space" => Ok(Tokenize::Space),
            other => Err(format!("unknown tokenization {other:?} (expected chars or space)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Entry {
    pub input: Word,
    pub output: Word,
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    input_symbols: SymbolTable,
    output_symbols: SymbolTable,
    entries: Vec<Entry>,
    seen: HashSet<Entry>,
    tokenize: Tokenize,
}

impl Lexicon {
    pub fn new(tokenize: Tokenize) -> Self {
        Lexicon {
            tokenize,
            ..Default::default()
        }
    }

    pub fn parse(text: &str, tokenize: Tokenize) -> Result<Self> {
        Self::read(text.as_bytes(), tokenize)
    }

    pub fn read<R: BufRead>(reader: R, tokenize: Tokenize) -> Result<Self> {
        let mut lex = Lexicon::new(tokenize);
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.strip_suffix('\r').unwrap_or(&line);
            if line.is_empty() {
                continue;
            }
            let (input, output) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(i + 1, "expected input<TAB>output"))?;
            lex.insert(input, output);
        }
        Ok(lex)
    }

    /// Adds a pair; returns false if it was already present.
    pub fn insert(&mut self, input: &str, output: &str) -> bool {
        let input: Word = Tokenize::Chars
            .split(input)
            .into_iter()
            .map(|s| self.input_symbols.intern(s))
            .collect();
        let output: Word = self
            .tokenize
            .split(output)
            .into_iter()
            .filter(|&s| s != EPSILON_STR)
            .map(|s| self.output_symbols.intern(s))
            .collect();
        self.insert_labels(input, output)
    }

    /// Adds a pair of already interned words.
    pub fn insert_labels(&mut self, input: Word, output: Word) -> bool {
        let entry = Entry { input, output };
        if self.seen.contains(&entry) {
            return false;
        }
        self.seen.insert(entry.clone());
        self.entries.push(entry);
        true
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
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

    pub fn tokenize(&self) -> Tokenize {
        self.tokenize
    }

    /// Largest number of distinct outputs associated with one input.
    pub fn ambiguity(&self) -> usize {
        let mut counts: HashMap<&[Label], usize> = HashMap::new();
        for e in &self.entries {
            *counts.entry(&e.input).or_default() += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }

    /// Renders an input word as text.
    pub fn render_input(&self, word: &[Label]) -> String {
        self.input_symbols.render(word, "")
    }

    pub fn render_output(&self, word: &[Label]) -> String {
        self.output_symbols.render(word, self.tokenize.separator())
    }

    /// The lexicon as text, one pair per line in insertion order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(&self.render_input(&e.input));
            s.push('\t');
            s.push_str(&self.render_output(&e.output));
            s.push('\n');
        }
        s
    }
}
