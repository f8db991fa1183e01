//! Functional equivalence checking by bounded enumeration.

use std::collections::BTreeSet;
use std::fmt;

use crate::apply::lookup;
use crate::error::{Error, Result};
use crate::symbol::Label;
use crate::transducer::{StateId, Transducer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyReport {
    /// No difference among `checked` input words.
    Equivalent { max_len: Option<usize>, checked: usize },
    /// The first input word, in enumeration order, on which the output sets
    /// differ. Symbols and outputs are rendered as token lists.
    Divergence {
        input: Vec<String>,
        left: Vec<Vec<String>>,
        right: Vec<Vec<String>>,
    },
}

impl VerifyReport {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, VerifyReport::Equivalent { .. })
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |outs: &[Vec<String>]| -> String {
            if outs.is_empty() {
                "(rejected)".to_string()
            } else {
                outs.iter().map(|o| o.join("")).collect::<Vec<_>>().join(", ")
            }
        };
        match self {
            VerifyReport::Equivalent { max_len: Some(n), checked } => {
                write!(f, "equivalent up to length {n} ({checked} accepted words checked)")
            }
            VerifyReport::Equivalent { max_len: None, checked } => {
                write!(f, "equivalent on {checked} words")
            }
            VerifyReport::Divergence { input, left, right } => write!(
                f,
                "divergence at {:?}: {} vs {}",
                input.concat(),
                show(left),
                show(right)
            ),
        }
    }
}

fn used_inputs(t: &Transducer) -> BTreeSet<String> {
    let trimmed = t.trim();
    trimmed
        .states()
        .iter()
        .flat_map(|s| s.arcs())
        .map(|a| trimmed.input_symbols().symbol(a.label).unwrap_or_default().to_string())
        .collect()
}

fn render(t: &Transducer, outs: Vec<Vec<Label>>) -> Vec<Vec<String>> {
    let mut r: Vec<Vec<String>> = outs
        .iter()
        .map(|w| {
            w.iter()
                .map(|&l| t.output_symbols().symbol(l).unwrap_or_default().to_string())
                .collect()
        })
        .collect();
    r.sort();
    r
}

fn outputs(t: &Transducer, input: &[String]) -> Vec<Vec<String>> {
    let labels: Option<Vec<Label>> = input.iter().map(|s| t.input_symbols().get(s)).collect();
    match labels {
        Some(w) => render(t, lookup(t, &w)),
        None => Vec::new(),
    }
}

/// Compares `a` and `b` on every input word of length at most `max_len`.
/// Subtrees rejected by both machines are skipped. The input alphabets in
/// use after trimming must coincide.
pub fn verify(a: &Transducer, b: &Transducer, max_len: usize) -> Result<VerifyReport> {
    let alphabet = used_inputs(a);
    let other = used_inputs(b);
    if alphabet != other {
        let only: Vec<&String> = alphabet.symmetric_difference(&other).collect();
        return Err(Error::AlphabetMismatch(format!("input symbols used by only one machine: {only:?}")));
    }
    let alphabet: Vec<String> = alphabet.into_iter().collect();
    let la: Vec<Option<Label>> = alphabet.iter().map(|s| a.input_symbols().get(s)).collect();
    let lb: Vec<Option<Label>> = alphabet.iter().map(|s| b.input_symbols().get(s)).collect();

    let mut checked = 0;
    let mut stack: Vec<(Vec<usize>, Option<StateId>, Option<StateId>)> =
        vec![(Vec::new(), Some(a.initial()), Some(b.initial()))];
    while let Some((word, qa, qb)) = stack.pop() {
        let input: Vec<String> = word.iter().map(|&i| alphabet[i].clone()).collect();
        let left = outputs(a, &input);
        let right = outputs(b, &input);
        if left != right {
            return Ok(VerifyReport::Divergence { input, left, right });
        }
        if !left.is_empty() {
            checked += 1;
        }
        if word.len() == max_len {
            continue;
        }
        for i in (0..alphabet.len()).rev() {
            let na = qa.zip(la[i]).and_then(|(q, l)| a.step(q, l)).map(|(r, _)| r);
            let nb = qb.zip(lb[i]).and_then(|(q, l)| b.step(q, l)).map(|(r, _)| r);
            if na.is_some() || nb.is_some() {
                let mut w = word.clone();
                w.push(i);
                stack.push((w, na, nb));
            }
        }
    }
    Ok(VerifyReport::Equivalent {
        max_len: Some(max_len),
        checked,
    })
}

/// Compares `a` and `b` on the given input words, each a token list.
pub fn verify_words<S: AsRef<str>>(a: &Transducer, b: &Transducer, words: &[Vec<S>]) -> VerifyReport {
    for word in words {
        let input: Vec<String> = word.iter().map(|s| s.as_ref().to_string()).collect();
        let left = outputs(a, &input);
        let right = outputs(b, &input);
        if left != right {
            return VerifyReport::Divergence { input, left, right };
        }
    }
    VerifyReport::Equivalent {
        max_len: None,
        checked: words.len(),
    }
}
