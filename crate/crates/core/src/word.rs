//! Output strings and greatest-common-prefix arithmetic.

use crate::symbol::Label;

/// A sequence of symbol ids. The empty word is epsilon.
pub type Word = Vec<Label>;

/// Length of the longest common prefix of `a` and `b`.
pub fn common_prefix_len(a: &[Label], b: &[Label]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Length of the common prefix of `acc` and the concatenation `head · tail`,
/// without materializing the concatenation.
pub fn common_prefix_len_concat(acc: &[Label], head: &[Label], tail: &[Label]) -> usize {
    let n = common_prefix_len(acc, head);
    if n < head.len() || n == acc.len() {
        return n;
    }
    n + common_prefix_len(&acc[n..], tail)
}

/// Greatest common prefix of a set of words; `None` for the empty set.
pub fn gcp<'a, I>(words: I) -> Option<Word>
where
    I: IntoIterator<Item = &'a [Label]>,
{
    let mut iter = words.into_iter();
    let mut acc = iter.next()?.to_vec();
    for w in iter {
        let n = common_prefix_len(&acc, w);
        acc.truncate(n);
    }
    Some(acc)
}

pub fn concat(a: &[Label], b: &[Label]) -> Word {
    let mut w = Vec::with_capacity(a.len() + b.len());
    w.extend_from_slice(a);
    w.extend_from_slice(b);
    w
}

/// `prefix⁻¹ · word`, if `prefix` is a prefix of `word`.
pub fn strip_prefix<'a>(prefix: &[Label], word: &'a [Label]) -> Option<&'a [Label]> {
    word.strip_prefix(prefix)
}
