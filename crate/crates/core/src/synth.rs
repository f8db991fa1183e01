//! Seeded synthetic lexicons.
//!
//! [`zipf_lexicon`] imitates an inflectional dictionary: stems made of
//! Zipf-distributed syllables, each inflected through a paradigm of
//! suffixes, with outputs `lemma characters + tags` tokenized by spaces.
//! [`small_lexicon`] draws tiny uniform lexicons for property checks.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};

use crate::lexicon::{Lexicon, Tokenize};

pub const DEFAULT_SEED: u64 = 1994;

const ONSETS: &[&str] = &[
    "", "b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "ch", "gr", "pl", "tr", "br", "st",
];
const NUCLEI: &[&str] = &["a", "e", "i", "o", "u", "ou", "ai", "é", "an", "on"];
const CODAS: &[&str] = &["", "", "", "", "r", "l", "n", "s", "t", "x"];

/// Suffix, lemma suffix, tags. Forms sharing a suffix give ambiguity.
type Form = (&'static str, &'static str, &'static [&'static str]);

const PARADIGMS: &[&[Form]] = &[
    // nouns
    &[("", "", &["+N", "+s"]), ("s", "", &["+N", "+p"])],
    &[("", "", &["+N", "+s"]), ("x", "", &["+N", "+p"])],
    // adjectives
    &[
        ("", "", &["+A", "+m", "+s"]),
        ("e", "", &["+A", "+f", "+s"]),
        ("s", "", &["+A", "+m", "+p"]),
        ("es", "", &["+A", "+f", "+p"]),
    ],
    // first group verbs
    &[
        ("er", "er", &["+V", "+W"]),
        ("e", "er", &["+V", "+P", "+1s"]),
        ("e", "er", &["+V", "+P", "+3s"]),
        ("e", "er", &["+V", "+S", "+1s"]),
        ("e", "er", &["+V", "+S", "+3s"]),
        ("es", "er", &["+V", "+P", "+2s"]),
        ("ons", "er", &["+V", "+P", "+1p"]),
        ("ez", "er", &["+V", "+P", "+2p"]),
        ("ent", "er", &["+V", "+P", "+3p"]),
        ("ait", "er", &["+V", "+I", "+3s"]),
        ("é", "er", &["+V", "+K", "+m", "+s"]),
        ("ée", "er", &["+V", "+K", "+f", "+s"]),
        ("ant", "er", &["+V", "+G"]),
    ],
    // second group verbs
    &[
        ("ir", "ir", &["+V", "+W"]),
        ("is", "ir", &["+V", "+P", "+1s"]),
        ("is", "ir", &["+V", "+P", "+2s"]),
        ("is", "ir", &["+V", "+J", "+1s"]),
        ("it", "ir", &["+V", "+P", "+3s"]),
        ("issons", "ir", &["+V", "+P", "+1p"]),
        ("issent", "ir", &["+V", "+P", "+3p"]),
        ("i", "ir", &["+V", "+K", "+m", "+s"]),
    ],
    // invariable
    &[("", "", &["+ADV"])],
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZipfConfig {
    pub entries: usize,
    pub seed: u64,
    /// Upper bound on outputs per input word.
    pub max_ambiguity: usize,
    /// Zipf exponent for syllable and paradigm choice.
    pub exponent: f64,
}

impl Default for ZipfConfig {
    fn default() -> Self {
        ZipfConfig {
            entries: 10_000,
            seed: DEFAULT_SEED,
            max_ambiguity: 4,
            exponent: 1.1,
        }
    }
}

fn zipf_index<R: Rng>(dist: &Zipf<f64>, rng: &mut R) -> usize {
    dist.sample(rng) as usize - 1
}

/// Generates exactly `entries` distinct pairs (fewer only if the stem space
/// is exhausted), with at most `max_ambiguity` outputs per input.
pub fn zipf_lexicon(cfg: &ZipfConfig) -> Lexicon {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let onset = Zipf::new(ONSETS.len() as u64, cfg.exponent).expect("valid zipf");
    let nucleus = Zipf::new(NUCLEI.len() as u64, cfg.exponent).expect("valid zipf");
    let coda = Zipf::new(CODAS.len() as u64, cfg.exponent).expect("valid zipf");
    let paradigm = Zipf::new(PARADIGMS.len() as u64, cfg.exponent).expect("valid zipf");

    let mut lex = Lexicon::new(Tokenize::Space);
    let mut readings: HashMap<String, usize> = HashMap::new();
    let mut stems: HashSet<(String, usize)> = HashSet::new();
    let max_ambiguity = cfg.max_ambiguity.max(1);
    let mut misses = 0;

    while lex.len() < cfg.entries && misses < 10_000 {
        let syllables = rng.gen_range(1..=4);
        let mut stem = String::new();
        for _ in 0..syllables {
            stem.push_str(ONSETS[zipf_index(&onset, &mut rng)]);
            stem.push_str(NUCLEI[zipf_index(&nucleus, &mut rng)]);
        }
        stem.push_str(CODAS[zipf_index(&coda, &mut rng)]);
        let class = zipf_index(&paradigm, &mut rng);
        let forms = PARADIGMS[class];
        if !stems.insert((stem.clone(), class)) {
            misses += 1;
            continue;
        }
        misses = 0;
        for &(suffix, lemma_suffix, tags) in forms {
            if lex.len() >= cfg.entries {
                break;
            }
            let input = format!("{stem}{suffix}");
            let count = readings.entry(input.clone()).or_default();
            if *count >= max_ambiguity {
                continue;
            }
            let lemma = format!("{stem}{lemma_suffix}");
            let mut output: Vec<&str> = lemma
                .char_indices()
                .map(|(i, c)| &lemma[i..i + c.len_utf8()])
                .collect();
            output.extend_from_slice(tags);
            if lex.insert(&input, &output.join(" ")) {
                *count += 1;
            }
        }
    }
    lex
}

/// Shape of a small uniform lexicon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallShape {
    pub max_entries: usize,
    pub max_input_len: usize,
    pub input_alphabet: usize,
    pub output_alphabet: usize,
    pub max_output_len: usize,
    /// Chance, in percent, that an entry reuses an earlier input.
    pub ambiguity_percent: u32,
}

impl Default for SmallShape {
    fn default() -> Self {
        SmallShape {
            max_entries: 50,
            max_input_len: 8,
            input_alphabet: 4,
            output_alphabet: 4,
            max_output_len: 6,
            ambiguity_percent: 10,
        }
    }
}

/// A seeded lexicon over inputs `a, b, ...` and outputs `A, B, ...`.
/// Inputs are non-empty. At least one entry is always produced.
pub fn small_lexicon(seed: u64, shape: &SmallShape) -> Lexicon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    small_lexicon_with(&mut rng, shape)
}

pub fn small_lexicon_with<R: Rng>(rng: &mut R, shape: &SmallShape) -> Lexicon {
    let letters = |base: u8, n: usize| -> Vec<char> { (0..n as u8).map(|i| (base + i) as char).collect() };
    let ins = letters(b'a', shape.input_alphabet.clamp(1, 26));
    let outs = letters(b'A', shape.output_alphabet.clamp(1, 26));
    let mut lex = Lexicon::new(Tokenize::Chars);
    let mut inputs: Vec<String> = Vec::new();
    let n = rng.gen_range(1..=shape.max_entries.max(1));
    for _ in 0..n {
        let input = if !inputs.is_empty() && rng.gen_range(0..100) < shape.ambiguity_percent {
            inputs.choose(rng).expect("non-empty").clone()
        } else {
            let len = rng.gen_range(1..=shape.max_input_len.max(1));
            (0..len).map(|_| *ins.choose(rng).expect("non-empty")).collect()
        };
        let len = rng.gen_range(0..=shape.max_output_len);
        let output: String = (0..len).map(|_| *outs.choose(rng).expect("non-empty")).collect();
        if lex.insert(&input, &output) {
            inputs.push(input);
        }
    }
    lex
}
