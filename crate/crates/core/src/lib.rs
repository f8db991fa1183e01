//! Minimal sequential and p-subsequential string-to-string transducers.
//!
//! The pipeline turns a lexicon of `input -> output` pairs into the smallest
//! deterministic transducer computing the same function: build a prefix
//! tree, encode p final outputs as end markers, push outputs toward the
//! initial state, merge equivalent states, decode.
//!
//! ```
//! use lexfst::{compile, lookup_symbols, Lexicon, Tokenize};
//!
//! let lex = Lexicon::parse("abc\tabca\nabc\tabcb\n", Tokenize::Chars).unwrap();
//! let t = compile(&lex, None).unwrap();
//! let outs: Vec<String> = lookup_symbols(&t, ["a", "b", "c"])
//!     .iter()
//!     .map(|w| t.output_symbols().render(w, ""))
//!     .collect();
//! assert_eq!(outs, ["abca", "abcb"]);
//! ```

pub mod apply;
pub mod builder;
pub mod determinize;
pub mod error;
pub mod io;
pub mod lexicon;
pub mod minimize;
pub mod nondet;
pub mod psubseq;
pub mod push;
pub mod symbol;
pub mod synth;
pub mod transducer;
pub mod verify;
pub mod word;

#[cfg(test)]
mod testutil;

pub use apply::{complete, lookup, lookup_symbols, reverse_apply, ReverseResult, REVERSE_BUDGET};
pub use builder::{build_trie, compile};
pub use determinize::{determinize, Limits};
pub use error::{Error, Result};
pub use io::{read_binary, read_file, read_text, write_binary, write_file, write_text, Stats};
pub use lexicon::{Entry, Lexicon, Tokenize};
pub use minimize::{minimize_sequential, states_equivalent_oracle};
pub use nondet::NondetTransducer;
pub use psubseq::{decode_p, encode_p, minimize_p};
pub use push::{compute_prefix_map, is_onward, push_outputs, PrefixMap};
pub use symbol::{Label, SymbolTable, EPSILON, EPSILON_STR};
pub use transducer::{Arc, State, StateId, Transducer};
pub use verify::{verify, VerifyReport};
pub use word::Word;
