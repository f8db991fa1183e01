//! Compact binary format.
//!
//! Layout, all integers LEB128 varints:
//!
//! ```text
//! "LEXFST01"
//! p_bound initial |λ| λ...
//! input table:  count, then (byte length, UTF-8 bytes) per non-epsilon symbol
//! output table: same
//! num_states
//! per state: num_arcs, then per arc (label delta, target, |out|, out...)
//! num_final_states, then per final state (state delta, count, (|w|, w...)...)
//! ```
//!
//! Arc labels are strictly increasing within a state, so they are stored as
//! deltas from the previous label (from 0 for the first).

use crate::error::{Error, Result};
use crate::symbol::{Label, SymbolTable};
use crate::transducer::{Arc, State, StateId, Transducer};
use crate::word::Word;

pub const MAGIC: &[u8; 8] = b"LEXFST01";
const MAGIC_STEM: &[u8] = b"LEXFST";

struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn varint(&mut self, mut v: u64) {
        loop {
            let byte = (v & 0x7f) as u8;
            v >>= 7;
            if v == 0 {
                self.buf.push(byte);
                return;
            }
            self.buf.push(byte | 0x80);
        }
    }

    fn usize(&mut self, v: usize) {
        self.varint(v as u64);
    }

    fn word(&mut self, w: &[Label]) {
        self.usize(w.len());
        for &l in w {
            self.varint(l as u64);
        }
    }

    fn table(&mut self, t: &SymbolTable) {
        self.usize(t.len() - 1);
        for (_, s) in t.iter() {
            self.usize(s.len());
            self.buf.extend_from_slice(s.as_bytes());
        }
    }
}

pub fn write_binary(t: &Transducer) -> Vec<u8> {
    let mut w = Writer {
        buf: Vec::with_capacity(64 + 8 * t.num_transitions()),
    };
    w.buf.extend_from_slice(MAGIC);
    w.usize(t.p_bound());
    w.varint(t.initial() as u64);
    w.word(t.initial_output());
    w.table(t.input_symbols());
    w.table(t.output_symbols());
    w.usize(t.num_states());
    for s in t.states() {
        w.usize(s.arcs().len());
        let mut prev = 0;
        for a in s.arcs() {
            w.varint((a.label - prev) as u64);
            prev = a.label;
            w.varint(a.target as u64);
            w.word(&a.output);
        }
    }
    w.usize(t.num_finals());
    let mut prev = 0;
    for (q, s) in t.states().iter().enumerate().filter(|(_, s)| s.is_final()) {
        w.usize(q - prev);
        prev = q;
        w.usize(s.finals().len());
        for f in s.finals() {
            w.word(f);
        }
    }
    w.buf
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn varint(&mut self) -> Result<u64> {
        let mut v: u64 = 0;
        for shift in (0..64).step_by(7) {
            let byte = *self.buf.get(self.pos).ok_or(Error::TruncatedFile)?;
            self.pos += 1;
            v |= ((byte & 0x7f) as u64) << shift;
            if byte & 0x80 == 0 {
                return Ok(v);
            }
        }
        Err(Error::Corrupt("varint too long".into()))
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        u32::try_from(self.varint()?).map_err(|_| Error::Corrupt(format!("{what} out of range")))
    }

    /// A length that must be coverable by the remaining bytes.
    fn len(&mut self) -> Result<usize> {
        let n = self.varint()? as usize;
        if n > self.buf.len() - self.pos {
            return Err(Error::TruncatedFile);
        }
        Ok(n)
    }

    fn word(&mut self, alphabet: usize) -> Result<Word> {
        let n = self.len()?;
        (0..n)
            .map(|_| {
                let l = self.u32("output label")?;
                if l == 0 || l as usize >= alphabet {
                    return Err(Error::Corrupt(format!("output label {l} not in table")));
                }
                Ok(l)
            })
            .collect()
    }

    fn table(&mut self) -> Result<SymbolTable> {
        let n = self.len()?;
        let mut t = SymbolTable::new();
        for _ in 0..n {
            let len = self.len()?;
            let bytes = &self.buf[self.pos..self.pos + len];
            self.pos += len;
            let s = std::str::from_utf8(bytes).map_err(|_| Error::Corrupt("symbol is not UTF-8".into()))?;
            let before = t.len();
            t.intern(s);
            if t.len() == before {
                return Err(Error::Corrupt(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(t)
    }
}

pub fn read_binary(bytes: &[u8]) -> Result<Transducer> {
    if bytes.len() < MAGIC.len() {
        return Err(if MAGIC.starts_with(bytes) {
            Error::TruncatedFile
        } else {
            Error::BadMagic
        });
    }
    if !bytes.starts_with(MAGIC_STEM) {
        return Err(Error::BadMagic);
    }
    if &bytes[..MAGIC.len()] != MAGIC {
        return Err(Error::VersionMismatch(
            String::from_utf8_lossy(&bytes[MAGIC_STEM.len()..MAGIC.len()]).into_owned(),
        ));
    }
    let mut r = Reader {
        buf: bytes,
        pos: MAGIC.len(),
    };
    let p_bound = r.varint()? as usize;
    let initial = r.u32("initial state")?;
    let lambda_raw = r.varint_word()?;
    let isyms = r.table()?;
    let osyms = r.table()?;
    let lambda = check_word(lambda_raw, osyms.len())?;
    let num_states = r.len()?;
    if initial as usize >= num_states {
        return Err(Error::Corrupt(format!("initial state {initial} out of range")));
    }
    let mut states = Vec::with_capacity(num_states);
    for _ in 0..num_states {
        let n = r.len()?;
        let mut arcs = Vec::with_capacity(n);
        let mut label: Label = 0;
        for i in 0..n {
            let delta = r.u32("label delta")?;
            if delta == 0 && i > 0 || (i == 0 && delta == 0) {
                return Err(Error::Corrupt("arc labels must be increasing and non-epsilon".into()));
            }
            label = label
                .checked_add(delta)
                .filter(|&l| (l as usize) < isyms.len())
                .ok_or_else(|| Error::Corrupt("input label not in table".into()))?;
            let target = r.u32("target")?;
            if target as usize >= num_states {
                return Err(Error::Corrupt(format!("target {target} out of range")));
            }
            let output = r.word(osyms.len())?;
            arcs.push(Arc { label, target, output });
        }
        states.push(State { arcs, finals: Vec::new() });
    }
    let num_finals = r.len()?;
    let mut q = 0usize;
    for i in 0..num_finals {
        let delta = r.varint()? as usize;
        if i > 0 && delta == 0 {
            return Err(Error::Corrupt("final states must be increasing".into()));
        }
        q = q
            .checked_add(delta)
            .filter(|&q| q < num_states)
            .ok_or_else(|| Error::Corrupt("final state out of range".into()))?;
        let k = r.len()?;
        if k == 0 {
            return Err(Error::Corrupt("final state without outputs".into()));
        }
        let mut finals = (0..k).map(|_| r.word(osyms.len())).collect::<Result<Vec<_>>>()?;
        let len = finals.len();
        finals.sort();
        finals.dedup();
        if finals.len() != len {
            return Err(Error::Corrupt("duplicate final output".into()));
        }
        states[q].finals = finals;
    }
    if r.pos != bytes.len() {
        return Err(Error::Corrupt(format!("{} trailing bytes", bytes.len() - r.pos)));
    }
    Ok(Transducer::from_parts(isyms, osyms, states, initial as StateId, lambda, p_bound))
}

impl Reader<'_> {
    /// Reads a word before its alphabet is known.
    fn varint_word(&mut self) -> Result<Vec<u64>> {
        let n = self.len()?;
        (0..n).map(|_| self.varint()).collect()
    }
}

fn check_word(raw: Vec<u64>, alphabet: usize) -> Result<Word> {
    raw.into_iter()
        .map(|l| {
            if l == 0 || l as usize >= alphabet {
                Err(Error::Corrupt(format!("output label {l} not in table")))
            } else {
                Ok(l as Label)
            }
        })
        .collect()
}
