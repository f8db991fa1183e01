//! Tab-separated text format.
//!
//! ```text
//! #lexfst v1 initial=0 lambda=<eps> p=2
//! 0	1	a	x|y
//! 1			a
//! 1			b
//! ```
//!
//! Transition lines are `src<TAB>dst<TAB>input<TAB>output`; final lines are
//! `state<TAB><TAB><TAB>output`, one per final output. Outputs are symbol
//! sequences joined by `|`, `<eps>` when empty. Inside a symbol, `\`, `|`,
//! space, tab, CR and LF are escaped as `\\`, `\|`, `\s`, `\t`, `\r`, `\n`.

#![allow(clippy::tabs_in_doc_comments)]

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::nondet::NondetTransducer;
use crate::symbol::{Label, SymbolTable, EPSILON_STR};
use crate::transducer::{StateId, Transducer};
use crate::word::Word;

const HEADER: &str = "#lexfst v1 ";

pub fn escape(symbol: &str) -> String {
    let mut s = String::with_capacity(symbol.len());
    for c in symbol.chars() {
        match c {
            '\\' => s.push_str("\\\\"),
            '|' => s.push_str("\\|"),
            ' ' => s.push_str("\\s"),
            '\t' => s.push_str("\\t"),
            '\r' => s.push_str("\\r"),
            '\n' => s.push_str("\\n"),
            c => s.push(c),
        }
    }
    s
}

fn unescape(s: &str, line: usize) -> Result<String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('|') => out.push('|'),
            Some('s') => out.push(' '),
            Some('t') => out.push('\t'),
            Some('r') => out.push('\r'),
            Some('n') => out.push('\n'),
            other => return Err(Error::parse(line, format!("bad escape \\{}", other.map(String::from).unwrap_or_default()))),
        }
    }
    Ok(out)
}

fn write_output(s: &mut String, symbols: &SymbolTable, word: &[Label]) {
    if word.is_empty() {
        s.push_str(EPSILON_STR);
        return;
    }
    for (i, &l) in word.iter().enumerate() {
        if i > 0 {
            s.push('|');
        }
        s.push_str(&escape(symbols.symbol(l).expect("output label in table")));
    }
}

/// Splits on unescaped `|`.
fn split_tokens(s: &str) -> Vec<&str> {
    let mut tokens = Vec::new();
    let mut start = 0;
    let mut escaped = false;
    for (i, c) in s.char_indices() {
        if escaped {
            escaped = false;
        } else if c == '\\' {
            escaped = true;
        } else if c == '|' {
            tokens.push(&s[start..i]);
            start = i + 1;
        }
    }
    tokens.push(&s[start..]);
    tokens
}

fn read_output(s: &str, symbols: &mut SymbolTable, line: usize) -> Result<Word> {
    if s == EPSILON_STR {
        return Ok(Word::new());
    }
    split_tokens(s)
        .into_iter()
        .map(|tok| {
            if tok.is_empty() || tok == EPSILON_STR {
                return Err(Error::parse(line, format!("empty or epsilon token in output {s:?}")));
            }
            Ok(symbols.intern(&unescape(tok, line)?))
        })
        .collect()
}

pub fn write_text(t: &Transducer) -> String {
    let mut s = String::new();
    s.push_str(HEADER);
    let _ = write!(s, "initial={} lambda=", t.initial());
    write_output(&mut s, t.output_symbols(), t.initial_output());
    let _ = writeln!(s, " p={}", t.p_bound());
    for (q, state) in t.states().iter().enumerate() {
        for a in state.arcs() {
            let _ = write!(
                s,
                "{q}\t{}\t{}\t",
                a.target,
                escape(t.input_symbols().symbol(a.label).expect("input label in table"))
            );
            write_output(&mut s, t.output_symbols(), &a.output);
            s.push('\n');
        }
        for f in state.finals() {
            let _ = write!(s, "{q}\t\t\t");
            write_output(&mut s, t.output_symbols(), f);
            s.push('\n');
        }
    }
    s
}

/// Text of the canonical form; equal machines give equal strings.
pub fn canonical_text(t: &Transducer) -> String {
    write_text(&t.canonical())
}

struct Header {
    initial: StateId,
    lambda: String,
    p: usize,
}

fn parse_header(line: &str) -> Result<Header> {
    let rest = line
        .strip_prefix(HEADER)
        .ok_or_else(|| Error::parse(1, "expected header `#lexfst v1 initial=<id> lambda=<out> p=<int>`"))?;
    let rest = rest
        .strip_prefix("initial=")
        .ok_or_else(|| Error::parse(1, "missing initial="))?;
    let (initial, rest) = rest.split_once(' ').ok_or_else(|| Error::parse(1, "truncated header"))?;
    let rest = rest.strip_prefix("lambda=").ok_or_else(|| Error::parse(1, "missing lambda="))?;
    let (lambda, p) = rest.rsplit_once(" p=").ok_or_else(|| Error::parse(1, "missing p="))?;
    Ok(Header {
        initial: initial
            .parse()
            .map_err(|_| Error::parse(1, format!("bad initial state {initial:?}")))?,
        lambda: lambda.to_string(),
        p: p.trim_end().parse().map_err(|_| Error::parse(1, format!("bad p {p:?}")))?,
    })
}

/// State ids are dense, so a file of n lines cannot mention more than 2n + 1.
fn parse_state(s: &str, line: usize, max_state: usize) -> Result<StateId> {
    let q: StateId = s.parse().map_err(|_| Error::parse(line, format!("bad state id {s:?}")))?;
    if q as usize > max_state {
        return Err(Error::parse(line, format!("state id {q} out of range")));
    }
    Ok(q)
}

/// Reads the text format, allowing several transitions per
/// (state, input symbol).
pub fn read_text_nondet(text: &str) -> Result<NondetTransducer> {
    let max_state = 2 * text.lines().count() + 1;
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let header = parse_header(header.strip_suffix('\r').unwrap_or(header))?;
    if header.initial as usize > max_state {
        return Err(Error::parse(1, "initial state id out of range"));
    }

    let mut t = NondetTransducer::new(SymbolTable::new(), SymbolTable::new());
    let lambda = read_output(&header.lambda, t.output_symbols_mut(), 1)?;
    t.set_initial_output(lambda);
    t.set_p_bound(Some(header.p));
    ensure_states(&mut t, header.initial);
    t.set_initial(header.initial)?;

    for (i, line) in lines {
        let n = i + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::parse(n, format!("expected 4 tab-separated fields, found {}", fields.len())));
        }
        let src = parse_state(fields[0], n, max_state)?;
        ensure_states(&mut t, src);
        if fields[1].is_empty() && fields[2].is_empty() {
            let out = read_output(fields[3], t.output_symbols_mut(), n)?;
            t.add_final_output(src, out)?;
        } else {
            let dst = parse_state(fields[1], n, max_state)?;
            ensure_states(&mut t, dst);
            let sym = unescape(fields[2], n)?;
            if sym.is_empty() {
                return Err(Error::parse(n, "empty input symbol"));
            }
            let label = t.input_symbols_mut().intern(&sym);
            let out = read_output(fields[3], t.output_symbols_mut(), n)?;
            t.add_transition(src, label, out, dst)?;
        }
    }
    Ok(t)
}

/// Reads a sequential or p-subsequential transducer.
pub fn read_text(text: &str) -> Result<Transducer> {
    let nd = read_text_nondet(text)?;
    let p = nd.p_bound().unwrap_or(1);
    let found = nd.max_ambiguity();
    if found > p {
        return Err(Error::AmbiguityExceeded { p, found });
    }
    let mut t = nd.to_sequential()?;
    t.set_p_bound(p);
    Ok(t)
}

fn ensure_states(t: &mut NondetTransducer, q: StateId) {
    while t.num_states() <= q as usize {
        t.add_state();
    }
}
