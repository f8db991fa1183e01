use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Duration;

use crate::io::binary::write_binary;
use crate::transducer::Transducer;

/// Size report for a machine, optionally with compilation details.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    /// Lexicon entries, when the machine was compiled from one.
    pub entries: Option<usize>,
    /// Largest number of final outputs on one state.
    pub max_ambiguity: usize,
    pub p_bound: usize,
    pub states: usize,
    pub transitions: usize,
    pub finals: usize,
    /// Input symbols used on some transition.
    pub input_alphabet: usize,
    /// Output symbols used in some output.
    pub output_alphabet: usize,
    pub binary_bytes: usize,
    pub trie_states: Option<usize>,
    pub elapsed: Option<Duration>,
    /// Peak resident set size of the process in KiB.
    pub peak_rss_kib: Option<u64>,
}

impl Stats {
    /// Structural counts. A machine with an empty language reports zeros.
    pub fn of(t: &Transducer) -> Stats {
        if t.is_empty_language() {
            return Stats {
                p_bound: t.p_bound(),
                binary_bytes: write_binary(t).len(),
                ..Stats::default()
            };
        }
        let mut inputs = BTreeSet::new();
        let mut outputs: BTreeSet<u32> = t.initial_output().iter().copied().collect();
        for s in t.states() {
            for a in s.arcs() {
                inputs.insert(a.label);
                outputs.extend(a.output.iter().copied());
            }
            for f in s.finals() {
                outputs.extend(f.iter().copied());
            }
        }
        Stats {
            entries: None,
            max_ambiguity: t.max_ambiguity(),
            p_bound: t.p_bound(),
            states: t.num_states(),
            transitions: t.num_transitions(),
            finals: t.num_finals(),
            input_alphabet: inputs.len(),
            output_alphabet: outputs.len(),
            binary_bytes: write_binary(t).len(),
            trie_states: None,
            elapsed: None,
            peak_rss_kib: None,
        }
    }

    fn rows(&self) -> Vec<(&'static str, &'static str, String)> {
        let mut rows = Vec::new();
        if let Some(n) = self.entries {
            rows.push(("Entries", "entries", n.to_string()));
        }
        rows.push(("Max. ambg", "max_ambg", self.max_ambiguity.to_string()));
        rows.push(("p", "p", self.p_bound.to_string()));
        if let Some(n) = self.trie_states {
            rows.push(("Trie states", "trie_states", n.to_string()));
        }
        rows.push(("States", "states", self.states.to_string()));
        rows.push(("Transitions", "transitions", self.transitions.to_string()));
        rows.push(("Final states", "finals", self.finals.to_string()));
        rows.push((
            "Alphabet",
            "alphabet",
            format!("{}/{}", self.input_alphabet, self.output_alphabet),
        ));
        rows.push(("Binary size", "binary_bytes", self.binary_bytes.to_string()));
        if let Some(d) = self.elapsed {
            rows.push(("Time spent", "time_s", format!("{:.3}", d.as_secs_f64())));
        }
        if let Some(kib) = self.peak_rss_kib {
            rows.push(("Peak RSS (KiB)", "peak_rss_kib", kib.to_string()));
        }
        rows
    }

    /// One `label  value` line per row, values aligned.
    pub fn to_aligned(&self) -> String {
        let rows = self.rows();
        let width = rows.iter().map(|(l, _, _)| l.len()).max().unwrap_or(0);
        let mut s = String::new();
        for (label, _, value) in rows {
            let _ = writeln!(s, "{label:<width$}  {value}");
        }
        s
    }

    /// All rows on one line as space-separated `key=value` pairs.
    pub fn to_key_values(&self) -> String {
        self.rows()
            .into_iter()
            .map(|(_, k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// A row in the layout `Entries | Max. ambg | States | Transitions |
    /// Alphabet | Time spent`.
    pub fn table_row(&self) -> String {
        let entries = self.entries.map_or("-".to_string(), |n| n.to_string());
        let time = self.elapsed.map_or("-".to_string(), |d| format!("{:.2}s", d.as_secs_f64()));
        format!(
            "{entries} | {} | {} | {} | {}/{} | {time}",
            self.max_ambiguity, self.states, self.transitions, self.input_alphabet, self.output_alphabet
        )
    }

    pub const TABLE_HEADER: &'static str = "Entries | Max. ambg | States | Transitions | Alphabet | Time spent";
}

/// Peak resident set size of this process, from `/proc/self/status`.
pub fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    status
        .lines()
        .find_map(|l| l.strip_prefix("VmHWM:"))
        .and_then(|v| v.trim().trim_end_matches("kB").trim().parse().ok())
}
