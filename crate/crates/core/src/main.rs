use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use lexfst::apply::{complete, encode_input, lookup, reverse_apply, REVERSE_BUDGET};
use lexfst::builder::{build_trie, compile};
use lexfst::determinize::{determinize, Limits, DEFAULT_MAX_RESIDUAL_LEN, DEFAULT_MAX_STATES};
use lexfst::io::{peak_rss_kib, read_file, read_file_nondet, write_file, Stats};
use lexfst::lexicon::{Lexicon, Tokenize};
use lexfst::minimize::minimize_sequential;
use lexfst::psubseq::minimize_p;
use lexfst::push::{compute_prefix_map, is_onward, push_outputs};
use lexfst::synth::{zipf_lexicon, ZipfConfig, DEFAULT_SEED};
use lexfst::verify::{verify, verify_words, VerifyReport};
use lexfst::Error;

const MAX_STATES_ENV: &str = "LEXFST_MAX_STATES";

#[derive(Parser)]
#[command(name = "lexfst", version, about = "Compile and query minimal subsequential transducers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Tokens {
    /// How query words are split into input symbols
    #[arg(long, default_value = "chars", value_name = "chars|space")]
    input_tokenize: Tokenize,
    /// How output strings are split into output symbols
    #[arg(long, default_value = "chars", value_name = "chars|space")]
    tokenize: Tokenize,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a tab-separated lexicon into a minimal transducer
    Compile {
        lexicon: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Maximum outputs per input; defaults to the observed ambiguity
        #[arg(long)]
        p: Option<usize>,
        /// How lexicon outputs are split into symbols
        #[arg(long, default_value = "chars", value_name = "chars|space")]
        tokenize: Tokenize,
        #[arg(long)]
        stats: bool,
    },
    /// Push outputs toward the initial state
    Push {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Print the per-state prefix map to standard output
        #[arg(long)]
        emit_prefix_map: bool,
    },
    /// Merge equivalent states
    Minimize {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        stats: bool,
        /// Minimize through end-marker encoding
        #[arg(long)]
        p_subsequential: bool,
    },
    /// Determinize a machine with several transitions per input symbol
    Determinize {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Defaults to LEXFST_MAX_STATES, then 1000000
        #[arg(long)]
        max_states: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_RESIDUAL_LEN)]
        max_residual: usize,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Print the outputs of a word, or of each line of standard input
    Lookup {
        fst: PathBuf,
        word: Option<String>,
        #[command(flatten)]
        tokens: Tokens,
    },
    /// Print the output common to all completions of a prefix
    Complete {
        fst: PathBuf,
        prefix: Option<String>,
        #[command(flatten)]
        tokens: Tokens,
    },
    /// Print every input word with the given output
    Invert {
        fst: PathBuf,
        output_string: Option<String>,
        /// Report the number of live states per step
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = REVERSE_BUDGET)]
        budget: usize,
        #[command(flatten)]
        tokens: Tokens,
    },
    /// Print size statistics
    Stats { fst: PathBuf },
    /// Compare the functions of two machines
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// File of input words, one per line, instead of enumeration
        #[arg(long)]
        words: Option<PathBuf>,
        #[arg(long, default_value = "chars", value_name = "chars|space")]
        input_tokenize: Tokenize,
    },
    /// Write a synthetic Zipf-distributed lexicon
    GenLexicon {
        #[arg(long, default_value_t = 10_000)]
        entries: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_ambiguity: usize,
        /// Defaults to standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("lexfst: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match command {
        Command::Compile {
            lexicon,
            output,
            p,
            tokenize,
            stats,
        } => {
            let start = Instant::now();
            let lex = Lexicon::read(BufReader::new(File::open(&lexicon)?), tokenize)?;
            let t = compile(&lex, p)?;
            let elapsed = start.elapsed();
            write_file(&output, &t)?;
            if stats {
                let mut s = Stats::of(&t);
                s.entries = Some(lex.len());
                s.trie_states = Some(build_trie(&lex, p)?.num_states());
                s.elapsed = Some(elapsed);
                s.peak_rss_kib = peak_rss_kib();
                print_stats(&mut out, &s)?;
            }
            ExitCode::SUCCESS
        }
        Command::Push {
            input,
            output,
            emit_prefix_map,
        } => {
            let t = read_file(&input)?.trim_checked()?;
            if emit_prefix_map {
                write!(out, "{}", compute_prefix_map(&t)?.to_text(&t))?;
            }
            write_file(&output, &push_outputs(&t)?)?;
            ExitCode::SUCCESS
        }
        Command::Minimize {
            input,
            output,
            stats,
            p_subsequential,
        } => {
            let t = read_file(&input)?;
            let m = if p_subsequential {
                minimize_p(&t)?
            } else {
                minimize_sequential(&t)?
            };
            write_file(&output, &m)?;
            if stats {
                let (before, after) = (Stats::of(&t), Stats::of(&m));
                writeln!(out, "{:<12}{:>12}{:>12}", "", "before", "after")?;
                writeln!(out, "{:<12}{:>12}{:>12}", "States", before.states, after.states)?;
                writeln!(out, "{:<12}{:>12}{:>12}", "Transitions", before.transitions, after.transitions)?;
            }
            ExitCode::SUCCESS
        }
        Command::Determinize {
            input,
            output,
            max_states,
            max_residual,
            p,
        } => {
            let limits = Limits {
                max_states: max_states.unwrap_or_else(env_max_states),
                max_residual_len: max_residual,
                p,
            };
            let t = read_file_nondet(&input)?;
            write_file(&output, &determinize(&t, limits)?)?;
            ExitCode::SUCCESS
        }
        Command::Lookup { fst, word, tokens } => {
            let t = read_file(&fst)?;
            let query = |w: &str| -> Vec<String> {
                encode_input(&t, tokens.input_tokenize.split(w))
                    .map(|input| lookup(&t, &input))
                    .unwrap_or_default()
                    .iter()
                    .map(|o| t.output_symbols().render(o, tokens.tokenize.separator()))
                    .collect()
            };
            match word {
                Some(w) => {
                    let outputs = query(&w);
                    for o in &outputs {
                        writeln!(out, "{o}")?;
                    }
                    exit_found(!outputs.is_empty())
                }
                None => {
                    for line in stdin_lines()? {
                        let mut fields = vec![line.clone()];
                        fields.extend(query(&line));
                        writeln!(out, "{}", fields.join("\t"))?;
                    }
                    ExitCode::SUCCESS
                }
            }
        }
        Command::Complete { fst, prefix, tokens } => {
            let t = read_file(&fst)?;
            let flag = if is_onward(&t) { "" } else { "\tnon-canonical" };
            let query = |w: &str| -> Option<String> {
                let input = encode_input(&t, tokens.input_tokenize.split(w))?;
                let c = complete(&t, &input).ok()?;
                Some(t.output_symbols().render(&c, tokens.tokenize.separator()))
            };
            match prefix {
                Some(w) => match query(&w) {
                    Some(c) => {
                        writeln!(out, "{c}{flag}")?;
                        ExitCode::SUCCESS
                    }
                    None => return Err(Error::PrefixNotPresent),
                },
                None => {
                    for line in stdin_lines()? {
                        match query(&line) {
                            Some(c) => writeln!(out, "{line}\t{c}{flag}")?,
                            None => writeln!(out, "{line}")?,
                        }
                    }
                    ExitCode::SUCCESS
                }
            }
        }
        Command::Invert {
            fst,
            output_string,
            trace,
            budget,
            tokens,
        } => {
            let t = read_file(&fst)?;
            let query = |y: &str| -> Result<(Vec<String>, Option<String>), Error> {
                let labels: Option<Vec<_>> = tokens
                    .tokenize
                    .split(y)
                    .into_iter()
                    .map(|s| t.output_symbols().get(s))
                    .collect();
                let Some(labels) = labels else {
                    return Ok((Vec::new(), None));
                };
                let r = reverse_apply(&t, &labels, budget)?;
                let inputs = r
                    .inputs
                    .iter()
                    .map(|w| t.input_symbols().render(w, tokens.input_tokenize.separator()))
                    .collect();
                let steps: Vec<String> = r.active_per_step.iter().map(usize::to_string).collect();
                let report = format!("max_active={} active_per_step={}", r.max_active, steps.join(","));
                Ok((inputs, Some(report)))
            };
            match output_string {
                Some(y) => {
                    let (inputs, report) = query(&y)?;
                    for i in &inputs {
                        writeln!(out, "{i}")?;
                    }
                    if trace {
                        writeln!(out, "# {}", report.unwrap_or_else(|| "max_active=0 active_per_step=".into()))?;
                    }
                    exit_found(!inputs.is_empty())
                }
                None => {
                    for line in stdin_lines()? {
                        let (inputs, _) = query(&line)?;
                        let mut fields = vec![line.clone()];
                        fields.extend(inputs);
                        writeln!(out, "{}", fields.join("\t"))?;
                    }
                    ExitCode::SUCCESS
                }
            }
        }
        Command::Stats { fst } => {
            let t = read_file(&fst)?;
            print_stats(&mut out, &Stats::of(&t))?;
            ExitCode::SUCCESS
        }
        Command::Verify {
            a,
            b,
            max_len,
            words,
            input_tokenize,
        } => {
            let (ta, tb) = (read_file(&a)?, read_file(&b)?);
            let report = match words {
                Some(path) => {
                    let text = fs::read_to_string(path)?;
                    let words: Vec<Vec<&str>> = text
                        .lines()
                        .map(|l| l.strip_suffix('\r').unwrap_or(l))
                        .map(|l| input_tokenize.split(l))
                        .collect();
                    verify_words(&ta, &tb, &words)
                }
                None => verify(&ta, &tb, max_len)?,
            };
            writeln!(out, "{report}")?;
            exit_found(matches!(report, VerifyReport::Equivalent { .. }))
        }
        Command::GenLexicon {
            entries,
            seed,
            max_ambiguity,
            output,
        } => {
            let lex = zipf_lexicon(&ZipfConfig {
                entries,
                seed,
                max_ambiguity,
                ..ZipfConfig::default()
            });
            match output {
                Some(path) => fs::write(path, lex.to_text())?,
                None => out.write_all(lex.to_text().as_bytes())?,
            }
            ExitCode::SUCCESS
        }
    };
    out.flush()?;
    Ok(code)
}

fn env_max_states() -> usize {
    std::env::var(MAX_STATES_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_STATES)
}

fn exit_found(found: bool) -> ExitCode {
    if found {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn stdin_lines() -> io::Result<Vec<String>> {
    io::stdin()
        .lock()
        .lines()
        .map(|l| l.map(|l| l.strip_suffix('\r').map(str::to_string).unwrap_or(l)))
        .collect()
}

fn print_stats(out: &mut impl Write, s: &Stats) -> io::Result<()> {
    write!(out, "{}", s.to_aligned())?;
    writeln!(out, "{}", s.to_key_values())
}
