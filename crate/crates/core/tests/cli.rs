use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use lexfst::determinize::{determinize, Limits};
use lexfst::io::{read_file, read_text_nondet, write_binary, write_text};
use lexfst::synth::{zipf_lexicon, ZipfConfig};
use lexfst::{
    build_trie, compile, compute_prefix_map, minimize_p, minimize_sequential, push_outputs, Lexicon, Stats, Tokenize,
};
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_lexfst");

fn lexfst(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn lexfst_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, content: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, content).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

const TWO_OUTPUTS: &str = "abc\tabca\nabc\tabcb\n";
const CARS: &str = "car\tKAR\ncart\tKART\ncard\tKARD\n";

#[test]
fn compile_with_stats_matches_library() {
    let f = Fixture::new();
    let lex = f.file("lex.tsv", TWO_OUTPUTS);
    let out = f.path("out.fstb");
    let o = lexfst(&["compile", p(&lex), "-o", p(&out), "--stats"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for row in ["Entries", "Max. ambg", "States", "Transitions", "Alphabet", "Time spent", "Peak RSS"] {
        assert!(text.contains(row), "missing {row} in\n{text}");
    }
    assert!(text.lines().last().unwrap().starts_with("entries=2 max_ambg=2 p=2 "));
    let expected = compile(&Lexicon::parse(TWO_OUTPUTS, Tokenize::Chars).unwrap(), None).unwrap();
    assert_eq!(fs::read(&out).unwrap(), write_binary(&expected));
}

#[test]
fn lookup_prints_both_outputs() {
    let f = Fixture::new();
    let lex = f.file("lex.tsv", TWO_OUTPUTS);
    let out = f.path("out.fstb");
    assert!(lexfst(&["compile", p(&lex), "-o", p(&out)]).status.success());
    let o = lexfst(&["lookup", p(&out), "abc"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "abca\nabcb\n");
    assert_eq!(lexfst(&["lookup", p(&out), "abd"]).status.code(), Some(1));

    let o = lexfst_stdin(&["lookup", p(&out)], "abc\nab\nzz\n");
    assert_eq!(stdout(&o), "abc\tabca\tabcb\nab\nzz\n");
}

#[test]
fn space_tokenized_outputs() {
    let f = Fixture::new();
    let lex = f.file("lex.tsv", "chats\tchat +N +p\nchat\tchat +N +s\n");
    let out = f.path("out.fst");
    assert!(lexfst(&["compile", p(&lex), "-o", p(&out), "--tokenize", "space"]).status.success());
    let o = lexfst(&["lookup", p(&out), "chats", "--tokenize", "space"]);
    assert_eq!(stdout(&o), "chat +N +p\n");
    let o = lexfst(&["complete", p(&out), "cha", "--tokenize", "space"]);
    assert_eq!(stdout(&o), "chat +N\n");
    let o = lexfst(&["invert", p(&out), "chat +N +s", "--tokenize", "space"]);
    assert_eq!(stdout(&o), "chat\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lexfst(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lexfst(&["compile"]).status.code(), Some(2));
    assert_eq!(lexfst(&["stats", "x", "--bogus"]).status.code(), Some(2));
    assert_eq!(lexfst(&["compile", "x", "-o", "y", "--tokenize", "words"]).status.code(), Some(2));
    assert_eq!(lexfst(&[]).status.code(), Some(2));
    assert_eq!(lexfst(&["--help"]).status.code(), Some(0));
}

#[test]
fn domain_errors_exit_1() {
    let f = Fixture::new();
    let bad = f.file("bad.tsv", "abc\tx\nno tab here\n");
    let o = lexfst(&["compile", p(&bad), "-o", p(&f.path("o.fst"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let amb = f.file("amb.tsv", TWO_OUTPUTS);
    let o = lexfst(&["compile", p(&amb), "-o", p(&f.path("o.fst")), "--p", "1"]);
    assert_eq!(o.status.code(), Some(1));

    assert_eq!(lexfst(&["stats", p(&f.path("missing.fst"))]).status.code(), Some(1));
    let junk = f.file("junk.fstb", "LEXFST09junk");
    assert_eq!(lexfst(&["stats", p(&junk)]).status.code(), Some(1));
}

#[test]
fn push_and_prefix_map_match_library() {
    let f = Fixture::new();
    let lex = Lexicon::parse(CARS, Tokenize::Chars).unwrap();
    let trie = build_trie(&lex, None).unwrap();
    let input = f.file("trie.fst", &write_text(&trie));
    let out = f.path("pushed.fst");
    let o = lexfst(&["push", p(&input), "-o", p(&out), "--emit-prefix-map"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), compute_prefix_map(&trie).unwrap().to_text(&trie));
    assert_eq!(fs::read_to_string(&out).unwrap(), write_text(&push_outputs(&trie).unwrap()));
}

#[test]
fn minimize_matches_library() {
    let f = Fixture::new();
    let lex = Lexicon::parse("aa\tp\nba\tp\nabc\tabca\nabc\tabcb\n", Tokenize::Chars).unwrap();
    let trie = build_trie(&lex, None).unwrap();
    let input = f.file("trie.fst", &write_text(&trie));
    let out = f.path("min.fst");
    let o = lexfst(&["minimize", p(&input), "-o", p(&out), "--stats"]);
    assert!(o.status.success());
    let m = minimize_sequential(&trie).unwrap();
    assert_eq!(fs::read_to_string(&out).unwrap(), write_text(&m));
    let text = stdout(&o);
    let states = text.lines().find(|l| l.starts_with("States")).unwrap();
    let cols: Vec<&str> = states.split_whitespace().collect();
    assert_eq!(cols, ["States", &trie.num_states().to_string(), &m.num_states().to_string()]);

    let out = f.path("min.fstb");
    assert!(lexfst(&["minimize", p(&input), "-o", p(&out), "--p-subsequential"]).status.success());
    assert_eq!(fs::read(&out).unwrap(), write_binary(&minimize_p(&trie).unwrap()));
}

const NONDET: &str = "#lexfst v1 initial=0 lambda=<eps> p=1\n0\t1\ta\tx\n1\t2\tb\ty\n0\t3\ta\tx\n3\t4\tc\tz\n2\t\t\t<eps>\n4\t\t\t<eps>\n";
const DIVERGENT: &str = "#lexfst v1 initial=0 lambda=<eps> p=1\n0\t1\ta\tx\n1\t1\ta\tx\n1\t2\tb\ty\n0\t3\ta\tz\n3\t3\ta\tz\n3\t2\tc\tw\n2\t\t\t<eps>\n";

#[test]
fn determinize_matches_library_and_limits() {
    let f = Fixture::new();
    let input = f.file("nd.fst", NONDET);
    let out = f.path("d.fst");
    assert!(lexfst(&["determinize", p(&input), "-o", p(&out)]).status.success());
    let expected = determinize(&read_text_nondet(NONDET).unwrap(), Limits::default()).unwrap();
    assert_eq!(fs::read_to_string(&out).unwrap(), write_text(&expected));

    let div = f.file("div.fst", DIVERGENT);
    let o = lexfst(&["determinize", p(&div), "-o", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("residual"));

    // the environment cap applies unless a flag overrides it
    let run_env = |extra: &[&str]| {
        Command::new(BIN)
            .args(["determinize", p(&input), "-o", p(&out)])
            .args(extra)
            .env("LEXFST_MAX_STATES", "2")
            .output()
            .unwrap()
    };
    assert_eq!(run_env(&[]).status.code(), Some(1));
    assert_eq!(run_env(&["--max-states", "100"]).status.code(), Some(0));
}

#[test]
fn complete_flags_non_onward_machines() {
    let f = Fixture::new();
    let lex = Lexicon::parse(CARS, Tokenize::Chars).unwrap();
    let compiled = f.file("c.fst", &write_text(&compile(&lex, None).unwrap()));
    let trie = f.file("t.fst", &write_text(&build_trie(&lex, None).unwrap()));
    assert_eq!(stdout(&lexfst(&["complete", p(&compiled), "ca"])), "KAR\n");
    assert_eq!(stdout(&lexfst(&["complete", p(&trie), "ca"])), "\tnon-canonical\n");
    assert_eq!(lexfst(&["complete", p(&compiled), "x"]).status.code(), Some(1));
    let o = lexfst_stdin(&["complete", p(&compiled)], "car\ncart\nx\n\n");
    assert_eq!(stdout(&o), "car\tKAR\ncart\tKART\nx\n\tKAR\n");
}

#[test]
fn invert_with_trace() {
    let f = Fixture::new();
    let lex = Lexicon::parse(CARS, Tokenize::Chars).unwrap();
    let t = f.file("c.fst", &write_text(&compile(&lex, None).unwrap()));
    let o = lexfst(&["invert", p(&t), "KART", "--trace"]);
    assert_eq!(stdout(&o), "cart\n# max_active=1 active_per_step=1,1,1,1,1\n");
    assert_eq!(lexfst(&["invert", p(&t), "KAT"]).status.code(), Some(1));
    let o = lexfst_stdin(&["invert", p(&t)], "KAR\nQ\n");
    assert_eq!(stdout(&o), "KAR\tcar\nQ\n");
}

#[test]
fn stats_report_both_forms() {
    let f = Fixture::new();
    let lex = Lexicon::parse("aa\tp\nba\tp\n", Tokenize::Chars).unwrap();
    let t = compile(&lex, None).unwrap();
    let path = f.file("m.fst", &write_text(&t));
    let o = lexfst(&["stats", p(&path)]);
    let s = Stats::of(&t);
    assert_eq!(stdout(&o), format!("{}{}\n", s.to_aligned(), s.to_key_values()));
    assert!(stdout(&o).contains("states=3 "));
}

#[test]
fn verify_reports_equivalence_and_divergence() {
    let f = Fixture::new();
    let lex = Lexicon::parse(CARS, Tokenize::Chars).unwrap();
    let trie = build_trie(&lex, None).unwrap();
    let a = f.file("a.fst", &write_text(&trie));
    let b = f.file("b.fst", &write_text(&compile(&lex, None).unwrap()));
    let o = lexfst(&["verify", p(&a), p(&b), "--max-len", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("equivalent up to length 6"));

    let flipped = CARS.replace("KART", "KARX");
    let c = f.file("c.fst", &write_text(&compile(&Lexicon::parse(&flipped, Tokenize::Chars).unwrap(), None).unwrap()));
    let o = lexfst(&["verify", p(&a), p(&c)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "divergence at \"cart\": KART vs KARX\n");

    let words = f.file("words.txt", "car\ncard\n");
    let o = lexfst(&["verify", p(&a), p(&c), "--words", p(&words)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "equivalent on 2 words\n");

    let other = f.file("o.fst", "#lexfst v1 initial=0 lambda=<eps> p=1\n0\t1\tz\tq\n1\t\t\t<eps>\n");
    assert_eq!(lexfst(&["verify", p(&a), p(&other)]).status.code(), Some(1));
}

#[test]
fn gen_lexicon_is_seeded() {
    let f = Fixture::new();
    let a = f.path("a.tsv");
    assert!(lexfst(&["gen-lexicon", "--entries", "300", "--seed", "5", "-o", p(&a)]).status.success());
    let b = lexfst(&["gen-lexicon", "--entries", "300", "--seed", "5"]);
    assert_eq!(fs::read_to_string(&a).unwrap(), stdout(&b));
    let lib = zipf_lexicon(&ZipfConfig {
        entries: 300,
        seed: 5,
        ..ZipfConfig::default()
    });
    assert_eq!(stdout(&b), lib.to_text());
    let c = lexfst(&["gen-lexicon", "--entries", "300", "--seed", "6"]);
    assert_ne!(stdout(&b), stdout(&c));
}

#[test]
fn formats_convert_through_the_cli() {
    let f = Fixture::new();
    let lex = f.file("lex.tsv", CARS);
    let text = f.path("m.fst");
    let bin = f.path("m.fstb");
    assert!(lexfst(&["compile", p(&lex), "-o", p(&text)]).status.success());
    assert!(lexfst(&["minimize", p(&text), "-o", p(&bin)]).status.success());
    assert!(read_file(&bin).unwrap().canonical_eq(&read_file(&text).unwrap()));
}
