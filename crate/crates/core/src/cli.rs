//! The `poset-forge` command line.
//!
//! Exit status is 0 on success, 1 when a checked property fails and 2 on a
//! usage or input error.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::classifier::{search_factorials, BRule, ConstraintSet, SearchMode};
use crate::constructions::FamilySpec;
use crate::cw::{dual_face_poset, face_poset, named_complex, CellComplex};
use crate::poset::{is_isomorphic, Poset, ReadOptions};
use crate::regularity::{analyze, mobius_from_series, rules, sheffer_mobius_from_series};
use crate::verify::Suite;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "POSET_FORGE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "poset-forge", version, about = "Graded posets, factorial profiles and the Eulerian classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a family member (`gen boolean 4`) or a named cell complex
    /// (`gen complex zw`).
    Gen {
        /// Family name and numeric arguments, or `complex NAME`.
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        family: Vec<String>,
        /// Emit Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Turn a cell complex into its face poset.
    PosetOf {
        #[command(flatten)]
        input: Input,
        /// Dual of the bounded face poset.
        #[arg(long, conflicts_with = "bounded")]
        dual: bool,
        /// Adjoin a minimum and a maximum.
        #[arg(long)]
        bounded: bool,
    },
    /// Report grading, factorial profile, residuals and the Eulerian check.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
        /// Accept any acyclic relation and reduce it to covers.
        #[arg(long)]
        reduce: bool,
    },
    /// Search the admissible factorial sequences.
    Classify(ClassifyArgs),
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two posets are isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Möbius values encoded by a factorial profile.
    Gf {
        /// `factorial`, `butterfly` or a comma-separated list `B(0),B(1),...`.
        #[arg(long)]
        b: String,
        /// Sheffer `D`: `factorial`, `sigma-star`, `cubical` or a list
        /// `D(0),D(1),...`.
        #[arg(long)]
        d: Option<String>,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Re-emit a poset in canonical JSON or as DOT.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct Input {
    /// Input file; `-` or nothing reads standard input.
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Binomial,
    Sheffer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Factorial,
    Butterfly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstraintArg {
    Monotonicity,
    Divisibility,
    RankCounts,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    mode: ModeArg,
    /// Fixed `B` in Sheffer mode.
    #[arg(long, value_enum, default_value = "factorial")]
    b_rule: RuleArg,
    #[arg(long, default_value_t = 12)]
    max_rank: usize,
    /// Largest value tried at odd ranks whose window is unbounded.
    #[arg(long)]
    odd_cap: Option<u64>,
    /// Constraints to switch off.
    #[arg(long, value_enum, value_delimiter = ',')]
    disable: Vec<ConstraintArg>,
    #[arg(long)]
    json: bool,
}

/// Standard streams, replaceable in tests.
pub struct Streams<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

enum Failure {
    Property(String),
    Usage(String),
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Runs the command line with the process streams.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let (mut stdin, mut stdout, mut stderr) = (std::io::stdin(), std::io::stdout(), std::io::stderr());
    run_with(args, Streams { stdin: &mut stdin, stdout: &mut stdout, stderr: &mut stderr })
}

/// Runs the command line with the given streams and returns the exit status.
pub fn run_with<I, S>(args: I, io: Streams<'_>) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink = if e.use_stderr() { io.stderr } else { io.stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    configure_threads();
    match execute(cli.command, io.stdin, io.stdout) {
        Ok(()) => 0,
        Err(Failure::Property(msg)) => {
            let _ = writeln!(io.stderr, "{msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            2
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // A second call in the same process finds the pool already built.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, Failure> {
    match &input.file {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(usage)?;
            Ok(s)
        }
    }
}

fn read_poset(text: &str, reduce: bool) -> Result<Poset, Failure> {
    Poset::from_json_with(text, ReadOptions { reduce }).map_err(usage)
}

fn emit(out: &mut dyn Write, text: &str) -> CmdResult {
    out.write_all(text.as_bytes()).map_err(usage)?;
    if !text.ends_with('\n') {
        out.write_all(b"\n").map_err(usage)?;
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

fn execute(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Gen { family, dot } => gen(&family, dot, out),
        Command::PosetOf { input, dual, bounded } => {
            let k = CellComplex::from_json(&read_input(&input, stdin)?).map_err(usage)?;
            let p = if dual { dual_face_poset(&k) } else { face_poset(&k, bounded) }.map_err(usage)?;
            emit(out, &p.to_json())
        }
        Command::Analyze { input, json, reduce } => {
            let p = read_poset(&read_input(&input, stdin)?, reduce)?;
            let report = analyze(&p);
            emit(out, &if json { report.to_json() } else { report.to_table() })
        }
        Command::Classify(args) => classify(&args, out),
        Command::Verify { suite, json } => verify(&suite, json, out),
        Command::Iso { a, b, json } => iso(&a, &b, json, out),
        Command::Gf { b, d, order } => gf(&b, d.as_deref(), order, out),
        Command::Export { input, dot, json: _ } => {
            let p = read_poset(&read_input(&input, stdin)?, false)?;
            emit(out, &if dot { p.to_dot() } else { p.to_json() })
        }
    }
}

fn gen(family: &[String], dot: bool, out: &mut dyn Write) -> CmdResult {
    if family[0] == "complex" {
        let [_, name] = family else {
            return Err(usage("gen complex expects exactly one complex name"));
        };
        let k = named_complex(name).map_err(usage)?;
        if dot {
            return emit(out, &face_poset(&k, false).map_err(usage)?.to_dot());
        }
        return emit(out, &k.to_json());
    }
    let p = FamilySpec::parse(family).and_then(|s| s.build()).map_err(usage)?;
    emit(out, &if dot { p.to_dot() } else { p.to_json() })
}

fn classify(args: &ClassifyArgs, out: &mut dyn Write) -> CmdResult {
    let mode = match (args.mode, args.b_rule) {
        (ModeArg::Binomial, _) => SearchMode::Binomial,
        (ModeArg::Sheffer, RuleArg::Factorial) => SearchMode::Sheffer(BRule::Factorial),
        (ModeArg::Sheffer, RuleArg::Butterfly) => SearchMode::Sheffer(BRule::Butterfly),
    };
    let mut constraints = ConstraintSet::default();
    for c in &args.disable {
        match c {
            ConstraintArg::Monotonicity => constraints.monotonicity = false,
            ConstraintArg::Divisibility => constraints.divisibility = false,
            ConstraintArg::RankCounts => constraints.rank_counts = false,
        }
    }
    let tree = search_factorials(mode, args.max_rank, constraints, args.odd_cap).map_err(usage)?;
    emit(out, &if args.json { tree.to_json() } else { tree.render() })
}

fn verify(name: &str, json: bool, out: &mut dyn Write) -> CmdResult {
    let suites: Vec<Suite> = if name == "all" { Suite::ALL.to_vec() } else { vec![name.parse().map_err(usage)?] };
    let mut failed = 0;
    let mut report = Vec::new();
    for s in suites {
        let results = s.run();
        failed += results.iter().filter(|r| !r.passed).count();
        report.push((s, results));
    }
    if json {
        #[derive(Serialize)]
        struct SuiteReport<'a> {
            suite: Suite,
            checks: &'a [crate::verify::CheckResult],
        }
        let doc: Vec<SuiteReport> = report.iter().map(|(s, r)| SuiteReport { suite: *s, checks: r }).collect();
        emit(out, &to_json(&doc))?;
    } else {
        let mut text = String::new();
        for (s, results) in &report {
            text.push_str(&format!("{s}\n"));
            for r in results {
                text.push_str(&format!("  {r}\n"));
            }
        }
        emit(out, &text)?;
    }
    if failed > 0 {
        return Err(Failure::Property(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn iso(a: &PathBuf, b: &PathBuf, json: bool, out: &mut dyn Write) -> CmdResult {
    let load = |p: &PathBuf| -> Result<Poset, Failure> {
        let text = fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        read_poset(&text, false)
    };
    let (p, q) = (load(a)?, load(b)?);
    let map = is_isomorphic(&p, &q);
    #[derive(Serialize)]
    struct Verdict<'a> {
        verdict: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        mapping: Option<&'a [usize]>,
    }
    let verdict = Verdict {
        verdict: if map.is_some() { "isomorphic" } else { "non-isomorphic" },
        mapping: map.as_deref(),
    };
    if json {
        emit(out, &to_json(&verdict))?;
    } else {
        let mut text = verdict.verdict.to_string();
        if let Some(m) = &map {
            let pairs: Vec<String> = m.iter().enumerate().map(|(i, j)| format!("{}->{}", p.label(i), q.label(*j))).collect();
            text.push_str(&format!("\n{}", pairs.join(" ")));
        }
        emit(out, &text)?;
    }
    match map {
        Some(_) => Ok(()),
        None => Err(Failure::Property("posets are not isomorphic".into())),
    }
}

fn sequence(spec: &str, order: usize, name: &str) -> Result<Vec<BigUint>, Failure> {
    Ok(match spec {
        "factorial" => rules::factorial_sequence(order),
        "butterfly" if name == "B" => rules::butterfly_sequence(order),
        "sigma-star" if name == "D" => rules::sigma_star_sequence(order),
        "cubical" if name == "D" => rules::cubical_sequence(order),
        list => list
            .split(',')
            .map(|t| t.trim().parse::<BigUint>())
            .collect::<Result<_, _>>()
            .map_err(|_| usage(format!("{name}: expected a rule name or a list of positive integers, found {list:?}")))?,
    })
}

fn gf(b: &str, d: Option<&str>, order: usize, out: &mut dyn Write) -> CmdResult {
    let b = sequence(b, order, "B")?;
    let mu = match d {
        None => mobius_from_series(&b, order),
        Some(d) => sheffer_mobius_from_series(&b, &sequence(d, order, "D")?, order),
    }
    .map_err(usage)?;
    let mut text = String::from("n  mu(n)\n");
    for (n, m) in mu.iter().enumerate() {
        text.push_str(&format!("{n}  {m}\n"));
    }
    let eulerian = mu.iter().enumerate().all(|(n, m)| *m == num_bigint::BigInt::from(if n % 2 == 0 { 1 } else { -1 }));
    text.push_str(&format!("eulerian through order {order}: {}\n", if eulerian { "yes" } else { "no" }));
    emit(out, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("poset-forge").chain(args.iter().copied());
        let code = run_with(argv, Streams { stdin: &mut input, stdout: &mut out, stderr: &mut err });
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_then_analyze() {
        let (code, json, _) = call(&["gen", "boolean", "4"], "");
        assert_eq!(code, 0);
        let (code, report, _) = call(&["analyze", "--json"], &json);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&report).unwrap();
        assert_eq!(v["B"].to_string(), "[1,1,2,6,24]");
        assert_eq!(v["eulerian"]["eulerian"], true);
    }

    #[test]
    fn unknown_family_lists_catalog() {
        let (code, _, err) = call(&["gen", "hypercube", "3"], "");
        assert_eq!(code, 2);
        assert!(err.contains("glued-ngons"));
    }

    #[test]
    fn classify_binomial_has_two_leaves() {
        let (code, text, _) = call(&["classify", "binomial", "--max-rank", "12"], "");
        assert_eq!(code, 0);
        assert!(text.contains("2 leaves"), "{text}");
    }

    #[test]
    fn butterfly_classification_needs_a_cap() {
        let (code, _, err) = call(&["classify", "sheffer", "--b-rule", "butterfly", "--max-rank", "6"], "");
        assert_eq!(code, 2);
        assert!(err.contains("odd cap"));
    }

    #[test]
    fn gf_reports_eulerian_profiles() {
        let (code, text, _) = call(&["gf", "--b", "factorial", "--d", "cubical", "--order", "6"], "");
        assert_eq!(code, 0);
        assert!(text.contains("eulerian through order 6: yes"));
        let (_, text, _) = call(&["gf", "--b", "1,1,1,1", "--order", "3"], "");
        assert!(text.contains("eulerian through order 3: no"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["frobnicate"], "").0, 2);
        assert_eq!(call(&["verify", "nope"], "").0, 2);
        assert_eq!(call(&["analyze"], "{not json").0, 2);
    }

    #[test]
    fn complex_to_dual_poset() {
        let (code, complex, _) = call(&["gen", "complex", "x2-x3"], "");
        assert_eq!(code, 0);
        let (code, poset, _) = call(&["poset-of", "--dual"], &complex);
        assert_eq!(code, 0);
        let (_, report, _) = call(&["analyze", "--json"], &poset);
        let v: serde_json::Value = serde_json::from_str(&report).unwrap();
        assert_eq!(v["D"].to_string(), "[1,1,2,10,120]");
    }
}
