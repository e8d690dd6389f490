//! Command-line front end. The binary only forwards `std::env::args` to
//! [`main_with_args`].
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | usage error (unknown flag or kind, bad value, too many variables for `--check-rewrites`) |
//! | 2 | input could not be read or parsed, output could not be written, or queens `n < 4` |
//! | 3 | the vtree does not cover exactly the input variables |
//! | 4 | verification failed (rewrite violations or fuzz failures) |

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::compile::{compile_cnf, gen_queens, parse_dimacs, Alphabet, Dictionary, Encoding};
use crate::fuzz::{self, FuzzConfig, DEFAULT_SEED, MAX_VARS};
use crate::kind::DiagramKind;
use crate::manager::{Dd, Manager};
use crate::rules::Rule;
use crate::stats::Stats;
use crate::vtree::{numbered_labels, Vtree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VTREE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "tsdd", version, about = "Tagged sentential decision diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a CNF or a word list.
    Compile(CompileArgs),
    /// Compile the n-queens constraints.
    Queens(QueensArgs),
    /// Randomized canonicity and oracle checks.
    Fuzz(FuzzArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Dimacs,
    Words,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VtreeChoice {
    Balanced,
    RightLinear,
    File(PathBuf),
}

impl FromStr for VtreeChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "balanced" => Ok(VtreeChoice::Balanced),
            "right-linear" => Ok(VtreeChoice::RightLinear),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(VtreeChoice::File(PathBuf::from(p))),
                _ => Err(format!(
                    "expected balanced, right-linear or file:PATH, got `{s}`"
                )),
            },
        }
    }
}

impl fmt::Display for VtreeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VtreeChoice::Balanced => f.write_str("balanced"),
            VtreeChoice::RightLinear => f.write_str("right-linear"),
            VtreeChoice::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write the stats JSON here as well as to stdout.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Write a Graphviz rendering of the result.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Report `wall_ms` as 0 so repeated runs are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "dimacs")]
    pub format: InputFormat,
    #[arg(long)]
    pub kind: DiagramKind,
    #[arg(long, default_value = "balanced")]
    pub vtree: VtreeChoice,
    /// Symbol encoding for `--format words`.
    #[arg(long, default_value = "binary")]
    pub encoding: Encoding,
    /// Symbol set for `--format words`: `compact` (symbols of the input) or `ascii`.
    #[arg(long, default_value = "compact")]
    pub alphabet: Alphabet,
    /// Oracle-check every rewrite (at most 5 variables).
    #[arg(long)]
    pub check_rewrites: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct QueensArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(long, default_value = "onehot")]
    pub encoding: Encoding,
    #[arg(long)]
    pub kind: DiagramKind,
    #[arg(long, default_value = "balanced")]
    pub vtree: VtreeChoice,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 3)]
    pub vars: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Kinds to test (default: all six).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub kinds: Vec<DiagramKind>,
    /// Fault injection: switch a trimming rule off in the manager under test.
    #[arg(long = "disable-rule", value_delimiter = ',')]
    pub disable_rule: Vec<Rule>,
    /// Skip oracle checks of individual rewrites.
    #[arg(long)]
    pub no_check_rewrites: bool,
    /// Write the full report as JSON.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    run(&cli.command, out, err)
}

pub fn run(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cmd {
        Command::Compile(a) => cmd_compile(a, out, err),
        Command::Queens(a) => cmd_queens(a, out),
        Command::Fuzz(a) => cmd_fuzz(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

/// An exit code with its message.
#[derive(Debug)]
pub struct Failure(pub i32, pub String);

fn fail<E: fmt::Display>(code: i32) -> impl Fn(E) -> Failure {
    move |e| Failure(code, e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

/// Builds the vtree for `labels`; a file must mention exactly those labels.
pub fn build_vtree(choice: &VtreeChoice, labels: &[String]) -> Result<Vtree, Failure> {
    match choice {
        VtreeChoice::Balanced => Vtree::balanced(labels).map_err(fail(EXIT_VTREE)),
        VtreeChoice::RightLinear => Vtree::right_linear(labels).map_err(fail(EXIT_VTREE)),
        VtreeChoice::File(path) => {
            let text = read(path)?;
            let first = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .unwrap_or("");
            let vt = if first.starts_with('(') || !first.contains(' ') && !first.starts_with('c') {
                Vtree::from_sexpr(&text)
            } else {
                Vtree::parse(&text)
            }
            .map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))?;
            let have: BTreeSet<&str> = (0..vt.var_count())
                .map(|i| vt.label(crate::Var(i as u32)))
                .collect();
            let want: BTreeSet<&str> = labels.iter().map(String::as_str).collect();
            if have != want {
                let missing: Vec<_> = want.difference(&have).collect();
                let extra: Vec<_> = have.difference(&want).collect();
                return Err(Failure(
                    EXIT_VTREE,
                    format!("vtree variables do not match the input (missing {missing:?}, extra {extra:?})"),
                ));
            }
            Ok(vt)
        }
    }
}

fn emit(
    m: &Manager,
    d: Dd,
    stats: &Stats,
    o: &OutputArgs,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let json = stats.to_json();
    out.write_all(json.as_bytes()).map_err(fail(EXIT_INPUT))?;
    if let Some(p) = &o.stats {
        write_file(p, &json)?;
    }
    if let Some(p) = &o.dot {
        write_file(p, &m.to_dot(d))?;
    }
    Ok(())
}

enum Source {
    Cnf(crate::compile::Cnf),
    Words(Dictionary),
}

pub fn cmd_compile(
    a: &CompileArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let text = read(&a.input)?;
    let (source, labels) = match a.format {
        InputFormat::Dimacs => {
            let cnf = parse_dimacs(&text)
                .map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", a.input.display())))?;
            let labels = cnf.labels();
            (Source::Cnf(cnf), labels)
        }
        InputFormat::Words => {
            let words: Vec<&str> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            let dict = Dictionary::new(&words, a.encoding, a.alphabet).map_err(fail(EXIT_INPUT))?;
            let labels = numbered_labels(dict.num_vars());
            (Source::Words(dict), labels)
        }
    };
    if labels.is_empty() {
        return Err(Failure(EXIT_INPUT, "input has no variables".into()));
    }
    if a.check_rewrites && labels.len() > MAX_VARS {
        return Err(Failure(
            EXIT_USAGE,
            format!(
                "--check-rewrites supports at most {MAX_VARS} variables, input has {}",
                labels.len()
            ),
        ));
    }
    let vt = build_vtree(&a.vtree, &labels)?;
    let mut m = Manager::new(a.kind, vt);
    m.set_check_rewrites(a.check_rewrites);
    let start = Instant::now();
    let d = match &source {
        Source::Cnf(cnf) => compile_cnf(&mut m, cnf),
        Source::Words(dict) => dict.build(&mut m),
    }
    .map_err(fail(EXIT_VTREE))?;
    let wall = start.elapsed();
    let stats = Stats::collect(&m, d, (!a.out.no_timing).then_some(wall));
    emit(&m, d, &stats, &a.out, out)?;
    if a.check_rewrites {
        let v = m.rewrite_violations();
        let _ = writeln!(
            err,
            "checked {} rewrites, {} violations",
            m.checked_firings(),
            v.len()
        );
        for line in v {
            let _ = writeln!(err, "{line}");
        }
        if !v.is_empty() {
            return Ok(EXIT_VERIFY);
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_queens(a: &QueensArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.n < 4 {
        return Err(Failure(
            EXIT_INPUT,
            format!("n-queens needs n >= 4, got {}", a.n),
        ));
    }
    let cnf = gen_queens(a.n, a.encoding).map_err(fail(EXIT_INPUT))?;
    let vt = build_vtree(&a.vtree, &cnf.labels())?;
    let mut m = Manager::new(a.kind, vt);
    let start = Instant::now();
    let d = compile_cnf(&mut m, &cnf).map_err(fail(EXIT_VTREE))?;
    let wall = start.elapsed();
    let stats = Stats::collect(&m, d, (!a.out.no_timing).then_some(wall));
    emit(&m, d, &stats, &a.out, out)?;
    Ok(EXIT_OK)
}

pub fn cmd_fuzz(a: &FuzzArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.vars == 0 || a.vars > MAX_VARS {
        return Err(Failure(
            EXIT_USAGE,
            format!("--vars must be in 1..={MAX_VARS}"),
        ));
    }
    if let Some(r) = a.disable_rule.iter().find(|r| !Rule::TRIM.contains(r)) {
        return Err(Failure(
            EXIT_USAGE,
            format!("--disable-rule takes a trimming rule, not {r}"),
        ));
    }
    let cfg = FuzzConfig {
        vars: a.vars,
        trials: a.trials,
        seed: a.seed,
        kinds: if a.kinds.is_empty() {
            DiagramKind::ALL.to_vec()
        } else {
            a.kinds.clone()
        },
        disabled: a.disable_rule.clone(),
        check_rewrites: !a.no_check_rewrites,
    };
    let report = fuzz::run(&cfg);
    let w = |e: std::io::Error| Failure(EXIT_INPUT, e.to_string());
    writeln!(
        out,
        "seed={} vars={} trials={}",
        cfg.seed, cfg.vars, cfg.trials
    )
    .map_err(w)?;
    for (kind, k) in &report.kinds {
        writeln!(
            out,
            "{kind:7} trials={} failures={} checked_rewrites={}",
            k.trials, k.failures, k.checked_firings
        )
        .map_err(w)?;
    }
    for f in &report.failures {
        writeln!(
            out,
            "FAIL seed={} trial={} kind={} vtree={} : {}",
            f.seed, f.trial, f.kind, f.vtree, f.reason
        )
        .map_err(w)?;
        for line in &f.trace {
            writeln!(out, "  {line}").map_err(w)?;
        }
    }
    if let Some(p) = &a.report {
        let json = serde_json::to_string_pretty(&report).map_err(fail(EXIT_INPUT))?;
        write_file(p, &(json + "\n"))?;
    }
    Ok(if report.ok() { EXIT_OK } else { EXIT_VERIFY })
}
