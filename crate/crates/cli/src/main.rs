//! `bentrect`: command-line front end.
//!
//! Exit codes: 0 predicate true / success, 1 predicate false or reproduction
//! mismatch, 2 usage error, 3 malformed input or invalid parameters.

mod construct;

use bentrect::affine_group::is_normal;
use bentrect::experiments::{reproduce, Report, TARGETS};
use bentrect::format::{parse_function, write_function, write_partition};
use bentrect::partitions::{count_partitions, count_partitions_brute, enumerate_partitions};
use bentrect::spectral::{bentness, plateaued_order, wht};
use bentrect::{Error, Mode, QFunction, Rectangle};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "bentrect", version, about = "Bent functions, spectral rectangles and plane partitions")]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true, env = "BENTRECT_JOBS")]
    jobs: Option<usize>,
    /// Arithmetic used by bentness predicates.
    #[arg(long, global = true, env = "BENTRECT_MODE", default_value = "auto")]
    mode: ModeArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Exact,
    Numeric,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Bent,
    Regular,
    Plateaued,
    Normal,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Walsh-Hadamard spectrum, one value per line in lexicographic order.
    Wht {
        /// Function file, or `-` for standard input.
        file: PathBuf,
    },
    /// Test a predicate; the exit code carries the answer.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        file: PathBuf,
    },
    /// Print the spectral rectangle with `m` row coordinates.
    Rect {
        file: PathBuf,
        m: usize,
        /// Exit with the bent-rectangle verdict.
        #[arg(long)]
        check: bool,
    },
    /// Build a function from a TOML parameter file and print it.
    Construct {
        spec: PathBuf,
        /// Also test bentness and reflect it in the exit code.
        #[arg(long)]
        verify: bool,
    },
    /// Count or list partitions of V_n into planes of dimension n - m.
    Partitions {
        n: usize,
        m: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        primitive_only: bool,
        #[arg(long, conflicts_with = "list")]
        count: bool,
        #[arg(long)]
        list: bool,
    },
    /// Rerun a reference experiment and print a JSON report.
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(TARGETS))]
        target: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RequiresBoolean(_) | Error::CompositeModulus(_) | Error::Inexact(_) | Error::ScaleLimit(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn read_text(path: &Path) -> std::result::Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn load(path: &Path) -> std::result::Result<QFunction, Failure> {
    Ok(parse_function(&read_text(path)?)?)
}

fn emit(out: &mut impl Write, text: &str) {
    // a closed pipe is not an error worth reporting
    let _ = out.write_all(text.as_bytes());
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let mode: Mode = cli.mode.into();
    match cli.command {
        Command::Wht { file } => {
            let f = load(&file)?;
            let s = wht(&f)?;
            let lines: String = s.values().iter().map(|v| format!("{v}\n")).collect();
            emit(out, &lines);
            Ok(true)
        }
        Command::Check { kind, file } => {
            let f = load(&file)?;
            match kind {
                CheckKind::Bent => Ok(bentness(&f, mode)?.bent),
                CheckKind::Regular => Ok(bentness(&f, mode)?.regular),
                CheckKind::Plateaued => match plateaued_order(&f)? {
                    Some(r) => {
                        emit(out, &format!("order {r}\n"));
                        Ok(true)
                    }
                    None => Ok(false),
                },
                CheckKind::Normal => {
                    let verdict = is_normal(&f)?;
                    if verdict.advisory {
                        eprintln!("warning: input is not bent; the answer is advisory");
                    }
                    if let Some(plane) = &verdict.witness {
                        emit(out, &format!("{plane}\n"));
                    }
                    Ok(verdict.is_normal())
                }
            }
        }
        Command::Rect { file, m, check } => {
            let f = load(&file)?;
            if m > f.arity() {
                return Err(Failure::Usage(format!("m = {m} exceeds the arity {}", f.arity())));
            }
            let r = Rectangle::of(&f, m)?;
            let mut text = String::new();
            if r.half_exponent() != 0 {
                text.push_str(&format!("# scale {}^({}/2)\n", r.q(), r.half_exponent()));
            }
            text.push_str(&r.to_string());
            emit(out, &text);
            if check {
                Ok(r.check_bent(mode)?.0)
            } else {
                Ok(true)
            }
        }
        Command::Construct { spec, verify } => {
            let text = read_text(&spec)?;
            let f = construct::construct(&text, &spec)?;
            emit(out, &write_function(&f));
            if verify {
                Ok(bentness(&f, mode)?.bent)
            } else {
                Ok(true)
            }
        }
        Command::Partitions { n, m, q, primitive_only, count: _, list } => {
            if m > n {
                return Err(Failure::Usage(format!("m = {m} exceeds n = {n}")));
            }
            if list {
                let all = enumerate_partitions(n, m, q, primitive_only)?;
                let blocks: Vec<String> = all.iter().map(write_partition).collect();
                emit(out, &blocks.join("\n"));
            } else {
                let c = if primitive_only { count_partitions_brute(n, m, q, true)? } else { count_partitions(n, m, q)? };
                emit(out, &format!("{c}\n"));
            }
            Ok(true)
        }
        Command::Reproduce { target, seed, timing } => {
            let start = Instant::now();
            let report = reproduce(&target, seed)?.ok_or_else(|| Failure::Usage(format!("unknown target {target}")))?;
            let elapsed = timing.then(|| start.elapsed().as_secs_f64());
            emit(out, &render_report(&report, seed, elapsed));
            Ok(report.passed())
        }
    }
}

#[derive(Serialize)]
struct CheckJson<'a> {
    label: &'a str,
    expected: &'a str,
    actual: &'a str,
    pass: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    command: String,
    target: &'a str,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    seconds: Option<f64>,
    checks: Vec<CheckJson<'a>>,
    passed: bool,
    exit_status: u8,
}

fn render_report(r: &Report, seed: u64, seconds: Option<f64>) -> String {
    let doc = ReportJson {
        command: format!("reproduce {} --seed {seed}", r.target),
        target: &r.target,
        seed,
        seconds,
        checks: r
            .checks
            .iter()
            .map(|c| CheckJson { label: &c.label, expected: &c.expected, actual: &c.actual, pass: c.pass })
            .collect(),
        passed: r.passed(),
        exit_status: if r.passed() { 0 } else { 1 },
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n"
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli, &mut out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
