//! Command-line front end for exact unitriangular-conjugation invariants
//! of matrix tuples.
//!
//! Exit codes: 0 success/pass, 1 usage or parse error, 2 precondition
//! failure (e.g. a non-generic tuple passed to `canon`), 3 certificate or
//! self-test failure.

mod document;
mod selftest;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use uinv_core::canonical::{bring_to_section, find_conjugator, CanonicalError};
use uinv_core::invariants::{enumerate_generators, evaluate_invariants};
use uinv_core::{certify_all, MatrixTuple, UnitriangularMatrix, DEFAULT_CERTIFICATE_PRIME};

use document::TupleDocument;

#[derive(Parser)]
#[command(
    name = "uinv",
    version,
    about = "Exact invariants of matrix tuples under unitriangular conjugation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical generator labels for a configuration, then
    /// their count
    Generators {
        /// Matrix dimension
        #[arg(long)]
        n: usize,
        /// Tuple length
        #[arg(long)]
        m: usize,
    },
    /// Evaluate every generator on a tuple document, one `label value`
    /// line each
    Eval { file: PathBuf },
    /// Conjugate a generic tuple into its canonical section
    /// representative; diagnostics go to stderr, the section document to
    /// stdout
    Canon { file: PathBuf },
    /// Compare the invariant vectors of two tuples and, when they agree,
    /// search for an explicit conjugator
    Equiv { file1: PathBuf, file2: PathBuf },
    /// Run the five certificates for one configuration
    Certify {
        /// Matrix dimension
        #[arg(long)]
        n: usize,
        /// Tuple length
        #[arg(long)]
        m: usize,
        /// Prime modulus for the Jacobian rank certificates
        #[arg(long, default_value_t = DEFAULT_CERTIFICATE_PRIME)]
        p: u64,
        /// Random seed
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Trials per sampled certificate
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Run the full desk-scale suite (all configurations n <= 5, m <= 3)
    Selftest {
        /// Random seed
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Trials per sampled check
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

enum CliError {
    /// Unreadable files, malformed documents, invalid parameters.
    Parse(String),
    /// Well-formed input outside an operation's domain.
    Precondition(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Precondition(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) | CliError::Precondition(msg) => f.write_str(msg),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn read_tuple(path: &Path) -> Result<MatrixTuple, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let doc = TupleDocument::parse(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    doc.to_tuple()
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn print_conjugator(u: &UnitriangularMatrix, to_stderr: bool) {
    let m = u.to_matrix();
    let render = |i: usize| {
        (1..=m.n())
            .map(|j| m.entry(i, j).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    if to_stderr {
        eprintln!("CONJUGATOR");
        for i in 1..=m.n() {
            eprintln!("{}", render(i));
        }
    } else {
        println!("CONJUGATOR");
        for i in 1..=m.n() {
            println!("{}", render(i));
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Generators { n, m } => {
            if n < 1 || m < 1 {
                return Err(CliError::Parse("n and m must be at least 1".into()));
            }
            let labels = enumerate_generators(n, m);
            for label in &labels {
                println!("{label}");
            }
            println!("{}", labels.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { file } => {
            let tuple = read_tuple(&file)?;
            for (label, value) in evaluate_invariants(&tuple).iter() {
                println!("{label} {value}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Canon { file } => {
            let tuple = read_tuple(&file)?;
            match bring_to_section(&tuple) {
                Ok((u, section)) => {
                    eprintln!("GENERICITY {}", uinv_core::genericity_report(tuple.component(1)));
                    print_conjugator(&u, true);
                    println!("{}", TupleDocument::from_tuple(&section.to_tuple()).to_json());
                    Ok(ExitCode::SUCCESS)
                }
                Err(CanonicalError::NotGeneric(report)) => {
                    eprintln!("GENERICITY {report}");
                    Err(CliError::Precondition(
                        "tuple is not in general position; no canonical form".into(),
                    ))
                }
                Err(other) => Err(CliError::Precondition(other.to_string())),
            }
        }
        Command::Equiv { file1, file2 } => {
            let a = read_tuple(&file1)?;
            let b = read_tuple(&file2)?;
            if a.n() != b.n() || a.m() != b.m() || a.field() != b.field() {
                return Err(CliError::Precondition(
                    "tuples must share dimension, length, and field".into(),
                ));
            }
            if evaluate_invariants(&a) != evaluate_invariants(&b) {
                println!("INVARIANTS_EQUAL no");
                return Ok(ExitCode::SUCCESS);
            }
            println!("INVARIANTS_EQUAL yes");
            match find_conjugator(&a, &b) {
                Some(u) => {
                    println!("CONJUGATE yes");
                    print_conjugator(&u, false);
                }
                // Equal invariants are only generically sufficient, so the
                // absence of a conjugator is not evidence of inequivalence.
                None => println!("UNDECIDED"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { n, m, p, seed, trials } => {
            if n < 1 || m < 1 || trials < 1 {
                return Err(CliError::Parse("n, m, and trials must be at least 1".into()));
            }
            uinv_core::FieldSpec::prime(p)
                .map_err(|e| CliError::Parse(e.to_string()))?;
            let certs = certify_all(n, m, p, seed, trials);
            let mut all_pass = true;
            for cert in &certs {
                println!("{cert}");
                all_pass &= cert.passed();
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Selftest { seed, trials } => {
            if trials < 1 {
                return Err(CliError::Parse("trials must be at least 1".into()));
            }
            Ok(if selftest::run(seed, trials) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
    }
}
