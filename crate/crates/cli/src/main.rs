//! Command-line front end: reproducible batch computations over JSON files.
//!
//! Exit codes separate mathematical failure from operational failure:
//!   0  success / PASS
//!   1  mathematical FAIL (a check came out false, a divisibility does not
//!      hold, a torsion hypothesis breaks, ...)
//!   2  input error (malformed JSON, schema violation, precondition on the
//!      input data)
//!   3  precision-ambiguous: the requested answer is not certified at the
//!      available precision

mod commands;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use charlam_core::Error;

#[derive(Parser)]
#[command(
    name = "charlam",
    version,
    about = "p-adic and Iwasawa-algebra calculator: Weierstrass data, characteristic series, control equations, regulators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input JSON file; stdin when omitted
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Output report file; stdout when omitted
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Override the coefficient precision N (may only lower it)
    #[arg(long, global = true)]
    precision: Option<usize>,

    /// Override the T-truncation degree D (may only lower it)
    #[arg(long, global = true)]
    tdegree: Option<usize>,

    /// Seed echoed into the report, for randomized test harnesses
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Weierstrass preparation of a series: mu, lambda, P, unit
    Weierstrass,
    /// mu/lambda invariants, ord_T, constant-term order, cyclotomic coprimality
    Invariants,
    /// Characteristic series of a square presentation
    Charpoly,
    /// Control equation: formula vs brute-force coinvariant ranks
    ControlCheck,
    /// Constant-term order identity for a presented module
    ConstantTerm,
    /// Divisibility f | g in the Iwasawa algebra (or after inverting p)
    Divides,
    /// Specialize a bivariate series at Y = y, or check that the
    /// characteristic series of a bivariate presentation specializes
    Specialize,
    /// Weight grid k(n), y_n
    Grid,
    /// p-adic regulator and Sel# order from a unit-logarithm matrix
    Regulator,
    /// Predicted constant term of the algebraic p-adic L-function
    PredictL0,
    /// Idempotent coefficients of a character; isotypic order of a module
    Idempotent,
    /// Trivial-zero count, optionally against ord_T of a series
    TrivZeros,
    /// Limit-divisibility harness with denominator bound
    LimitDiv,
}

fn read_input(path: &Option<PathBuf>) -> Result<Value, String> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| format!("cannot read {}: {e}", p.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            buf
        }
    };
    serde_json::from_str(&text).map_err(|e| format!("malformed JSON: {e}"))
}

fn write_output(path: &Option<PathBuf>, report: &Value) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(report).expect("report serialization");
    text.push('\n');
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Exit-code taxonomy for operation errors.
fn classify(e: &Error) -> u8 {
    match e {
        Error::PrecisionAmbiguous(_) | Error::PrecisionLoss { .. } => 3,
        Error::NotTorsion
        | Error::NotTorsionAfterSpecialization
        | Error::BoundExceeded { .. }
        | Error::IrregularAtPrecision
        | Error::RamifiedRoot { .. }
        | Error::NoResidueRoot { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match read_input(&cli.input) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let (precision, tdegree) = (cli.precision, cli.tdegree);
    let result = match &cli.command {
        Command::Weierstrass => commands::weierstrass(&input, precision, tdegree),
        Command::Invariants => commands::invariants(&input, precision, tdegree),
        Command::Charpoly => commands::charpoly(&input, precision, tdegree),
        Command::ControlCheck => commands::control_check_cmd(&input),
        Command::ConstantTerm => commands::constant_term(&input, precision, tdegree),
        Command::Divides => commands::divides_cmd(&input, precision, tdegree),
        Command::Specialize => commands::specialize(&input, precision),
        Command::Grid => commands::grid(&input, precision),
        Command::Regulator => commands::regulator_cmd(&input, precision),
        Command::PredictL0 => commands::predict_l0(&input, precision),
        Command::Idempotent => commands::idempotent(&input, precision),
        Command::TrivZeros => commands::triv_zeros(&input, precision, tdegree),
        Command::LimitDiv => commands::limit_div(&input, precision, tdegree),
    };
    match result {
        Ok(outcome) => {
            let mut report = outcome.report;
            if let (Some(seed), Some(obj)) = (cli.seed, report.as_object_mut()) {
                obj.insert("seed".into(), serde_json::json!(seed));
            }
            if let Err(msg) = write_output(&cli.output, &report) {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
            match outcome.pass {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            let code = classify(&e);
            let report = serde_json::json!({
                "error": e.to_string(),
                "exit_code": code,
            });
            let _ = write_output(&cli.output, &report);
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
