//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails (or output cannot be written),
//! 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cyclotomic::{odd_primes_up_to, Dimension};
use crate::operators::{chrestenson, kronecker_pauli, weyl, KpIndex, WeylIndex};
use crate::relation::{paper_index_map, verified_table, IndexOrigin};
use crate::render;
use crate::suite::{run_suite, CheckFamily};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qudit-bases", version, about = "Exact qudit operator bases and the Chrestenson conjugation relation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the conjugation table C_d U_nm C_d = w^k Pi_(n',m')
    Table(TableArgs),
    /// Run the exact verification suite
    Verify(VerifyArgs),
    /// Export one operator as a matrix
    Export(ExportArgs),
    /// List supported dimensions
    Primes(PrimesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OperatorKind {
    Chrestenson,
    Weyl,
    Kpm,
}

#[derive(Debug, Args)]
struct Common {
    /// Qudit dimension, an odd prime
    #[arg(long)]
    dim: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated check families: chrestenson, weyl, kpm, relation, trace
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    /// Omit timings from the report
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    operator: OperatorKind,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Debug, Args)]
struct PrimesArgs {
    #[arg(long, default_value_t = 31)]
    max: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Outcome {
    Done(String),
    Failed(String),
    Usage(String),
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };

    let (outcome, out_path) = match cli.command {
        Command::Table(a) => (cmd_table(&a), a.common.out),
        Command::Verify(a) => (cmd_verify(&a), a.common.out),
        Command::Export(a) => (cmd_export(&a), a.common.out),
        Command::Primes(a) => (cmd_primes(&a), a.out),
    };

    let (body, code) = match outcome {
        Outcome::Done(s) => (s, EXIT_OK),
        Outcome::Failed(s) => (s, EXIT_FAILURE),
        Outcome::Usage(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let written = match out_path {
        Some(path) => std::fs::write(&path, body.as_bytes()).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            EXIT_FAILURE
        }
    }
}

fn dimension(dim: u32) -> Result<Dimension, Outcome> {
    Dimension::new(dim).map_err(|e| Outcome::Usage(e.to_string()))
}

fn cmd_table(args: &TableArgs) -> Outcome {
    let d = match dimension(args.common.dim) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let rows = verified_table(d);
    let map = paper_index_map(d);
    let published = (map.origin() == IndexOrigin::Published).then_some(&map);
    let records = render::table_records(&rows, published);
    let body = match args.common.format {
        Format::Text => render::table_text(d, &records),
        Format::Json => render::to_json(&records),
        Format::Csv => render::table_csv(&records),
        Format::Latex => render::table_latex(d, &records),
    };
    if records.iter().all(|r| r.verified) {
        Outcome::Done(body)
    } else {
        Outcome::Failed(body)
    }
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let d = match dimension(args.common.dim) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let selection = match args.suite.iter().map(|s| s.parse::<CheckFamily>()).collect::<Result<Vec<_>, _>>() {
        Ok(s) => s,
        Err(e) => return Outcome::Usage(e.to_string()),
    };
    let timing = !args.no_timing;
    let body = match args.common.format {
        Format::Latex => return Outcome::Usage("verify supports --format text, json or csv".into()),
        format => {
            let report = run_suite(d, &selection);
            let passed = report.all_passed;
            let body = match format {
                Format::Text => render::report_text(&report, timing),
                Format::Json => render::to_json(&render::ReportRecord::new(&report, timing)),
                _ => render::report_csv(&render::ReportRecord::new(&report, timing)),
            };
            if !passed {
                return Outcome::Failed(body);
            }
            body
        }
    };
    Outcome::Done(body)
}

fn cmd_export(args: &ExportArgs) -> Outcome {
    let d = match dimension(args.common.dim) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let pair = || -> Result<(u32, u32), Outcome> {
        match (args.n, args.m) {
            (Some(n), Some(m)) if n < d.get() && m < d.get() => Ok((n, m)),
            (Some(_), Some(_)) => Err(Outcome::Usage(format!("--n and --m must lie in 0..{}", d.get()))),
            _ => Err(Outcome::Usage("--n and --m are required for weyl and kpm".into())),
        }
    };
    let (name, matrix) = match args.operator {
        OperatorKind::Chrestenson => (format!("C_{d}"), chrestenson(d)),
        OperatorKind::Weyl => match pair() {
            Ok((n, m)) => (format!("U_{{{}}}", index_label(d, n, m)), weyl(d, WeylIndex::new(d, n.into(), m.into()))),
            Err(o) => return o,
        },
        OperatorKind::Kpm => match pair() {
            Ok((n, m)) => (
                format!("\\Pi_{{{}}}", index_label(d, n, m)),
                kronecker_pauli(d, KpIndex::new(d, n.into(), m.into())),
            ),
            Err(o) => return o,
        },
    };
    Outcome::Done(match args.common.format {
        Format::Text => render::matrix_text(&name, &matrix),
        Format::Json => render::to_json(&render::MatrixRecord::new(&matrix, true)),
        Format::Csv => render::matrix_csv(&name, &matrix),
        Format::Latex => render::matrix_latex(&name, &matrix),
    })
}

fn index_label(d: Dimension, n: u32, m: u32) -> String {
    if d.get() < 10 {
        format!("{n}{m}")
    } else {
        format!("{n},{m}")
    }
}

fn cmd_primes(args: &PrimesArgs) -> Outcome {
    let primes = odd_primes_up_to(args.max);
    let strs: Vec<String> = primes.iter().map(u32::to_string).collect();
    Outcome::Done(match args.format {
        Format::Text => format!("{}\n", strs.join(" ")),
        Format::Json => render::to_json(&primes),
        Format::Csv => format!("dimension\n{}", strs.iter().map(|s| format!("{s}\n")).collect::<String>()),
        Format::Latex => return Outcome::Usage("primes supports --format text, json or csv".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("qudit-bases").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn primes_listing() {
        assert_eq!(run_args(&["primes"]), (0, "3 5 7 11 13 17 19 23 29 31\n".into(), String::new()));
        assert_eq!(run_args(&["primes", "--max", "7"]).1, "3 5 7\n");
        let (code, out, _) = run_args(&["primes", "--max", "2"]);
        assert_eq!((code, out.trim()), (0, ""));
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = run_args(&["verify", "--dim", "4"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("prime"), "{err}");
        assert_eq!(run_args(&["verify", "--dim", "3", "--suite", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["export", "--dim", "3", "--operator", "weyl"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["export", "--dim", "3", "--operator", "kpm", "--n", "3", "--m", "0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["table"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["table", "--dim", "2"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_is_not_an_error() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("table"));
    }
}
