//! `pellsum` — find integer pairs (a, s) with
//! a² + (a+1)² + ⋯ + (a+M−1)² = s².
//!
//! Exit codes: 0 success, 1 usage or input error, 2 internal
//! inconsistency (a result failing verification before emission),
//! 3 verification answered "false".

mod output;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use pellsum::congruence::{candidates_up_to, classify};
use pellsum::oracle::brute_force_solutions;
use pellsum::solver::{solve, verify, Limits, SolutionRecord};

#[derive(Parser)]
#[command(
    name = "pellsum",
    version,
    about = "Sums of M consecutive integer squares that are perfect squares",
    long_about = "Finds every integer pair (a, s) with a >= 1 such that\n\
                  a^2 + (a+1)^2 + ... + (a+M-1)^2 = s^2,\n\
                  by reduction to generalized Pell equations (non-square M)\n\
                  or to an even factor-pair decomposition (square M)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    /// Human-oriented aligned columns (not schema-stable)
    #[default]
    Table,
    /// One JSON object per line; m, a, s are decimal strings
    JsonLines,
    /// Comma-separated rows; diagnostics go to stderr
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a run length M (candidate, square candidate, or excluded)
    Classify {
        m: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Enumerate solutions for one M
    Solve {
        m: u64,
        /// Deepest step k to take on each branch
        #[arg(long)]
        max_k: Option<u64>,
        /// Largest starting value a to emit
        #[arg(long)]
        max_a: Option<u64>,
        /// Stop after this many solutions (default 10 when no other
        /// limit is given)
        #[arg(long)]
        max_count: Option<usize>,
        /// Also report candidates rejected for a < 1
        #[arg(long)]
        show_rejected: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Enumerate the first solutions of every candidate M up to a bound
    Scan {
        #[arg(long)]
        max_m: u64,
        /// Solutions to take per candidate M
        #[arg(long, default_value_t = 1)]
        per_m: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check one (M, a, s) triple, or brute-force scan with --scan
    Verify {
        /// Treat the second argument as a_max and scan a = 1..=a_max
        #[arg(long)]
        scan: bool,
        m: u64,
        /// Starting value a (with --scan: the largest a to probe)
        a: String,
        /// Claimed square root s of the sum (omitted with --scan)
        s: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let code = match cli.command {
        Command::Classify { m, format } => cmd_classify(m, format),
        Command::Solve { m, max_k, max_a, max_count, show_rejected, format } => {
            cmd_solve(m, max_k, max_a, max_count, show_rejected, format)
        }
        Command::Scan { max_m, per_m, format } => cmd_scan(max_m, per_m, format),
        Command::Verify { scan, m, a, s, format } => cmd_verify(scan, m, &a, s.as_deref(), format),
    };
    ExitCode::from(code)
}

fn cmd_classify(m: u64, format: Format) -> u8 {
    match classify(m) {
        Ok(cls) => {
            output::classification(&cls, format);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Verification gate applied to every record before emission.
fn gate(records: &[SolutionRecord]) -> Result<(), u8> {
    for rec in records {
        if !verify(rec.m, &rec.a, &rec.s) {
            eprintln!(
                "internal error: record failed verification: m={} j={} k={} a={} s={}",
                rec.m, rec.j, rec.k, rec.a, rec.s
            );
            return Err(2);
        }
    }
    Ok(())
}

fn cmd_solve(
    m: u64,
    max_k: Option<u64>,
    max_a: Option<u64>,
    max_count: Option<usize>,
    show_rejected: bool,
    format: Format,
) -> u8 {
    let mut limits = Limits { max_k, max_a, max_count };
    if !limits.is_bounded() {
        limits.max_count = Some(10);
    }
    match solve(m, &limits) {
        Ok(res) => {
            if let Err(code) = gate(&res.records) {
                return code;
            }
            output::solve_result(&res, show_rejected, format);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cmd_scan(max_m: u64, per_m: usize, format: Format) -> u8 {
    if max_m < 2 {
        eprintln!("error: --max-m must be at least 2");
        return 1;
    }
    let limits = Limits { max_count: Some(per_m), ..Limits::default() };
    let mut records = Vec::new();
    for cls in candidates_up_to(max_m) {
        match solve(cls.m, &limits) {
            Ok(res) => {
                if let Err(code) = gate(&res.records) {
                    return code;
                }
                records.extend(res.records);
            }
            Err(e) => {
                eprintln!("error: m={}: {e}", cls.m);
                return 1;
            }
        }
    }
    output::record_stream(&records, format);
    0
}

fn parse_biguint(text: &str, what: &str) -> Result<BigUint, u8> {
    BigUint::from_str(text).map_err(|_| {
        eprintln!("error: {what} must be a non-negative integer, got {text:?}");
        1
    })
}

fn cmd_verify(scan: bool, m: u64, a: &str, s: Option<&str>, format: Format) -> u8 {
    if m < 2 {
        eprintln!("error: run length must be at least 2, got {m}");
        return 1;
    }
    if scan {
        if s.is_some() {
            eprintln!("error: verify --scan takes M and A_MAX only");
            return 1;
        }
        let a_max = match a.parse::<u64>() {
            Ok(v) if v >= 1 => v,
            _ => {
                eprintln!("error: a_max must be an integer >= 1, got {a:?}");
                return 1;
            }
        };
        let res = brute_force_solutions(m, a_max);
        output::oracle_result(&res, format);
        return 0;
    }
    let Some(s) = s else {
        eprintln!("error: verify needs M A S (or --scan M A_MAX)");
        return 1;
    };
    let (a, s) = match (parse_biguint(a, "a"), parse_biguint(s, "s")) {
        (Ok(a), Ok(s)) => (a, s),
        _ => return 1,
    };
    let one = BigUint::from(1u32);
    if a < one || s < one {
        eprintln!("error: verify requires a >= 1 and s >= 1");
        return 1;
    }
    let valid = verify(m, &a, &s);
    output::verify_result(m, &a, &s, valid, format);
    if valid {
        0
    } else {
        3
    }
}
