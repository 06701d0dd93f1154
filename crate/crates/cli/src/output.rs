//! Format writers. Data rows go to stdout; in csv mode summaries and
//! rejected candidates go to stderr so the data stream stays clean.
//! Numbers that can outgrow machine words (m, a, s) are serialized as
//! decimal strings in json-lines.

use serde_json::json;

use pellsum::congruence::{MClassification, Verdict};
use pellsum::oracle::OracleResult;
use pellsum::solver::{RejectedCandidate, SolutionRecord, SolveKind, SolveResult};

use crate::Format;

fn print_aligned(headers: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let join = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    println!("{}", join(headers.iter().map(|h| h.to_string()).collect()));
    for row in rows {
        println!("{}", join(row.clone()));
    }
}

fn solution_row(rec: &SolutionRecord) -> Vec<String> {
    vec![
        rec.m.to_string(),
        rec.j.to_string(),
        rec.k.to_string(),
        rec.a.to_string(),
        rec.s.to_string(),
    ]
}

fn rejected_row(rej: &RejectedCandidate) -> Vec<String> {
    vec![
        rej.m.to_string(),
        rej.j.to_string(),
        rej.k.to_string(),
        format!("[{}]", rej.a),
        format!("[{}]", rej.s),
    ]
}

fn solution_json(rec: &SolutionRecord) -> serde_json::Value {
    json!({
        "m": rec.m.to_string(),
        "j": rec.j,
        "k": rec.k,
        "a": rec.a.to_string(),
        "s": rec.s.to_string(),
    })
}

fn rejected_json(rej: &RejectedCandidate) -> serde_json::Value {
    json!({
        "m": rej.m.to_string(),
        "j": rej.j,
        "k": rej.k,
        "a": rej.a.to_string(),
        "s": rej.s.to_string(),
        "rejected": true,
    })
}

fn csv_row(cells: &[String]) -> String {
    cells.join(",")
}

pub fn classification(cls: &MClassification, format: Format) {
    match format {
        Format::Table => match cls.verdict {
            Verdict::Excluded(reason) => {
                println!("m={}: excluded ({})", cls.m, reason.as_str());
            }
            Verdict::NonSquareCandidate(case) => {
                println!(
                    "m={}: candidate (case {}, lambda {})",
                    cls.m,
                    case.as_str(),
                    case.lambda().as_str()
                );
            }
            Verdict::SquareCandidate { n, root } => {
                println!("m={}: square candidate ({} = (6*{} - 1)^2, root {})", cls.m, cls.m, n, root);
            }
        },
        Format::JsonLines => {
            let value = match cls.verdict {
                Verdict::Excluded(reason) => json!({
                    "m": cls.m.to_string(),
                    "verdict": "excluded",
                    "reason": reason.as_str(),
                }),
                Verdict::NonSquareCandidate(case) => json!({
                    "m": cls.m.to_string(),
                    "verdict": "candidate",
                    "case": case.as_str(),
                    "lambda": case.lambda().as_str(),
                }),
                Verdict::SquareCandidate { n, root } => json!({
                    "m": cls.m.to_string(),
                    "verdict": "square-candidate",
                    "n": n,
                    "root": root.to_string(),
                }),
            };
            println!("{value}");
        }
        Format::Csv => {
            println!("m,verdict,case,lambda,n,root,reason");
            let empty = String::new();
            let row = match cls.verdict {
                Verdict::Excluded(reason) => vec![
                    cls.m.to_string(),
                    "excluded".into(),
                    empty.clone(),
                    empty.clone(),
                    empty.clone(),
                    empty,
                    reason.as_str().into(),
                ],
                Verdict::NonSquareCandidate(case) => vec![
                    cls.m.to_string(),
                    "candidate".into(),
                    case.as_str().into(),
                    case.lambda().as_str().into(),
                    empty.clone(),
                    empty.clone(),
                    empty,
                ],
                Verdict::SquareCandidate { n, root } => vec![
                    cls.m.to_string(),
                    "square-candidate".into(),
                    empty.clone(),
                    empty.clone(),
                    n.to_string(),
                    root.to_string(),
                    empty,
                ],
            };
            println!("{}", csv_row(&row));
        }
    }
}

fn summary_text(res: &SolveResult) -> String {
    match &res.kind {
        SolveKind::Excluded(reason) => {
            format!("m={}: excluded ({}); 0 solutions", res.m, reason.as_str())
        }
        SolveKind::NonSquare { problem, unit, sigma } => format!(
            "m={}: case {}, X^2 - {}*Y^2 = {}, unit ({}, {}), sigma={}; {} solution(s)",
            res.m,
            problem.case.as_str(),
            problem.d,
            problem.n_rhs,
            unit.x,
            unit.y,
            sigma,
            res.records.len()
        ),
        SolveKind::Square { n, root, phi } => format!(
            "m={}: square candidate (root {}, n {}), phi={}; {} solution(s), {} rejected",
            res.m,
            root,
            n,
            phi,
            res.records.len(),
            res.rejected.len()
        ),
    }
}

fn summary_json(res: &SolveResult) -> serde_json::Value {
    match &res.kind {
        SolveKind::Excluded(reason) => json!({
            "m": res.m.to_string(),
            "reason": reason.as_str(),
            "count": 0,
        }),
        SolveKind::NonSquare { sigma, .. } => json!({
            "m": res.m.to_string(),
            "sigma": sigma,
            "count": res.records.len(),
        }),
        SolveKind::Square { phi, .. } => json!({
            "m": res.m.to_string(),
            "phi": phi,
            "count": res.records.len(),
        }),
    }
}

pub fn solve_result(res: &SolveResult, show_rejected: bool, format: Format) {
    match format {
        Format::Table => {
            let mut rows = Vec::new();
            if show_rejected {
                rows.extend(res.rejected.iter().map(rejected_row));
            }
            rows.extend(res.records.iter().map(solution_row));
            if !rows.is_empty() {
                print_aligned(&["m", "j", "k", "a", "s"], &rows);
            }
            println!("{}", summary_text(res));
        }
        Format::JsonLines => {
            if show_rejected {
                for rej in &res.rejected {
                    println!("{}", rejected_json(rej));
                }
            }
            for rec in &res.records {
                println!("{}", solution_json(rec));
            }
            println!("{}", summary_json(res));
        }
        Format::Csv => {
            println!("m,j,k,a,s");
            for rec in &res.records {
                println!("{}", csv_row(&solution_row(rec)));
            }
            if show_rejected {
                for rej in &res.rejected {
                    eprintln!(
                        "# rejected m={} j={} k={} a={} s={}",
                        rej.m, rej.j, rej.k, rej.a, rej.s
                    );
                }
            }
            eprintln!("# {}", summary_text(res));
        }
    }
}

/// Plain record stream (scan): no summaries, data only.
pub fn record_stream(records: &[SolutionRecord], format: Format) {
    match format {
        Format::Table => {
            let rows: Vec<Vec<String>> = records.iter().map(solution_row).collect();
            print_aligned(&["m", "j", "k", "a", "s"], &rows);
        }
        Format::JsonLines => {
            for rec in records {
                println!("{}", solution_json(rec));
            }
        }
        Format::Csv => {
            println!("m,j,k,a,s");
            for rec in records {
                println!("{}", csv_row(&solution_row(rec)));
            }
        }
    }
}

pub fn verify_result(
    m: u64,
    a: &num_bigint::BigUint,
    s: &num_bigint::BigUint,
    valid: bool,
    format: Format,
) {
    match format {
        Format::Table => {
            if valid {
                println!("ok: the {m} consecutive squares starting at {a}^2 sum to {s}^2");
            } else {
                println!("NOT a solution: m={m}, a={a}, s={s}");
            }
        }
        Format::JsonLines => {
            println!(
                "{}",
                json!({
                    "m": m.to_string(),
                    "a": a.to_string(),
                    "s": s.to_string(),
                    "valid": valid,
                })
            );
        }
        Format::Csv => {
            println!("m,a,s,valid");
            println!("{m},{a},{s},{valid}");
        }
    }
}

pub fn oracle_result(res: &OracleResult, format: Format) {
    match format {
        Format::Table => {
            let rows: Vec<Vec<String>> = res
                .pairs
                .iter()
                .map(|(a, s)| vec![res.m.to_string(), a.to_string(), s.to_string()])
                .collect();
            print_aligned(&["m", "a", "s"], &rows);
            println!(
                "m={}: {} solution(s) with a <= {}",
                res.m,
                res.pairs.len(),
                res.a_bound
            );
        }
        Format::JsonLines => {
            for (a, s) in &res.pairs {
                println!(
                    "{}",
                    json!({
                        "m": res.m.to_string(),
                        "a": a.to_string(),
                        "s": s.to_string(),
                    })
                );
            }
            println!(
                "{}",
                json!({
                    "m": res.m.to_string(),
                    "a_bound": res.a_bound,
                    "count": res.pairs.len(),
                })
            );
        }
        Format::Csv => {
            println!("m,a,s");
            for (a, s) in &res.pairs {
                println!("{},{},{}", res.m, a, s);
            }
            eprintln!(
                "# m={} count={} a_bound={}",
                res.m,
                res.pairs.len(),
                res.a_bound
            );
        }
    }
}
