use std::fmt::Write;

use conjforge::fit::parse_rational;
use conjforge::{ConjectureRun, FalsificationReport, Rational};

/// Numbered, human-readable listing of a run.
pub fn run_text(run: &ConjectureRun, verbose: bool) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "# {} {} bounds: {} conjectures over {} graphs ({} hypotheses)",
        run.target,
        run.direction,
        run.conjectures.len(),
        run.graphs.len(),
        run.hypotheses_considered
    )
    .unwrap();
    for (i, c) in run.conjectures.iter().enumerate() {
        writeln!(out, "{}. {}", i + 1, c.statement()).unwrap();
        let witnesses: Vec<&str> = c.equality_set.iter().map(String::as_str).collect();
        writeln!(
            out,
            "   touch {} [{}] id {}",
            c.touch_number,
            witnesses.join(", "),
            c.id
        )
        .unwrap();
    }
    if verbose {
        writeln!(
            out,
            "# filters: {} in, {} out",
            run.report.input_count, run.report.output_count
        )
        .unwrap();
        for r in &run.report.removed {
            writeln!(out, "#   removed {}: {}", r.id, r.reason).unwrap();
        }
    }
    out
}

pub fn report_text(report: &FalsificationReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "added {}: {} falsified, {} survived",
        report.graph_id,
        report.falsified.len(),
        report.survived_count
    )
    .unwrap();
    for f in &report.falsified {
        let rhs = parse_rational(&f.rhs).unwrap_or(Rational::from_integer(0));
        let op = if Rational::from_integer(f.lhs as i128) > rhs {
            ">"
        } else {
            "<"
        };
        writeln!(out, "falsified {}: {} ({} {op} {})", f.id, f.statement, f.lhs, f.rhs).unwrap();
    }
    out
}
