//! Command-line front end: feed a JSON flow document through validation,
//! morsification, the sweeps, the page summary, or the full report.
//!
//! Exit codes: 0 success, 1 validation failure, 2 structural violation
//! (∂² ≠ 0, non-unimodular pivot, pivot-set disagreement), 3 I/O or
//! parse error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gs_flows::algebra::IntMatrix;
use gs_flows::cancel::{flow_family, rca_sweep, primary_pivots_match};
use gs_flows::complex::{build_complex, finest_filtration};
use gs_flows::document::{canonical_order, read_flow, read_flow_from};
use gs_flows::flow::{is_valid, validate_flow, FlowSpec, Severity};
use gs_flows::morsify::morsify;
use gs_flows::pages::{algebraic_cancellations, e_infinity_ranks, e_module_rank};
use gs_flows::report::full_report;
use gs_flows::sweep::{sweep, PivotKind};

#[derive(Parser)]
#[command(name = "gsflow", version, about = "Chain complexes and cancellation schedules of flows on singular surfaces")]
struct Cli {
    /// JSON flow document; standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Reorder the singularities into the canonical graded order first.
    #[arg(long, global = true)]
    canonical_order: bool,
    /// Print the round-by-round matrices, with primary pivots framed as
    /// [v] and change-of-basis pivots as (v).
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the document and list diagnostics.
    Validate,
    /// Print the morsified (Morse–Smale) flow.
    Morsify,
    /// Print the boundary operator and the finest filtration.
    Boundary,
    /// Run the sweeping method and print every pivot, round by round.
    Sweep {
        /// Also print the matrix after sweeping this diagonal.
        #[arg(long)]
        diagonal: Option<usize>,
    },
    /// Run the row cancellation method and compare its pivots.
    Rca,
    /// Print the per-round module ranks of the spectral sequence.
    Pages,
    /// Print the dynamical cancellation schedule.
    Schedule,
    /// Print the full pipeline report.
    Report,
}

/// Render a matrix with pivot marks: primaries as `[v]`, change-of-basis
/// entries as `(v)`. Marks are 1-based (row, col, kind).
fn render_marked(matrix: &IntMatrix, marks: &[(usize, usize, PivotKind)]) -> String {
    let cells: Vec<Vec<String>> = (0..matrix.rows())
        .map(|r| {
            (0..matrix.cols())
                .map(|c| {
                    let v = matrix.at(r, c);
                    match marks.iter().find(|&&(mr, mc, _)| mr == r + 1 && mc == c + 1) {
                        Some((_, _, PivotKind::Primary)) => format!("[{v}]"),
                        Some((_, _, PivotKind::ChangeOfBasis)) => format!("({v})"),
                        None => v.to_string(),
                    }
                })
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..matrix.cols())
        .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn load(cli: &Cli) -> Result<FlowSpec, String> {
    let flow = match &cli.input {
        Some(path) => read_flow(path),
        None => read_flow_from(&mut std::io::stdin().lock()),
    }
    .map_err(|e| e.to_string())?;
    Ok(if cli.canonical_order {
        canonical_order(&flow)
    } else {
        flow
    })
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn run(cli: &Cli) -> Result<String, ExitCode> {
    let flow = load(cli).map_err(|msg| {
        eprintln!("error: {msg}");
        ExitCode::from(3)
    })?;
    let diags = validate_flow(&flow);
    if let Command::Validate = cli.command {
        let mut out = String::new();
        for d in &diags {
            out.push_str(&format!(
                "{}: {}\n",
                match d.severity {
                    Severity::Error => "error",
                    Severity::Warning => "warning",
                },
                d.message
            ));
        }
        out.push_str(if is_valid(&diags) { "valid\n" } else { "invalid\n" });
        return if is_valid(&diags) {
            Ok(out)
        } else {
            let _ = emit(cli, &out);
            Err(ExitCode::from(1))
        };
    }
    if !is_valid(&diags) {
        for d in &diags {
            eprintln!("{:?}: {}", d.severity, d.message);
        }
        return Err(ExitCode::from(1));
    }

    let internal = |e: String| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    };

    match &cli.command {
        Command::Validate => unreachable!("handled above"),
        Command::Morsify => {
            let m = morsify(&flow).map_err(|e| internal(e.to_string()))?;
            let mut out = String::new();
            for (i, p) in m.points.iter().enumerate() {
                out.push_str(&format!(
                    "point {} index {} component {}{}\n",
                    p.id,
                    p.index,
                    m.component[i],
                    if p.primary { " (primary)" } else { "" }
                ));
            }
            for o in &m.orbits {
                out.push_str(&format!(
                    "orbit {} -> {} sign {}\n",
                    m.points[o.from].id, m.points[o.to].id, o.sign
                ));
            }
            Ok(out)
        }
        Command::Boundary => {
            let complex = build_complex(&flow).map_err(|e| internal(e.to_string()))?;
            let filt = finest_filtration(&complex);
            let mut out = String::new();
            for (p, label) in filt.levels.iter().enumerate() {
                out.push_str(&format!("F_{p} {label}\n"));
            }
            out.push_str(&complex.boundary.to_text());
            Ok(out)
        }
        Command::Sweep { diagonal } => {
            let complex = build_complex(&flow).map_err(|e| internal(e.to_string()))?;
            let trace = sweep(&complex.boundary, &complex.gradings())
                .map_err(|e| internal(e.to_string()))?;
            let mut out = String::new();
            for mark in &trace.pivots {
                out.push_str(&format!(
                    "round {} ({}, {}) = {} {}\n",
                    mark.round,
                    mark.row,
                    mark.col,
                    mark.value,
                    match mark.kind {
                        PivotKind::Primary => "primary",
                        PivotKind::ChangeOfBasis => "change-of-basis",
                    }
                ));
            }
            if let Some(r) = diagonal {
                match trace.matrices.get(*r) {
                    Some(m) => out.push_str(&m.to_text()),
                    None => out.push_str(&trace.final_matrix().to_text()),
                }
            }
            if cli.trace {
                for (r, m) in trace.matrices.iter().enumerate().skip(1) {
                    let marks: Vec<(usize, usize, PivotKind)> = trace
                        .pivots
                        .iter()
                        .filter(|p| p.round <= r)
                        .map(|p| (p.row, p.col, p.kind))
                        .collect();
                    out.push_str(&format!("after diagonal {r}:\n"));
                    out.push_str(&render_marked(m, &marks));
                }
            }
            Ok(out)
        }
        Command::Rca => {
            let complex = build_complex(&flow).map_err(|e| internal(e.to_string()))?;
            let trace = sweep(&complex.boundary, &complex.gradings())
                .map_err(|e| internal(e.to_string()))?;
            let rca = rca_sweep(&complex.boundary).map_err(|e| internal(e.to_string()))?;
            let mut out = String::new();
            for p in &rca.pivots {
                out.push_str(&format!("round {} ({}, {})\n", p.round, p.row, p.col));
            }
            out.push_str(&format!(
                "matches sweep: {}\n",
                primary_pivots_match(&trace, &rca)
            ));
            if cli.trace {
                for (r, m) in rca.matrices.iter().enumerate().skip(1) {
                    let marks: Vec<(usize, usize, PivotKind)> = rca
                        .pivots
                        .iter()
                        .filter(|p| p.round <= r)
                        .map(|p| (p.row, p.col, PivotKind::Primary))
                        .collect();
                    out.push_str(&format!("after round {r}:\n"));
                    out.push_str(&render_marked(m, &marks));
                }
            }
            Ok(out)
        }
        Command::Pages => {
            let complex = build_complex(&flow).map_err(|e| internal(e.to_string()))?;
            let gradings = complex.gradings();
            let trace = sweep(&complex.boundary, &gradings)
                .map_err(|e| internal(e.to_string()))?;
            let n = gradings.len();
            let mut out = String::new();
            for r in 1..=n {
                let ranks: Vec<String> = (0..n)
                    .map(|p| e_module_rank(&trace, r, p).unwrap().to_string())
                    .collect();
                out.push_str(&format!("E^{r}: {}\n", ranks.join(" ")));
            }
            let inf = e_infinity_ranks(&trace);
            out.push_str(&format!(
                "E^inf by grading: {} {} {}\n",
                inf[0], inf[1], inf[2]
            ));
            for c in algebraic_cancellations(&trace) {
                out.push_str(&format!(
                    "cancel round {}: level {} with level {}\n",
                    c.round, c.source, c.target
                ));
            }
            Ok(out)
        }
        Command::Schedule => {
            let family = flow_family(&flow).map_err(|e| internal(e.to_string()))?;
            let mut out = String::new();
            for step in &family.steps {
                out.push_str(&format!(
                    "round {}: ({}, {}) witness {} merged {}\n",
                    step.round,
                    step.saddle_label,
                    step.partner_label,
                    step.witness_label.as_deref().unwrap_or("-"),
                    step.merged
                        .as_ref()
                        .map(|m| m.name.as_str())
                        .unwrap_or("-"),
                ));
            }
            out.push_str(&format!(
                "survivors: {}\nminimal: {}\n",
                family.survivors.join(", "),
                family.is_minimal()
            ));
            Ok(out)
        }
        Command::Report => full_report(&flow).map_err(|e| internal(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            if emit(&cli, &text).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(code) => code,
    }
}
