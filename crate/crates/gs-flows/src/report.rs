//! Deterministic text reports over the whole pipeline.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cancel::{flow_family, rca_sweep, primary_pivots_match, CancelError};
use crate::complex::{build_complex, finest_filtration, ComplexError};
use crate::flow::{is_valid, validate_flow, FlowSpec};
use crate::pages::{algebraic_cancellations, e_infinity_ranks};
use crate::sweep::{sweep, PivotKind, SweepError};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("flow failed validation:\n{0}")]
    Invalid(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Cancel(#[from] CancelError),
}

/// Runs validation, complex construction, both sweeps, the page summary and
/// the cancellation schedule, and renders everything as stable text.
pub fn full_report(flow: &FlowSpec) -> Result<String, ReportError> {
    let diags = validate_flow(flow);
    if !is_valid(&diags) {
        let text = diags
            .iter()
            .map(|d| format!("{:?}: {}", d.severity, d.message))
            .collect::<Vec<_>>()
            .join("\n");
        return Err(ReportError::Invalid(text));
    }
    let complex = build_complex(flow)?;
    let gradings = complex.gradings();
    let trace = sweep(&complex.boundary, &gradings)?;
    let rca = rca_sweep(&complex.boundary)?;
    let family = flow_family(flow)?;
    let filtration = finest_filtration(&complex);

    let mut out = String::new();
    let _ = writeln!(out, "flow: {}", flow.name);
    let _ = writeln!(
        out,
        "generators: {} ({} levels in the finest filtration)",
        complex.generators.len(),
        filtration.len()
    );
    for warn in diags {
        let _ = writeln!(out, "warning: {}", warn.message);
    }
    let _ = writeln!(out, "\nfiltration levels:");
    for (p, (label, k)) in filtration
        .levels
        .iter()
        .zip(filtration.gradings.iter())
        .enumerate()
    {
        let _ = writeln!(out, "  F_{:<2} {}  (grading {})", p, label, k);
    }

    let _ = writeln!(out, "\nboundary operator:");
    for line in complex.boundary.to_text().lines().skip(1) {
        let _ = writeln!(out, "  {line}");
    }

    let _ = writeln!(out, "\npivots:");
    for mark in &trace.pivots {
        let kind = match mark.kind {
            PivotKind::Primary => "primary",
            PivotKind::ChangeOfBasis => "change-of-basis",
        };
        let _ = writeln!(
            out,
            "  round {} ({}, {}) = {}  {}",
            mark.round, mark.row, mark.col, mark.value, kind
        );
    }
    let _ = writeln!(
        out,
        "row cancellation agrees: {}",
        primary_pivots_match(&trace, &rca)
    );

    let surv = e_infinity_ranks(&trace);
    let _ = writeln!(
        out,
        "\nE-infinity ranks: h0={} h1={} h2={}",
        surv[0], surv[1], surv[2]
    );
    let _ = writeln!(out, "algebraic cancellations:");
    for c in algebraic_cancellations(&trace) {
        let _ = writeln!(
            out,
            "  round {}: level {} against level {}",
            c.round, c.source, c.target
        );
    }

    let _ = writeln!(out, "\ncancellation schedule:");
    for step in &family.steps {
        let witness = step.witness_label.as_deref().unwrap_or("-");
        let merged = step
            .merged
            .as_ref()
            .map(|m| {
                format!(
                    "{} [{} {} sheets={} m={}]",
                    m.name,
                    m.family.letter(),
                    m.nature.tag(),
                    m.sheets,
                    m.m
                )
            })
            .unwrap_or_else(|| "-".to_string());
        let _ = writeln!(
            out,
            "  round {}: ({}, {}) witness {} -> {}",
            step.round, step.saddle_label, step.partner_label, witness, merged
        );
    }
    let _ = writeln!(
        out,
        "\nminimal flow: {} (survivors: {})",
        family.is_minimal(),
        family.survivors.join(", ")
    );
    let _ = writeln!(
        out,
        "Betti numbers: b0={} b1={} b2={}",
        family.betti[0], family.betti[1], family.betti[2]
    );
    Ok(out)
}
