//! JSON documents describing flows, and the canonical generator order.

use std::fs;
use std::io::Read;
use std::path::Path;

use thiserror::Error;

use crate::flow::FlowSpec;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid flow document: {0}")]
    Parse(#[from] serde_json::Error),
}

pub fn parse_flow(text: &str) -> Result<FlowSpec, DocumentError> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_flow(path: &Path) -> Result<FlowSpec, DocumentError> {
    let text = fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_flow(&text)
}

pub fn read_flow_from(reader: &mut impl Read) -> Result<FlowSpec, DocumentError> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|source| DocumentError::Io {
            path: "<stdin>".to_string(),
            source,
        })?;
    parse_flow(&text)
}

pub fn to_json(flow: &FlowSpec) -> String {
    serde_json::to_string_pretty(flow).expect("flow specs always serialise")
}

/// Reorder the singularities so the derived generator order is graded:
/// pure attractors first, then everything saddle-natured, then pure
/// repellers. The sort is stable, so the input order breaks ties.
pub fn canonical_order(flow: &FlowSpec) -> FlowSpec {
    let mut out = flow.clone();
    out.singularities.sort_by_key(|s| {
        crate::flow::nature_numbers(s)
            .iter()
            .position(|&n| n > 0)
            .unwrap_or(0)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::flow::{is_valid, validate_flow, Severity};

    #[test]
    fn json_round_trip() {
        let flow = fixtures::cone_sweep();
        let text = to_json(&flow);
        let back = parse_flow(&text).unwrap();
        assert_eq!(flow, back);
    }

    #[test]
    fn canonical_order_restores_grading() {
        let mut scrambled = fixtures::whitney_sweep();
        scrambled.singularities.reverse();
        let diags = validate_flow(&scrambled);
        assert!(diags.iter().any(|d| d.severity == Severity::Warning)
            || !is_valid(&diags));
        let ordered = canonical_order(&scrambled);
        assert!(is_valid(&validate_flow(&ordered)));
        let gens = crate::flow::enumerate_generators(&ordered);
        assert!(gens.windows(2).all(|w| w[0].k <= w[1].k));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_flow("{\"name\": 3}").is_err());
    }
}
