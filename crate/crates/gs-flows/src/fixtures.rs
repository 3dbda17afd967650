//! Bundled worked examples: flows whose chain complexes, sweeps, and
//! cancellation schedules are known by hand, plus the isolating-block
//! table used by the Poincaré–Hopf tests.

use crate::flow::{BlockData, FlowSpec};

fn load(text: &str) -> FlowSpec {
    serde_json::from_str(text).expect("bundled fixture must parse")
}

/// Pinched torus: two regular centres joined through a cone saddle.
pub fn pinched_torus() -> FlowSpec {
    load(include_str!("../fixtures/pinched_torus.json"))
}

/// Eleven-generator flow with three cone saddles and a two-sheet cone
/// attractor.
pub fn cone_sweep() -> FlowSpec {
    load(include_str!("../fixtures/cone_sweep.json"))
}

/// Flow with two Whitney saddles and a two-sheet Whitney repeller.
pub fn whitney_sweep() -> FlowSpec {
    load(include_str!("../fixtures/whitney_sweep.json"))
}

/// Fourteen-generator flow with double-crossing attractors and saddles.
pub fn double_crossing() -> FlowSpec {
    load(include_str!("../fixtures/double_crossing.json"))
}

/// The smallest saddle-sink cancellation producing a three-sheet cone
/// attractor.
pub fn intro_cone_cancel() -> FlowSpec {
    load(include_str!("../fixtures/intro_cone_cancel.json"))
}

/// A saddle cancelling one sheet of a double-crossing attractor.
pub fn double_cancel() -> FlowSpec {
    load(include_str!("../fixtures/double_cancel.json"))
}

/// Every fixture with a non-trivial sweep.
pub fn all_sweep_fixtures() -> Vec<FlowSpec> {
    vec![
        pinched_torus(),
        cone_sweep(),
        whitney_sweep(),
        double_crossing(),
    ]
}

/// Isolating-block data for each (family, nature) combination.
pub fn ph_table() -> Vec<BlockData> {
    serde_json::from_str(include_str!("../fixtures/ph_table.json"))
        .expect("bundled block table must parse")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{is_valid, poincare_hopf_check, validate_flow};

    #[test]
    fn all_fixtures_validate() {
        for flow in all_sweep_fixtures()
            .into_iter()
            .chain([intro_cone_cancel(), double_cancel()])
        {
            let diags = validate_flow(&flow);
            assert!(is_valid(&diags), "{}: {:?}", flow.name, diags);
        }
    }

    #[test]
    fn block_table_covers_twenty_rows_and_balances() {
        let table = ph_table();
        assert_eq!(table.len(), 20);
        for block in &table {
            assert!(
                poincare_hopf_check(block),
                "{:?}/{:?}",
                block.family,
                block.nature
            );
        }
    }
}
