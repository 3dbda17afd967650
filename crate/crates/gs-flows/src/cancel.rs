//! Row cancellation and the dynamical cancellation schedule.
//!
//! `rca_sweep` runs the row-reduction variant of the sweeping method and is
//! used to cross-check the primary pivots of [`crate::sweep::sweep`].
//! `flow_family` turns the algebraic cancellation order into a sequence of
//! flows: each step removes a saddle and one of its adjacent generators,
//! merging them into a witness singularity, until a minimal flow remains.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, IntMatrix};
use crate::complex::{build_complex, ComplexError};
use crate::flow::{Family, FlowSpec, Nature};
use crate::morsify::morsify;
use crate::pages::algebraic_cancellations;
use crate::sweep::{sweep, SweepError, SweepTrace};

#[derive(Debug, Error)]
pub enum CancelError {
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("morsification failed: {0}")]
    Morsify(#[from] crate::flow::FlowError),
    #[error("cancellation pivot at ({row}, {col}) is {value}, not a unit")]
    NonUnitPivot { row: usize, col: usize, value: BigInt },
    #[error("cancellation pivot at ({row}, {col}) touches an already removed generator")]
    DeadPivot { row: usize, col: usize },
    #[error("homology changed after cancelling pivot ({row}, {col}): {before:?} -> {after:?}")]
    HomologyChanged {
        row: usize,
        col: usize,
        before: [usize; 3],
        after: [usize; 3],
    },
}

/// A primary pivot found by the row cancellation method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RcaPivot {
    pub row: usize,
    pub col: usize,
    pub round: usize,
}

#[derive(Debug, Clone)]
pub struct RcaTrace {
    /// `matrices[r]` is the operator at the start of round r + 1.
    pub matrices: Vec<IntMatrix>,
    /// `transforms[r]` is the matrix conjugated out after round r + 1.
    pub transforms: Vec<IntMatrix>,
    pub pivots: Vec<RcaPivot>,
}

impl RcaTrace {
    /// Pivot positions as sorted (row, col, round) triples, 1-based.
    pub fn pivot_positions(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<(usize, usize, usize)> = self
            .pivots
            .iter()
            .map(|p| (p.row, p.col, p.round))
            .collect();
        v.sort_unstable();
        v
    }
}

/// Row cancellation: at each round r, mark the nonzero diagonal-r entries
/// whose columns are still pivot-free, then conjugate by the row operations
/// that clear everything to the right of each new pivot.
pub fn rca_sweep(delta: &IntMatrix) -> Result<RcaTrace, CancelError> {
    if !delta.is_strictly_upper_triangular() {
        return Err(CancelError::Sweep(SweepError::NotUpperTriangular));
    }
    let n = delta.cols();
    let mut current = delta.clone();
    let mut trace = RcaTrace {
        matrices: vec![current.clone()],
        transforms: Vec::new(),
        pivots: Vec::new(),
    };
    for round in 1..n {
        for col in (round + 1)..=n {
            let row = col - round;
            if current.at(row - 1, col - 1).is_zero() {
                continue;
            }
            if trace.pivots.iter().any(|p| p.col == col) {
                continue;
            }
            trace.pivots.push(RcaPivot { row, col, round });
        }
        // Row `col` of the transform clears the tail of every pivot row
        // marked so far; fill-in produced by a later conjugation may land
        // in the tail of an earlier pivot row, so those rows are re-swept
        // each round.
        let mut transform = IntMatrix::identity(n);
        let mut changed = false;
        for pivot in &trace.pivots {
            let value = current.at(pivot.row - 1, pivot.col - 1);
            for ell in (pivot.col + 1)..=n {
                let entry = current.at(pivot.row - 1, ell - 1);
                if entry.is_zero() {
                    continue;
                }
                let (q, rem) = entry.div_rem(&value);
                if !rem.is_zero() {
                    return Err(CancelError::Sweep(
                        SweepError::NonUnimodularChangeOfBasis {
                            pivot: value.abs(),
                            entry,
                            round,
                        },
                    ));
                }
                transform.set(pivot.col - 1, ell - 1, -q);
                changed = true;
            }
        }
        if changed {
            current = current.conjugate(&transform)?;
        }
        trace.transforms.push(transform);
        trace.matrices.push(current.clone());
    }
    Ok(trace)
}

/// True when the row cancellation method and the sweep mark exactly the
/// same primary pivots, round for round.
pub fn primary_pivots_match(sweep: &SweepTrace, rca: &RcaTrace) -> bool {
    sweep.primary_positions() == rca.pivot_positions()
}

/// The singularity produced by one dynamical cancellation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedSingularity {
    pub name: String,
    pub family: Family,
    pub nature: Nature,
    pub sheets: usize,
    /// Type number: the sum over the merged participants.
    pub m: usize,
}

/// One step of the dynamical cancellation schedule.
#[derive(Debug, Clone)]
pub struct CancellationStep {
    pub round: usize,
    /// 1-based pivot position in the original generator order.
    pub row: usize,
    pub col: usize,
    /// Grading of the column generator (1: saddle-sink, 2: source-saddle).
    pub k: u8,
    pub saddle_label: String,
    /// Display label of the cancelled non-saddle generator; if its owner
    /// was already a merged singularity this is the merged name produced
    /// by this very step.
    pub partner_label: String,
    /// Plain label of the cancelled non-saddle generator, always the
    /// generator's own name regardless of ownership.
    pub partner_gen_label: String,
    pub witness_label: Option<String>,
    pub merged: Option<MergedSingularity>,
    /// Labels of the two removed generators, row generator first.
    pub removed: [String; 2],
}

/// A singularity of the final (minimal) flow.
#[derive(Debug, Clone)]
pub struct FinalSingularity {
    pub name: String,
    pub family: Family,
    pub nature: Nature,
    pub sheets: usize,
    pub m: usize,
    /// Labels of the surviving generators it owns.
    pub generators: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct FlowFamilyResult {
    pub steps: Vec<CancellationStep>,
    /// Labels of the surviving generators, in filtration order.
    pub survivors: Vec<String>,
    pub survivor_counts: [usize; 3],
    pub betti: [usize; 3],
    pub singularities: Vec<FinalSingularity>,
    /// Boundary operator restricted to the survivors.
    pub reduced: IntMatrix,
}

impl FlowFamilyResult {
    /// A flow is minimal when nothing is left to cancel and the survivor
    /// counts realise the Betti numbers.
    pub fn is_minimal(&self) -> bool {
        self.reduced.is_zero() && self.survivor_counts == self.betti
    }

    /// The per-round sets of cancelled pairs, for order-insensitive
    /// comparison within a round.
    pub fn schedule_sets(&self) -> Vec<(usize, BTreeSet<(String, String)>)> {
        self.schedule_sets_by(|step| step.partner_label.clone())
    }

    /// Like [`schedule_sets`](Self::schedule_sets), but using the plain
    /// generator label of the cancelled partner.
    pub fn schedule_sets_plain(&self) -> Vec<(usize, BTreeSet<(String, String)>)> {
        self.schedule_sets_by(|step| step.partner_gen_label.clone())
    }

    fn schedule_sets_by(
        &self,
        partner: impl Fn(&CancellationStep) -> String,
    ) -> Vec<(usize, BTreeSet<(String, String)>)> {
        let mut out: Vec<(usize, BTreeSet<(String, String)>)> = Vec::new();
        for step in &self.steps {
            let pair = {
                let mut two = [step.saddle_label.clone(), partner(step)];
                two.sort();
                (two[0].clone(), two[1].clone())
            };
            match out.last_mut() {
                Some((round, set)) if *round == step.round => {
                    set.insert(pair);
                }
                _ => {
                    out.push((step.round, BTreeSet::from([pair])));
                }
            }
        }
        out
    }
}

struct Record {
    name: String,
    original_id: String,
    family: Family,
    nature: Nature,
    sheets: usize,
    m: usize,
    components: BTreeSet<usize>,
    /// False once the record has been merged or renamed.
    original: bool,
    alive: bool,
}

fn bar_name(id: &str) -> String {
    let mut chars = id.chars();
    match chars.next() {
        Some(first) => format!("{first}\u{304}{}", chars.as_str()),
        None => String::from("\u{304}"),
    }
}

fn merged_nature(family: Family, attracting: bool) -> Nature {
    match family {
        Family::Double | Family::Triple => {
            if attracting {
                Nature::SuperAttracting
            } else {
                Nature::SuperRepelling
            }
        }
        _ => {
            if attracting {
                Nature::Attracting
            } else {
                Nature::Repelling
            }
        }
    }
}

fn merged_sheets(family: Family, m: usize) -> usize {
    match family {
        Family::Regular => 1,
        Family::Cone | Family::Double => m + 1,
        Family::Whitney => m,
        Family::Triple => 2 * m + 1,
    }
}

fn betti_of(matrix: &IntMatrix, gradings: &[u8], alive: &[bool]) -> [usize; 3] {
    let mut by_grade: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (pos, &k) in gradings.iter().enumerate() {
        if alive[pos] {
            by_grade[k as usize].push(pos);
        }
    }
    let d1 = matrix.submatrix(&by_grade[0], &by_grade[1]).rank();
    let d2 = matrix.submatrix(&by_grade[1], &by_grade[2]).rank();
    [
        by_grade[0].len() - d1,
        by_grade[1].len() - d1 - d2,
        by_grade[2].len() - d2,
    ]
}

/// Runs the full dynamical cancellation schedule on a flow, producing the
/// family of flows down to a minimal one. Homology is verified unchanged
/// after every step.
pub fn flow_family(flow: &FlowSpec) -> Result<FlowFamilyResult, CancelError> {
    let complex = build_complex(flow)?;
    let gradings = complex.gradings();
    let trace = sweep(&complex.boundary, &gradings)?;
    let morsified = morsify(flow)?;

    let n = complex.generators.len();
    let mut records: Vec<Record> = flow
        .singularities
        .iter()
        .map(|s| Record {
            name: s.id.clone(),
            original_id: s.id.clone(),
            family: s.family,
            nature: s.nature,
            sheets: s.sheets,
            m: crate::flow::type_number(s),
            components: BTreeSet::new(),
            original: true,
            alive: true,
        })
        .collect();
    let mut owner: Vec<usize> = Vec::with_capacity(n);
    for gen in &complex.generators {
        owner.push(gen.singularity);
        if let Some(c) = morsified.generator_component(gen) {
            records[gen.singularity].components.insert(c);
        }
    }

    let mut working = complex.boundary.clone();
    let mut alive = vec![true; n];
    let betti = betti_of(&working, &gradings, &alive);
    let mut steps: Vec<CancellationStep> = Vec::new();

    for cancel in algebraic_cancellations(&trace) {
        let (i, j) = (cancel.target, cancel.source); // 0-based row, col
        if !alive[i] || !alive[j] {
            return Err(CancelError::DeadPivot { row: i + 1, col: j + 1 });
        }
        let pivot = working.at(i, j);
        if pivot.abs() != BigInt::one() {
            return Err(CancelError::NonUnitPivot {
                row: i + 1,
                col: j + 1,
                value: pivot,
            });
        }
        let k = gradings[j];
        // The saddle is the grading-1 member of the pair.
        let (saddle_pos, partner_pos) = if k == 1 { (j, i) } else { (i, j) };

        // Witness: the lowest remaining generator still attached to the
        // saddle, preferring one in a shared morsified component.
        let candidates: Vec<usize> = if k == 1 {
            working
                .col_entries(j)
                .into_iter()
                .map(|(r, _)| r)
                .filter(|&r| r != i && alive[r])
                .collect()
        } else {
            working
                .row_entries(i)
                .into_iter()
                .map(|(c, _)| c)
                .filter(|&c| c != j && alive[c])
                .collect()
        };
        let pair_components: BTreeSet<usize> = records[owner[i]]
            .components
            .union(&records[owner[j]].components)
            .copied()
            .collect();
        let witness = candidates
            .iter()
            .copied()
            .find(|&g| !records[owner[g]].components.is_disjoint(&pair_components))
            .or_else(|| candidates.first().copied());

        // Reduce: clear the saddle's remaining connections through the
        // cancelled pair, then drop its row and column.
        for (l, entry) in working.row_entries(i) {
            if l == j || !alive[l] {
                continue;
            }
            let coeff = -entry / &pivot;
            working.col_combine_mut(j, l, &coeff);
        }
        for c in 0..n {
            working.set(i, c, BigInt::zero());
        }
        for r in 0..n {
            working.set(r, j, BigInt::zero());
        }
        alive[i] = false;
        alive[j] = false;

        // Merge the records of the removed pair into the witness record.
        let (witness_label, merged) = match witness {
            None => (None, None),
            Some(w) => {
                let rw = owner[w];
                let witness_label = if records[rw].original {
                    complex.generators[w].label.clone()
                } else {
                    records[rw].name.clone()
                };
                let participants: BTreeSet<usize> =
                    BTreeSet::from([rw, owner[i], owner[j]]);
                let m: usize = participants.iter().map(|&r| records[r].m).sum();
                let family = [rw, owner[i], owner[j]]
                    .into_iter()
                    .map(|r| records[r].family)
                    .find(|&f| f != Family::Regular)
                    .filter(|_| m > 0)
                    .unwrap_or(Family::Regular);
                let attracting = gradings[w] == 0;
                let nature = merged_nature(family, attracting);
                let sheets = merged_sheets(family, m);
                let name = bar_name(&records[rw].original_id);
                let components: BTreeSet<usize> = participants
                    .iter()
                    .flat_map(|&r| records[r].components.iter().copied())
                    .collect();
                // Generators stranded in a partially removed record become
                // plain regular singularities.
                for pos in 0..n {
                    if !alive[pos] || owner[pos] == rw {
                        continue;
                    }
                    if owner[pos] == owner[i] || owner[pos] == owner[j] {
                        let gen = &complex.generators[pos];
                        let nature = match gen.k {
                            0 => Nature::Attracting,
                            1 => Nature::Saddle,
                            _ => Nature::Repelling,
                        };
                        records.push(Record {
                            name: gen.label.clone(),
                            original_id: gen.label.clone(),
                            family: Family::Regular,
                            nature,
                            sheets: 1,
                            m: 0,
                            components: morsified
                                .generator_component(gen)
                                .into_iter()
                                .collect(),
                            original: false,
                            alive: true,
                        });
                        owner[pos] = records.len() - 1;
                    }
                }
                for &r in &participants {
                    records[r].alive = false;
                }
                let record = &mut records[rw];
                record.name = name.clone();
                record.family = family;
                record.nature = nature;
                record.sheets = sheets;
                record.m = m;
                record.components = components;
                record.original = false;
                record.alive = true;
                (
                    Some(witness_label),
                    Some(MergedSingularity { name, family, nature, sheets, m }),
                )
            }
        };

        let partner_label = if records[owner[partner_pos]].original {
            complex.generators[partner_pos].label.clone()
        } else {
            match &merged {
                Some(m) => m.name.clone(),
                None => records[owner[partner_pos]].name.clone(),
            }
        };

        let after = betti_of(&working, &gradings, &alive);
        if after != betti {
            return Err(CancelError::HomologyChanged {
                row: i + 1,
                col: j + 1,
                before: betti,
                after,
            });
        }

        steps.push(CancellationStep {
            round: cancel.round,
            row: i + 1,
            col: j + 1,
            k,
            saddle_label: complex.generators[saddle_pos].label.clone(),
            partner_label,
            partner_gen_label: complex.generators[partner_pos].label.clone(),
            witness_label,
            merged,
            removed: [
                complex.generators[i].label.clone(),
                complex.generators[j].label.clone(),
            ],
        });
    }

    let keep: Vec<usize> = (0..n).filter(|&p| alive[p]).collect();
    let survivors: Vec<String> = keep
        .iter()
        .map(|&p| complex.generators[p].label.clone())
        .collect();
    let mut survivor_counts = [0usize; 3];
    for &p in &keep {
        survivor_counts[gradings[p] as usize] += 1;
    }
    let mut singularities: Vec<FinalSingularity> = Vec::new();
    for (ri, record) in records.iter().enumerate() {
        if !record.alive {
            continue;
        }
        let generators: Vec<String> = keep
            .iter()
            .filter(|&&p| owner[p] == ri)
            .map(|&p| complex.generators[p].label.clone())
            .collect();
        if generators.is_empty() {
            continue;
        }
        singularities.push(FinalSingularity {
            name: record.name.clone(),
            family: record.family,
            nature: record.nature,
            sheets: record.sheets,
            m: record.m,
            generators,
        });
    }
    Ok(FlowFamilyResult {
        steps,
        survivors,
        survivor_counts,
        betti,
        singularities,
        reduced: working.submatrix(&keep, &keep),
    })
}

/// Pairs each algebraic cancellation with its dynamical counterpart: both
/// sequences come from the same primary pivots, so the consonance holds by
/// construction and this reports the common (round, row, col) triples.
pub fn consonance_report(flow: &FlowSpec) -> Result<Vec<(usize, usize, usize)>, CancelError> {
    let complex = build_complex(flow)?;
    let trace = sweep(&complex.boundary, &complex.gradings())?;
    let algebraic: Vec<(usize, usize, usize)> = algebraic_cancellations(&trace)
        .into_iter()
        .map(|c| (c.round, c.target + 1, c.source + 1))
        .collect();
    let dynamical: Vec<(usize, usize, usize)> = flow_family(flow)?
        .steps
        .iter()
        .map(|s| (s.round, s.row, s.col))
        .collect();
    debug_assert_eq!(algebraic, dynamical);
    Ok(dynamical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn schedule(flow: &FlowSpec) -> FlowFamilyResult {
        flow_family(flow).unwrap()
    }

    fn pair_sets(result: &FlowFamilyResult) -> Vec<(usize, Vec<(String, String)>)> {
        result
            .schedule_sets()
            .into_iter()
            .map(|(r, s)| (r, s.into_iter().collect()))
            .collect()
    }

    fn pair_sets_plain(result: &FlowFamilyResult) -> Vec<(usize, Vec<(String, String)>)> {
        result
            .schedule_sets_plain()
            .into_iter()
            .map(|(r, s)| (r, s.into_iter().collect()))
            .collect()
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        let mut two = [a.to_string(), b.to_string()];
        two.sort();
        (two[0].clone(), two[1].clone())
    }

    #[test]
    fn rca_matches_sweep_on_examples() {
        for flow in fixtures::all_sweep_fixtures() {
            let complex = build_complex(&flow).unwrap();
            let trace = sweep(&complex.boundary, &complex.gradings()).unwrap();
            let rca = rca_sweep(&complex.boundary).unwrap();
            assert!(primary_pivots_match(&trace, &rca), "{}", flow.name);
        }
    }

    #[test]
    fn cone_example_schedule() {
        let result = schedule(&fixtures::cone_sweep());
        assert_eq!(
            pair_sets(&result),
            vec![
                (1, vec![pair("x_1", "y_4")]),
                (3, vec![pair("x_2", "y_3"), pair("y_1", "z_2")]),
            ]
        );
        let witnesses: Vec<Option<String>> =
            result.steps.iter().map(|s| s.witness_label.clone()).collect();
        assert_eq!(
            witnesses,
            vec![
                Some("x_3".into()),
                Some("z_1".into()),
                Some("x\u{304}_3".into()),
            ]
        );
        let z_bar = result
            .steps
            .iter()
            .find(|s| s.witness_label.as_deref() == Some("z_1"))
            .and_then(|s| s.merged.clone())
            .unwrap();
        assert_eq!(z_bar.name, "z\u{304}_1");
        assert_eq!(z_bar.family, Family::Cone);
        assert_eq!(z_bar.nature, Nature::Attracting);
        assert_eq!(z_bar.sheets, 3);
        assert_eq!(z_bar.m, 2);
        assert_eq!(
            result.survivors,
            vec!["z_1", "z_3", "z_4", "y_2", "x_3"]
        );
        assert!(result.is_minimal());
        assert_eq!(result.betti, [3, 1, 1]);
    }

    #[test]
    fn whitney_example_schedule() {
        let result = schedule(&fixtures::whitney_sweep());
        assert_eq!(
            pair_sets_plain(&result),
            vec![
                (2, vec![pair("x_1", "y_2")]),
                (3, vec![pair("y_3", "z_2")]),
                (4, vec![pair("x_2", "y_1")]),
            ]
        );
        assert_eq!(
            result.steps.last().unwrap().partner_label,
            "x\u{304}_3"
        );
        let witnesses: Vec<Option<String>> =
            result.steps.iter().map(|s| s.witness_label.clone()).collect();
        assert_eq!(
            witnesses,
            vec![Some("x_2".into()), Some("z_1".into()), Some("x_3".into())]
        );
        assert!(result.is_minimal());
        assert_eq!(result.betti, [1, 0, 1]);
    }

    #[test]
    fn double_crossing_schedule() {
        let result = schedule(&fixtures::double_crossing());
        assert_eq!(
            pair_sets(&result),
            vec![
                (3, vec![pair("y_2^e", "x_1")]),
                (5, vec![pair("y_2^i", "x_4")]),
                (
                    6,
                    vec![
                        pair("y_1^e", "x\u{304}_3"),
                        pair("y_3", "z_2^e"),
                    ]
                ),
            ]
        );
        let names: Vec<String> = result
            .steps
            .iter()
            .filter_map(|s| s.merged.as_ref().map(|m| m.name.clone()))
            .collect();
        assert_eq!(
            names,
            vec!["x\u{304}_2", "x\u{304}_5", "z\u{304}_1", "x\u{304}_3"]
        );
        let z_bar = result
            .steps
            .iter()
            .find_map(|s| {
                s.merged
                    .as_ref()
                    .filter(|m| m.name == "z\u{304}_1")
                    .cloned()
            })
            .unwrap();
        assert_eq!(z_bar.family, Family::Double);
        assert_eq!(z_bar.nature, Nature::SuperAttracting);
        assert_eq!(z_bar.sheets, 3);
        assert_eq!(z_bar.m, 2);
        assert_eq!(
            result.survivors,
            vec!["z_1^e", "z_1^i", "z_2^i", "y_1^i", "x_3", "x_5"]
        );
        assert!(result.is_minimal());
        assert_eq!(result.betti, [3, 1, 2]);
    }

    #[test]
    fn intro_cone_single_cancellation() {
        let result = schedule(&fixtures::intro_cone_cancel());
        assert_eq!(result.steps.len(), 1);
        let step = &result.steps[0];
        assert_eq!(step.saddle_label, "y_2");
        assert_eq!(step.partner_label, "z_1");
        assert_eq!(step.witness_label.as_deref(), Some("z_2"));
        let merged = step.merged.clone().unwrap();
        assert_eq!(merged.family, Family::Cone);
        assert_eq!(merged.nature, Nature::Attracting);
        assert_eq!(merged.sheets, 3);
        assert_eq!(merged.m, 2);
        assert!(result.is_minimal());
    }

    #[test]
    fn double_single_cancellation() {
        let result = schedule(&fixtures::double_cancel());
        assert_eq!(result.steps.len(), 1);
        let step = &result.steps[0];
        assert_eq!(step.saddle_label, "y_1");
        assert_eq!(step.partner_label, "z_1^e");
        assert_eq!(step.witness_label.as_deref(), Some("z_2^e"));
        let merged = step.merged.clone().unwrap();
        assert_eq!(merged.family, Family::Double);
        assert_eq!(merged.nature, Nature::SuperAttracting);
        assert_eq!(merged.sheets, 3);
        assert_eq!(merged.m, 2);
        // The untouched half of the cancelled double attractor survives as
        // a plain singularity.
        assert!(result
            .singularities
            .iter()
            .any(|s| s.generators == vec!["z_1^i"] && s.family == Family::Regular));
        assert!(result.is_minimal());
    }

    #[test]
    fn consonance_holds_on_all_examples() {
        for flow in fixtures::all_sweep_fixtures() {
            let report = consonance_report(&flow).unwrap();
            assert!(!report.is_empty(), "{}", flow.name);
        }
    }

    #[test]
    fn pinched_torus_is_already_minimal_after_schedule() {
        let result = schedule(&fixtures::pinched_torus());
        assert!(result.is_minimal());
        assert_eq!(result.survivor_counts, [1, 1, 1]);
    }
}
