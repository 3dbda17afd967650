//! The chain complex of a flow on a singular surface: one generator per
//! nature generator, boundary operator assembled from transferred orbit
//! signs, and its finest (one-generator-per-level) filtration.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{homology_of_complex, AlgebraError, HomologyGroup, IntMatrix};
use crate::flow::{
    enumerate_generators, is_valid, transfer_sign, validate_flow, Family, FlowSpec, GeneratorRef,
    Nature,
};

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("flow failed validation:\n{0}")]
    InvalidFlow(String),
    #[error("boundary operator does not square to zero")]
    BoundaryNotSquareZero,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Chain complex of a flow, with generators kept in filtration order.
#[derive(Debug, Clone)]
pub struct GsComplex {
    pub generators: Vec<GeneratorRef>,
    /// Full boundary operator over all generators: entry (i, j) is the
    /// coefficient of generator i in Δ(generator j). Strictly upper
    /// triangular in the filtration order.
    pub boundary: IntMatrix,
}

impl GsComplex {
    pub fn gradings(&self) -> Vec<u8> {
        self.generators.iter().map(|g| g.k).collect()
    }

    pub fn generator_position(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    /// Chain ranks (n0, n1, n2).
    pub fn ranks(&self) -> [usize; 3] {
        let mut r = [0usize; 3];
        for g in &self.generators {
            r[g.k as usize] += 1;
        }
        r
    }

    /// The boundary operators split by degree, for homology computations.
    pub fn graded_boundaries(&self) -> (Vec<usize>, Vec<IntMatrix>) {
        let ranks = self.ranks();
        let top = if ranks[2] > 0 { 2 } else if ranks[1] > 0 { 1 } else { 0 };
        let ranks_vec: Vec<usize> = (0..=top).map(|k| ranks[k]).collect();
        let positions: Vec<Vec<usize>> = (0..=top)
            .map(|k| {
                (0..self.generators.len())
                    .filter(|&i| self.generators[i].k == k as u8)
                    .collect()
            })
            .collect();
        let boundaries: Vec<IntMatrix> = (1..=top)
            .map(|k| self.boundary.submatrix(&positions[k - 1], &positions[k]))
            .collect();
        (ranks_vec, boundaries)
    }

    pub fn homology(&self) -> Result<Vec<HomologyGroup>, AlgebraError> {
        let (ranks, boundaries) = self.graded_boundaries();
        homology_of_complex(&ranks, &boundaries)
    }
}

/// Assemble the chain complex of a flow. The generator order is the input
/// order (singularities as listed); the boundary entry for a generator pair
/// is the sum of transferred sheet signs over all connecting orbits.
pub fn build_complex(flow: &FlowSpec) -> Result<GsComplex, ComplexError> {
    let diags = validate_flow(flow);
    if !is_valid(&diags) {
        let msg = diags
            .iter()
            .map(|d| d.message.clone())
            .collect::<Vec<_>>()
            .join("\n");
        return Err(ComplexError::InvalidFlow(msg));
    }
    let generators = enumerate_generators(flow);
    let n = generators.len();
    let pos = |sing_id: &str, k: u8, idx: usize| {
        generators.iter().position(|g| {
            flow.singularities[g.singularity].id == sing_id && g.k == k && g.index == idx
        })
    };
    let mut boundary = IntMatrix::zero(n, n);
    for orbit in &flow.orbits {
        for c in transfer_sign(orbit) {
            if c.value == 0 {
                continue;
            }
            let from = pos(&orbit.from, c.k, c.from_gen)
                .expect("validated orbit attribution");
            let to = pos(&orbit.to, c.k - 1, c.to_gen)
                .expect("validated orbit attribution");
            let v = boundary.at(to, from) + BigInt::from(c.value);
            boundary.set(to, from, v);
        }
    }
    let complex = GsComplex { generators, boundary };
    if !check_boundary_squared(&complex) {
        return Err(ComplexError::BoundaryNotSquareZero);
    }
    Ok(complex)
}

/// Δ ∘ Δ = 0.
pub fn check_boundary_squared(complex: &GsComplex) -> bool {
    match complex.boundary.mul(&complex.boundary) {
        Ok(sq) => sq.is_zero(),
        Err(_) => false,
    }
}

/// Incidence condition at cone saddles: in the boundary graph a cone saddle
/// meets either no surviving edge or exactly two, and those two are on the
/// same side (both towards sinks, or both from sources).
pub fn check_saddle_cone_incidence(complex: &GsComplex, flow: &FlowSpec) -> bool {
    for (i, g) in complex.generators.iter().enumerate() {
        let s = &flow.singularities[g.singularity];
        if !(s.family == Family::Cone && s.nature == Nature::Saddle) {
            continue;
        }
        let below = complex
            .boundary
            .col_entries(i)
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .count();
        let above = complex
            .boundary
            .row_entries(i)
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .count();
        let total = below + above;
        let same_side = below == 0 || above == 0;
        if !(total == 0 || (total == 2 && same_side)) {
            return false;
        }
    }
    true
}

/// The finest filtration: one generator per level, in complex order.
#[derive(Debug, Clone)]
pub struct Filtration {
    /// Level p holds the (1-based) generator position p+1.
    pub levels: Vec<String>,
    pub gradings: Vec<u8>,
}

impl Filtration {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Filtration gap between two generator positions (1-based).
    pub fn gap(&self, source: usize, target: usize) -> usize {
        source - target
    }
}

pub fn finest_filtration(complex: &GsComplex) -> Filtration {
    Filtration {
        levels: complex.generators.iter().map(|g| g.label.clone()).collect(),
        gradings: complex.gradings(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::flow::OrbitSpec;

    #[test]
    fn pinched_torus_boundary_equations() {
        let complex = build_complex(&fixtures::pinched_torus()).unwrap();
        // Order: z1, z2, y1, y2, y3, x1, x2.
        let expect = IntMatrix::from_rows(&[
            vec![0, 0, 1, 1, 0, 0, 0],
            vec![0, 0, -1, -1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, -1, 1],
            vec![0, 0, 0, 0, 0, 1, -1],
            vec![0, 0, 0, 0, 0, 1, -1],
            vec![0, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 0],
        ]);
        assert_eq!(complex.boundary, expect);
        assert!(check_boundary_squared(&complex));
        assert!(check_saddle_cone_incidence(&complex, &fixtures::pinched_torus()));
    }

    #[test]
    fn pinched_torus_homology() {
        let complex = build_complex(&fixtures::pinched_torus()).unwrap();
        let h = complex.homology().unwrap();
        let betti: Vec<usize> = h.iter().map(|g| g.betti).collect();
        assert_eq!(betti, vec![1, 1, 1]);
        assert!(h.iter().all(|g| g.torsion.is_empty()));
    }

    #[test]
    fn filtration_levels() {
        let complex = build_complex(&fixtures::cone_sweep()).unwrap();
        let filt = finest_filtration(&complex);
        assert_eq!(filt.len(), 11);
        assert_eq!(filt.levels[0], "z_1");
        assert_eq!(filt.levels[10], "x_3");
        assert_eq!(filt.gap(10, 7), 3);
    }

    #[test]
    fn incidence_check_rejects_overloaded_cone_saddle() {
        use crate::flow::{OrbitKind, Sheet, Singularity};
        let dup = |sign: i64| {
            vec![
                Sheet { from_gen: 1, to_gen: 1, sign, non_consecutive: false },
                Sheet { from_gen: 1, to_gen: 1, sign, non_consecutive: false },
            ]
        };
        let reg = |sign: i64| {
            vec![Sheet { from_gen: 1, to_gen: 1, sign, non_consecutive: false }]
        };
        // A cone saddle with two surviving incidences on *both* sides; the
        // auxiliary regular saddle y_2 keeps the boundary square-zero.
        let flow = FlowSpec {
            name: "bad-cone".into(),
            orientable: true,
            singularities: vec![
                Singularity::regular("z_1", crate::flow::Nature::Attracting),
                Singularity::regular("z_2", crate::flow::Nature::Attracting),
                Singularity::new("y", Family::Cone, Nature::Saddle, 1),
                Singularity::regular("y_2", crate::flow::Nature::Saddle),
                Singularity::regular("x_1", crate::flow::Nature::Repelling),
                Singularity::regular("x_2", crate::flow::Nature::Repelling),
            ],
            orbits: vec![
                OrbitSpec { from: "y".into(), to: "z_1".into(), kind: OrbitKind::Cone, k: 1, sheets: dup(1) },
                OrbitSpec { from: "y".into(), to: "z_2".into(), kind: OrbitKind::Cone, k: 1, sheets: dup(-1) },
                OrbitSpec { from: "y_2".into(), to: "z_1".into(), kind: OrbitKind::Regular, k: 1, sheets: reg(1) },
                OrbitSpec { from: "y_2".into(), to: "z_2".into(), kind: OrbitKind::Regular, k: 1, sheets: reg(-1) },
                OrbitSpec { from: "x_1".into(), to: "y".into(), kind: OrbitKind::Cone, k: 2, sheets: dup(1) },
                OrbitSpec { from: "x_1".into(), to: "y_2".into(), kind: OrbitKind::Regular, k: 2, sheets: reg(-1) },
                OrbitSpec { from: "x_2".into(), to: "y".into(), kind: OrbitKind::Cone, k: 2, sheets: dup(-1) },
                OrbitSpec { from: "x_2".into(), to: "y_2".into(), kind: OrbitKind::Regular, k: 2, sheets: reg(1) },
            ],
        };
        let complex = build_complex(&flow).unwrap();
        assert!(!check_saddle_cone_incidence(&complex, &flow));
    }
}
