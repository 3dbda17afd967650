//! Random inputs for stress tests: chain complexes with ∂∘∂ = 0 by
//! construction, and random cone flows built on the up/down saddle
//! dichotomy.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::IntMatrix;
use crate::flow::{Family, FlowSpec, Nature, OrbitKind, OrbitSpec, Sheet, Singularity};

/// A deterministic generator: the same seed always yields the same stream,
/// independent of platform.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random graded complex: `n0` vertices, `n1` edges joining distinct
/// vertices, and `n2` faces whose boundaries are signed cycles (a pair of
/// parallel edges or an oriented triangle), so the boundary squares to
/// zero whatever the draw.
pub fn random_complex(
    rng: &mut impl Rng,
    n0: usize,
    n1: usize,
    n2: usize,
) -> (IntMatrix, Vec<u8>) {
    assert!(n0 >= 2, "need at least two vertices");
    let n = n0 + n1 + n2;
    let mut gradings = vec![0u8; n0];
    gradings.extend(std::iter::repeat(1).take(n1));
    gradings.extend(std::iter::repeat(2).take(n2));
    let mut delta = IntMatrix::zero(n, n);

    // Edges: e = head − tail.
    let mut ends: Vec<(usize, usize)> = Vec::with_capacity(n1);
    for j in 0..n1 {
        let a = rng.gen_range(0..n0);
        let mut b = rng.gen_range(0..n0);
        while b == a {
            b = rng.gen_range(0..n0);
        }
        ends.push((a, b));
        delta.set(a, n0 + j, BigInt::from(1));
        delta.set(b, n0 + j, BigInt::from(-1));
    }

    // Cycles available to faces: parallel edge pairs and triangles.
    let mut cycles: Vec<Vec<(usize, i64)>> = Vec::new();
    for i in 0..n1 {
        for j in (i + 1)..n1 {
            let (a, b) = ends[i];
            let (c, d) = ends[j];
            if (a, b) == (c, d) {
                cycles.push(vec![(i, 1), (j, -1)]);
            } else if (a, b) == (d, c) {
                cycles.push(vec![(i, 1), (j, 1)]);
            }
        }
    }
    for i in 0..n1 {
        for j in 0..n1 {
            for k in 0..n1 {
                if i == j || j == k || i == k {
                    continue;
                }
                // Oriented triangle: head(i) = tail(j), head(j) = tail(k),
                // head(k) = tail(i), on three distinct vertices.
                let (ia, ib) = ends[i];
                let (ja, jb) = ends[j];
                let (ka, kb) = ends[k];
                if ib == ja && jb == ka && kb == ia && ia != ja && ja != ka {
                    cycles.push(vec![(i, 1), (j, 1), (k, 1)]);
                }
            }
        }
    }

    for f in 0..n2 {
        if cycles.is_empty() || rng.gen_bool(0.2) {
            continue; // face with zero boundary
        }
        let cycle = &cycles[rng.gen_range(0..cycles.len())];
        let sign: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        for &(edge, c) in cycle {
            let col = n0 + n1 + f;
            let acc = delta.at(n0 + edge, col) + BigInt::from(sign * c);
            delta.set(n0 + edge, col, acc);
        }
    }
    (delta, gradings)
}

/// A random flow built from cone and regular singularities. Every saddle
/// is either a "down" saddle, connected only to attractors, or an "up"
/// saddle, connected only to repellers, so the boundary squares to zero.
/// Cone saddles receive exactly two incidences, on one side.
pub fn random_cone_flow(
    rng: &mut impl Rng,
    attractors: usize,
    saddles: usize,
    repellers: usize,
) -> FlowSpec {
    assert!(attractors >= 2 && repellers >= 2);
    let mut singularities = Vec::new();
    for i in 1..=attractors {
        let cone = rng.gen_bool(0.3);
        singularities.push(if cone {
            Singularity::new(
                &format!("z_{i}"),
                Family::Cone,
                Nature::Attracting,
                rng.gen_range(2..=3),
            )
        } else {
            Singularity::regular(&format!("z_{i}"), Nature::Attracting)
        });
    }
    let cone_saddle: Vec<bool> = (0..saddles).map(|_| rng.gen_bool(0.5)).collect();
    for (i, &cone) in cone_saddle.iter().enumerate() {
        let id = format!("y_{}", i + 1);
        singularities.push(if cone {
            Singularity::new(&id, Family::Cone, Nature::Saddle, 1)
        } else {
            Singularity::regular(&id, Nature::Saddle)
        });
    }
    for i in 1..=repellers {
        singularities.push(Singularity::regular(&format!("x_{i}"), Nature::Repelling));
    }

    let mut orbits = Vec::new();
    let sign = |rng: &mut dyn rand::RngCore| if rng.gen_bool(0.5) { 1 } else { -1 };
    for (i, &cone) in cone_saddle.iter().enumerate() {
        let saddle_id = format!("y_{}", i + 1);
        let down = rng.gen_bool(0.5);
        let (pool, prefix, k) = if down {
            (attractors, "z", 1u8)
        } else {
            (repellers, "x", 2u8)
        };
        let count = if cone { 2 } else { rng.gen_range(0..=2) };
        let mut picks: Vec<usize> = (1..=pool).collect();
        for _ in 0..count {
            let idx = rng.gen_range(0..picks.len());
            let other = picks.swap_remove(idx);
            let other_id = format!("{prefix}_{other}");
            let (from, to) = if down {
                (saddle_id.clone(), other_id)
            } else {
                (other_id, saddle_id.clone())
            };
            let s = sign(rng);
            if cone {
                let sheet = Sheet {
                    from_gen: 1,
                    to_gen: 1,
                    sign: s,
                    non_consecutive: false,
                };
                orbits.push(OrbitSpec {
                    from,
                    to,
                    kind: OrbitKind::Cone,
                    k,
                    sheets: vec![sheet.clone(), sheet],
                });
            } else {
                orbits.push(OrbitSpec {
                    from,
                    to,
                    kind: OrbitKind::Regular,
                    k,
                    sheets: vec![Sheet {
                        from_gen: 1,
                        to_gen: 1,
                        sign: s,
                        non_consecutive: false,
                    }],
                });
            }
        }
    }
    FlowSpec {
        name: "random-cone-flow".to_string(),
        orientable: true,
        singularities,
        orbits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{is_valid, validate_flow};

    #[test]
    fn random_complexes_square_to_zero() {
        let mut rng = seeded_rng(7);
        for _ in 0..50 {
            let (delta, gradings) = random_complex(&mut rng, 4, 6, 3);
            let sq = delta.mul(&delta).unwrap();
            assert!(sq.is_zero());
            assert!(delta.is_strictly_upper_triangular());
            assert_eq!(gradings.len(), 13);
        }
    }

    #[test]
    fn random_cone_flows_validate_and_build() {
        let mut rng = seeded_rng(11);
        for _ in 0..50 {
            let flow = random_cone_flow(&mut rng, 3, 4, 3);
            let diags = validate_flow(&flow);
            assert!(is_valid(&diags), "{:?}", diags);
            crate::complex::build_complex(&flow).unwrap();
        }
    }

    #[test]
    fn determinism_per_seed() {
        let a = random_cone_flow(&mut seeded_rng(3), 3, 3, 3);
        let b = random_cone_flow(&mut seeded_rng(3), 3, 3, 3);
        assert_eq!(a, b);
    }
}
