//! Morsification: replace each singular point by the regular singularities
//! of its smoothing, duplicate the orbits that break through the singular
//! part, and track which Morse point realises which chain generator.

use crate::flow::{
    enumerate_generators, nature_numbers, transfer_sign, Family, FlowError, FlowSpec,
    GeneratorRef, Nature, OrbitKind,
};

/// A regular singularity of the morsified flow. `parent` points back at the
/// chain generator it realises as (singularity index, degree, 1-based
/// generator index). Auxiliary points (the extra saddles of a multi-sheet
/// cone smoothing, or the second copy of a cone saddle) are not `primary`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorsePoint {
    pub id: String,
    /// Morse index: 0 sink, 1 saddle, 2 source.
    pub index: u8,
    pub parent: Option<(usize, u8, usize)>,
    pub primary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseOrbit {
    pub from: usize,
    pub to: usize,
    pub sign: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorsifiedFlow {
    pub points: Vec<MorsePoint>,
    pub orbits: Vec<MorseOrbit>,
    /// Connected component id of each point in the morsified surface graph.
    pub component: Vec<usize>,
}

impl MorsifiedFlow {
    /// Morse point realising a given generator.
    pub fn primary_point(&self, singularity: usize, k: u8, index: usize) -> Option<usize> {
        self.points
            .iter()
            .position(|p| p.primary && p.parent == Some((singularity, k, index)))
    }

    /// Component of the Morse point realising a generator.
    pub fn generator_component(&self, gen: &GeneratorRef) -> Option<usize> {
        self.primary_point(gen.singularity, gen.k, gen.index)
            .map(|i| self.component[i])
    }
}

fn morse_index_for_degree(k: usize) -> u8 {
    k as u8
}

/// Expand a flow into its morsification.
pub fn morsify(flow: &FlowSpec) -> Result<MorsifiedFlow, FlowError> {
    let mut points: Vec<MorsePoint> = Vec::new();
    // Cone saddles get two copies; remember both for orbit duplication.
    let mut cone_copies: Vec<Option<[usize; 2]>> = vec![None; flow.singularities.len()];

    for (si, s) in flow.singularities.iter().enumerate() {
        let eta = nature_numbers(s);
        let is_cone_saddle = s.family == Family::Cone && s.nature == Nature::Saddle;
        if is_cone_saddle {
            let a = points.len();
            points.push(MorsePoint {
                id: format!("{}~1", s.id),
                index: 1,
                parent: Some((si, 1, 1)),
                primary: true,
            });
            points.push(MorsePoint {
                id: format!("{}~2", s.id),
                index: 1,
                parent: Some((si, 1, 1)),
                primary: false,
            });
            cone_copies[si] = Some([a, a + 1]);
            continue;
        }
        // One primary point per generator.
        for (k, &count) in eta.iter().enumerate() {
            for i in 1..=count {
                points.push(MorsePoint {
                    id: if count == 1 && eta.iter().sum::<usize>() == 1 {
                        format!("{}~", s.id)
                    } else {
                        format!("{}~{}:{}", s.id, k, i)
                    },
                    index: morse_index_for_degree(k),
                    parent: Some((si, k as u8, i)),
                    primary: true,
                });
            }
        }
        // Multi-sheet cone attractors/repellers smooth to one regular point
        // plus (n−1) auxiliary saddles that realise no generator.
        if s.family == Family::Cone && s.sheets > 1 {
            for extra in 1..s.sheets {
                points.push(MorsePoint {
                    id: format!("{}~aux{}", s.id, extra),
                    index: 1,
                    parent: None,
                    primary: false,
                });
            }
        }
    }

    let index_of = |id: &str| {
        flow.singularities
            .iter()
            .position(|s| s.id == id)
            .ok_or_else(|| FlowError::UnknownSingularity(id.to_string()))
    };
    let primary_of = |points: &[MorsePoint], si: usize, k: u8, i: usize| {
        points
            .iter()
            .position(|p| p.primary && p.parent == Some((si, k, i)))
    };

    let mut orbits: Vec<MorseOrbit> = Vec::new();
    for orbit in &flow.orbits {
        let fi = index_of(&orbit.from)?;
        let ti = index_of(&orbit.to)?;
        match orbit.kind {
            OrbitKind::Cone => {
                // Two flow lines through the copies of the cone saddle.
                let (saddle_side_from, copies) = if let Some(c) = cone_copies[fi] {
                    (true, c)
                } else if let Some(c) = cone_copies[ti] {
                    (false, c)
                } else {
                    // Duplication without a cone saddle endpoint: keep both
                    // lines between the primaries.
                    let f = primary_of(&points, fi, orbit.k, orbit.sheets[0].from_gen);
                    let t = primary_of(&points, ti, orbit.k - 1, orbit.sheets[0].to_gen);
                    if let (Some(f), Some(t)) = (f, t) {
                        for sheet in &orbit.sheets {
                            orbits.push(MorseOrbit { from: f, to: t, sign: sheet.sign });
                        }
                    }
                    continue;
                };
                for (ci, sheet) in orbit.sheets.iter().enumerate() {
                    let (from, to) = if saddle_side_from {
                        let t = primary_of(&points, ti, orbit.k - 1, sheet.to_gen);
                        (Some(copies[ci]), t)
                    } else {
                        let f = primary_of(&points, fi, orbit.k, sheet.from_gen);
                        (f, Some(copies[ci]))
                    };
                    if let (Some(from), Some(to)) = (from, to) {
                        orbits.push(MorseOrbit { from, to, sign: sheet.sign });
                    }
                }
            }
            _ => {
                for sheet in orbit.sheets.iter().filter(|s| !s.non_consecutive) {
                    let f = primary_of(&points, fi, orbit.k, sheet.from_gen);
                    let t = primary_of(&points, ti, orbit.k - 1, sheet.to_gen);
                    if let (Some(from), Some(to)) = (f, t) {
                        orbits.push(MorseOrbit { from, to, sign: sheet.sign });
                    }
                }
            }
        }
    }

    // Keep auxiliary cone-smoothing saddles attached to their parent's
    // component: the smoothing happens inside one neighbourhood.
    let mut extra_edges: Vec<(usize, usize)> = Vec::new();
    for (si, s) in flow.singularities.iter().enumerate() {
        if s.family == Family::Cone && s.sheets > 1 {
            let eta = nature_numbers(s);
            let k = if eta[0] > 0 { 0u8 } else { 2u8 };
            if let Some(primary) = primary_of(&points, si, k, 1) {
                for (pi, p) in points.iter().enumerate() {
                    if !p.primary && p.parent.is_none() && p.id.starts_with(&format!("{}~aux", s.id))
                    {
                        extra_edges.push((primary, pi));
                    }
                }
            }
        }
        if let Some([a, b]) = cone_copies[si] {
            extra_edges.push((a, b));
        }
    }

    let component = components(points.len(), orbits.iter().map(|o| (o.from, o.to)).chain(extra_edges));
    Ok(MorsifiedFlow { points, orbits, component })
}

fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for i in 0..n {
        let r = find(&mut parent, i);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        label[i] = label[r];
    }
    label
}

/// Intersection number n(g_from, g_to) of two generators identified by
/// label: the sum of the transferred signs of every orbit sheet attributed
/// to that generator pair.
pub fn intersection_number(
    flow: &FlowSpec,
    from_label: &str,
    to_label: &str,
) -> Result<i64, FlowError> {
    let gens = enumerate_generators(flow);
    let from = gens
        .iter()
        .find(|g| g.label == from_label)
        .ok_or_else(|| FlowError::UnknownGenerator(from_label.to_string()))?;
    let to = gens
        .iter()
        .find(|g| g.label == to_label)
        .ok_or_else(|| FlowError::UnknownGenerator(to_label.to_string()))?;
    let mut total = 0i64;
    for orbit in &flow.orbits {
        if flow.singularities[from.singularity].id != orbit.from
            || flow.singularities[to.singularity].id != orbit.to
            || orbit.k != from.k
        {
            continue;
        }
        for c in transfer_sign(orbit) {
            if c.from_gen == from.index && c.to_gen == to.index {
                total += c.value;
            }
        }
    }
    Ok(total)
}

/// Boundary matrix of the morsified flow over the chain generators: the sum
/// of Morse orbit signs between the primary points of each generator pair.
/// For flows whose morsification is generator-bijective this equals the
/// boundary operator of the original flow.
pub fn morsified_boundary_entries(
    flow: &FlowSpec,
    m: &MorsifiedFlow,
) -> Vec<((usize, usize), i64)> {
    let gens = enumerate_generators(flow);
    let point_gen: Vec<Option<usize>> = m
        .points
        .iter()
        .map(|p| {
            if !p.primary {
                return None;
            }
            p.parent.and_then(|(si, k, i)| {
                gens.iter()
                    .position(|g| g.singularity == si && g.k == k && g.index == i)
            })
        })
        .collect();
    let mut acc: std::collections::BTreeMap<(usize, usize), i64> = Default::default();
    for o in &m.orbits {
        if let (Some(from), Some(to)) = (point_gen[o.from], point_gen[o.to]) {
            *acc.entry((to, from)).or_insert(0) += o.sign;
        }
    }
    acc.into_iter().filter(|(_, v)| *v != 0).collect()
}

/// True when every chain generator corresponds to exactly one Morse point
/// and no auxiliary points were needed.
pub fn is_generator_bijective(flow: &FlowSpec, m: &MorsifiedFlow) -> bool {
    let gens = enumerate_generators(flow);
    m.points.len() == gens.len() && m.points.iter().all(|p| p.primary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{Severity, Sheet, Singularity};

    #[test]
    fn regular_points_pass_through() {
        let flow = FlowSpec {
            name: "t".into(),
            orientable: true,
            singularities: vec![
                Singularity::regular("x", Nature::Repelling),
                Singularity::regular("z", Nature::Attracting),
            ],
            orbits: vec![],
        };
        let m = morsify(&flow).unwrap();
        assert_eq!(m.points.len(), 2);
        assert!(is_generator_bijective(&flow, &m));
    }

    #[test]
    fn two_sheet_cone_repeller_smooths_to_repeller_plus_saddle() {
        let flow = FlowSpec {
            name: "t".into(),
            orientable: true,
            singularities: vec![Singularity::new("x", Family::Cone, Nature::Repelling, 2)],
            orbits: vec![],
        };
        let m = morsify(&flow).unwrap();
        let indices: Vec<u8> = m.points.iter().map(|p| p.index).collect();
        assert_eq!(indices, vec![2, 1]);
        assert_eq!(m.points.iter().filter(|p| p.primary).count(), 1);
        assert!(!is_generator_bijective(&flow, &m));
        // The auxiliary saddle stays in the repeller's component.
        assert_eq!(m.component[0], m.component[1]);
    }

    #[test]
    fn cone_saddle_splits_into_two_copies() {
        let flow = FlowSpec {
            name: "t".into(),
            orientable: true,
            singularities: vec![
                Singularity::regular("x", Nature::Repelling),
                Singularity::new("y", Family::Cone, Nature::Saddle, 1),
            ],
            orbits: vec![OrbitSpec {
                from: "x".into(),
                to: "y".into(),
                kind: OrbitKind::Cone,
                k: 2,
                sheets: vec![
                    Sheet { from_gen: 1, to_gen: 1, sign: 1, non_consecutive: false },
                    Sheet { from_gen: 1, to_gen: 1, sign: 1, non_consecutive: false },
                ],
            }],
        };
        let m = morsify(&flow).unwrap();
        assert_eq!(m.points.len(), 3);
        assert_eq!(m.orbits.len(), 2);
        let targets: Vec<usize> = m.orbits.iter().map(|o| o.to).collect();
        assert_ne!(targets[0], targets[1]);
    }

    #[test]
    fn double_crossing_attractor_splits_per_generator() {
        let flow = FlowSpec {
            name: "t".into(),
            orientable: true,
            singularities: vec![Singularity::new(
                "z",
                Family::Double,
                Nature::SuperAttracting,
                2,
            )],
            orbits: vec![],
        };
        let m = morsify(&flow).unwrap();
        assert_eq!(m.points.len(), 2);
        assert!(is_generator_bijective(&flow, &m));
        // External and internal sheets live on different manifolds.
        assert_ne!(m.component[0], m.component[1]);
    }

    #[test]
    fn intersection_numbers_of_pinched_torus() {
        let flow = crate::fixtures::pinched_torus();
        assert!(crate::flow::validate_flow(&flow)
            .iter()
            .all(|d| d.severity != Severity::Error));
        assert_eq!(intersection_number(&flow, "x_1", "y_1").unwrap(), -1);
        assert_eq!(intersection_number(&flow, "x_1", "y_3").unwrap(), 1);
        assert_eq!(intersection_number(&flow, "x_2", "y_3").unwrap(), -1);
        assert_eq!(intersection_number(&flow, "y_3", "z_1").unwrap(), 0);
        assert_eq!(intersection_number(&flow, "y_3", "z_2").unwrap(), 0);
        assert_eq!(intersection_number(&flow, "y_1", "z_2").unwrap(), -1);
    }

    use crate::flow::OrbitSpec;
}
