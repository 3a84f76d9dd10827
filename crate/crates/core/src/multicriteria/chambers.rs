//! Cells of a central hyperplane arrangement `{c : c . g_j = 0}` in `Q^r`.
//!
//! Witnesses are found by facet descent. Every full-dimensional cell has a
//! facet on some hyperplane `g_i^perp`, and that facet is a cell of the
//! arrangement restricted to `g_i^perp`. For a witness `c'` of the restricted
//! cell, `c' + eps g_i` and `c' - eps g_i` lie in the two cells adjacent to
//! the facet once `eps` is small enough not to flip any other sign.
//!
//! Witnesses are kept as integer vectors: scaling by a positive rational does
//! not change the cell, so denominators are cleared at every step.

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::linalg::{self, IVec};
use crate::oracles::DirectionSet;

/// Nonzero, pairwise non-parallel primitive vectors in `Z^r` and the
/// dimension of their span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedGenerators {
    pub dim: usize,
    pub generators: Vec<IVec>,
    pub span_dim: usize,
}

impl ProjectedGenerators {
    pub fn new(dim: usize, vectors: impl IntoIterator<Item = IVec>) -> Result<Self> {
        let mut seen = FxHashSet::default();
        let mut generators = Vec::new();
        for v in vectors {
            if linalg::is_zero(&v) {
                continue;
            }
            let v = linalg::primitive(v);
            if seen.insert(v.clone()) {
                generators.push(v);
            }
        }
        let span_dim = linalg::rank(&generators)?;
        Ok(ProjectedGenerators {
            dim,
            generators,
            span_dim,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Images `(w_1 . g, ..., w_r . g)` of the directions, zeros dropped and
/// parallel images merged.
pub fn project_directions(directions: &DirectionSet, weights: &[Vec<i64>]) -> Result<ProjectedGenerators> {
    let images = directions
        .vectors
        .iter()
        .map(|g| {
            let g: IVec = g.iter().map(|&x| x.into()).collect();
            weights
                .iter()
                .map(|w| {
                    let w: IVec = w.iter().map(|&x| x.into()).collect();
                    linalg::dot(&w, &g)
                })
                .collect::<Result<IVec>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ProjectedGenerators::new(weights.len(), images)
}

/// A point strictly inside one cell, with its sign pattern
/// (`true` for positive) against every generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberWitness {
    pub point: IVec,
    pub signs: Vec<bool>,
}

fn sign_key(point: &[i128], generators: &[IVec]) -> Result<Option<Vec<u64>>> {
    let mut key = vec![0u64; generators.len().div_ceil(64)];
    for (j, g) in generators.iter().enumerate() {
        match linalg::dot(point, g)?.signum() {
            0 => return Ok(None),
            1 => key[j / 64] |= 1 << (j % 64),
            _ => {}
        }
    }
    Ok(Some(key))
}

/// One witness per full-dimensional cell within the span of `generators`.
fn descend(dim: usize, generators: &[IVec]) -> Result<Vec<IVec>> {
    if generators.is_empty() {
        return Ok(vec![vec![0; dim]]);
    }
    let mut seen = FxHashSet::default();
    let mut out = Vec::new();
    for (i, gi) in generators.iter().enumerate() {
        let gii = linalg::dot(gi, gi)?;
        let mut restricted = Vec::with_capacity(generators.len() - 1);
        for (j, gj) in generators.iter().enumerate() {
            if j != i {
                let gji = linalg::dot(gj, gi)?;
                restricted.push(linalg::combine(gii, gj, -gji, gi)?);
            }
        }
        let restricted = ProjectedGenerators::new(dim, restricted)?;
        let largest = generators
            .iter()
            .map(|gj| linalg::dot(gi, gj).map(i128::abs))
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))?;
        for base in descend(dim, &restricted.generators)? {
            let smallest = generators
                .iter()
                .map(|gj| linalg::dot(&base, gj).map(i128::abs))
                .filter(|d| !matches!(d, Ok(0)))
                .try_fold(None, |acc: Option<i128>, d| {
                    d.map(|d| Some(acc.map_or(d, |a| a.min(d))))
                })?;
            // eps = smallest / (2 largest); scale everything by 2 largest.
            let (scale, step) = match smallest {
                Some(s) => (largest.checked_mul(2).ok_or(Error::Overflow("chamber witness"))?, s),
                None => (1, 1),
            };
            for sign in [1i128, -1] {
                let point = linalg::reduce(linalg::combine(scale, &base, sign * step, gi)?);
                let key = sign_key(&point, generators)?.expect("perturbed witness lies on a hyperplane");
                if seen.insert(key) {
                    out.push(point);
                }
            }
        }
    }
    Ok(out)
}

/// Enumerates one witness per full-dimensional cell of the central
/// arrangement cut out by the generators, inside their span.
pub fn enumerate_chamber_witnesses(gens: &ProjectedGenerators) -> Result<Vec<ChamberWitness>> {
    descend(gens.dim, &gens.generators)?
        .into_iter()
        .map(|point| {
            let signs = gens
                .generators
                .iter()
                .map(|g| linalg::dot(&point, g).map(|d| d > 0))
                .collect::<Result<_>>()?;
            Ok(ChamberWitness { point, signs })
        })
        .collect()
}

/// Upper bound `2 sum_{k<s} C(g-1, k)` on the cell count of a central
/// arrangement of `g` hyperplanes with span dimension `s`; attained when
/// the arrangement is generic.
pub fn cell_count_bound(generators: usize, span_dim: usize) -> u128 {
    if generators == 0 {
        return 1;
    }
    let free = generators as u128 - 1;
    let mut total = 0u128;
    let mut binom = 1u128;
    for k in 0..span_dim as u128 {
        if k > free {
            break;
        }
        total = total.saturating_add(binom);
        binom = binom.saturating_mul(free - k) / (k + 1);
    }
    total.saturating_mul(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::DirectionKind;
    use proptest::prelude::*;
    use std::cmp::Ordering;
    use std::collections::BTreeSet;

    fn gens(dim: usize, v: &[&[i128]]) -> ProjectedGenerators {
        ProjectedGenerators::new(dim, v.iter().map(|x| x.to_vec())).unwrap()
    }

    fn sign_set(ws: &[ChamberWitness]) -> BTreeSet<Vec<bool>> {
        ws.iter().map(|w| w.signs.clone()).collect()
    }

    /// Planar oracle: sort the normals' perpendicular rays by angle and take
    /// the bisector of every pair of consecutive rays.
    fn sweep_witnesses(g: &ProjectedGenerators) -> BTreeSet<Vec<bool>> {
        let mut rays: Vec<(i128, i128)> = Vec::new();
        for v in &g.generators {
            rays.push((-v[1], v[0]));
            rays.push((v[1], -v[0]));
        }
        let half = |r: &(i128, i128)| if r.1 > 0 || (r.1 == 0 && r.0 > 0) { 0 } else { 1 };
        rays.sort_by(|a, b| {
            half(a).cmp(&half(b)).then_with(|| {
                let cross = a.0 * b.1 - a.1 * b.0;
                0.cmp(&cross)
            })
        });
        let mut out = BTreeSet::new();
        for k in 0..rays.len() {
            let a = rays[k];
            let b = rays[(k + 1) % rays.len()];
            let mid = if a.0 * b.1 - a.1 * b.0 == 0 {
                // opposite rays: any point on the left side
                (-a.1, a.0)
            } else {
                (a.0 + b.0, a.1 + b.1)
            };
            let signs: Vec<bool> = g
                .generators
                .iter()
                .map(|v| {
                    let d = mid.0 * v[0] + mid.1 * v[1];
                    assert_ne!(d.cmp(&0), Ordering::Equal);
                    d > 0
                })
                .collect();
            out.insert(signs);
        }
        out
    }

    #[test]
    fn projection_example() {
        let d = DirectionSet {
            kind: DirectionKind::Unprescribed,
            vectors: vec![vec![1, 1, 0], vec![0, 1, 1]],
            degenerate: false,
        };
        let p = project_directions(&d, &[vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(p.generators, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(p.span_dim, 2);
        let z = project_directions(&d, &[vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        assert!(z.is_empty());
        assert_eq!(z.span_dim, 0);
    }

    #[test]
    fn parallel_generators_merge() {
        let p = gens(2, &[&[1, 1], &[2, 2], &[-3, -3]]);
        assert_eq!(p.generators, vec![vec![1, 1]]);
    }

    #[test]
    fn coordinate_arrangement_has_four_cells() {
        let w = enumerate_chamber_witnesses(&gens(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(sign_set(&w).len(), 4);
    }

    #[test]
    fn three_lines_make_six_sectors() {
        let g = gens(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let w = enumerate_chamber_witnesses(&g).unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(sign_set(&w), sweep_witnesses(&g));
    }

    #[test]
    fn one_dimensional_base_case() {
        let w = enumerate_chamber_witnesses(&gens(1, &[&[5]])).unwrap();
        assert_eq!(w.len(), 2);
        let pts: BTreeSet<_> = w.iter().map(|w| w.point[0].signum()).collect();
        assert_eq!(pts, BTreeSet::from([-1, 1]));
    }

    #[test]
    fn empty_arrangement_has_zero_witness() {
        let w = enumerate_chamber_witnesses(&gens(3, &[])).unwrap();
        assert_eq!(
            w,
            vec![ChamberWitness {
                point: vec![0, 0, 0],
                signs: vec![]
            }]
        );
    }

    #[test]
    fn lower_dimensional_span_stays_in_span() {
        // Two generators spanning a plane inside Q^3.
        let g = gens(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let w = enumerate_chamber_witnesses(&g).unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.iter().all(|w| w.point[2] == 0));
    }

    #[test]
    fn generic_three_space_count() {
        // Four generic planes through the origin of Q^3 cut 14 cells.
        let g = gens(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let w = enumerate_chamber_witnesses(&g).unwrap();
        assert_eq!(w.len(), 14);
        assert_eq!(cell_count_bound(4, 3), 14);
    }

    #[test]
    fn bound_values() {
        assert_eq!(cell_count_bound(0, 0), 1);
        assert_eq!(cell_count_bound(1, 1), 2);
        assert_eq!(cell_count_bound(5, 2), 10);
        assert_eq!(cell_count_bound(2, 2), 4);
    }

    proptest! {
        #[test]
        fn planar_matches_sweep(
            raw in proptest::collection::vec((-6i128..=6, -6i128..=6), 1..12)
        ) {
            let g = ProjectedGenerators::new(2, raw.iter().map(|&(a, b)| vec![a, b])).unwrap();
            let w = enumerate_chamber_witnesses(&g).unwrap();
            for wit in &w {
                for v in &g.generators {
                    prop_assert_ne!(linalg::dot(&wit.point, v).unwrap(), 0);
                }
            }
            prop_assert_eq!(sign_set(&w).len(), w.len());
            match g.span_dim {
                0 => prop_assert_eq!(w.len(), 1),
                1 => prop_assert_eq!(w.len(), 2),
                _ => {
                    prop_assert_eq!(w.len(), 2 * g.len());
                    prop_assert_eq!(sign_set(&w), sweep_witnesses(&g));
                }
            }
            prop_assert!(w.len() as u128 <= cell_count_bound(g.len(), g.span_dim));
        }

        #[test]
        fn spatial_witnesses_are_distinct_and_bounded(
            raw in proptest::collection::vec((-3i128..=3, -3i128..=3, -3i128..=3), 1..8)
        ) {
            let g = ProjectedGenerators::new(3, raw.iter().map(|&(a, b, c)| vec![a, b, c])).unwrap();
            let w = enumerate_chamber_witnesses(&g).unwrap();
            prop_assert_eq!(sign_set(&w).len(), w.len());
            prop_assert!(w.len() as u128 <= cell_count_bound(g.len(), g.span_dim));
            // Every realizable sign pattern is found: check against a grid of
            // sample functionals.
            let found = sign_set(&w);
            for a in -4i128..=4 {
                for b in -4i128..=4 {
                    for c in -4i128..=4 {
                        let p = vec![a, b, c];
                        let dots: Vec<i128> = g.generators.iter().map(|v| linalg::dot(&p, v).unwrap()).collect();
                        if dots.iter().all(|&d| d != 0) {
                            let s: Vec<bool> = dots.iter().map(|&d| d > 0).collect();
                            prop_assert!(found.contains(&s));
                        }
                    }
                }
            }
        }
    }
}
