//! Linear optimization oracles over degree sequences of subgraphs, and the
//! edge-direction sets of the degree sequence polytopes.
//!
//! `u . d(F)` is additive over the edges of `F`, so the best `m`-edge subset
//! takes the `m` edges with the largest `u . d(e)`, and the best unrestricted
//! subset takes every edge with `u . d(e) > 0`.

use std::collections::BTreeSet;
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::graph::{degree_sequence, DegreeSequence, EdgeSubset, Graph};
use crate::linalg;

/// Integer types usable as linear functionals.
pub trait Weight: Copy + Ord + Debug + Send + Sync {
    const ZERO: Self;
    fn checked_add(self, other: Self) -> Option<Self>;
}

impl Weight for i64 {
    const ZERO: Self = 0;
    fn checked_add(self, other: Self) -> Option<Self> {
        i64::checked_add(self, other)
    }
}

impl Weight for i128 {
    const ZERO: Self = 0;
    fn checked_add(self, other: Self) -> Option<Self> {
        i128::checked_add(self, other)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionKind {
    /// Directions of `conv{d(F) : |F| = m}`.
    Prescribed,
    /// Directions of `conv{d(F) : F subset of E}`.
    Unprescribed,
}

/// Pairwise non-parallel primitive integer vectors, each with its first
/// nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionSet {
    pub kind: DirectionKind,
    pub vectors: Vec<Vec<i64>>,
    /// Set when the host has too few edges for any direction to exist.
    pub degenerate: bool,
}

impl DirectionSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn primitive_i64(v: Vec<i64>) -> Vec<i64> {
    linalg::primitive(v.into_iter().map(i128::from).collect())
        .into_iter()
        .map(|x| x as i64)
        .collect()
}

/// One representative of `+-(d(e) - d(f))` for every pair of distinct edges,
/// deduplicated up to scalar multiples.
pub fn directions_prescribed(graph: &Graph) -> DirectionSet {
    let n = graph.n();
    let edges = graph.edges();
    let mut seen = BTreeSet::new();
    let mut vectors = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            let mut v = vec![0i64; n];
            v[a] += 1;
            v[b] += 1;
            v[c] -= 1;
            v[d] -= 1;
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let v = primitive_i64(v);
            if seen.insert(v.clone()) {
                vectors.push(v);
            }
        }
    }
    DirectionSet {
        kind: DirectionKind::Prescribed,
        vectors,
        degenerate: edges.len() < 2,
    }
}

/// `{d(e) : e in E}`. These are distinct 0/1 vectors, so no deduplication
/// is needed.
pub fn directions_unprescribed(graph: &Graph) -> DirectionSet {
    let n = graph.n();
    let vectors = graph
        .edges()
        .iter()
        .map(|&(a, b)| {
            let mut v = vec![0i64; n];
            v[a] = 1;
            v[b] = 1;
            v
        })
        .collect();
    DirectionSet {
        kind: DirectionKind::Unprescribed,
        vectors,
        degenerate: graph.num_edges() == 0,
    }
}

/// An optimizer of a linear functional together with its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinOptResult<T> {
    pub subset: EdgeSubset,
    pub degrees: DegreeSequence,
    pub value: T,
}

fn check_len<T>(graph: &Graph, u: &[T]) -> Result<()> {
    if u.len() != graph.n() {
        return Err(Error::LengthMismatch {
            what: "linear functional",
            expected: graph.n(),
            actual: u.len(),
        });
    }
    Ok(())
}

/// `u . d(e)` for every edge.
pub fn edge_values<T: Weight>(graph: &Graph, u: &[T]) -> Result<Vec<T>> {
    check_len(graph, u)?;
    graph
        .edges()
        .iter()
        .map(|&(a, b)| u[a].checked_add(u[b]).ok_or(Error::Overflow("edge value")))
        .collect()
}

/// Edge positions ordered by value descending, ties by position ascending.
pub fn rank_edges<T: Weight>(values: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].cmp(&values[i]));
    order
}

fn finish<T: Weight>(graph: &Graph, subset: EdgeSubset, values: &[T]) -> Result<LinOptResult<T>> {
    let value = subset
        .indices()
        .into_iter()
        .try_fold(T::ZERO, |acc, e| acc.checked_add(values[e]))
        .ok_or(Error::Overflow("linear objective"))?;
    let degrees = degree_sequence(graph, &subset)?;
    Ok(LinOptResult { subset, degrees, value })
}

/// Maximizes `u . d(F)` over `m`-edge subsets by taking the `m` best edges.
pub fn linopt_prescribed<T: Weight>(graph: &Graph, m: usize, u: &[T]) -> Result<LinOptResult<T>> {
    if m > graph.num_edges() {
        return Err(Error::EdgeCount {
            m,
            max: graph.num_edges(),
        });
    }
    let values = edge_values(graph, u)?;
    let order = rank_edges(&values);
    let subset = EdgeSubset::from_indices(graph.num_edges(), order[..m].iter().copied())?;
    finish(graph, subset, &values)
}

/// Maximizes `u . d(F)` over all subsets: the edges of positive value.
pub fn linopt_unprescribed<T: Weight>(graph: &Graph, u: &[T]) -> Result<LinOptResult<T>> {
    let values = edge_values(graph, u)?;
    let subset = EdgeSubset::from_flags(values.iter().map(|&v| v > T::ZERO).collect());
    finish(graph, subset, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
        v.sort();
        v
    }

    #[test]
    fn triangle_prescribed_directions() {
        let d = directions_prescribed(&Graph::complete(3));
        assert_eq!(sorted(d.vectors), vec![vec![0, 1, -1], vec![1, -1, 0], vec![1, 0, -1]]);
    }

    #[test]
    fn disjoint_edges_give_one_direction() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(directions_prescribed(&g).vectors, vec![vec![1, 1, -1, -1]]);
    }

    #[test]
    fn single_edge_is_degenerate() {
        let d = directions_prescribed(&Graph::path(2));
        assert!(d.is_empty() && d.degenerate);
    }

    #[test]
    fn unprescribed_directions() {
        assert_eq!(
            directions_unprescribed(&Graph::complete(3)).vectors,
            vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]
        );
        assert_eq!(
            directions_unprescribed(&Graph::path(3)).vectors,
            vec![vec![1, 1, 0], vec![0, 1, 1]]
        );
        assert!(directions_unprescribed(&Graph::empty(3)).is_empty());
    }

    #[test]
    fn prescribed_oracle_on_triangle() {
        let k3 = Graph::complete(3);
        let res = linopt_prescribed(&k3, 2, &[2i64, 1, 0]).unwrap();
        assert_eq!(res.subset.indices(), vec![0, 1]);
        assert_eq!(res.degrees.0, vec![2, 1, 1]);
        assert_eq!(res.value, 5);
    }

    #[test]
    fn zero_functional_takes_first_edges() {
        let g = Graph::complete(4);
        let res = linopt_prescribed(&g, 3, &[0i64; 4]).unwrap();
        assert_eq!(res.subset.indices(), vec![0, 1, 2]);
        assert_eq!(res.value, 0);
    }

    #[test]
    fn all_edges_forced() {
        let g = Graph::complete(4);
        let res = linopt_prescribed(&g, 6, &[-1i64, 3, -2, 0]).unwrap();
        assert_eq!(res.subset, EdgeSubset::full(6));
        assert!(linopt_prescribed(&g, 7, &[0i64; 4]).is_err());
    }

    #[test]
    fn unprescribed_oracle() {
        let k3 = Graph::complete(3);
        let all = linopt_unprescribed(&k3, &[1i64, 1, 1]).unwrap();
        assert_eq!((all.subset.count(), all.value), (3, 6));
        let none = linopt_unprescribed(&k3, &[0i64; 3]).unwrap();
        assert_eq!((none.subset.count(), none.value), (0, 0));
        let one = linopt_unprescribed(&k3, &[1i64, -1, 0]).unwrap();
        assert_eq!(one.subset.indices(), vec![k3.edge_index(0, 2).unwrap()]);
        assert_eq!(one.value, 1);
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (2usize..7).prop_flat_map(|n| {
            let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            proptest::sample::subsequence(pairs.clone(), 0..=pairs.len().min(8))
                .prop_map(move |edges| Graph::new(n, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn prescribed_matches_enumeration(
            g in small_graph(),
            u in proptest::collection::vec(-5i64..=5, 7),
        ) {
            let u = &u[..g.n()];
            let k = g.num_edges();
            let mut best = vec![i64::MIN; k + 1];
            for mask in 0u64..1 << k {
                let f = EdgeSubset::from_mask(k, mask);
                let v = degree_sequence(&g, &f).unwrap().dot(u).unwrap();
                let c = f.count();
                best[c] = best[c].max(v);
            }
            let positive = edge_values(&g, u).unwrap().iter().filter(|&&v| v > 0).count();
            for (m, &want) in best.iter().enumerate() {
                let res = linopt_prescribed(&g, m, u).unwrap();
                prop_assert_eq!(res.value, want);
                prop_assert_eq!(res.subset.count(), m);
                prop_assert_eq!(res.degrees.dot(u).unwrap(), res.value);
                if m > positive {
                    prop_assert!(res.value <= linopt_prescribed(&g, m - 1, u).unwrap().value);
                }
            }
            let un = linopt_unprescribed(&g, u).unwrap();
            let expected: i64 = edge_values(&g, u).unwrap().iter().map(|&v| v.max(0)).sum();
            prop_assert_eq!(un.value, expected);
            prop_assert_eq!(un.value, *best.iter().max().unwrap());
        }

        #[test]
        fn directions_come_from_edge_pairs(g in small_graph()) {
            let vecs: Vec<Vec<i64>> = g.edges().iter().map(|&(a, b)| {
                let mut v = vec![0; g.n()];
                v[a] = 1;
                v[b] = 1;
                v
            }).collect();
            for d in directions_prescribed(&g).vectors {
                let found = vecs.iter().any(|x| vecs.iter().any(|y| {
                    let diff: Vec<i64> = x.iter().zip(y).map(|(p, q)| p - q).collect();
                    diff.iter().any(|&t| t != 0) && primitive_i64(diff) == d
                }));
                prop_assert!(found);
            }
            for d in directions_unprescribed(&g).vectors {
                prop_assert!(vecs.contains(&d));
            }
        }
    }
}
