//! Exhaustive oracles for the multi-criteria problem and small-graph
//! corpora used by the validation suites.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objective::MultiCriteriaObjective;

pub const MULTI_BRUTE_EDGE_CAP: usize = 20;

/// Distinct criteria points `(w_1 . d(F), ..., w_r . d(F))` of all edge
/// subsets `F`, grouped by `|F|`. Entry `m` is sorted.
pub fn criteria_points(graph: &Graph, weights: &[Vec<i64>]) -> Result<Vec<Vec<Vec<i64>>>> {
    let k = graph.num_edges();
    if k > MULTI_BRUTE_EDGE_CAP {
        return Err(Error::Limit {
            what: "brute-force edge count",
            actual: k,
            limit: MULTI_BRUTE_EDGE_CAP,
            hint: "",
        });
    }
    if let Some(w) = weights.iter().find(|w| w.len() != graph.n()) {
        return Err(Error::LengthMismatch {
            what: "criterion weight vector",
            expected: graph.n(),
            actual: w.len(),
        });
    }
    let r = weights.len();
    let contribution: Vec<Vec<i64>> = graph
        .edges()
        .iter()
        .map(|&(a, b)| {
            weights
                .iter()
                .map(|w| w[a].checked_add(w[b]).ok_or(Error::Overflow("criteria point")))
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut sets = vec![BTreeSet::new(); k + 1];
    let mut point = vec![0i64; r];
    let mut mask = 0u64;
    let mut size = 0usize;
    sets[0].insert(point.clone());
    for step in 1u64..(1u64 << k) {
        let e = step.trailing_zeros() as usize;
        let on = mask >> e & 1 == 0;
        mask ^= 1 << e;
        for (y, &c) in point.iter_mut().zip(&contribution[e]) {
            *y = if on { y.checked_add(c) } else { y.checked_sub(c) }.ok_or(Error::Overflow("criteria point"))?;
        }
        if on {
            size += 1;
        } else {
            size -= 1;
        }
        sets[size].insert(point.clone());
    }
    Ok(sets.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// Best value of `f` over the given points; `None` when there are none.
pub fn best_value(objective: &MultiCriteriaObjective, points: &[Vec<i64>]) -> Result<Option<i64>> {
    points.iter().try_fold(None, |best: Option<i64>, y| {
        let v = objective.function().evaluate(y)?;
        Ok(Some(best.map_or(v, |b| b.max(v))))
    })
}

/// Brute-force optimum over all `m`-edge subsets, or over all subsets when
/// `m` is `None`.
pub fn multicriteria_bruteforce(graph: &Graph, m: Option<usize>, objective: &MultiCriteriaObjective) -> Result<i64> {
    let points = criteria_points(graph, objective.weights())?;
    let chosen: Vec<Vec<i64>> = match m {
        Some(m) => points
            .get(m)
            .ok_or(Error::EdgeCount {
                m,
                max: graph.num_edges(),
            })?
            .clone(),
        None => points.into_iter().flatten().collect(),
    };
    Ok(best_value(objective, &chosen)?.expect("every size class is nonempty"))
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i128 {
    let (ax, ay) = ((a[0] - o[0]) as i128, (a[1] - o[1]) as i128);
    let (bx, by) = ((b[0] - o[0]) as i128, (b[1] - o[1]) as i128);
    ax * by - ay * bx
}

/// Vertices of the convex hull of planar integer points in counterclockwise
/// order, without points interior to hull edges.
pub fn planar_hull(points: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut pts: Vec<[i64; 2]> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<[i64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[i64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Sorted edge list of the lexicographically smallest relabeling among
/// those that order vertices by nonincreasing degree.
pub fn canonical_form(graph: &Graph) -> Vec<(usize, usize)> {
    let n = graph.n();
    let deg = graph.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && deg[order[j]] == deg[order[i]] {
            j += 1;
        }
        groups.push((i, j));
        i = j;
    }
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut slots = order.clone();
    permute_groups(graph, &groups, 0, &mut slots, &mut best);
    best.unwrap_or_default()
}

fn permute_groups(
    graph: &Graph,
    groups: &[(usize, usize)],
    g: usize,
    slots: &mut Vec<usize>,
    best: &mut Option<Vec<(usize, usize)>>,
) {
    if g == groups.len() {
        let mut label = vec![0; slots.len()];
        for (pos, &v) in slots.iter().enumerate() {
            label[v] = pos;
        }
        let mut edges: Vec<(usize, usize)> = graph
            .edges()
            .iter()
            .map(|&(a, b)| (label[a].min(label[b]), label[a].max(label[b])))
            .collect();
        edges.sort_unstable();
        if best.as_ref().is_none_or(|b| edges < *b) {
            *best = Some(edges);
        }
        return;
    }
    let (lo, hi) = groups[g];
    heap_permutations(graph, groups, g, lo, hi - lo, slots, best);
}

fn heap_permutations(
    graph: &Graph,
    groups: &[(usize, usize)],
    g: usize,
    lo: usize,
    k: usize,
    slots: &mut Vec<usize>,
    best: &mut Option<Vec<(usize, usize)>>,
) {
    if k <= 1 {
        permute_groups(graph, groups, g + 1, slots, best);
        return;
    }
    for i in 0..k {
        heap_permutations(graph, groups, g, lo, k - 1, slots, best);
        let j = if k.is_multiple_of(2) { lo + i } else { lo };
        if i + 1 < k {
            slots.swap(j, lo + k - 1);
        }
    }
}

/// All connected graphs on `n` vertices, one per isomorphism class, in a
/// fixed order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let complete = Graph::complete(n);
    let k = complete.num_edges();
    assert!(k <= 20, "connected graph enumeration is limited to n <= 6");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        if n > 1 && (mask.count_ones() as usize) < n - 1 {
            continue;
        }
        let edges = (0..k).filter(|&e| mask >> e & 1 == 1).map(|e| complete.edges()[e]);
        let g = Graph::new(n, edges).expect("subgraph of a complete graph");
        if !g.is_connected() {
            continue;
        }
        let form = canonical_form(&g);
        if seen.insert(form.clone()) {
            out.push(Graph::new(n, form).expect("relabeling of a simple graph"));
        }
    }
    out
}

/// All graphs with `1..=max_edges` edges and no isolated vertices, one per
/// isomorphism class.
pub fn graphs_up_to_edges(max_edges: usize) -> Vec<Graph> {
    assert!(max_edges <= 5, "edge-bounded enumeration is limited to 5 edges");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for k in 1..=max_edges {
        let pool = Graph::complete(2 * k);
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            let used: BTreeSet<usize> = pick
                .iter()
                .flat_map(|&e| {
                    let (a, b) = pool.edges()[e];
                    [a, b]
                })
                .collect();
            let label: Vec<usize> = (0..2 * k).map(|v| used.range(..v).count()).collect();
            let edges = pick.iter().map(|&e| {
                let (a, b) = pool.edges()[e];
                (label[a], label[b])
            });
            let g = Graph::new(used.len(), edges).expect("relabeling of a simple graph");
            let form = canonical_form(&g);
            if seen.insert((g.n(), form.clone())) {
                out.push(Graph::new(g.n(), form).expect("relabeling of a simple graph"));
            }
            // next k-combination of the pool's edges
            let total = pool.num_edges();
            let Some(i) = (0..k).rev().find(|&i| pick[i] < total - k + i) else {
                break;
            };
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{degree_sequence, EdgeSubset};
    use crate::objective::{AffineForm, ConvexFunction};
    use proptest::prelude::*;

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn edge_bounded_graph_counts() {
        // graphs without isolated vertices: 1, 2, 5, 11 classes with exactly
        // 1, 2, 3, 4 edges
        assert_eq!(graphs_up_to_edges(4).len(), 1 + 2 + 5 + 11);
    }

    #[test]
    fn hull_of_square_with_inner_points() {
        let pts = [[0, 0], [2, 0], [2, 2], [0, 2], [1, 1], [1, 0], [0, 1]];
        assert_eq!(planar_hull(&pts), vec![[0, 0], [2, 0], [2, 2], [0, 2]]);
        assert_eq!(planar_hull(&[[0, 0], [1, 1], [2, 2]]), vec![[0, 0], [2, 2]]);
        assert_eq!(planar_hull(&[[3, 3]]), vec![[3, 3]]);
    }

    #[test]
    fn path_points_for_sum_of_degrees() {
        let g = Graph::path(3);
        let pts = criteria_points(&g, &[vec![1, 1, 1]]).unwrap();
        assert_eq!(pts, vec![vec![vec![0]], vec![vec![2]], vec![vec![4]]]);
    }

    #[test]
    fn bruteforce_on_path_example() {
        // y1 = d1 - d3, y2 = d2; f = y1^2 + y2^2 ... with one edge the best
        // is either edge: (1,1) or (-1,1), value 2.
        let g = Graph::path(3);
        let obj = MultiCriteriaObjective::new(
            vec![vec![1, 0, -1], vec![0, 1, 0]],
            ConvexFunction::SumSquares(vec![AffineForm::new(vec![1, 0], 0), AffineForm::new(vec![0, 1], 0)]),
        )
        .unwrap();
        assert_eq!(multicriteria_bruteforce(&g, Some(1), &obj).unwrap(), 2);
        assert_eq!(multicriteria_bruteforce(&g, None, &obj).unwrap(), 4);
    }

    fn graph_strategy() -> impl Strategy<Value = Graph> {
        (1usize..6)
            .prop_flat_map(|n| {
                let k = n * (n - 1) / 2;
                (Just(n), proptest::collection::vec(any::<bool>(), k))
            })
            .prop_map(|(n, keep)| {
                let complete = Graph::complete(n);
                Graph::new(
                    n,
                    complete.edges().iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e),
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn canonical_form_is_relabeling_invariant(g in graph_strategy(), seed in any::<u64>()) {
            let n = g.n();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let h = Graph::new(n, g.edges().iter().map(|&(a, b)| (perm[a], perm[b]))).unwrap();
            prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        }

        #[test]
        fn points_match_direct_evaluation(g in graph_strategy(), w in proptest::collection::vec(-3i64..4, 5)) {
            let w = vec![w[..g.n()].to_vec()];
            let pts = criteria_points(&g, &w).unwrap();
            let k = g.num_edges();
            for mask in 0..1u64 << k {
                let f = EdgeSubset::from_mask(k, mask);
                let d = degree_sequence(&g, &f).unwrap();
                let y = vec![d.dot(&w[0]).unwrap()];
                prop_assert!(pts[f.count()].binary_search(&y).is_ok());
            }
        }
    }
}
