//! Host graphs, edge subsets, degree sequences and edge colorings.
//!
//! Vertices are numbered `0..n` internally. Instance files and reports use
//! `1..=n`; the translation happens only in [`crate::instance`] and in
//! error messages.

use crate::error::{Error, Result};

/// A simple undirected graph with a canonical (sorted) edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, sorting the edge list into canonical order.
    ///
    /// Each pair is stored with its smaller endpoint first. Loops, duplicate
    /// pairs and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let (graph, _) = Self::with_permutation(n, edges)?;
        Ok(graph)
    }

    /// Like [`Graph::new`], also returning for each canonical position the
    /// position the edge had in the input. Used to carry per-edge data
    /// (colors, weights) through canonicalization.
    pub fn with_permutation(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<(Self, Vec<usize>)> {
        let mut keyed = Vec::new();
        for (pos, (a, b)) in edges.into_iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!(
                    "edge {{{},{}}} has an endpoint outside 1..={n}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::Invalid(format!("loop at vertex {}", a + 1)));
            }
            keyed.push(((a.min(b), a.max(b)), pos));
        }
        keyed.sort_unstable();
        for w in keyed.windows(2) {
            if w[0].0 == w[1].0 {
                let (a, b) = w[0].0;
                return Err(Error::Invalid(format!("duplicate edge {{{},{}}}", a + 1, b + 1)));
            }
        }
        let perm = keyed.iter().map(|&(_, pos)| pos).collect();
        let edges = keyed.into_iter().map(|(e, _)| e).collect();
        Ok((Graph { n, edges }, perm))
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph { n, edges }
    }

    /// Path on `n` vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        Graph { n, edges }
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Star with center `0` and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        Graph {
            n: leaves + 1,
            edges: (1..=leaves).map(|j| (0, j)).collect(),
        }
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
        Graph { n: a + b, edges }
    }

    /// Perfect matching `{i, k+i}` on `2k` vertices.
    pub fn matching(k: usize) -> Self {
        Graph {
            n: 2 * k,
            edges: (0..k).map(|i| (i, k + i)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<(usize, usize)> {
        self.edges.get(index).copied().ok_or(Error::OutOfRange {
            what: "edge",
            index,
            limit: self.edges.len(),
        })
    }

    /// Position of the edge `{a,b}` in the canonical list.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    /// Degrees of the host graph, `d(H)`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Adjacency lists; each list holds `(neighbor, edge index)` pairs.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (idx, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, idx));
            adj[b].push((a, idx));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(u, _) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Two-coloring of the vertices, if the graph is bipartite.
    /// Side `false` holds the lowest vertex of each component.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for &(u, _) in &adj[v] {
                    match side[u] {
                        None => {
                            side[u] = Some(!sv);
                            stack.push(u);
                        }
                        Some(su) if su == sv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }
}

/// A subset `F` of the host's edges, as membership flags by edge position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSubset(Vec<bool>);

impl EdgeSubset {
    pub fn empty(num_edges: usize) -> Self {
        EdgeSubset(vec![false; num_edges])
    }

    pub fn full(num_edges: usize) -> Self {
        EdgeSubset(vec![true; num_edges])
    }

    pub fn from_flags(flags: Vec<bool>) -> Self {
        EdgeSubset(flags)
    }

    pub fn from_indices(num_edges: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut flags = vec![false; num_edges];
        for i in indices {
            *flags.get_mut(i).ok_or(Error::OutOfRange {
                what: "edge",
                index: i,
                limit: num_edges,
            })? = true;
        }
        Ok(EdgeSubset(flags))
    }

    /// Subset encoded by the low `num_edges` bits of `mask`.
    pub fn from_mask(num_edges: usize, mask: u64) -> Self {
        EdgeSubset((0..num_edges).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.get(index).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, index: usize) {
        self.0[index] = true;
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn flags(&self) -> &[bool] {
        &self.0
    }

    /// Selected edge positions in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter_map(|(i, &b)| b.then_some(i)).collect()
    }
}

/// Degree vector of a subgraph, indexed by every vertex of the host.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Inner product with an integer weight vector.
    pub fn dot(&self, w: &[i64]) -> Result<i64> {
        if w.len() != self.0.len() {
            return Err(Error::LengthMismatch {
                what: "weight vector",
                expected: self.0.len(),
                actual: w.len(),
            });
        }
        self.0.iter().zip(w).try_fold(0i64, |acc, (&d, &wi)| {
            i64::try_from(d)
                .ok()
                .and_then(|d| d.checked_mul(wi))
                .and_then(|t| acc.checked_add(t))
                .ok_or(Error::Overflow("degree inner product"))
        })
    }
}

/// `d(F)`: the number of selected edges at each vertex.
pub fn degree_sequence(graph: &Graph, subset: &EdgeSubset) -> Result<DegreeSequence> {
    if subset.len() != graph.num_edges() {
        return Err(Error::LengthMismatch {
            what: "edge subset",
            expected: graph.num_edges(),
            actual: subset.len(),
        });
    }
    let mut deg = vec![0; graph.n()];
    for (&(a, b), _) in graph.edges().iter().zip(subset.flags()).filter(|(_, &s)| s) {
        deg[a] += 1;
        deg[b] += 1;
    }
    Ok(DegreeSequence(deg))
}

/// `d(e)`: the indicator vector of the two endpoints of edge `e`.
pub fn edge_degree_vector(graph: &Graph, edge: usize) -> Result<DegreeSequence> {
    let (a, b) = graph.edge(edge)?;
    let mut deg = vec![0; graph.n()];
    deg[a] = 1;
    deg[b] = 1;
    Ok(DegreeSequence(deg))
}

/// A `p`-partition of the edges with prescribed per-color counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    colors: Vec<usize>,
    counts: Vec<usize>,
    class_sizes: Vec<usize>,
}

impl EdgeColoring {
    /// `colors[e]` is the 0-based color of edge `e`; `counts[k]` is `m_k`.
    pub fn new(graph: &Graph, colors: Vec<usize>, counts: Vec<usize>) -> Result<Self> {
        if colors.len() != graph.num_edges() {
            return Err(Error::LengthMismatch {
                what: "edge colors",
                expected: graph.num_edges(),
                actual: colors.len(),
            });
        }
        let p = counts.len();
        let mut class_sizes = vec![0; p];
        for (e, &c) in colors.iter().enumerate() {
            if c >= p {
                return Err(Error::Invalid(format!(
                    "edge {} has color {} but only {p} counts were given",
                    e + 1,
                    c + 1
                )));
            }
            class_sizes[c] += 1;
        }
        for (k, (&m, &size)) in counts.iter().zip(&class_sizes).enumerate() {
            if m > size {
                return Err(Error::Invalid(format!(
                    "color {} requires {m} edges but has only {size}",
                    k + 1
                )));
            }
        }
        Ok(EdgeColoring {
            colors,
            counts,
            class_sizes,
        })
    }

    /// Single color class covering every edge, with `m` edges required.
    pub fn uniform(graph: &Graph, m: usize) -> Result<Self> {
        Self::new(graph, vec![0; graph.num_edges()], vec![m])
    }

    pub fn num_colors(&self) -> usize {
        self.counts.len()
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, edge: usize) -> usize {
        self.colors[edge]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `|E_k|` for each color.
    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// Per-color counts of a subset.
    pub fn usage(&self, subset: &EdgeSubset) -> Vec<usize> {
        let mut used = vec![0; self.counts.len()];
        for e in subset.indices() {
            used[self.colors[e]] += 1;
        }
        used
    }

    pub fn is_satisfied_by(&self, subset: &EdgeSubset) -> bool {
        self.usage(subset) == self.counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triangle_full_subset_is_two_regular() {
        let k3 = Graph::complete(3);
        let d = degree_sequence(&k3, &EdgeSubset::full(3)).unwrap();
        assert_eq!(d.0, vec![2, 2, 2]);
    }

    #[test]
    fn empty_subset_gives_zero_vector() {
        let g = Graph::complete(5);
        let d = degree_sequence(&g, &EdgeSubset::empty(10)).unwrap();
        assert_eq!(d.0, vec![0; 5]);
    }

    #[test]
    fn path_single_edge() {
        let p3 = Graph::path(3);
        let f = EdgeSubset::from_indices(2, [p3.edge_index(0, 1).unwrap()]).unwrap();
        assert_eq!(degree_sequence(&p3, &f).unwrap().0, vec![1, 1, 0]);
    }

    #[test]
    fn subset_length_mismatch() {
        let err = degree_sequence(&Graph::complete(3), &EdgeSubset::empty(2)).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }));
    }

    #[test]
    fn edge_vectors() {
        let k3 = Graph::complete(3);
        let e12 = k3.edge_index(0, 1).unwrap();
        let e23 = k3.edge_index(1, 2).unwrap();
        assert_eq!(edge_degree_vector(&k3, e12).unwrap().0, vec![1, 1, 0]);
        assert_eq!(edge_degree_vector(&k3, e23).unwrap().0, vec![0, 1, 1]);
        let p3 = Graph::path(3);
        assert_eq!(edge_degree_vector(&p3, 0).unwrap().0, vec![1, 1, 0]);
        assert!(edge_degree_vector(&k3, 3).is_err());
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn canonical_order_and_permutation() {
        let (g, perm) = Graph::with_permutation(4, [(3, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert_eq!(perm, vec![1, 2, 0]);
    }

    #[test]
    fn coloring_counts_checked() {
        let g = Graph::complete(3);
        assert!(EdgeColoring::new(&g, vec![0, 0, 1], vec![2, 1]).is_ok());
        assert!(EdgeColoring::new(&g, vec![0, 0, 1], vec![1, 2]).is_err());
        assert!(EdgeColoring::new(&g, vec![0, 0, 2], vec![1, 1]).is_err());
    }

    fn graph_and_subset() -> impl Strategy<Value = (Graph, EdgeSubset)> {
        (1usize..8)
            .prop_flat_map(|n| {
                let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
                let k = pairs.len();
                (Just(n), Just(pairs), proptest::collection::vec(any::<bool>(), k))
            })
            .prop_flat_map(|(n, pairs, keep)| {
                let edges: Vec<_> = pairs
                    .into_iter()
                    .zip(keep)
                    .filter_map(|(e, k)| k.then_some(e))
                    .collect();
                let m = edges.len();
                (
                    Just(Graph::new(n, edges).unwrap()),
                    proptest::collection::vec(any::<bool>(), m).prop_map(EdgeSubset::from_flags),
                )
            })
    }

    proptest! {
        #[test]
        fn degree_sum_is_twice_edge_count((g, f) in graph_and_subset()) {
            let d = degree_sequence(&g, &f).unwrap();
            prop_assert_eq!(d.total(), 2 * f.count());
            let mut sum = vec![0; g.n()];
            for e in f.indices() {
                for (s, x) in sum.iter_mut().zip(edge_degree_vector(&g, e).unwrap().0) {
                    *s += x;
                }
            }
            prop_assert_eq!(d.0, sum);
        }
    }
}
