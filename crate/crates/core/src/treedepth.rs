//! Elimination forests, exact tree-depth for small graphs, a heuristic for
//! larger ones, and the constraint tree of the colored integer program.

use rustc_hash::FxHashMap;

use crate::colored::IpModel;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex cap for [`treedepth_exact`].
pub const EXACT_CAP: usize = 15;

/// A rooted forest on `0..n` given by parent links.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EliminationForest {
    parent: Vec<Option<usize>>,
    /// Number of vertices on the path from the root, so roots have depth 1.
    depth: Vec<usize>,
}

impl EliminationForest {
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if let Some((v, p)) = parent
            .iter()
            .enumerate()
            .find_map(|(v, p)| p.filter(|&p| p >= n || p == v).map(|p| (v, p)))
        {
            return Err(Error::MalformedForest(format!(
                "vertex {} has invalid parent {}",
                v + 1,
                p + 1
            )));
        }
        let mut depth = vec![0usize; n];
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            while depth[v] == 0 {
                path.push(v);
                if path.len() > n {
                    return Err(Error::MalformedForest(format!(
                        "parent links through vertex {} form a cycle",
                        start + 1
                    )));
                }
                match parent[v] {
                    Some(p) => v = p,
                    None => break,
                }
            }
            let mut d = if depth[v] == 0 { 0 } else { depth[v] };
            for &u in path.iter().rev() {
                d += 1;
                depth[u] = d;
            }
        }
        Ok(EliminationForest { parent, depth })
    }

    /// Reads the file convention: 1-based parents, `0` marking a root.
    pub fn from_parent_labels(labels: &[usize]) -> Result<Self> {
        Self::new(labels.iter().map(|&p| p.checked_sub(1)).collect())
    }

    pub fn parent_labels(&self) -> Vec<usize> {
        self.parent.iter().map(|p| p.map_or(0, |p| p + 1)).collect()
    }

    /// The chain `0 - 1 - ... - (n-1)` rooted at `0`.
    pub fn chain(n: usize) -> Self {
        Self::new((0..n).map(|v| v.checked_sub(1)).collect()).expect("a chain is acyclic")
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Maximum number of vertices on a root-to-leaf path.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.parent[v].is_none()).collect()
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(v);
            }
        }
        ch
    }

    /// Strict ancestors of `v`, root first.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.depth[v]);
        let mut cur = self.parent[v];
        while let Some(p) = cur {
            out.push(p);
            cur = self.parent[p];
        }
        out.reverse();
        out
    }

    /// True when one of `a`, `b` lies on the root path of the other.
    pub fn related(&self, a: usize, b: usize) -> bool {
        let (mut lo, hi) = if self.depth[a] >= self.depth[b] { (a, b) } else { (b, a) };
        while self.depth[lo] > self.depth[hi] {
            lo = self.parent[lo].expect("depth above 1 implies a parent");
        }
        lo == hi
    }
}

/// Fails with the first edge whose endpoints are not ancestor-related.
pub fn check_forest(graph: &Graph, forest: &EliminationForest) -> Result<()> {
    if forest.len() != graph.n() {
        return Err(Error::LengthMismatch {
            what: "forest vertex count",
            expected: graph.n(),
            actual: forest.len(),
        });
    }
    match graph.edges().iter().find(|&&(a, b)| !forest.related(a, b)) {
        Some(&(a, b)) => Err(Error::InvalidForest(a + 1, b + 1)),
        None => Ok(()),
    }
}

/// Whether every edge joins an ancestor-descendant pair. Errors only when
/// the forest does not cover exactly the graph's vertices.
pub fn validate_forest(graph: &Graph, forest: &EliminationForest) -> Result<bool> {
    match check_forest(graph, forest) {
        Ok(()) => Ok(true),
        Err(Error::InvalidForest(..)) => Ok(false),
        Err(e) => Err(e),
    }
}

struct ExactSearch {
    adj: Vec<u32>,
    memo: FxHashMap<u32, (u8, u8)>,
}

impl ExactSearch {
    fn components(&self, set: u32) -> Vec<u32> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            loop {
                let mut grown = comp;
                let mut bits = comp;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    grown |= self.adj[v] & set;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    /// Tree-depth of the induced subgraph on a connected `set`, and the root
    /// achieving it.
    fn connected(&mut self, set: u32) -> (u8, u8) {
        if let Some(&hit) = self.memo.get(&set) {
            return hit;
        }
        let res = if set.count_ones() == 1 {
            (1, set.trailing_zeros() as u8)
        } else {
            let mut best = (u8::MAX, 0u8);
            let mut bits = set;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                let d = 1 + self.depth(set & !(1 << v));
                if d < best.0 {
                    best = (d, v as u8);
                }
            }
            best
        };
        self.memo.insert(set, res);
        res
    }

    fn depth(&mut self, set: u32) -> u8 {
        self.components(set)
            .into_iter()
            .map(|c| self.connected(c).0)
            .max()
            .unwrap_or(0)
    }

    fn build(&mut self, set: u32, above: Option<usize>, parent: &mut [Option<usize>]) {
        for comp in self.components(set) {
            let root = self.connected(comp).1 as usize;
            parent[root] = above;
            self.build(comp & !(1 << root), Some(root), parent);
        }
    }
}

/// Exact tree-depth for graphs up to [`EXACT_CAP`] vertices: the smallest
/// height of a single rooted tree valid for the graph, returned with such a
/// tree. On a disconnected graph this can exceed the best forest height by
/// one (a perfect matching needs height 3, not 2).
pub fn treedepth_exact(graph: &Graph) -> Result<(usize, EliminationForest)> {
    treedepth_exact_with_cap(graph, EXACT_CAP)
}

pub fn treedepth_exact_with_cap(graph: &Graph, cap: usize) -> Result<(usize, EliminationForest)> {
    let n = graph.n();
    if n > cap.min(31) {
        return Err(Error::Limit {
            what: "exact tree-depth vertex count",
            actual: n,
            limit: cap.min(31),
            hint: "; use the heuristic or supply a forest",
        });
    }
    let mut adj = vec![0u32; n];
    for &(a, b) in graph.edges() {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut search = ExactSearch {
        adj,
        memo: FxHashMap::default(),
    };
    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut parent = vec![None; n];
    let depth = if search.components(all).len() <= 1 {
        let depth = search.depth(all) as usize;
        search.build(all, None, &mut parent);
        depth
    } else {
        // Disconnected: one vertex must sit above every component.
        let (depth, root) = (0..n)
            .map(|v| (1 + search.depth(all & !(1 << v)) as usize, v))
            .min()
            .expect("a disconnected graph has vertices");
        search.build(all & !(1 << root), Some(root), &mut parent);
        depth
    };
    let forest = EliminationForest::new(parent)?;
    debug_assert_eq!(forest.height(), depth);
    Ok((depth, forest))
}

/// Elimination tree of the minimum-degree ordering.
fn min_degree_forest(graph: &Graph) -> EliminationForest {
    let n = graph.n();
    let mut nbrs: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); n];
    for &(a, b) in graph.edges() {
        nbrs[a].insert(b);
        nbrs[b].insert(a);
    }
    let mut alive = vec![true; n];
    let mut position = vec![0usize; n];
    let mut later: Vec<Vec<usize>> = vec![Vec::new(); n];
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (nbrs[v].len(), v))
            .expect("a vertex remains");
        alive[v] = false;
        position[v] = step;
        let hood: Vec<usize> = nbrs[v].iter().copied().collect();
        for &a in &hood {
            nbrs[a].remove(&v);
            for &b in &hood {
                if a != b {
                    nbrs[a].insert(b);
                }
            }
        }
        later[v] = hood;
    }
    let parent = (0..n)
        .map(|v| later[v].iter().copied().min_by_key(|&u| position[u]))
        .collect();
    EliminationForest::new(parent).expect("elimination trees are acyclic")
}

/// Repeatedly roots each component at its highest-degree vertex.
fn greedy_separation_forest(graph: &Graph) -> EliminationForest {
    let n = graph.n();
    let adj = graph.adjacency();
    let mut removed = vec![false; n];
    let mut parent = vec![None; n];
    let mut work: Vec<(Vec<usize>, Option<usize>)> = vec![((0..n).collect(), None)];
    let mut mark = vec![false; n];
    while let Some((set, above)) = work.pop() {
        for &v in &set {
            mark[v] = true;
        }
        let mut seen = vec![false; n];
        for &s in &set {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &(u, _) in &adj[v] {
                    if mark[u] && !removed[u] && !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            let root = *comp
                .iter()
                .max_by_key(|&&v| {
                    let deg = adj[v].iter().filter(|&&(u, _)| mark[u] && !removed[u]).count();
                    (deg, std::cmp::Reverse(v))
                })
                .expect("component is nonempty");
            parent[root] = above;
            removed[root] = true;
            let rest: Vec<usize> = comp.into_iter().filter(|&v| v != root).collect();
            if !rest.is_empty() {
                work.push((rest, Some(root)));
            }
        }
        for &v in &set {
            mark[v] = false;
        }
    }
    EliminationForest::new(parent).expect("separation forests are acyclic")
}

/// A valid forest without optimality guarantee. Deterministic: the lower of
/// the minimum-degree elimination tree and a greedy separation forest.
pub fn heuristic_forest(graph: &Graph) -> EliminationForest {
    let a = min_degree_forest(graph);
    let b = greedy_separation_forest(graph);
    let best = if b.height() < a.height() { b } else { a };
    debug_assert!(check_forest(graph, &best).is_ok());
    best
}

/// The rooted tree on the integer program's rows: the chain `c_1 .. c_p`
/// on top, the forest's roots hung below `c_p`, and each `b_i` below `a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintTree {
    pub forest: EliminationForest,
    pub n: usize,
    pub p: usize,
}

impl ConstraintTree {
    /// Row label of a tree vertex: `a_i`, `b_i` or `c_k`, 1-based.
    pub fn label(&self, v: usize) -> String {
        row_label(self.n, v)
    }
}

pub(crate) fn row_label(n: usize, v: usize) -> String {
    if v < n {
        format!("a_{}", v + 1)
    } else if v < 2 * n {
        format!("b_{}", v - n + 1)
    } else {
        format!("c_{}", v - 2 * n + 1)
    }
}

pub fn build_constraint_tree(graph: &Graph, forest: &EliminationForest, p: usize) -> Result<ConstraintTree> {
    check_forest(graph, forest)?;
    let n = graph.n();
    let last_color = p.checked_sub(1).map(|k| 2 * n + k);
    let mut parent = Vec::with_capacity(2 * n + p);
    parent.extend((0..n).map(|v| forest.parent(v).or(last_color)));
    parent.extend((0..n).map(Some));
    parent.extend((0..p).map(|k| k.checked_sub(1).map(|k| 2 * n + k)));
    Ok(ConstraintTree {
        forest: EliminationForest::new(parent)?,
        n,
        p,
    })
}

/// `G(A^T)`: rows of the program are vertices, joined when they share a
/// variable with nonzero coefficients in both.
pub fn constraint_graph(model: &IpModel) -> Graph {
    let rows = model.rows();
    let mut by_var: Vec<Vec<usize>> = vec![Vec::new(); model.num_vars()];
    for (r, row) in rows.iter().enumerate() {
        for &(var, coef) in &row.terms {
            if coef != 0 {
                by_var[var].push(r);
            }
        }
    }
    let mut pairs = std::collections::BTreeSet::new();
    for list in by_var {
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                if a != b {
                    pairs.insert((a.min(b), a.max(b)));
                }
            }
        }
    }
    Graph::new(rows.len(), pairs).expect("row pairs are distinct and in range")
}
