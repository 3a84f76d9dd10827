//! Seeded instance generators. The same seed and parameters always produce
//! the same instance.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gadgets::{exact_matching_instance, ExactMatchingInstance};
use crate::graph::{EdgeColoring, Graph};
use crate::instance::{Criteria, CriteriaKind, Instance};
use crate::objective::{AffineForm, VertexFunction};
use crate::treedepth::EliminationForest;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform graph with `n` vertices and `min(edges, n(n-1)/2)` edges.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, edges: usize) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let k = edges.min(pairs.len());
    let chosen = sample(rng, pairs.len(), k).into_iter().map(|i| pairs[i]);
    Graph::new(n, chosen).expect("distinct pairs from a simple graph")
}

/// An `r x n` matrix with entries in `lo..=hi`.
pub fn random_weights<R: Rng>(rng: &mut R, r: usize, n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..r)
        .map(|_| (0..n).map(|_| rng.random_range(lo..=hi)).collect())
        .collect()
}

/// A builtin convex function on `Z^r`: either a maximum of 1 to 3 affine
/// forms or a sum of 1 or 2 squared affine forms, with small coefficients.
pub fn random_convex<R: Rng>(rng: &mut R, r: usize) -> (CriteriaKind, Vec<AffineForm>) {
    let kind = if rng.random_bool(0.5) {
        CriteriaKind::MaxAffine
    } else {
        CriteriaKind::SumSquares
    };
    let count = match kind {
        CriteriaKind::MaxAffine => rng.random_range(1..=3),
        CriteriaKind::SumSquares => rng.random_range(1..=2),
    };
    (kind, random_forms(rng, r, count))
}

/// `count` affine forms on `Z^r` with coefficients in `[-2, 2]` and
/// constants in `[-3, 3]`.
pub fn random_forms<R: Rng>(rng: &mut R, r: usize, count: usize) -> Vec<AffineForm> {
    (0..count)
        .map(|_| {
            let coef = (0..r).map(|_| rng.random_range(-2..=2)).collect();
            AffineForm::new(coef, rng.random_range(-3..=3))
        })
        .collect()
}

/// Criteria with weights in `[-3, 3]` and a random builtin convex function.
pub fn random_criteria<R: Rng>(rng: &mut R, n: usize, r: usize) -> Criteria {
    let weights = random_weights(rng, r, n, -3, 3);
    let (kind, terms) = random_convex(rng, r);
    Criteria { weights, kind, terms }
}

/// Tables over each vertex domain with entries in `-range..=range`.
pub fn random_tables<R: Rng>(rng: &mut R, graph: &Graph, range: i64) -> Vec<VertexFunction> {
    graph
        .degrees()
        .into_iter()
        .map(|d| VertexFunction::Table((0..=d).map(|_| rng.random_range(-range..=range)).collect()))
        .collect()
}

/// Random colors in `0..p` and random counts `0..=|E_k|`.
pub fn random_coloring<R: Rng>(rng: &mut R, graph: &Graph, p: usize) -> Result<EdgeColoring> {
    if p == 0 {
        return Err(Error::Invalid("a coloring needs at least one color".into()));
    }
    let colors: Vec<usize> = (0..graph.num_edges()).map(|_| rng.random_range(0..p)).collect();
    let mut sizes = vec![0usize; p];
    for &c in &colors {
        sizes[c] += 1;
    }
    let counts = sizes.into_iter().map(|s| rng.random_range(0..=s)).collect();
    EdgeColoring::new(graph, colors, counts)
}

/// A random graph carrying criteria and separable tables, usable by both
/// solvers.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, edges: usize, r: usize) -> Instance {
    let graph = random_graph(rng, n, edges);
    let mut inst = Instance::new(graph);
    if r > 0 {
        inst.criteria = Some(random_criteria(rng, n, r));
    }
    inst.vertex_functions = Some(random_tables(rng, &inst.graph, 9));
    inst
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundedTdParams {
    pub n: usize,
    /// Maximum height of the elimination forest.
    pub height: usize,
    /// Number of colors; zero leaves the instance uncolored.
    pub colors: usize,
    /// Probability of each vertex-ancestor edge.
    pub density: f64,
    /// Caps the edge count by sampling among the generated edges.
    pub max_edges: Option<usize>,
    /// Table entries are drawn from `-table_range..=table_range`.
    pub table_range: i64,
}

impl BoundedTdParams {
    pub fn new(n: usize, height: usize) -> Self {
        BoundedTdParams {
            n,
            height,
            colors: 2,
            density: 0.5,
            max_edges: None,
            table_range: 9,
        }
    }
}

/// A random forest of height at most `height`, edges only between
/// ancestor-descendant pairs, random colors, counts and tables. The forest
/// ships with the instance as its height certificate.
pub fn random_bounded_td<R: Rng>(rng: &mut R, params: &BoundedTdParams) -> Result<Instance> {
    let n = params.n;
    if n > 0 && params.height == 0 {
        return Err(Error::Invalid("height must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&params.density) {
        return Err(Error::Invalid(format!("density {} outside [0, 1]", params.density)));
    }
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut parent = vec![None; n];
    let mut depth = vec![0usize; n];
    for k in 0..n {
        let open: Vec<usize> = (0..k).filter(|&u| depth[label[u]] < params.height).collect();
        let v = label[k];
        if open.is_empty() || rng.random_bool(0.1) {
            depth[v] = 1;
        } else {
            let u = label[open[rng.random_range(0..open.len())]];
            parent[v] = Some(u);
            depth[v] = depth[u] + 1;
        }
    }
    let forest = EliminationForest::new(parent)?;
    let mut edges = Vec::new();
    for v in 0..n {
        for a in forest.ancestors(v) {
            if rng.random_bool(params.density) {
                edges.push((a, v));
            }
        }
    }
    if let Some(cap) = params.max_edges {
        if edges.len() > cap {
            let keep = sample(rng, edges.len(), cap).into_vec();
            edges = keep.into_iter().map(|i| edges[i]).collect();
        }
    }
    let graph = Graph::new(n, edges)?;
    let mut inst = Instance::new(graph);
    if params.colors > 0 {
        inst.coloring = Some(random_coloring(rng, &inst.graph, params.colors)?);
    }
    inst.vertex_functions = Some(random_tables(rng, &inst.graph, params.table_range));
    inst.forest = Some(forest);
    Ok(inst)
}

/// Random `p`-coloring of `K_{r,r}` with counts read off a random perfect
/// matching, so an exact matching exists.
pub fn random_exact_matching<R: Rng>(rng: &mut R, r: usize, p: usize) -> Result<ExactMatchingInstance> {
    if p == 0 {
        return Err(Error::Invalid("a coloring needs at least one color".into()));
    }
    let graph = Graph::complete_bipartite(r, r);
    let colors: Vec<usize> = (0..graph.num_edges()).map(|_| rng.random_range(0..p)).collect();
    let mut partner: Vec<usize> = (0..r).collect();
    partner.shuffle(rng);
    let mut counts = vec![0usize; p];
    for (i, &j) in partner.iter().enumerate() {
        let e = graph.edge_index(i, r + j).expect("complete bipartite edge");
        counts[colors[e]] += 1;
    }
    exact_matching_instance(r, colors, counts)
}
