//! Reductions from factor, matching and partition questions to degree
//! sequence optimization.
//!
//! The decision gadgets have zero-threshold semantics: the optimum is
//! exactly zero if and only if the encoded question has a positive answer.
//! The subdivision gadget instead encodes an optimization problem, read back
//! with [`SubdivisionInstance::extract`].

use crate::error::{Error, Result};
use crate::graph::{degree_sequence, EdgeColoring, EdgeSubset, Graph};
use crate::instance::Instance;
use crate::objective::{SeparableObjective, VertexFunction, WeightedInstance};

/// Admissible degree sets `B_i` for a general factor question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpec {
    graph: Graph,
    sets: Vec<Vec<usize>>,
}

impl FactorSpec {
    /// Each `B_i` must be a nonempty subset of `0..=d_i(H)`.
    pub fn new(graph: Graph, sets: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() != graph.n() {
            return Err(Error::LengthMismatch {
                what: "admissible degree sets",
                expected: graph.n(),
                actual: sets.len(),
            });
        }
        for (i, (b, d)) in sets.iter().zip(graph.degrees()).enumerate() {
            if b.is_empty() {
                return Err(Error::Invalid(format!("vertex {}: empty admissible set", i + 1)));
            }
            if let Some(z) = b.iter().find(|&&z| z > d) {
                return Err(Error::Invalid(format!(
                    "vertex {}: admissible degree {z} exceeds host degree {d}",
                    i + 1
                )));
            }
        }
        Ok(FactorSpec { graph, sets })
    }

    /// The same admissible set at every vertex, clipped to each domain.
    pub fn uniform(graph: Graph, set: &[usize]) -> Result<Self> {
        let sets = graph
            .degrees()
            .into_iter()
            .map(|d| set.iter().copied().filter(|&z| z <= d).collect())
            .collect();
        Self::new(graph, sets)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }
}

fn indicator(set: &[usize]) -> VertexFunction {
    VertexFunction::Indicator {
        set: set.iter().map(|&z| z as i64).collect(),
    }
}

/// `f_i = 0` on `B_i` and `-1` elsewhere, no edge count.
pub fn general_factor_instance(spec: &FactorSpec) -> Instance {
    let mut inst = Instance::new(spec.graph.clone());
    inst.vertex_functions = Some(spec.sets.iter().map(|b| indicator(b)).collect());
    inst
}

/// Interval bounds `l_i <= u_i` for an `(l,u)`-factor question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LuFactorSpec {
    lower: Vec<usize>,
    upper: Vec<usize>,
}

impl LuFactorSpec {
    pub fn new(lower: Vec<usize>, upper: Vec<usize>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::LengthMismatch {
                what: "upper bounds",
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        if let Some(i) = (0..lower.len()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::Invalid(format!(
                "vertex {}: lower bound {} exceeds upper bound {}",
                i + 1,
                lower[i],
                upper[i]
            )));
        }
        Ok(LuFactorSpec { lower, upper })
    }

    pub fn lower(&self) -> &[usize] {
        &self.lower
    }

    pub fn upper(&self) -> &[usize] {
        &self.upper
    }

    fn functions(&self, graph: &Graph) -> Result<Vec<VertexFunction>> {
        if self.lower.len() != graph.n() {
            return Err(Error::LengthMismatch {
                what: "interval bounds",
                expected: graph.n(),
                actual: self.lower.len(),
            });
        }
        let degrees = graph.degrees();
        if let Some(i) = (0..graph.n()).find(|&i| self.upper[i] > degrees[i]) {
            return Err(Error::Invalid(format!(
                "vertex {}: upper bound {} exceeds host degree {}",
                i + 1,
                self.upper[i],
                degrees[i]
            )));
        }
        Ok(self
            .lower
            .iter()
            .zip(&self.upper)
            .map(|(&l, &u)| VertexFunction::Interval {
                l: l as i64,
                u: u as i64,
            })
            .collect())
    }
}

/// Tables `z - l_i` below `l_i`, `0` on `[l_i, u_i]`, `u_i - z` above.
pub fn lu_factor_objective(spec: &LuFactorSpec, graph: &Graph) -> Result<SeparableObjective> {
    SeparableObjective::from_functions(graph, &spec.functions(graph)?)
}

pub fn lu_factor_instance(spec: &LuFactorSpec, graph: &Graph) -> Result<Instance> {
    let mut inst = Instance::new(graph.clone());
    inst.vertex_functions = Some(spec.functions(graph)?);
    Ok(inst)
}

/// A colored instance on `K_{r,r}` with `f_i(z) = -(z-1)^2` everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatchingInstance {
    pub instance: Instance,
    /// False when `sum m_k != r`; such an instance cannot reach zero.
    pub reachable: bool,
}

/// `colors[e]` is the 0-based color of the `e`-th canonical edge of
/// `K_{r,r}` (left side `0..r`, right side `r..2r`).
pub fn exact_matching_instance(r: usize, colors: Vec<usize>, counts: Vec<usize>) -> Result<ExactMatchingInstance> {
    if r == 0 {
        return Err(Error::Invalid("exact matching needs r >= 1".into()));
    }
    let graph = Graph::complete_bipartite(r, r);
    if colors.len() != graph.num_edges() {
        return Err(Error::Invalid(format!(
            "edge partition of K_{{{r},{r}}} must color {} edges, got {}",
            graph.num_edges(),
            colors.len()
        )));
    }
    let reachable = counts.iter().sum::<usize>() == r;
    let coloring = EdgeColoring::new(&graph, colors, counts)?;
    let mut instance = Instance::new(graph);
    instance.vertex_functions = Some(vec![VertexFunction::NegSquareShift { c: 1 }; 2 * r]);
    instance.coloring = Some(coloring);
    Ok(ExactMatchingInstance { instance, reachable })
}

/// `f_i(0) = f_i(3) = 0`, otherwise `-1`.
pub fn cubic_subgraph_instance(graph: &Graph) -> Instance {
    let spec = FactorSpec::uniform(graph.clone(), &[0, 3]).expect("0 is always admissible");
    general_factor_instance(&spec)
}

/// `-(z-1)^2` on the side `I` (`in_i[v]` true) and `z(z-3)` on `J`.
pub fn bipartite_concave_convex_instance(graph: &Graph, in_i: &[bool]) -> Result<Instance> {
    if in_i.len() != graph.n() {
        return Err(Error::LengthMismatch {
            what: "bipartition sides",
            expected: graph.n(),
            actual: in_i.len(),
        });
    }
    if let Some(&(a, b)) = graph.edges().iter().find(|&&(a, b)| in_i[a] == in_i[b]) {
        return Err(Error::Invalid(format!(
            "not bipartite with the given sides: edge {{{},{}}} stays on one side",
            a + 1,
            b + 1
        )));
    }
    let functions = graph
        .degrees()
        .into_iter()
        .zip(in_i)
        .map(|(d, &side)| {
            if side {
                VertexFunction::NegSquareShift { c: 1 }
            } else {
                VertexFunction::Table((0..=d as i64).map(|z| z * (z - 3)).collect())
            }
        })
        .collect();
    let mut inst = Instance::new(graph.clone());
    inst.vertex_functions = Some(functions);
    Ok(inst)
}

/// The subdivided graph `L` of a host `H` with penalty tables that encode
/// the prescribed all-squares problem on `H` with `m` edges.
///
/// Vertices of `L`: the `n` originals, then one subdivision vertex per edge
/// of `H` in canonical order, then the apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionInstance {
    pub instance: Instance,
    pub host: Graph,
    pub m: usize,
    pub penalty: i64,
}

impl SubdivisionInstance {
    /// Edges of `H` whose subdivision vertex has degree 3 in `subset`.
    pub fn extract(&self, subset: &EdgeSubset) -> Result<EdgeSubset> {
        let deg = degree_sequence(&self.instance.graph, subset)?;
        let n = self.host.n();
        let chosen = (0..self.host.num_edges()).filter(|&e| deg.0[n + e] == 3);
        EdgeSubset::from_indices(self.host.num_edges(), chosen)
    }
}

/// Penalty `a = 1 + n(n-1)^2`, larger than any value of `sum z_i^2`.
pub fn subdivision_penalty(n: usize) -> Result<i64> {
    let n = n as i64;
    let s = (n - 1).max(0);
    s.checked_mul(s)
        .and_then(|x| x.checked_mul(n))
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow("subdivision penalty"))
}

pub fn subdivision_hardness_instance(host: &Graph, m: usize) -> Result<SubdivisionInstance> {
    let n = host.n();
    let k = host.num_edges();
    if m > k {
        return Err(Error::EdgeCount { m, max: k });
    }
    let a = subdivision_penalty(n)?;
    let apex = n + k;
    let mut edges = Vec::with_capacity(3 * k);
    for (e, &(i, j)) in host.edges().iter().enumerate() {
        edges.push((i, n + e));
        edges.push((j, n + e));
        edges.push((n + e, apex));
    }
    let graph = Graph::new(n + k + 1, edges)?;
    let scaled = |v: i64| v.checked_mul(a).ok_or(Error::Overflow("subdivision tables"));
    let mut functions = vec![VertexFunction::Square; n];
    for _ in 0..k {
        let t = (0..=3i64).map(|z| scaled(z * (z - 3))).collect::<Result<_>>()?;
        functions.push(VertexFunction::Table(t));
    }
    let apex_table = (0..=k as i64)
        .map(|z| {
            let t = z - m as i64;
            scaled(-t * t)
        })
        .collect::<Result<_>>()?;
    functions.push(VertexFunction::Table(apex_table));
    let mut instance = Instance::new(graph);
    instance.vertex_functions = Some(functions);
    Ok(SubdivisionInstance {
        instance,
        host: host.clone(),
        m,
        penalty: a,
    })
}

/// `K_{2,q}` with both edges at column `j` weighted `a_j`, and
/// `f_{v1}(z) = -(2z - sum a)^2` at the first vertex, zero elsewhere.
/// Vertices: `v1 = 0`, `v2 = 1`, columns `2..2+q`.
pub fn partition_instance(values: &[i64]) -> Result<Instance> {
    if let Some(&a) = values.iter().find(|&&a| a < 1) {
        return Err(Error::Invalid(format!("partition values must be positive, got {a}")));
    }
    let q = values.len();
    let graph = Graph::complete_bipartite(2, q);
    let weights: Vec<i64> = graph.edges().iter().map(|&(_, c)| values[c - 2]).collect();
    let total = values
        .iter()
        .try_fold(0i64, |s, &a| s.checked_add(a))
        .ok_or(Error::Overflow("partition values"))?;
    let first = (0..=total)
        .map(|z| {
            let t = 2 * z - total;
            t.checked_mul(t).map(|s| -s).ok_or(Error::Overflow("partition table"))
        })
        .collect::<Result<_>>()?;
    let mut functions = vec![
        VertexFunction::Table(first),
        VertexFunction::Table(vec![0; total as usize + 1]),
    ];
    for &a in values {
        functions.push(VertexFunction::Table(vec![0; 2 * a as usize + 1]));
    }
    let mut inst = Instance::new(graph);
    inst.weights = Some(weights);
    inst.vertex_functions = Some(functions);
    inst.validate()?;
    Ok(inst)
}

pub fn partition_gadget(values: &[i64]) -> Result<WeightedInstance> {
    partition_instance(values)?.weighted_instance()
}

pub const WEIGHTED_EDGE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSolution {
    pub subset: EdgeSubset,
    pub value: i64,
}

/// Best subset for the weighted objective by Gray-code enumeration; the
/// first subset in enumeration order wins ties.
pub fn weighted_bruteforce(inst: &WeightedInstance) -> Result<WeightedSolution> {
    let graph = inst.graph();
    let k = graph.num_edges();
    if k > WEIGHTED_EDGE_CAP {
        return Err(Error::Limit {
            what: "brute-force edge count",
            actual: k,
            limit: WEIGHTED_EDGE_CAP,
            hint: "",
        });
    }
    let mut deg = vec![0i64; graph.n()];
    let mut value = inst.evaluate(&EdgeSubset::empty(k))?;
    let mut mask = 0u64;
    let mut best = (value, 0u64);
    for step in 1u64..(1u64 << k) {
        let e = step.trailing_zeros() as usize;
        let (a, b) = graph.edges()[e];
        let on = mask >> e & 1 == 0;
        mask ^= 1 << e;
        let w = if on { inst.weights()[e] } else { -inst.weights()[e] };
        for v in [a, b] {
            let old = inst.value(v, deg[v])?;
            deg[v] += w;
            let new = inst.value(v, deg[v])?;
            value = value
                .checked_sub(old)
                .and_then(|x| x.checked_add(new))
                .ok_or(Error::Overflow("weighted objective"))?;
        }
        if value > best.0 {
            best = (value, mask);
        }
    }
    Ok(WeightedSolution {
        subset: EdgeSubset::from_mask(k, best.1),
        value: best.0,
    })
}
