//! Objective functions: separable vertex tables and convex multi-criteria
//! objectives.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, EdgeSubset, Graph};

/// A univariate vertex function, either a named builtin or an explicit table
/// over `0..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexFunction {
    /// `z^2`
    Square,
    /// `-(z - c)^2`
    NegSquareShift {
        c: i64,
    },
    /// Penalty for leaving `[l, u]`: `z - l` below, `0` inside, `u - z` above.
    Interval {
        l: i64,
        u: i64,
    },
    /// `0` on the admissible set, `-1` elsewhere.
    Indicator {
        set: Vec<i64>,
    },
    Table(Vec<i64>),
}

impl VertexFunction {
    /// Value at `z`. Tables are only defined on their own index range.
    pub fn value(&self, z: i64) -> Option<i64> {
        match self {
            VertexFunction::Square => z.checked_mul(z),
            VertexFunction::NegSquareShift { c } => {
                let t = z.checked_sub(*c)?;
                t.checked_mul(t).map(|s| -s)
            }
            VertexFunction::Interval { l, u } => Some(if z <= *l {
                z - l
            } else if z <= *u {
                0
            } else {
                u - z
            }),
            VertexFunction::Indicator { set } => Some(if set.contains(&z) { 0 } else { -1 }),
            VertexFunction::Table(t) => usize::try_from(z).ok().and_then(|i| t.get(i).copied()),
        }
    }

    /// Tabulates the function over `0..=max`. A table of any other length
    /// is rejected rather than truncated or extended.
    pub fn tabulate(&self, max: usize) -> Result<Vec<i64>> {
        if let VertexFunction::Table(t) = self {
            if t.len() != max + 1 {
                return Err(Error::LengthMismatch {
                    what: "vertex function table",
                    expected: max + 1,
                    actual: t.len(),
                });
            }
            return Ok(t.clone());
        }
        (0..=max as i64)
            .map(|z| self.value(z).ok_or(Error::Overflow("vertex function")))
            .collect()
    }
}

/// `f(x) = sum_i f_i(x_i)` with each `f_i` tabulated over its domain
/// `0..=max_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeparableObjective {
    tables: Vec<Vec<i64>>,
}

impl SeparableObjective {
    /// Tables whose domains are the host degrees `0..=d_i(H)`.
    pub fn for_graph(graph: &Graph, tables: Vec<Vec<i64>>) -> Result<Self> {
        Self::with_domains(&graph.degrees(), tables)
    }

    pub fn with_domains(domain_max: &[usize], tables: Vec<Vec<i64>>) -> Result<Self> {
        if tables.len() != domain_max.len() {
            return Err(Error::LengthMismatch {
                what: "vertex function count",
                expected: domain_max.len(),
                actual: tables.len(),
            });
        }
        for (t, &max) in tables.iter().zip(domain_max) {
            if t.len() != max + 1 {
                return Err(Error::LengthMismatch {
                    what: "vertex function table",
                    expected: max + 1,
                    actual: t.len(),
                });
            }
        }
        Ok(SeparableObjective { tables })
    }

    pub fn from_functions(graph: &Graph, functions: &[VertexFunction]) -> Result<Self> {
        let degrees = graph.degrees();
        if functions.len() != degrees.len() {
            return Err(Error::LengthMismatch {
                what: "vertex function count",
                expected: degrees.len(),
                actual: functions.len(),
            });
        }
        let tables = functions
            .iter()
            .zip(&degrees)
            .map(|(f, &d)| f.tabulate(d))
            .collect::<Result<_>>()?;
        Ok(SeparableObjective { tables })
    }

    /// The same function at every vertex, tabulated per vertex domain.
    pub fn uniform(graph: &Graph, function: &VertexFunction) -> Result<Self> {
        Self::from_functions(graph, &vec![function.clone(); graph.n()])
    }

    pub fn zero(graph: &Graph) -> Self {
        SeparableObjective {
            tables: graph.degrees().into_iter().map(|d| vec![0; d + 1]).collect(),
        }
    }

    pub fn tables(&self) -> &[Vec<i64>] {
        &self.tables
    }

    pub fn table(&self, vertex: usize) -> &[i64] {
        &self.tables[vertex]
    }

    pub fn n(&self) -> usize {
        self.tables.len()
    }

    /// `f_i(z)`, failing outside the domain.
    pub fn value(&self, vertex: usize, z: usize) -> Result<i64> {
        self.tables[vertex].get(z).copied().ok_or(Error::Domain {
            vertex: vertex + 1,
            degree: z,
            max: self.tables[vertex].len() - 1,
        })
    }

    /// Exact `sum_i f_i(d_i)`.
    pub fn evaluate(&self, degrees: &DegreeSequence) -> Result<i64> {
        let d = degrees.as_slice();
        if d.len() != self.tables.len() {
            return Err(Error::LengthMismatch {
                what: "degree sequence",
                expected: self.tables.len(),
                actual: d.len(),
            });
        }
        d.iter().enumerate().try_fold(0i64, |acc, (i, &z)| {
            acc.checked_add(self.value(i, z)?)
                .ok_or(Error::Overflow("separable objective"))
        })
    }
}

/// `alpha . y + beta`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub coef: Vec<i64>,
    pub constant: i64,
}

impl AffineForm {
    pub fn new(coef: Vec<i64>, constant: i64) -> Self {
        AffineForm { coef, constant }
    }

    fn eval(&self, y: &[i64]) -> Option<i64> {
        self.coef
            .iter()
            .zip(y)
            .try_fold(self.constant, |acc, (&a, &b)| acc.checked_add(a.checked_mul(b)?))
    }
}

pub type OracleFn = dyn Fn(&[i64]) -> std::result::Result<i64, String> + Send + Sync;

/// The convex balancing function `f: Z^r -> Z`.
#[derive(Clone)]
pub enum ConvexFunction {
    /// `max_t (alpha_t . y + beta_t)`
    MaxAffine(Vec<AffineForm>),
    /// `sum_t (alpha_t . y + beta_t)^2`
    SumSquares(Vec<AffineForm>),
    /// Caller-supplied oracle. Convexity is assumed, not checked.
    Oracle(Arc<OracleFn>),
}

impl fmt::Debug for ConvexFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvexFunction::MaxAffine(t) => f.debug_tuple("MaxAffine").field(t).finish(),
            ConvexFunction::SumSquares(t) => f.debug_tuple("SumSquares").field(t).finish(),
            ConvexFunction::Oracle(_) => f.write_str("Oracle(..)"),
        }
    }
}

impl ConvexFunction {
    pub fn oracle(f: impl Fn(&[i64]) -> std::result::Result<i64, String> + Send + Sync + 'static) -> Self {
        ConvexFunction::Oracle(Arc::new(f))
    }

    /// Builtin families are convex by construction.
    pub fn is_builtin(&self) -> bool {
        !matches!(self, ConvexFunction::Oracle(_))
    }

    pub fn evaluate(&self, y: &[i64]) -> Result<i64> {
        match self {
            ConvexFunction::MaxAffine(terms) => terms
                .iter()
                .map(|t| t.eval(y).ok_or(Error::Overflow("max-affine objective")))
                .try_fold(i64::MIN, |acc, v| Ok(acc.max(v?))),
            ConvexFunction::SumSquares(terms) => terms.iter().try_fold(0i64, |acc, t| {
                t.eval(y)
                    .and_then(|v| v.checked_mul(v))
                    .and_then(|s| acc.checked_add(s))
                    .ok_or(Error::Overflow("sum-of-squares objective"))
            }),
            ConvexFunction::Oracle(f) => f(y).map_err(Error::Oracle),
        }
    }

    fn check_arity(&self, r: usize) -> Result<()> {
        let terms = match self {
            ConvexFunction::MaxAffine(t) | ConvexFunction::SumSquares(t) => t,
            ConvexFunction::Oracle(_) => return Ok(()),
        };
        if matches!(self, ConvexFunction::MaxAffine(_)) && terms.is_empty() {
            return Err(Error::Invalid("max-affine function needs at least one term".into()));
        }
        for t in terms {
            if t.coef.len() != r {
                return Err(Error::LengthMismatch {
                    what: "affine form coefficients",
                    expected: r,
                    actual: t.coef.len(),
                });
            }
        }
        Ok(())
    }
}

/// Weight vectors `w_1..w_r` balanced by a convex `f`.
#[derive(Debug, Clone)]
pub struct MultiCriteriaObjective {
    weights: Vec<Vec<i64>>,
    function: ConvexFunction,
}

impl MultiCriteriaObjective {
    pub fn new(weights: Vec<Vec<i64>>, function: ConvexFunction) -> Result<Self> {
        let r = weights.len();
        if r == 0 {
            return Err(Error::Invalid("at least one criterion is required".into()));
        }
        let n = weights[0].len();
        if let Some(w) = weights.iter().find(|w| w.len() != n) {
            return Err(Error::LengthMismatch {
                what: "criterion weight vector",
                expected: n,
                actual: w.len(),
            });
        }
        function.check_arity(r)?;
        Ok(MultiCriteriaObjective { weights, function })
    }

    pub fn r(&self) -> usize {
        self.weights.len()
    }

    pub fn n(&self) -> usize {
        self.weights[0].len()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn function(&self) -> &ConvexFunction {
        &self.function
    }

    /// `(w_1 . d, ..., w_r . d)`
    pub fn criteria_point(&self, degrees: &DegreeSequence) -> Result<Vec<i64>> {
        self.weights.iter().map(|w| degrees.dot(w)).collect()
    }

    pub fn evaluate(&self, degrees: &DegreeSequence) -> Result<i64> {
        self.function.evaluate(&self.criteria_point(degrees)?)
    }
}

/// A host with integer edge weights; vertex `i` is scored on its weighted
/// degree `sum { w(e) : e in F, i in e }`. The table of vertex `i` covers
/// every achievable sum `lo_i..=hi_i`, where `lo_i` adds the negative
/// incident weights and `hi_i` the positive ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedInstance {
    graph: Graph,
    weights: Vec<i64>,
    ranges: Vec<(i64, i64)>,
    tables: Vec<Vec<i64>>,
}

impl WeightedInstance {
    pub fn new(graph: Graph, weights: Vec<i64>, tables: Vec<Vec<i64>>) -> Result<Self> {
        let ranges = weighted_ranges(&graph, &weights)?;
        if tables.len() != graph.n() {
            return Err(Error::LengthMismatch {
                what: "vertex function count",
                expected: graph.n(),
                actual: tables.len(),
            });
        }
        for (t, &(lo, hi)) in tables.iter().zip(&ranges) {
            let want = (hi - lo) as usize + 1;
            if t.len() != want {
                return Err(Error::LengthMismatch {
                    what: "weighted vertex function table",
                    expected: want,
                    actual: t.len(),
                });
            }
        }
        Ok(WeightedInstance {
            graph,
            weights,
            ranges,
            tables,
        })
    }

    /// Tabulates each function over its vertex's weighted-degree range.
    pub fn from_functions(graph: Graph, weights: Vec<i64>, functions: &[VertexFunction]) -> Result<Self> {
        let ranges = weighted_ranges(&graph, &weights)?;
        if functions.len() != graph.n() {
            return Err(Error::LengthMismatch {
                what: "vertex function count",
                expected: graph.n(),
                actual: functions.len(),
            });
        }
        let tables = functions
            .iter()
            .zip(&ranges)
            .map(|(f, &(lo, hi))| match f {
                VertexFunction::Table(t) => Ok(t.clone()),
                _ => (lo..=hi)
                    .map(|z| f.value(z).ok_or(Error::Overflow("vertex function")))
                    .collect(),
            })
            .collect::<Result<_>>()?;
        Self::new(graph, weights, tables)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Inclusive weighted-degree range per vertex.
    pub fn ranges(&self) -> &[(i64, i64)] {
        &self.ranges
    }

    pub fn tables(&self) -> &[Vec<i64>] {
        &self.tables
    }

    /// `f_i(z)` for a weighted degree `z`, failing outside the range.
    pub fn value(&self, vertex: usize, z: i64) -> Result<i64> {
        let (lo, hi) = self.ranges[vertex];
        if z < lo || z > hi {
            return Err(Error::Invalid(format!(
                "weighted degree {z} of vertex {} outside {lo}..={hi}",
                vertex + 1
            )));
        }
        Ok(self.tables[vertex][(z - lo) as usize])
    }

    pub fn weighted_degrees(&self, subset: &EdgeSubset) -> Result<Vec<i64>> {
        if subset.len() != self.graph.num_edges() {
            return Err(Error::LengthMismatch {
                what: "edge subset",
                expected: self.graph.num_edges(),
                actual: subset.len(),
            });
        }
        let mut deg = vec![0i64; self.graph.n()];
        for e in subset.indices() {
            let (a, b) = self.graph.edges()[e];
            deg[a] += self.weights[e];
            deg[b] += self.weights[e];
        }
        Ok(deg)
    }

    /// `sum_i f_i(weighted degree of i)`.
    pub fn evaluate(&self, subset: &EdgeSubset) -> Result<i64> {
        self.weighted_degrees(subset)?
            .into_iter()
            .enumerate()
            .try_fold(0i64, |acc, (i, z)| {
                acc.checked_add(self.value(i, z)?)
                    .ok_or(Error::Overflow("weighted objective"))
            })
    }
}

/// Inclusive achievable weighted-degree range per vertex.
pub fn weighted_ranges(graph: &Graph, weights: &[i64]) -> Result<Vec<(i64, i64)>> {
    if weights.len() != graph.num_edges() {
        return Err(Error::LengthMismatch {
            what: "edge weights",
            expected: graph.num_edges(),
            actual: weights.len(),
        });
    }
    let mut ranges = vec![(0i64, 0i64); graph.n()];
    for (&(a, b), &w) in graph.edges().iter().zip(weights) {
        for v in [a, b] {
            let r = &mut ranges[v];
            let side = if w < 0 { &mut r.0 } else { &mut r.1 };
            *side = side.checked_add(w).ok_or(Error::Overflow("edge weights"))?;
        }
    }
    let widest = ranges
        .iter()
        .map(|&(lo, hi)| hi as i128 - lo as i128)
        .max()
        .unwrap_or(0);
    if widest > 1 << 24 {
        return Err(Error::Limit {
            what: "weighted degree range",
            actual: usize::try_from(widest).unwrap_or(usize::MAX),
            limit: 1 << 24,
            hint: "; use smaller edge weights",
        });
    }
    Ok(ranges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_tables_evaluate_to_zero() {
        let g = Graph::complete(4);
        let obj = SeparableObjective::zero(&g);
        assert_eq!(obj.evaluate(&DegreeSequence(vec![3, 1, 0, 2])).unwrap(), 0);
    }

    #[test]
    fn squares_on_triangle() {
        let g = Graph::complete(3);
        let obj = SeparableObjective::uniform(&g, &VertexFunction::Square).unwrap();
        assert_eq!(obj.evaluate(&DegreeSequence(vec![2, 2, 2])).unwrap(), 12);
    }

    #[test]
    fn exact_matching_tables_vanish_on_perfect_matchings() {
        let g = Graph::complete_bipartite(3, 3);
        let obj = SeparableObjective::uniform(&g, &VertexFunction::NegSquareShift { c: 1 }).unwrap();
        assert_eq!(obj.evaluate(&DegreeSequence(vec![1; 6])).unwrap(), 0);
        assert_eq!(obj.evaluate(&DegreeSequence(vec![0, 1, 1, 1, 1, 2])).unwrap(), -2);
    }

    #[test]
    fn degree_outside_domain_is_rejected() {
        let g = Graph::path(3);
        let obj = SeparableObjective::zero(&g);
        let err = obj.evaluate(&DegreeSequence(vec![2, 0, 0])).unwrap_err();
        assert!(matches!(
            err,
            Error::Domain {
                vertex: 1,
                degree: 2,
                max: 1
            }
        ));
    }

    #[test]
    fn tables_of_wrong_length_are_rejected() {
        let g = Graph::path(3);
        assert!(SeparableObjective::for_graph(&g, vec![vec![0, 0], vec![0, 0], vec![0, 0]]).is_err());
        assert!(VertexFunction::Table(vec![1, 2, 3, 4]).tabulate(2).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let obj = SeparableObjective::with_domains(&[0, 0], vec![vec![i64::MAX], vec![1]]).unwrap();
        assert_eq!(
            obj.evaluate(&DegreeSequence(vec![0, 0])).unwrap_err(),
            Error::Overflow("separable objective")
        );
    }

    #[test]
    fn interval_function_shape() {
        let f = VertexFunction::Interval { l: 1, u: 2 };
        assert_eq!(f.tabulate(4).unwrap(), vec![-1, 0, 0, -1, -2]);
    }

    #[test]
    fn convex_builtins() {
        let f = ConvexFunction::MaxAffine(vec![AffineForm::new(vec![1, -1], 0), AffineForm::new(vec![-1, 1], 0)]);
        assert_eq!(f.evaluate(&[3, 5]).unwrap(), 2);
        let g = ConvexFunction::SumSquares(vec![AffineForm::new(vec![1, -1], 0)]);
        assert_eq!(g.evaluate(&[1, 0]).unwrap(), 1);
        assert!(MultiCriteriaObjective::new(vec![vec![1, 0]], g).is_err());
    }
}
