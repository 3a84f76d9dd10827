//! Exact maximization of `f(w_1 . d(G), ..., w_r . d(G))` for convex `f`.
//!
//! The criteria map sends the degree sequence polytope onto a polytope in
//! `Z^r` whose edge directions are images of the host polytope's edge
//! directions. A functional generic with respect to those images is
//! maximized at a single vertex, and every vertex is reached by the witness
//! of some cell of the arrangement they define. Querying the linear oracle
//! once per cell therefore visits every vertex of the projected polytope,
//! and a convex `f` attains its maximum at one of them.

mod chambers;

pub use chambers::{
    cell_count_bound, enumerate_chamber_witnesses, project_directions, ChamberWitness, ProjectedGenerators,
};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, Graph};
use crate::objective::MultiCriteriaObjective;
use crate::oracles::{
    directions_prescribed, directions_unprescribed, linopt_prescribed, linopt_unprescribed, DirectionKind,
};

/// Default cap on the number of criteria.
pub const DEFAULT_MAX_CRITERIA: usize = 4;

/// Witness batches smaller than this are evaluated on the calling thread.
const PARALLEL_THRESHOLD: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiCriteriaOptions {
    pub max_criteria: usize,
}

impl Default for MultiCriteriaOptions {
    fn default() -> Self {
        MultiCriteriaOptions {
            max_criteria: DEFAULT_MAX_CRITERIA,
        }
    }
}

/// The functionals to hand to the linear oracle: one lift
/// `u = sum_k c_k w_k` per chamber witness `c`.
#[derive(Debug, Clone)]
pub struct ChamberQueries {
    pub kind: DirectionKind,
    pub generators: ProjectedGenerators,
    pub witnesses: Vec<ChamberWitness>,
    pub lifts: Vec<Vec<i128>>,
}

impl ChamberQueries {
    pub fn new(
        graph: &Graph,
        weights: &[Vec<i64>],
        kind: DirectionKind,
        options: MultiCriteriaOptions,
    ) -> Result<Self> {
        if weights.len() > options.max_criteria {
            return Err(Error::Limit {
                what: "criteria count",
                actual: weights.len(),
                limit: options.max_criteria,
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
        let directions = match kind {
            DirectionKind::Prescribed => directions_prescribed(graph),
            DirectionKind::Unprescribed => directions_unprescribed(graph),
        };
        let generators = project_directions(&directions, weights)?;
        let witnesses = enumerate_chamber_witnesses(&generators)?;
        let lifts = witnesses
            .iter()
            .map(|c| lift(&c.point, weights, graph.n()))
            .collect::<Result<_>>()?;
        Ok(ChamberQueries {
            kind,
            generators,
            witnesses,
            lifts,
        })
    }

    pub fn len(&self) -> usize {
        self.lifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lifts.is_empty()
    }
}

fn lift(c: &[i128], weights: &[Vec<i64>], n: usize) -> Result<Vec<i128>> {
    let mut u = vec![0i128; n];
    for (ck, w) in c.iter().zip(weights) {
        for (ui, &wi) in u.iter_mut().zip(w) {
            *ui = ck
                .checked_mul(wi.into())
                .and_then(|t| ui.checked_add(t))
                .ok_or(Error::Overflow("witness lift"))?;
        }
    }
    Ok(u)
}

/// An optimal subgraph and where it lands in criteria space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiCriteriaSolution {
    pub subset: EdgeSubset,
    pub criteria_point: Vec<i64>,
    pub value: i64,
    pub queries: usize,
    pub witnesses: usize,
    /// Set when `f` is a caller oracle: without convexity the result is only
    /// the best over the queried candidates.
    pub lower_bound: bool,
}

/// One oracle answer: the subset and its criteria point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub subset: EdgeSubset,
    pub criteria_point: Vec<i64>,
}

/// Queries the oracle at every witness of `queries`. `m` is ignored for the
/// unprescribed kind.
pub fn candidates(graph: &Graph, m: usize, weights: &[Vec<i64>], queries: &ChamberQueries) -> Result<Vec<Candidate>> {
    if queries.kind == DirectionKind::Prescribed && m > graph.num_edges() {
        return Err(Error::EdgeCount {
            m,
            max: graph.num_edges(),
        });
    }
    let query = |u: &Vec<i128>| -> Result<Candidate> {
        let res = match queries.kind {
            DirectionKind::Prescribed => linopt_prescribed(graph, m, u)?,
            DirectionKind::Unprescribed => linopt_unprescribed(graph, u)?,
        };
        let criteria_point = weights.iter().map(|w| res.degrees.dot(w)).collect::<Result<_>>()?;
        Ok(Candidate {
            subset: res.subset,
            criteria_point,
        })
    };
    if queries.len() >= PARALLEL_THRESHOLD {
        queries.lifts.par_iter().map(query).collect()
    } else {
        queries.lifts.iter().map(query).collect()
    }
}

/// Evaluates `f` on every candidate and keeps the best, breaking ties by the
/// lexicographically smallest sorted edge-index list.
pub fn solve_with(
    graph: &Graph,
    m: usize,
    objective: &MultiCriteriaObjective,
    queries: &ChamberQueries,
) -> Result<MultiCriteriaSolution> {
    if objective.n() != graph.n() {
        return Err(Error::LengthMismatch {
            what: "criterion weight vector",
            expected: graph.n(),
            actual: objective.n(),
        });
    }
    let cands = candidates(graph, m, objective.weights(), queries)?;
    let f = objective.function();
    let values: Vec<i64> = if cands.len() >= PARALLEL_THRESHOLD {
        cands
            .par_iter()
            .map(|c| f.evaluate(&c.criteria_point))
            .collect::<Result<_>>()?
    } else {
        cands
            .iter()
            .map(|c| f.evaluate(&c.criteria_point))
            .collect::<Result<_>>()?
    };
    let mut best: Option<(i64, Vec<usize>, usize)> = None;
    for (idx, (cand, &value)) in cands.iter().zip(&values).enumerate() {
        let better = match &best {
            None => true,
            Some((bv, bidx, _)) => value > *bv || (value == *bv && cand.subset.indices() < *bidx),
        };
        if better {
            best = Some((value, cand.subset.indices(), idx));
        }
    }
    let (value, _, idx) = best.expect("at least one witness always exists");
    let winner = &cands[idx];
    Ok(MultiCriteriaSolution {
        subset: winner.subset.clone(),
        criteria_point: winner.criteria_point.clone(),
        value,
        queries: cands.len(),
        witnesses: queries.witnesses.len(),
        lower_bound: !f.is_builtin(),
    })
}

/// Best `m`-edge subgraph under a convex multi-criteria objective.
pub fn maximize_multicriteria(
    graph: &Graph,
    m: usize,
    objective: &MultiCriteriaObjective,
) -> Result<MultiCriteriaSolution> {
    maximize_multicriteria_with(graph, m, objective, MultiCriteriaOptions::default())
}

pub fn maximize_multicriteria_with(
    graph: &Graph,
    m: usize,
    objective: &MultiCriteriaObjective,
    options: MultiCriteriaOptions,
) -> Result<MultiCriteriaSolution> {
    if m > graph.num_edges() {
        return Err(Error::EdgeCount {
            m,
            max: graph.num_edges(),
        });
    }
    let queries = ChamberQueries::new(graph, objective.weights(), DirectionKind::Prescribed, options)?;
    solve_with(graph, m, objective, &queries)
}

/// Best subgraph of any size, using the unit edge vectors as directions and
/// the sign-check oracle.
pub fn maximize_multicriteria_unprescribed(
    graph: &Graph,
    objective: &MultiCriteriaObjective,
) -> Result<MultiCriteriaSolution> {
    maximize_multicriteria_unprescribed_with(graph, objective, MultiCriteriaOptions::default())
}

pub fn maximize_multicriteria_unprescribed_with(
    graph: &Graph,
    objective: &MultiCriteriaObjective,
    options: MultiCriteriaOptions,
) -> Result<MultiCriteriaSolution> {
    let queries = ChamberQueries::new(graph, objective.weights(), DirectionKind::Unprescribed, options)?;
    solve_with(graph, 0, objective, &queries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degree_sequence;
    use crate::objective::{AffineForm, ConvexFunction};

    fn square_r1(w: Vec<i64>) -> MultiCriteriaObjective {
        MultiCriteriaObjective::new(vec![w], ConvexFunction::SumSquares(vec![AffineForm::new(vec![1], 0)])).unwrap()
    }

    fn identity_r1(w: Vec<i64>) -> MultiCriteriaObjective {
        MultiCriteriaObjective::new(vec![w], ConvexFunction::MaxAffine(vec![AffineForm::new(vec![1], 0)])).unwrap()
    }

    #[test]
    fn star_center_squared() {
        let star = Graph::star(3);
        let sol = maximize_multicriteria(&star, 2, &square_r1(vec![1, 0, 0, 0])).unwrap();
        assert_eq!(sol.value, 4);
        assert_eq!(degree_sequence(&star, &sol.subset).unwrap().0[0], 2);
    }

    #[test]
    fn path_two_criteria() {
        let p3 = Graph::path(3);
        let obj = MultiCriteriaObjective::new(
            vec![vec![1, 0, 0], vec![0, 0, 1]],
            ConvexFunction::SumSquares(vec![AffineForm::new(vec![1, -1], 0)]),
        )
        .unwrap();
        let sol = maximize_multicriteria(&p3, 1, &obj).unwrap();
        assert_eq!(sol.value, 1);
        assert_eq!(sol.subset.count(), 1);
        // tie between both edges broken by the smaller index
        assert_eq!(sol.subset.indices(), vec![0]);
    }

    #[test]
    fn zero_edges() {
        let obj = MultiCriteriaObjective::new(
            vec![vec![1, 2, 3]],
            ConvexFunction::MaxAffine(vec![AffineForm::new(vec![2], 7)]),
        )
        .unwrap();
        let sol = maximize_multicriteria(&Graph::complete(3), 0, &obj).unwrap();
        assert_eq!(sol.value, 7);
        assert_eq!(sol.subset.count(), 0);
    }

    #[test]
    fn edge_count_out_of_range() {
        let err = maximize_multicriteria(&Graph::path(3), 3, &identity_r1(vec![1, 1, 1])).unwrap_err();
        assert_eq!(err, Error::EdgeCount { m: 3, max: 2 });
    }

    #[test]
    fn unprescribed_examples() {
        let k3 = Graph::complete(3);
        let sol = maximize_multicriteria_unprescribed(&k3, &identity_r1(vec![1, 1, 1])).unwrap();
        assert_eq!((sol.value, sol.subset.count()), (6, 3));

        let constant = MultiCriteriaObjective::new(
            vec![vec![1, 1, 1]],
            ConvexFunction::MaxAffine(vec![AffineForm::new(vec![0], 0)]),
        )
        .unwrap();
        assert_eq!(maximize_multicriteria_unprescribed(&k3, &constant).unwrap().value, 0);

        let pm = Graph::matching(3);
        let sol = maximize_multicriteria_unprescribed(&pm, &identity_r1(vec![1, 1, 1, -5, -5, -5])).unwrap();
        assert_eq!(sol.value, 0);
        assert_eq!(sol.subset.count(), 0);
    }

    #[test]
    fn criteria_cap() {
        let obj = MultiCriteriaObjective::new(
            vec![vec![1, 0]; 5],
            ConvexFunction::MaxAffine(vec![AffineForm::new(vec![0; 5], 0)]),
        )
        .unwrap();
        let err = maximize_multicriteria(&Graph::path(2), 1, &obj).unwrap_err();
        assert!(matches!(err, Error::Limit { .. }));
        let opts = MultiCriteriaOptions { max_criteria: 5 };
        assert!(maximize_multicriteria_with(&Graph::path(2), 1, &obj, opts).is_ok());
    }

    #[test]
    fn oracle_function_flags_lower_bound() {
        let obj = MultiCriteriaObjective::new(vec![vec![1, 1, 1]], ConvexFunction::oracle(|y| Ok(y[0].abs()))).unwrap();
        let sol = maximize_multicriteria(&Graph::complete(3), 2, &obj).unwrap();
        assert_eq!(sol.value, 4);
        assert!(sol.lower_bound);
        let failing =
            MultiCriteriaObjective::new(vec![vec![1, 1, 1]], ConvexFunction::oracle(|_| Err("boom".into()))).unwrap();
        assert!(matches!(
            maximize_multicriteria(&Graph::complete(3), 2, &failing),
            Err(Error::Oracle(_))
        ));
    }

    #[test]
    fn query_count_matches_witnesses() {
        let g = Graph::complete(4);
        let obj = MultiCriteriaObjective::new(
            vec![vec![1, -2, 0, 3], vec![0, 1, 1, -1]],
            ConvexFunction::SumSquares(vec![AffineForm::new(vec![1, 1], -2)]),
        )
        .unwrap();
        let sol = maximize_multicriteria(&g, 3, &obj).unwrap();
        assert_eq!(sol.queries, sol.witnesses);
        assert!(!sol.lower_bound);
    }
}
