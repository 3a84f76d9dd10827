//! Colored separable degree optimization:
//! maximize `sum_i f_i(d_i(G))` subject to `|F ∩ E_k| = m_k` for each color.

mod brute;
mod dp;
mod ip;

pub use brute::{
    solve_colored_bruteforce, solve_colored_bruteforce_with_cap, solve_ip_bruteforce, solve_ip_bruteforce_with_cap,
    IpSolution, BRUTE_FORCE_EDGE_CAP, IP_VARIABLE_CAP,
};
pub use dp::solve_colored_dp;
pub use ip::{
    build_colored_ip, ip_assignment_to_subgraph, serialize_ip, subgraph_to_ip_assignment, IpModel, IpRow, IpVar,
};

use crate::error::{Error, Result};
use crate::graph::{EdgeColoring, EdgeSubset, Graph};
use crate::objective::SeparableObjective;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredSolution {
    pub feasible: bool,
    pub subset: Option<EdgeSubset>,
    pub value: Option<i64>,
    pub color_counts: Vec<usize>,
}

impl ColoredSolution {
    fn found(coloring: Option<&EdgeColoring>, subset: EdgeSubset, value: i64) -> Self {
        let color_counts = coloring.map_or(Vec::new(), |c| c.usage(&subset));
        ColoredSolution {
            feasible: true,
            subset: Some(subset),
            value: Some(value),
            color_counts,
        }
    }

    fn infeasible(p: usize) -> Self {
        ColoredSolution {
            feasible: false,
            subset: None,
            value: None,
            color_counts: vec![0; p],
        }
    }
}

fn check_inputs(graph: &Graph, coloring: Option<&EdgeColoring>, objective: &SeparableObjective) -> Result<()> {
    if objective.n() != graph.n() {
        return Err(Error::LengthMismatch {
            what: "vertex function count",
            expected: graph.n(),
            actual: objective.n(),
        });
    }
    for (i, d) in graph.degrees().into_iter().enumerate() {
        if objective.table(i).len() != d + 1 {
            return Err(Error::LengthMismatch {
                what: "vertex function table",
                expected: d + 1,
                actual: objective.table(i).len(),
            });
        }
    }
    if let Some(c) = coloring {
        if c.colors().len() != graph.num_edges() {
            return Err(Error::LengthMismatch {
                what: "edge colors",
                expected: graph.num_edges(),
                actual: c.colors().len(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degree_sequence;
    use crate::objective::VertexFunction;
    use crate::treedepth::{heuristic_forest, treedepth_exact, EliminationForest};

    fn k22_exact_matching(m: Vec<usize>) -> (Graph, EdgeColoring, SeparableObjective) {
        // left {1,2}, right {1',2'} = vertices 3,4
        let g = Graph::complete_bipartite(2, 2);
        let colors = g
            .edges()
            .iter()
            .map(|&(a, b)| if (a, b) == (0, 2) || (a, b) == (1, 3) { 0 } else { 1 })
            .collect();
        let col = EdgeColoring::new(&g, colors, m).unwrap();
        let obj = SeparableObjective::uniform(&g, &VertexFunction::NegSquareShift { c: 1 }).unwrap();
        (g, col, obj)
    }

    fn both(g: &Graph, col: Option<&EdgeColoring>, obj: &SeparableObjective) -> (ColoredSolution, ColoredSolution) {
        let forest = treedepth_exact(g).unwrap().1;
        let dp = solve_colored_dp(g, &forest, col, obj).unwrap();
        let bf = solve_colored_bruteforce(g, col, obj).unwrap();
        for sol in [&dp, &bf] {
            if let Some(f) = &sol.subset {
                let d = degree_sequence(g, f).unwrap();
                assert_eq!(obj.evaluate(&d).unwrap(), sol.value.unwrap());
                if let Some(c) = col {
                    assert!(c.is_satisfied_by(f));
                }
            }
        }
        (dp, bf)
    }

    #[test]
    fn star_center_square_two_edges() {
        let g = Graph::star(3);
        let col = EdgeColoring::uniform(&g, 2).unwrap();
        let mut tables = vec![vec![0, 1, 4, 9]];
        tables.extend(std::iter::repeat_n(vec![0, 0], 3));
        let obj = SeparableObjective::for_graph(&g, tables).unwrap();
        let (dp, bf) = both(&g, Some(&col), &obj);
        assert_eq!(dp.value, Some(4));
        assert_eq!(bf.value, Some(4));
    }

    #[test]
    fn cubic_tables_on_k4() {
        let g = Graph::complete(4);
        let obj = SeparableObjective::uniform(&g, &VertexFunction::Indicator { set: vec![0, 3] }).unwrap();
        let (dp, bf) = both(&g, None, &obj);
        assert_eq!(dp.value, Some(0));
        assert_eq!(bf.value, Some(0));
    }

    #[test]
    fn k22_exact_matching_counts() {
        let (g, col, obj) = k22_exact_matching(vec![1, 1]);
        let (dp, bf) = both(&g, Some(&col), &obj);
        assert_eq!(dp.value, Some(-2));
        assert_eq!(bf.value, Some(-2));
        let (g, col, obj) = k22_exact_matching(vec![2, 0]);
        let (dp, bf) = both(&g, Some(&col), &obj);
        assert_eq!(dp.value, Some(0));
        assert_eq!(bf.value, Some(0));
        assert_eq!(dp.color_counts, vec![2, 0]);
    }

    #[test]
    fn dp_rejects_invalid_forest() {
        let g = Graph::complete(3);
        let bad = EliminationForest::from_parent_labels(&[0, 1, 1]).unwrap();
        let err = solve_colored_dp(&g, &bad, None, &SeparableObjective::zero(&g)).unwrap_err();
        assert_eq!(err, Error::InvalidForest(2, 3));
    }

    #[test]
    fn infeasible_program() {
        let g = Graph::path(3);
        let col = EdgeColoring::uniform(&g, 1).unwrap();
        let mut model = build_colored_ip(&g, Some(&col), &SeparableObjective::zero(&g)).unwrap();
        let c1 = model.rows().len() - 1;
        model.set_rhs(c1, 3);
        let sol = solve_ip_bruteforce(&model).unwrap();
        assert_eq!(sol.value, None);
    }

    #[test]
    fn program_optimum_of_single_edge() {
        let g = Graph::path(2);
        let col = EdgeColoring::uniform(&g, 1).unwrap();
        let obj = SeparableObjective::for_graph(&g, vec![vec![5, 3], vec![1, -7]]).unwrap();
        let model = build_colored_ip(&g, Some(&col), &obj).unwrap();
        assert_eq!(solve_ip_bruteforce(&model).unwrap().value, Some(3 - 7));
    }

    #[test]
    fn program_and_subgraph_optima_agree_on_triangle() {
        let g = Graph::complete(3);
        let obj = SeparableObjective::for_graph(&g, vec![vec![0, 3, -1], vec![2, 0, 5], vec![-4, 1, 1]]).unwrap();
        for m in 0..=3 {
            let col = EdgeColoring::uniform(&g, m).unwrap();
            let model = build_colored_ip(&g, Some(&col), &obj).unwrap();
            let ip = solve_ip_bruteforce(&model).unwrap();
            let bf = solve_colored_bruteforce(&g, Some(&col), &obj).unwrap();
            assert_eq!(ip.value, bf.value);
            let (f, v) = ip_assignment_to_subgraph(&model, ip.assignment.as_ref().unwrap()).unwrap();
            assert_eq!(obj.evaluate(&degree_sequence(&g, &f).unwrap()).unwrap(), v);
        }
    }

    #[test]
    fn brute_force_cap() {
        let g = Graph::complete(7);
        let err = solve_colored_bruteforce(&g, None, &SeparableObjective::zero(&g)).unwrap_err();
        assert!(matches!(err, Error::Limit { .. }));
    }

    #[test]
    fn dp_matches_brute_force_on_random_bounded_instances() {
        use crate::random::{random_bounded_td, seeded, BoundedTdParams};
        for seed in 0..120u64 {
            let mut params = BoundedTdParams::new(2 + seed as usize % 11, 1 + seed as usize % 4);
            params.colors = seed as usize % 4;
            params.max_edges = Some(14);
            let inst = random_bounded_td(&mut seeded(seed), &params).unwrap();
            let obj = inst.separable_objective().unwrap();
            let forest = inst.forest.as_ref().unwrap();
            let col = inst.coloring.as_ref();
            let dp = solve_colored_dp(&inst.graph, forest, col, &obj).unwrap();
            let bf = solve_colored_bruteforce(&inst.graph, col, &obj).unwrap();
            assert_eq!((dp.feasible, dp.value), (bf.feasible, bf.value), "seed {seed}");
            if let Some(f) = &dp.subset {
                let d = degree_sequence(&inst.graph, f).unwrap();
                assert_eq!(obj.evaluate(&d).unwrap(), dp.value.unwrap());
                assert!(col.is_none_or(|c| c.is_satisfied_by(f)));
            }
        }
    }

    #[test]
    fn heuristic_forest_also_works() {
        let g = Graph::cycle(7).unwrap();
        let obj = SeparableObjective::uniform(&g, &VertexFunction::Square).unwrap();
        let col = EdgeColoring::new(&g, vec![0, 1, 0, 1, 0, 1, 2], vec![2, 1, 1]).unwrap();
        let dp = solve_colored_dp(&g, &heuristic_forest(&g), Some(&col), &obj).unwrap();
        let bf = solve_colored_bruteforce(&g, Some(&col), &obj).unwrap();
        assert_eq!(dp.value, bf.value);
    }
}
