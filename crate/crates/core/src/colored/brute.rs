//! Exhaustive oracles for the colored problem and its integer program.

use crate::error::{Error, Result};
use crate::graph::{EdgeColoring, EdgeSubset, Graph};
use crate::objective::SeparableObjective;

use super::ip::IpModel;
use super::ColoredSolution;

pub const BRUTE_FORCE_EDGE_CAP: usize = 20;
pub const IP_VARIABLE_CAP: usize = 24;

/// Enumerates all `2^|E|` subsets in Gray-code order, keeping degrees,
/// color counts and the objective up to date one edge flip at a time.
pub fn solve_colored_bruteforce(
    graph: &Graph,
    coloring: Option<&EdgeColoring>,
    objective: &SeparableObjective,
) -> Result<ColoredSolution> {
    solve_colored_bruteforce_with_cap(graph, coloring, objective, BRUTE_FORCE_EDGE_CAP)
}

pub fn solve_colored_bruteforce_with_cap(
    graph: &Graph,
    coloring: Option<&EdgeColoring>,
    objective: &SeparableObjective,
    cap: usize,
) -> Result<ColoredSolution> {
    let k = graph.num_edges();
    if k > cap.min(40) {
        return Err(Error::Limit {
            what: "brute-force edge count",
            actual: k,
            limit: cap.min(40),
            hint: "",
        });
    }
    super::check_inputs(graph, coloring, objective)?;
    let p = coloring.map_or(0, |c| c.num_colors());
    let target: Vec<i64> = coloring.map_or(Vec::new(), |c| c.counts().iter().map(|&m| m as i64).collect());
    let mut deg = vec![0usize; graph.n()];
    let mut used = vec![0i64; p];
    let mut value = (0..graph.n()).try_fold(0i64, |acc, i| {
        acc.checked_add(objective.value(i, 0)?)
            .ok_or(Error::Overflow("objective"))
    })?;
    let mut mask = 0u64;
    let mut best: Option<(i64, u64)> = None;
    for step in 0u64..(1u64 << k) {
        if step > 0 {
            let e = step.trailing_zeros() as usize;
            let (a, b) = graph.edges()[e];
            let on = mask >> e & 1 == 0;
            mask ^= 1 << e;
            for v in [a, b] {
                let old = objective.value(v, deg[v])?;
                if on {
                    deg[v] += 1;
                } else {
                    deg[v] -= 1;
                }
                let new = objective.value(v, deg[v])?;
                value = value
                    .checked_sub(old)
                    .and_then(|x| x.checked_add(new))
                    .ok_or(Error::Overflow("objective"))?;
            }
            if let Some(c) = coloring {
                used[c.color(e)] += if on { 1 } else { -1 };
            }
        }
        if used == target && best.is_none_or(|(bv, _)| value > bv) {
            best = Some((value, mask));
        }
    }
    Ok(match best {
        Some((value, mask)) => {
            let subset = EdgeSubset::from_mask(k, mask);
            ColoredSolution::found(coloring, subset, value)
        }
        None => ColoredSolution::infeasible(p),
    })
}

/// Optimal feasible 0/1 assignment of the program, found by enumerating the
/// edge variables freely and one variable per `b_i` block; every row is
/// checked directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpSolution {
    pub assignment: Option<Vec<u8>>,
    pub value: Option<i64>,
}

pub fn solve_ip_bruteforce(model: &IpModel) -> Result<IpSolution> {
    solve_ip_bruteforce_with_cap(model, IP_VARIABLE_CAP)
}

pub fn solve_ip_bruteforce_with_cap(model: &IpModel, cap: usize) -> Result<IpSolution> {
    if model.num_vars() > cap {
        return Err(Error::Limit {
            what: "program variable count",
            actual: model.num_vars(),
            limit: cap,
            hint: "",
        });
    }
    let k = model.num_edges();
    let blocks: Vec<std::ops::Range<usize>> = (0..model.n()).map(|i| model.degree_block(i)).collect();
    let mut best: Option<(i64, Vec<u8>)> = None;
    let mut assignment = vec![0u8; model.num_vars()];
    for mask in 0u64..(1u64 << k) {
        for (e, slot) in assignment[..k].iter_mut().enumerate() {
            *slot = (mask >> e & 1) as u8;
        }
        let mut pick = vec![0usize; blocks.len()];
        'choices: loop {
            for (block, &j) in blocks.iter().zip(&pick) {
                for (t, v) in block.clone().enumerate() {
                    assignment[v] = u8::from(t == j);
                }
            }
            if model.check(&assignment).is_ok() {
                let value = model.objective_value(&assignment)?;
                if best.as_ref().is_none_or(|(bv, _)| value > *bv) {
                    best = Some((value, assignment.clone()));
                }
            }
            for (i, block) in blocks.iter().enumerate() {
                pick[i] += 1;
                if pick[i] < block.len() {
                    continue 'choices;
                }
                pick[i] = 0;
            }
            break;
        }
    }
    Ok(match best {
        Some((value, a)) => IpSolution {
            assignment: Some(a),
            value: Some(value),
        },
        None => IpSolution {
            assignment: None,
            value: None,
        },
    })
}
