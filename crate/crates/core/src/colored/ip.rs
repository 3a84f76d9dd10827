//! The 0/1 program whose optima are exactly the optimal colored subgraphs:
//!
//! ```text
//! max  sum_i sum_j f_i(j) y_i^j
//! a_i: sum_{e ∋ i} x_e - sum_j j y_i^j = 0
//! b_i: sum_j y_i^j = 1
//! c_k: sum_{e in E_k} x_e = m_k
//! ```
//!
//! `b_i` selects exactly one `j` per vertex and `a_i` forces it to equal the
//! degree of `i` in the selected subgraph.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{degree_sequence, EdgeColoring, EdgeSubset, Graph};
use crate::objective::SeparableObjective;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpVar {
    /// `x_e`
    Edge(usize),
    /// `y_i^j`
    Degree { vertex: usize, j: usize },
}

/// An equality row `sum coef * var = rhs`, zero coefficients omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpRow {
    pub name: String,
    pub rhs: i64,
    pub terms: Vec<(usize, i64)>,
}

/// Binary program with named variables, in the fixed order `x_e` by edge
/// position, then `y_i^j` by `(i, j)`; rows `a_1..a_n, b_1..b_n, c_1..c_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpModel {
    n: usize,
    num_edges: usize,
    p: usize,
    vars: Vec<IpVar>,
    names: Vec<String>,
    objective: Vec<i64>,
    rows: Vec<IpRow>,
    /// Index of `y_i^0` for each vertex, plus a trailing sentinel.
    y_start: Vec<usize>,
}

fn layout(graph: &Graph) -> (Vec<IpVar>, Vec<usize>) {
    let degrees = graph.degrees();
    let mut vars: Vec<IpVar> = (0..graph.num_edges()).map(IpVar::Edge).collect();
    let mut y_start = Vec::with_capacity(graph.n() + 1);
    for (vertex, &d) in degrees.iter().enumerate() {
        y_start.push(vars.len());
        vars.extend((0..=d).map(|j| IpVar::Degree { vertex, j }));
    }
    y_start.push(vars.len());
    (vars, y_start)
}

/// Builds the program for a colored instance; `None` drops the `c_k` rows.
pub fn build_colored_ip(
    graph: &Graph,
    coloring: Option<&EdgeColoring>,
    objective: &SeparableObjective,
) -> Result<IpModel> {
    let n = graph.n();
    let degrees = graph.degrees();
    if objective.n() != n {
        return Err(Error::LengthMismatch {
            what: "vertex function count",
            expected: n,
            actual: objective.n(),
        });
    }
    for (i, &d) in degrees.iter().enumerate() {
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
    let (vars, y_start) = layout(graph);
    let names = vars
        .iter()
        .map(|v| match *v {
            IpVar::Edge(e) => {
                let (a, b) = graph.edges()[e];
                format!("x_{}_{}", a + 1, b + 1)
            }
            IpVar::Degree { vertex, j } => format!("y_{}_{}", vertex + 1, j),
        })
        .collect();
    let mut obj = vec![0i64; vars.len()];
    for i in 0..n {
        for (j, &f) in objective.table(i).iter().enumerate() {
            obj[y_start[i] + j] = f;
        }
    }
    let adjacency = graph.adjacency();
    let mut rows = Vec::with_capacity(2 * n + coloring.map_or(0, |c| c.num_colors()));
    for i in 0..n {
        let mut incident: Vec<usize> = adjacency[i].iter().map(|&(_, e)| e).collect();
        incident.sort_unstable();
        let mut terms: Vec<(usize, i64)> = incident.into_iter().map(|e| (e, 1)).collect();
        terms.extend((1..=degrees[i]).map(|j| (y_start[i] + j, -(j as i64))));
        rows.push(IpRow {
            name: format!("a_{}", i + 1),
            rhs: 0,
            terms,
        });
    }
    for i in 0..n {
        rows.push(IpRow {
            name: format!("b_{}", i + 1),
            rhs: 1,
            terms: (y_start[i]..y_start[i + 1]).map(|v| (v, 1)).collect(),
        });
    }
    let p = coloring.map_or(0, |c| c.num_colors());
    if let Some(c) = coloring {
        for (k, &m) in c.counts().iter().enumerate() {
            rows.push(IpRow {
                name: format!("c_{}", k + 1),
                rhs: m as i64,
                terms: (0..graph.num_edges())
                    .filter(|&e| c.color(e) == k)
                    .map(|e| (e, 1))
                    .collect(),
            });
        }
    }
    Ok(IpModel {
        n,
        num_edges: graph.num_edges(),
        p,
        vars,
        names,
        objective: obj,
        rows,
        y_start,
    })
}

impl IpModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_colors(&self) -> usize {
        self.p
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[IpVar] {
        &self.vars
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn objective(&self) -> &[i64] {
        &self.objective
    }

    pub fn rows(&self) -> &[IpRow] {
        &self.rows
    }

    /// Mutable right-hand sides, e.g. to pose infeasible counts.
    pub fn set_rhs(&mut self, row: usize, rhs: i64) {
        self.rows[row].rhs = rhs;
    }

    /// `||A||_inf`, the largest coefficient magnitude.
    pub fn max_abs_coefficient(&self) -> i64 {
        self.rows
            .iter()
            .flat_map(|r| r.terms.iter().map(|&(_, c)| c.abs()))
            .max()
            .unwrap_or(0)
    }

    /// The `y` variables of each vertex, which rows `b_i` make one-hot.
    pub fn degree_block(&self, vertex: usize) -> std::ops::Range<usize> {
        self.y_start[vertex]..self.y_start[vertex + 1]
    }

    /// First violated row, if any.
    pub fn check(&self, assignment: &[u8]) -> Result<()> {
        if assignment.len() != self.vars.len() {
            return Err(Error::LengthMismatch {
                what: "assignment",
                expected: self.vars.len(),
                actual: assignment.len(),
            });
        }
        if let Some(v) = assignment.iter().position(|&x| x > 1) {
            return Err(Error::Invalid(format!("{} is not binary", self.names[v])));
        }
        for row in &self.rows {
            let lhs: i64 = row.terms.iter().map(|&(v, c)| c * i64::from(assignment[v])).sum();
            if lhs != row.rhs {
                return Err(Error::Violated { row: row.name.clone() });
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, assignment: &[u8]) -> Result<i64> {
        self.objective.iter().zip(assignment).try_fold(0i64, |acc, (&c, &x)| {
            acc.checked_add(c * i64::from(x))
                .ok_or(Error::Overflow("program objective"))
        })
    }
}

/// `F = {e : x_e = 1}` and the program value, after checking feasibility.
pub fn ip_assignment_to_subgraph(model: &IpModel, assignment: &[u8]) -> Result<(EdgeSubset, i64)> {
    model.check(assignment)?;
    let subset = EdgeSubset::from_flags(assignment[..model.num_edges].iter().map(|&x| x == 1).collect());
    Ok((subset, model.objective_value(assignment)?))
}

/// `x_e = [e in F]`, `y_i^j = [j = d_i(F)]`, in the layout of
/// [`build_colored_ip`] for the same host.
pub fn subgraph_to_ip_assignment(graph: &Graph, subset: &EdgeSubset) -> Result<Vec<u8>> {
    let degrees = degree_sequence(graph, subset)?;
    let (vars, y_start) = layout(graph);
    let mut out = vec![0u8; vars.len()];
    for e in subset.indices() {
        out[e] = 1;
    }
    for (i, &d) in degrees.as_slice().iter().enumerate() {
        out[y_start[i] + d] = 1;
    }
    Ok(out)
}

/// Line-oriented text form: a comment header, `VAR <name> BIN` per
/// variable, one `MAX` line, then one `EQ <row> <rhs> <name> <coef> ...`
/// line per row. Zero coefficients are omitted.
pub fn serialize_ip(model: &IpModel) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# colored degree program: n={} edges={} colors={} vars={} rows={}",
        model.n,
        model.num_edges,
        model.p,
        model.vars.len(),
        model.rows.len()
    );
    for name in &model.names {
        let _ = writeln!(out, "VAR {name} BIN");
    }
    out.push_str("MAX");
    for (name, &c) in model.names.iter().zip(&model.objective) {
        if c != 0 {
            let _ = write!(out, " {name} {c}");
        }
    }
    out.push('\n');
    for row in &model.rows {
        let _ = write!(out, "EQ {} {}", row.name, row.rhs);
        for &(v, c) in &row.terms {
            let _ = write!(out, " {} {}", model.names[v], c);
        }
        out.push('\n');
    }
    out
}
