//! Oracle-equivalence and property suites.
//!
//! Each suite compares the exact solvers against brute force (or closed
//! forms) over a deterministic corpus and returns one [`Check`] per
//! property. A failing check carries the first counterexample as an
//! instance document.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::bruteforce::{best_value, connected_graphs, criteria_points, graphs_up_to_edges, planar_hull};
use crate::colored::{
    build_colored_ip, ip_assignment_to_subgraph, solve_colored_bruteforce, solve_colored_dp, solve_ip_bruteforce,
    subgraph_to_ip_assignment,
};
use crate::error::{Error, Result};
use crate::gadgets::{
    bipartite_concave_convex_instance, cubic_subgraph_instance, exact_matching_instance, general_factor_instance,
    lu_factor_objective, partition_gadget, subdivision_hardness_instance, weighted_bruteforce, FactorSpec,
    LuFactorSpec,
};
use crate::graph::{degree_sequence, EdgeColoring, EdgeSubset, Graph};
use crate::instance::{serialize_instance, Criteria, CriteriaKind, Instance};
use crate::multicriteria::{candidates, solve_with, ChamberQueries, MultiCriteriaOptions};
use crate::objective::{SeparableObjective, VertexFunction};
use crate::oracles::DirectionKind;
use crate::random::{
    random_bounded_td, random_forms, random_graph, random_tables, random_weights, seeded, BoundedTdParams,
};
use crate::treedepth::{
    build_constraint_tree, check_forest, constraint_graph, heuristic_forest, treedepth_exact, validate_forest,
    EliminationForest,
};

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    SmallMulti,
    SmallColored,
    IpEquivalence,
    Treedepth,
    Gadgets,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::SmallMulti,
        Suite::SmallColored,
        Suite::IpEquivalence,
        Suite::Treedepth,
        Suite::Gadgets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SmallMulti => "small-multi",
            Suite::SmallColored => "small-colored",
            Suite::IpEquivalence => "ip-equivalence",
            Suite::Treedepth => "treedepth",
            Suite::Gadgets => "gadgets",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

/// One verified property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of cases examined.
    pub cases: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Counts cases and keeps the first failure.
struct Tally {
    name: &'static str,
    cases: usize,
    failure: Option<(String, Option<serde_json::Value>)>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String, instance: impl FnOnce() -> Option<Instance>) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            let doc = instance()
                .and_then(|i| serialize_instance(&i).ok())
                .and_then(|t| serde_json::from_str(&t).ok());
            self.failure = Some((detail(), doc));
        }
    }

    fn finish(self, summary: &str) -> Check {
        match self.failure {
            None => Check {
                name: self.name.into(),
                passed: true,
                cases: self.cases,
                detail: summary.into(),
                counterexample: None,
            },
            Some((detail, doc)) => Check {
                name: self.name.into(),
                passed: false,
                cases: self.cases,
                detail,
                counterexample: doc,
            },
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::SmallMulti => small_multi(seed)?,
        Suite::SmallColored => small_colored(seed)?,
        Suite::IpEquivalence => ip_equivalence(seed)?,
        Suite::Treedepth => treedepth_suite(seed)?,
        Suite::Gadgets => gadgets_suite()?,
    };
    Ok(SuiteReport {
        suite: suite.name().into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

/// Connected graphs on at most 5 vertices followed by 100 random graphs
/// with at most 8 vertices and 12 edges.
pub fn multi_corpus(seed: u64) -> Vec<Graph> {
    let mut rng = seeded(seed);
    let mut graphs: Vec<Graph> = (1..=5).flat_map(connected_graphs).collect();
    for _ in 0..100 {
        let n = rng.random_range(2..=8usize);
        let edges = rng.random_range(0..=(n * (n - 1) / 2).min(12));
        graphs.push(random_graph(&mut rng, n, edges));
    }
    graphs
}

fn small_multi(seed: u64) -> Result<Vec<Check>> {
    let mut rng = seeded(seed ^ 0x6d75);
    let mut exact = Tally::new("multicriteria-exactness");
    let mut unprescribed = Tally::new("unprescribed-consistency");
    let mut hull = Tally::new("chamber-completeness");
    let mut witness = Tally::new("witness-reevaluation");
    let options = MultiCriteriaOptions::default();
    for graph in multi_corpus(seed) {
        let n = graph.n();
        for r in 1..=3 {
            for _ in 0..20 {
                let weights = random_weights(&mut rng, r, n, -3, 3);
                let functions = [
                    Criteria {
                        weights: weights.clone(),
                        kind: CriteriaKind::MaxAffine,
                        terms: {
                            let count = rng.random_range(1..=3);
                            random_forms(&mut rng, r, count)
                        },
                    },
                    Criteria {
                        weights: weights.clone(),
                        kind: CriteriaKind::SumSquares,
                        terms: {
                            let count = rng.random_range(1..=2);
                            random_forms(&mut rng, r, count)
                        },
                    },
                ];
                let points = criteria_points(&graph, &weights)?;
                let qp = ChamberQueries::new(&graph, &weights, DirectionKind::Prescribed, options)?;
                let qu = ChamberQueries::new(&graph, &weights, DirectionKind::Unprescribed, options)?;
                let counterexample = |c: &Criteria| {
                    let mut inst = Instance::new(graph.clone());
                    inst.criteria = Some(c.clone());
                    Some(inst)
                };
                let mut best_prescribed = vec![i64::MIN; functions.len()];
                for (m, pts) in points.iter().enumerate() {
                    if r == 2 {
                        let found: std::collections::BTreeSet<Vec<i64>> = candidates(&graph, m, &weights, &qp)?
                            .into_iter()
                            .map(|c| c.criteria_point)
                            .collect();
                        let planar: Vec<[i64; 2]> = pts.iter().map(|y| [y[0], y[1]]).collect();
                        let missing = planar_hull(&planar).into_iter().find(|v| !found.contains(v.as_slice()));
                        hull.record(
                            missing.is_none(),
                            || format!("m={m}: hull vertex {:?} not reached by any witness", missing.unwrap()),
                            || counterexample(&functions[0]),
                        );
                    }
                    for (fi, c) in functions.iter().enumerate() {
                        let obj = c.objective()?;
                        let sol = solve_with(&graph, m, &obj, &qp)?;
                        let brute = best_value(&obj, pts)?.expect("size class is nonempty");
                        exact.record(
                            sol.value == brute,
                            || format!("m={m}: solver {} but brute force {brute}", sol.value),
                            || counterexample(c),
                        );
                        let d = degree_sequence(&graph, &sol.subset)?;
                        let again = obj.evaluate(&d)?;
                        witness.record(
                            again == sol.value && sol.subset.count() == m,
                            || format!("m={m}: witness evaluates to {again}, reported {}", sol.value),
                            || counterexample(c),
                        );
                        best_prescribed[fi] = best_prescribed[fi].max(sol.value);
                    }
                }
                for (fi, c) in functions.iter().enumerate() {
                    let obj = c.objective()?;
                    let sol = solve_with(&graph, 0, &obj, &qu)?;
                    unprescribed.record(
                        sol.value == best_prescribed[fi],
                        || format!("unprescribed {} but best prescribed {}", sol.value, best_prescribed[fi]),
                        || counterexample(c),
                    );
                }
            }
        }
    }
    Ok(vec![
        exact.finish("prescribed optimum equals brute force over all m-subsets"),
        unprescribed.finish("unprescribed optimum equals the best prescribed optimum over m"),
        hull.finish("every planar hull vertex of the brute-force points is reached (r = 2)"),
        witness.finish("every reported witness re-evaluates to the reported value"),
    ])
}

/// At least 200 random instances of bounded tree-depth with at most 12
/// vertices, height at most 4 and up to 3 colors.
pub fn colored_corpus(seed: u64, count: usize) -> Result<Vec<Instance>> {
    let mut rng = seeded(seed ^ 0x636f);
    (0..count)
        .map(|_| {
            let mut params = BoundedTdParams::new(rng.random_range(1..=12), rng.random_range(1..=4));
            params.colors = rng.random_range(0..=3);
            params.density = [0.3, 0.5, 0.8][rng.random_range(0..3)];
            params.max_edges = Some(16);
            random_bounded_td(&mut rng, &params)
        })
        .collect()
}

fn small_colored(seed: u64) -> Result<Vec<Check>> {
    let mut exact = Tally::new("colored-dp-exactness");
    let mut witness = Tally::new("colored-witness");
    let mut forests = Tally::new("forest-independence");
    for inst in colored_corpus(seed, 250)? {
        let obj = inst.separable_objective()?;
        let col = inst.coloring.as_ref();
        let forest = inst.forest.as_ref().expect("generated with a forest");
        let dp = solve_colored_dp(&inst.graph, forest, col, &obj)?;
        let bf = solve_colored_bruteforce(&inst.graph, col, &obj)?;
        exact.record(
            (dp.feasible, dp.value) == (bf.feasible, bf.value),
            || format!("dp {:?} but brute force {:?}", dp.value, bf.value),
            || Some(inst.clone()),
        );
        let ok = match &dp.subset {
            Some(f) => {
                let d = degree_sequence(&inst.graph, f)?;
                Some(obj.evaluate(&d)?) == dp.value && col.is_none_or(|c| c.is_satisfied_by(f))
            }
            None => !dp.feasible,
        };
        witness.record(ok, || "witness violates counts or value".into(), || Some(inst.clone()));
        let (_, exact_forest) = treedepth_exact(&inst.graph)?;
        let a = solve_colored_dp(&inst.graph, &exact_forest, col, &obj)?;
        let b = solve_colored_dp(&inst.graph, &heuristic_forest(&inst.graph), col, &obj)?;
        forests.record(
            a.value == dp.value && b.value == dp.value,
            || format!("shipped {:?}, exact {:?}, heuristic {:?}", dp.value, a.value, b.value),
            || Some(inst.clone()),
        );
    }
    Ok(vec![
        exact.finish("dynamic program equals brute force in value and feasibility"),
        witness.finish("dynamic program witnesses meet the counts and re-evaluate"),
        forests.finish("shipped, exact and heuristic forests give the same optimum"),
    ])
}

fn random_colored_instance<R: Rng>(rng: &mut R, graph: Graph) -> Result<Instance> {
    let mut inst = Instance::new(graph);
    let p = rng.random_range(0..=3usize);
    if p > 0 {
        inst.coloring = Some(crate::random::random_coloring(rng, &inst.graph, p)?);
    }
    inst.vertex_functions = Some(random_tables(rng, &inst.graph, 5));
    Ok(inst)
}

fn ip_equivalence(seed: u64) -> Result<Vec<Check>> {
    let mut rng = seeded(seed ^ 0x6970);
    let mut structure = Tally::new("ip-structure");
    let mut tree = Tally::new("constraint-tree");
    let mut equal = Tally::new("ip-subgraph-equivalence");
    let mut maps = Tally::new("assignment-maps");
    let mut small = Vec::new();
    for g in graphs_up_to_edges(4) {
        small.push(random_colored_instance(&mut rng, g)?);
    }
    for _ in 0..200 {
        let n = rng.random_range(1..=6usize);
        let edges = rng.random_range(0..=(n * (n - 1) / 2).min(6));
        let g = random_graph(&mut rng, n, edges);
        small.push(random_colored_instance(&mut rng, g)?);
    }
    let mut all: Vec<(Instance, EliminationForest)> = Vec::new();
    for inst in small.iter() {
        let forest = treedepth_exact(&inst.graph)?.1;
        all.push((inst.clone(), forest));
    }
    for inst in colored_corpus(seed ^ 0x7472, 100)? {
        let forest = inst.forest.clone().expect("generated with a forest");
        all.push((inst, forest));
    }
    for (inst, forest) in &all {
        let g = &inst.graph;
        let obj = inst.separable_objective()?;
        let model = build_colored_ip(g, inst.coloring.as_ref(), &obj)?;
        let (n, k) = (g.n(), g.num_edges());
        let p = inst.coloring.as_ref().map_or(0, |c| c.num_colors());
        let bound = 1.max(n.saturating_sub(1)) as i64;
        structure.record(
            model.num_vars() == n + 3 * k && model.rows().len() == 2 * n + p && model.max_abs_coefficient() <= bound,
            || {
                format!(
                    "vars {} rows {} max coefficient {} for n={n} |E|={k} p={p}",
                    model.num_vars(),
                    model.rows().len(),
                    model.max_abs_coefficient()
                )
            },
            || Some(inst.clone()),
        );
        let t = build_constraint_tree(g, forest, p)?;
        let cg = constraint_graph(&model);
        let valid = check_forest(&cg, &t.forest).is_ok();
        tree.record(
            valid && t.forest.height() <= p + forest.height() + 1,
            || {
                format!(
                    "valid {valid}, height {} with forest height {}",
                    t.forest.height(),
                    forest.height()
                )
            },
            || Some(inst.clone()),
        );
    }
    for inst in &small {
        let g = &inst.graph;
        let obj = inst.separable_objective()?;
        let col = inst.coloring.as_ref();
        let model = build_colored_ip(g, col, &obj)?;
        let ip = solve_ip_bruteforce(&model)?;
        let bf = solve_colored_bruteforce(g, col, &obj)?;
        equal.record(
            ip.value == bf.value && ip.assignment.is_some() == bf.feasible,
            || format!("program {:?} but subgraph {:?}", ip.value, bf.value),
            || Some(inst.clone()),
        );
        let mut ok = true;
        if let Some(a) = &ip.assignment {
            let (f, v) = ip_assignment_to_subgraph(&model, a)?;
            ok &= Some(v) == ip.value && obj.evaluate(&degree_sequence(g, &f)?)? == v;
            ok &= col.is_none_or(|c| c.is_satisfied_by(&f));
        }
        if let Some(f) = &bf.subset {
            let a = subgraph_to_ip_assignment(g, f)?;
            ok &= model.check(&a).is_ok() && Some(model.objective_value(&a)?) == bf.value;
        }
        maps.record(
            ok,
            || "assignment and subgraph values differ".into(),
            || Some(inst.clone()),
        );
    }
    Ok(vec![
        structure.finish("n + 3|E| variables, 2n + p rows, max coefficient at most max(1, n - 1)"),
        tree.finish("constraint tree valid for the constraint graph with height at most p + height + 1"),
        equal.finish("program optimum equals subgraph optimum in value and feasibility"),
        maps.finish("assignment and subgraph maps preserve objective values"),
    ])
}

/// Height of the elimination forest of an ordering: in each connected
/// piece, the earliest vertex is the root.
fn ordering_height(adj: &[u32], rank: &[usize], set: u32) -> usize {
    let mut best = 0;
    let mut rest = set;
    while rest != 0 {
        // grow one component
        let mut comp = rest & rest.wrapping_neg();
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= adj[v] & set;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        rest &= !comp;
        let mut root = usize::MAX;
        let mut bits = comp;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if root == usize::MAX || rank[v] < rank[root] {
                root = v;
            }
        }
        best = best.max(1 + ordering_height(adj, rank, comp & !(1 << root)));
    }
    best
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len())
        .rev()
        .find(|&j| a[j] > a[i - 1])
        .expect("a larger element exists");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Minimum forest height over all vertex orderings of the set.
fn forest_depth_by_orderings(adj: &[u32], set: u32) -> usize {
    let verts: Vec<usize> = (0..32).filter(|&v| set >> v & 1 == 1).collect();
    let mut order = verts.clone();
    let mut rank = vec![0usize; adj.len()];
    let mut best = usize::MAX;
    loop {
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        best = best.min(ordering_height(adj, &rank, set));
        if !next_permutation(&mut order) {
            break;
        }
    }
    best
}

/// Independent tree-depth (single rooted tree) by exhausting orderings;
/// intended for at most 8 vertices.
pub fn treedepth_by_orderings(graph: &Graph) -> usize {
    let n = graph.n();
    if n == 0 {
        return 0;
    }
    let mut adj = vec![0u32; n];
    for &(a, b) in graph.edges() {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    if graph.is_connected() {
        forest_depth_by_orderings(&adj, all)
    } else {
        1 + (0..n)
            .map(|v| forest_depth_by_orderings(&adj, all & !(1 << v)))
            .min()
            .expect("nonempty graph")
    }
}

fn treedepth_suite(seed: u64) -> Result<Vec<Check>> {
    let mut rng = seeded(seed ^ 0x7464);
    let mut known = Tally::new("treedepth-known-values");
    let mut minimal = Tally::new("treedepth-minimality");
    let mut heuristic = Tally::new("heuristic-forest");
    let mut rejects = Tally::new("invalid-forest-rejected");
    let graph_instance = |g: &Graph| Some(Instance::new(g.clone()));

    let mut expect = |g: Graph, want: usize, label: &str| -> Result<()> {
        let (td, forest) = treedepth_exact(&g)?;
        let ok = td == want && validate_forest(&g, &forest)? && forest.height() == td;
        known.record(
            ok,
            || format!("{label}: got {td}, expected {want}"),
            || graph_instance(&g),
        );
        Ok(())
    };
    expect(Graph::matching(3), 3, "perfect matching on 6 vertices")?;
    expect(Graph::path(2), 2, "single edge")?;
    for n in 1..=15usize {
        let want = (usize::BITS - n.leading_zeros()) as usize;
        expect(Graph::path(n), want, &format!("path on {n} vertices"))?;
    }

    let mut corpus: Vec<Graph> = (1..=5).flat_map(connected_graphs).collect();
    corpus.extend(graphs_up_to_edges(3));
    for _ in 0..60 {
        let n = rng.random_range(6..=8usize);
        let edges = rng.random_range(0..=n * (n - 1) / 2);
        corpus.push(random_graph(&mut rng, n, edges));
    }
    for g in &corpus {
        let (td, forest) = treedepth_exact(g)?;
        let reference = treedepth_by_orderings(g);
        let single_root = forest.roots().len() <= 1;
        minimal.record(
            td == reference && validate_forest(g, &forest)? && forest.height() == td && single_root,
            || format!("exact {td}, by orderings {reference}"),
            || graph_instance(g),
        );
        let h = heuristic_forest(g);
        let lower = if g.is_connected() { td } else { td - 1 };
        heuristic.record(
            validate_forest(g, &h)? && h.height() >= lower,
            || format!("heuristic height {} below {lower} or invalid", h.height()),
            || graph_instance(g),
        );
    }

    let k3 = Graph::complete(3);
    let star_forest = EliminationForest::from_parent_labels(&[0, 1, 1])?;
    rejects.record(
        matches!(check_forest(&k3, &star_forest), Err(Error::InvalidForest(2, 3))),
        || "forest with siblings 2 and 3 accepted for a triangle".into(),
        || graph_instance(&k3),
    );
    rejects.record(
        EliminationForest::from_parent_labels(&[2, 1]).is_err(),
        || "cyclic parent array accepted".into(),
        || None,
    );
    Ok(vec![
        known.finish("perfect matching on 6 vertices 3, single edge 2, paths ceil(log2(n+1)) for n <= 15"),
        minimal.finish("exact tree-depth equals the minimum over all vertex orderings for n <= 8"),
        heuristic.finish("heuristic forests are valid and never beat the optimum"),
        rejects.finish("invalid and malformed forests are rejected"),
    ])
}

fn degree_sets_hold(graph: &Graph, sets: &[Vec<usize>]) -> bool {
    let k = graph.num_edges();
    (0..1u64 << k).any(|mask| {
        let d = degree_sequence(graph, &EdgeSubset::from_mask(k, mask)).expect("subset sized to the graph");
        d.0.iter().zip(sets).all(|(z, b)| b.contains(z))
    })
}

fn exact_matching_exists(graph: &Graph, coloring: &EdgeColoring) -> bool {
    let k = graph.num_edges();
    (0..1u64 << k).any(|mask| {
        let f = EdgeSubset::from_mask(k, mask);
        let d = degree_sequence(graph, &f).expect("subset sized to the graph");
        d.0.iter().all(|&z| z == 1) && coloring.is_satisfied_by(&f)
    })
}

fn partition_exists(values: &[i64]) -> bool {
    let total: i64 = values.iter().sum();
    (0..1u64 << values.len()).any(|mask| {
        let s: i64 = (0..values.len())
            .filter(|&j| mask >> j & 1 == 1)
            .map(|j| values[j])
            .sum();
        2 * s == total
    })
}

fn second_differences(t: &[i64]) -> impl Iterator<Item = i64> + '_ {
    t.windows(3).map(|w| w[2] - 2 * w[1] + w[0])
}

fn gadgets_suite() -> Result<Vec<Check>> {
    let mut zero = Tally::new("zero-threshold");
    let mut dp_agree = Tally::new("gadget-dp-agreement");
    let mut shapes = Tally::new("table-shapes");
    let mut subdivision = Tally::new("subdivision-extraction");

    let mut decide = |label: &str, inst: &Instance, answer: bool| -> Result<()> {
        let obj = inst.separable_objective()?;
        let col = inst.coloring.as_ref();
        let bf = solve_colored_bruteforce(&inst.graph, col, &obj)?;
        let opt = bf.value;
        zero.record(
            (opt == Some(0)) == answer,
            || format!("{label}: optimum {opt:?} but decision {answer}"),
            || Some(inst.clone()),
        );
        let (_, forest) = treedepth_exact(&inst.graph)?;
        let dp = solve_colored_dp(&inst.graph, &forest, col, &obj)?;
        dp_agree.record(
            dp.value == opt,
            || format!("{label}: dp {:?} but brute force {opt:?}", dp.value),
            || Some(inst.clone()),
        );
        Ok(())
    };

    let k22 = Graph::complete_bipartite(2, 2);
    let k22_colors: Vec<usize> = k22
        .edges()
        .iter()
        .map(|&(a, b)| usize::from(!((a, b) == (0, 2) || (a, b) == (1, 3))))
        .collect();
    for counts in [vec![2, 0], vec![1, 1]] {
        let em = exact_matching_instance(2, k22_colors.clone(), counts.clone())?;
        let col = em.instance.coloring.clone().expect("colored gadget");
        let answer = exact_matching_exists(&em.instance.graph, &col);
        decide(&format!("exact matching on K_2,2 m={counts:?}"), &em.instance, answer)?;
    }
    let single = exact_matching_instance(1, vec![0], vec![1])?;
    decide("exact matching r=1", &single.instance, true)?;

    for (label, g) in [
        ("cubic on K_4", Graph::complete(4)),
        ("cubic on P_3", Graph::path(3)),
        ("cubic on K_1,3", Graph::star(3)),
    ] {
        let sets = vec![vec![0, 3]; g.n()];
        let answer = degree_sets_hold(&g, &sets);
        decide(label, &cubic_subgraph_instance(&g), answer)?;
    }

    for (label, g) in [
        ("perfect matching on P_3", Graph::path(3)),
        ("perfect matching on a single edge", Graph::path(2)),
        ("2-factor on C_4", Graph::cycle(4)?),
    ] {
        let want = if label.starts_with("2-factor") { 2 } else { 1 };
        let spec = FactorSpec::new(g.clone(), vec![vec![want]; g.n()])?;
        let answer = degree_sets_hold(&g, spec.sets());
        decide(label, &general_factor_instance(&spec), answer)?;
    }

    let star = Graph::star(3);
    let sides = [false, true, true, true];
    let star_sets: Vec<Vec<usize>> = sides.iter().map(|&i| if i { vec![1] } else { vec![0, 3] }).collect();
    decide(
        "bipartite gadget on K_1,3",
        &bipartite_concave_convex_instance(&star, &sides)?,
        degree_sets_hold(&star, &star_sets),
    )?;
    decide(
        "bipartite gadget on a single edge",
        &bipartite_concave_convex_instance(&Graph::path(2), &[true, false])?,
        degree_sets_hold(&Graph::path(2), &[vec![1], vec![0, 3]]),
    )?;

    for values in [vec![2, 3, 5], vec![1, 1, 3], vec![1]] {
        let w = partition_gadget(&values)?;
        let best = weighted_bruteforce(&w)?.value;
        let answer = partition_exists(&values);
        zero.record(
            (best == 0) == answer,
            || format!("partition {values:?}: optimum {best} but decision {answer}"),
            || crate::gadgets::partition_instance(&values).ok(),
        );
    }

    for g in graphs_up_to_edges(4) {
        let squares = SeparableObjective::uniform(&g, &VertexFunction::Square)?;
        for m in 0..=g.num_edges() {
            let s = subdivision_hardness_instance(&g, m)?;
            let obj = s.instance.separable_objective()?;
            let bf = solve_colored_bruteforce(&s.instance.graph, None, &obj)?;
            let chosen = s.extract(bf.subset.as_ref().expect("unprescribed is feasible"))?;
            let host_best = solve_colored_bruteforce(&g, Some(&EdgeColoring::uniform(&g, m)?), &squares)?.value;
            let got = squares.evaluate(&degree_sequence(&g, &chosen)?)?;
            subdivision.record(
                chosen.count() == m && Some(got) == host_best && bf.value == host_best,
                || {
                    format!(
                        "m={m}: extracted {} edges worth {got}, host optimum {host_best:?}",
                        chosen.count()
                    )
                },
                || Some(s.instance.clone()),
            );
            let tables = obj.tables();
            let n = g.n();
            let k = g.num_edges();
            let convex = tables[n..n + k].iter().all(|t| second_differences(t).all(|x| x >= 0));
            let concave = second_differences(&tables[n + k]).all(|x| x <= 0);
            shapes.record(
                convex && concave,
                || format!("subdivision tables, m={m}"),
                || Some(s.instance.clone()),
            );
        }
    }

    let k4 = Graph::complete(4);
    for (lower, upper) in [
        (vec![0, 1, 2, 3], vec![3, 1, 2, 3]),
        (vec![1; 4], vec![1; 4]),
        (vec![0; 4], vec![3; 4]),
    ] {
        let spec = LuFactorSpec::new(lower, upper)?;
        let obj = lu_factor_objective(&spec, &k4)?;
        shapes.record(
            obj.tables().iter().all(|t| second_differences(t).all(|x| x <= 0)),
            || "interval tables are not concave".into(),
            || None,
        );
    }
    let em = exact_matching_instance(2, k22_colors, vec![2, 0])?;
    let obj = em.instance.separable_objective()?;
    shapes.record(
        obj.tables().iter().all(|t| second_differences(t).all(|x| x <= 0)),
        || "exact matching tables are not concave".into(),
        || Some(em.instance.clone()),
    );

    Ok(vec![
        zero.finish("optimum is zero exactly when the brute-force decision is yes"),
        dp_agree.finish("dynamic program agrees with brute force on every gadget instance"),
        shapes.finish("interval, exact matching and apex tables concave; subdivision tables convex"),
        subdivision.finish("subdivision optimum extracts an optimal m-edge all-squares subgraph"),
    ])
}
