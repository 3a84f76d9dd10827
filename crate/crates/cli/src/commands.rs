use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use degseq::colored::{build_colored_ip, serialize_ip, solve_colored_bruteforce, solve_colored_dp, ColoredSolution};
use degseq::gadgets::{
    bipartite_concave_convex_instance, cubic_subgraph_instance, general_factor_instance, lu_factor_instance,
    partition_instance, subdivision_hardness_instance, weighted_bruteforce, FactorSpec, LuFactorSpec,
};
use degseq::instance::{parse_forest, parse_instance, serialize_instance, Instance};
use degseq::multicriteria::{maximize_multicriteria, maximize_multicriteria_unprescribed};
use degseq::random::{
    random_bounded_td, random_coloring, random_exact_matching, random_instance, seeded, BoundedTdParams,
};
use degseq::treedepth::{check_forest, heuristic_forest, treedepth_exact, EliminationForest};
use degseq::verify::run_suite;
use degseq::{degree_sequence, Graph};

use crate::report::{digest, edge_list, RunReport};
use crate::{
    Command, EmitIpArgs, GenArgs, GenKind, GraphArgs, SolveColoredArgs, SolveMultiArgs, TreedepthArgs, VerifyArgs,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: degseq::Error },
    #[error(transparent)]
    Solver(#[from] degseq::Error),
    #[error("witness check failed: {0}")]
    Witness(String),
}

impl CliError {
    /// 2 for problems with the inputs, 3 for failed preconditions and limits.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Input { source, .. } => {
                if source.is_input_error() {
                    2
                } else {
                    3
                }
            }
            CliError::Solver(e) => {
                if e.is_input_error() {
                    2
                } else {
                    3
                }
            }
            CliError::Witness(_) => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command, argv: &[String]) -> Result<u8> {
    match command {
        Command::SolveMulti(args) => solve_multi(args, argv),
        Command::SolveColored(args) => solve_colored(args, argv),
        Command::EmitIp(args) => emit_ip(args),
        Command::Gen(args) => generate(*args),
        Command::Verify(args) => verify(args),
        Command::Treedepth(args) => treedepth(args),
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load_instance(path: &Path) -> Result<(Instance, Vec<u8>)> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let inst = parse_instance(&text).map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })?;
    Ok((inst, bytes))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let mut text = serde_json::to_string(value).map_err(|e| CliError::Witness(e.to_string()))?;
    text.push('\n');
    emit(&text, None)
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn solve_multi(args: SolveMultiArgs, argv: &[String]) -> Result<u8> {
    let (inst, bytes) = load_instance(&args.instance)?;
    let objective = inst.multicriteria_objective()?;
    let start = Instant::now();
    let (solution, solver) = match args.m {
        Some(m) => (maximize_multicriteria(&inst.graph, m, &objective)?, "multicriteria"),
        None => (
            maximize_multicriteria_unprescribed(&inst.graph, &objective)?,
            "multicriteria-unprescribed",
        ),
    };
    let wall = millis(start);
    let degrees = degree_sequence(&inst.graph, &solution.subset)?;
    let point = objective.criteria_point(&degrees)?;
    let value = objective.evaluate(&degrees)?;
    if value != solution.value || point != solution.criteria_point {
        return Err(CliError::Witness(format!(
            "witness evaluates to {value}, solver reported {}",
            solution.value
        )));
    }
    if args.m.is_some_and(|m| m != solution.subset.count()) {
        return Err(CliError::Witness("witness has the wrong edge count".into()));
    }
    if solution.lower_bound {
        eprintln!("note: custom objective, value is a lower bound");
    }
    print_json(&RunReport {
        command: argv.to_vec(),
        instance_digest: digest(&bytes),
        solver,
        feasible: true,
        value: Some(solution.value),
        witness: Some(edge_list(&inst.graph, &solution.subset)),
        color_counts: Vec::new(),
        criteria_point: Some(solution.criteria_point),
        oracle_queries: Some(solution.queries),
        forest_height: None,
        wall_time_ms: wall,
    })?;
    Ok(0)
}

fn choose_forest(args: &SolveColoredArgs, inst: &Instance) -> Result<EliminationForest> {
    if let Some(path) = &args.forest {
        let text = String::from_utf8(read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let forest = parse_forest(&text).map_err(|source| CliError::Input {
            path: path.clone(),
            source,
        })?;
        check_forest(&inst.graph, &forest)?;
        return Ok(forest);
    }
    if args.exact_treedepth {
        return Ok(treedepth_exact(&inst.graph)?.1);
    }
    match (&inst.forest, args.heuristic) {
        (Some(forest), false) => {
            check_forest(&inst.graph, forest)?;
            Ok(forest.clone())
        }
        _ => Ok(heuristic_forest(&inst.graph)),
    }
}

fn solve_colored(args: SolveColoredArgs, argv: &[String]) -> Result<u8> {
    let (inst, bytes) = load_instance(&args.instance)?;
    if inst.weights.is_some() {
        return solve_weighted(&inst, &bytes, argv);
    }
    let objective = inst.separable_objective()?;
    let coloring = inst.coloring.as_ref();
    let (solution, solver, height, wall): (ColoredSolution, _, _, _) = if args.brute {
        let start = Instant::now();
        let s = solve_colored_bruteforce(&inst.graph, coloring, &objective)?;
        (s, "colored-bruteforce", None, millis(start))
    } else {
        let forest = choose_forest(&args, &inst)?;
        let start = Instant::now();
        let s = solve_colored_dp(&inst.graph, &forest, coloring, &objective)?;
        (s, "colored-dp", Some(forest.height()), millis(start))
    };
    if let (Some(subset), Some(value)) = (&solution.subset, solution.value) {
        let again = objective.evaluate(&degree_sequence(&inst.graph, subset)?)?;
        if again != value || coloring.is_some_and(|c| !c.is_satisfied_by(subset)) {
            return Err(CliError::Witness(format!(
                "witness evaluates to {again}, solver reported {value}"
            )));
        }
    }
    print_json(&RunReport {
        command: argv.to_vec(),
        instance_digest: digest(&bytes),
        solver,
        feasible: solution.feasible,
        value: solution.value,
        witness: solution.subset.as_ref().map(|f| edge_list(&inst.graph, f)),
        color_counts: solution.color_counts,
        criteria_point: None,
        oracle_queries: None,
        forest_height: height,
        wall_time_ms: wall,
    })?;
    Ok(0)
}

fn solve_weighted(inst: &Instance, bytes: &[u8], argv: &[String]) -> Result<u8> {
    if inst.coloring.is_some() {
        return Err(CliError::Usage("edge weights cannot be combined with colors".into()));
    }
    let weighted = inst.weighted_instance()?;
    let start = Instant::now();
    let solution = weighted_bruteforce(&weighted)?;
    let wall = millis(start);
    let again = weighted.evaluate(&solution.subset)?;
    if again != solution.value {
        return Err(CliError::Witness(format!(
            "witness evaluates to {again}, solver reported {}",
            solution.value
        )));
    }
    print_json(&RunReport {
        command: argv.to_vec(),
        instance_digest: digest(bytes),
        solver: "weighted-bruteforce",
        feasible: true,
        value: Some(solution.value),
        witness: Some(edge_list(&inst.graph, &solution.subset)),
        color_counts: Vec::new(),
        criteria_point: None,
        oracle_queries: None,
        forest_height: None,
        wall_time_ms: wall,
    })?;
    Ok(0)
}

fn emit_ip(args: EmitIpArgs) -> Result<u8> {
    let (inst, _) = load_instance(&args.instance)?;
    let objective = inst.separable_objective()?;
    let model = build_colored_ip(&inst.graph, inst.coloring.as_ref(), &objective)?;
    emit(&serialize_ip(&model), args.out.as_deref())?;
    Ok(0)
}

fn host_graph(args: &GraphArgs) -> Result<Graph> {
    if let Some(n) = args.complete {
        return Ok(Graph::complete(n));
    }
    if let Some(n) = args.path {
        return Ok(Graph::path(n));
    }
    if let Some(n) = args.cycle {
        return Ok(Graph::cycle(n)?);
    }
    if let Some(n) = args.star {
        return Ok(Graph::star(n));
    }
    if let Some(path) = &args.graph {
        return Ok(load_instance(path)?.0.graph);
    }
    Err(CliError::Usage(
        "this generator needs a graph: --complete, --path, --cycle, --star or --graph".into(),
    ))
}

fn required<T: Copy>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn generate(args: GenArgs) -> Result<u8> {
    let mut rng = seeded(args.seed);
    let inst = match args.kind {
        GenKind::ExactMatching => {
            let r = required(args.r, "r")?;
            random_exact_matching(&mut rng, r, args.p.unwrap_or(2))?.instance
        }
        GenKind::Factor => {
            if args.degrees.is_empty() {
                return Err(CliError::Usage("missing --degrees".into()));
            }
            general_factor_instance(&FactorSpec::uniform(host_graph(&args.graph)?, &args.degrees)?)
        }
        GenKind::LuFactor => {
            let graph = host_graph(&args.graph)?;
            let lower = required(args.lower, "lower")?;
            let upper = required(args.upper, "upper")?;
            let degrees = graph.degrees();
            let spec = LuFactorSpec::new(vec![lower; graph.n()], degrees.iter().map(|&d| upper.min(d)).collect())?;
            lu_factor_instance(&spec, &graph)?
        }
        GenKind::Cubic => cubic_subgraph_instance(&host_graph(&args.graph)?),
        GenKind::BipartiteCc => {
            let graph = host_graph(&args.graph)?;
            let sides = graph
                .bipartition()
                .ok_or_else(|| CliError::Usage("the bipartite gadget needs a bipartite graph".into()))?;
            bipartite_concave_convex_instance(&graph, &sides)?
        }
        GenKind::Subdivision => {
            let graph = host_graph(&args.graph)?;
            subdivision_hardness_instance(&graph, required(args.m, "m")?)?.instance
        }
        GenKind::Partition => {
            if args.values.is_empty() {
                return Err(CliError::Usage("missing --values".into()));
            }
            partition_instance(&args.values)?
        }
        GenKind::Random => {
            let n = required(args.n, "n")?;
            let edges = args.edges.unwrap_or(2 * n);
            let mut inst = random_instance(&mut rng, n, edges, args.r.unwrap_or(2));
            if let Some(p) = args.p.filter(|&p| p > 0) {
                inst.coloring = Some(random_coloring(&mut rng, &inst.graph, p)?);
            }
            inst
        }
        GenKind::RandomBoundedTd => {
            let mut params = BoundedTdParams::new(required(args.n, "n")?, required(args.d, "d")?);
            if let Some(p) = args.p {
                params.colors = p;
            }
            if let Some(density) = args.density {
                params.density = density;
            }
            params.max_edges = args.edges;
            random_bounded_td(&mut rng, &params)?
        }
    };
    emit(&serialize_instance(&inst)?, args.out.as_deref())?;
    Ok(0)
}

fn verify(args: VerifyArgs) -> Result<u8> {
    let start = Instant::now();
    let report = run_suite(args.suite, args.seed)?;
    for check in &report.checks {
        let status = if check.passed { "pass" } else { "FAIL" };
        eprintln!("{status} {} ({} cases): {}", check.name, check.cases, check.detail);
    }
    eprintln!("{} finished in {:.1?}", report.suite, start.elapsed());
    print_json(&report)?;
    Ok(if report.passed { 0 } else { 1 })
}

#[derive(serde::Serialize)]
struct TreedepthReport {
    n: usize,
    exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    treedepth: Option<usize>,
    height: usize,
    /// 1-based parent labels, 0 for roots.
    forest: Vec<usize>,
}

fn treedepth(args: TreedepthArgs) -> Result<u8> {
    let (inst, _) = load_instance(&args.instance)?;
    let (td, forest) = if args.heuristic {
        (None, heuristic_forest(&inst.graph))
    } else {
        let (td, forest) = treedepth_exact(&inst.graph)?;
        (Some(td), forest)
    };
    check_forest(&inst.graph, &forest)?;
    print_json(&TreedepthReport {
        n: inst.graph.n(),
        exact: td.is_some(),
        treedepth: td,
        height: forest.height(),
        forest: forest.parent_labels(),
    })?;
    Ok(0)
}
