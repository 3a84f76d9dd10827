//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use degseq::colored::solve_colored_dp;
use degseq::multicriteria::maximize_multicriteria;
use degseq::random::{random_bounded_td, random_instance, seeded, BoundedTdParams};
use degseq::verify::{run_suite, Suite, SuiteReport, DEFAULT_SEED};

const SCALING_LIMIT: Duration = Duration::from_secs(60);

struct Line {
    number: usize,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn from_checks(number: usize, title: &'static str, report: &SuiteReport, names: &[&str]) -> Line {
    let mut passed = true;
    let mut parts = Vec::new();
    for name in names {
        match report.check(name) {
            Some(c) => {
                passed &= c.passed;
                if c.passed {
                    parts.push(format!("{name}: {} cases", c.cases));
                } else {
                    let doc = c.counterexample.as_ref().map(|v| v.to_string()).unwrap_or_default();
                    parts.push(format!("{name}: {} {doc}", c.detail));
                }
            }
            None => {
                passed = false;
                parts.push(format!("{name}: missing"));
            }
        }
    }
    Line {
        number,
        title,
        passed,
        detail: parts.join("; "),
    }
}

fn scaling() -> Line {
    let run = || -> Result<(Duration, Duration), degseq::Error> {
        let inst = random_instance(&mut seeded(DEFAULT_SEED), 60, 300, 2);
        let obj = inst.multicriteria_objective()?;
        let t = Instant::now();
        maximize_multicriteria(&inst.graph, inst.graph.num_edges() / 2, &obj)?;
        let multi = t.elapsed();

        let mut params = BoundedTdParams::new(200, 4);
        params.colors = 2;
        let inst = random_bounded_td(&mut seeded(DEFAULT_SEED), &params)?;
        let obj = inst.separable_objective()?;
        let forest = inst.forest.as_ref().expect("generated with a forest");
        let t = Instant::now();
        solve_colored_dp(&inst.graph, forest, inst.coloring.as_ref(), &obj)?;
        Ok((multi, t.elapsed()))
    };
    match run() {
        Ok((multi, colored)) => Line {
            number: 9,
            title: "scaling smoke test",
            passed: multi < SCALING_LIMIT && colored < SCALING_LIMIT,
            detail: format!("multi-criteria n=60 |E|=300 r=2 {multi:.2?}; colored n=200 height 4 p=2 {colored:.2?}"),
        },
        Err(e) => Line {
            number: 9,
            title: "scaling smoke test",
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let suite = |s| run_suite(s, DEFAULT_SEED).unwrap_or_else(|e| panic!("suite {s} failed to run: {e}"));
    let multi = suite(Suite::SmallMulti);
    let ip = suite(Suite::IpEquivalence);
    let colored = suite(Suite::SmallColored);
    let td = suite(Suite::Treedepth);
    let gadgets = suite(Suite::Gadgets);
    let lines = [
        from_checks(
            1,
            "multi-criteria exactness",
            &multi,
            &["multicriteria-exactness", "witness-reevaluation"],
        ),
        from_checks(2, "unprescribed consistency", &multi, &["unprescribed-consistency"]),
        from_checks(3, "chamber completeness", &multi, &["chamber-completeness"]),
        from_checks(
            4,
            "structural program invariants",
            &ip,
            &["ip-structure", "constraint-tree"],
        ),
        from_checks(
            5,
            "program and subgraph equivalence",
            &ip,
            &["ip-subgraph-equivalence", "assignment-maps"],
        ),
        from_checks(
            6,
            "colored dynamic program exactness",
            &colored,
            &["colored-dp-exactness", "colored-witness", "forest-independence"],
        ),
        from_checks(
            7,
            "tree-depth ground truth",
            &td,
            &[
                "treedepth-known-values",
                "treedepth-minimality",
                "heuristic-forest",
                "invalid-forest-rejected",
            ],
        ),
        from_checks(
            8,
            "gadget zero thresholds",
            &gadgets,
            &[
                "zero-threshold",
                "gadget-dp-agreement",
                "table-shapes",
                "subdivision-extraction",
            ],
        ),
        scaling(),
    ];
    let mut ok = true;
    for line in &lines {
        ok &= line.passed;
        let status = if line.passed { "PASS" } else { "FAIL" };
        println!("criterion {} {status} {}: {}", line.number, line.title, line.detail);
    }
    println!("acceptance finished in {:.1?}", start.elapsed());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
