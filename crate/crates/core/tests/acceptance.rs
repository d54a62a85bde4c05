//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with `cargo test --test acceptance`; exits non-zero when any criterion fails.

use std::time::{Duration, Instant};

use blaschke_persistence::barcode::theorem_a_barcode;
use blaschke_persistence::blaschke::BlaschkeProduct;
use blaschke_persistence::critical::DEFAULT_ROOT_TOL;
use blaschke_persistence::distance::{interleaving_distance, order2_distance};
use blaschke_persistence::hyperbolic::{rho, ComplexPoint};
use blaschke_persistence::levelset::{build_grid, grid_barcode};
use blaschke_persistence::sampling::seeded_rng;
use blaschke_persistence::verify::{perturbation_experiment, run_verify, VerifyConfig, VerifyReport};
use blaschke_persistence::Result;

const SEED: u64 = 0;

struct Outcome {
    passed: bool,
    detail: String,
}

fn suites(names: &[&str]) -> Result<(VerifyReport, Duration)> {
    let start = Instant::now();
    let config = VerifyConfig { seed: SEED, suites: names.iter().map(|s| s.to_string()).collect(), ..Default::default() };
    let report = run_verify(&config)?;
    Ok((report, start.elapsed()))
}

fn summarize(report: &VerifyReport) -> String {
    report
        .suites
        .iter()
        .map(|s| format!("{}: {}/{} cases ok", s.name, s.cases - s.violations, s.cases))
        .collect::<Vec<_>>()
        .join("; ")
}

fn suite_outcome(names: &[&str], budget: Option<Duration>) -> Result<Outcome> {
    let (report, elapsed) = suites(names)?;
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let mut detail = format!("{} in {:.1} s", summarize(&report), elapsed.as_secs_f64());
    if let Some(b) = budget {
        detail.push_str(&format!(" (budget {} s)", b.as_secs()));
    }
    Ok(Outcome { passed: report.passed && in_time, detail })
}

fn symmetric_pair() -> Result<Outcome> {
    let c = ComplexPoint::new;
    let wide = BlaschkeProduct::from_simple_zeros(&[c(0.6, 0.0), c(-0.6, 0.0)])?;
    let narrow = BlaschkeProduct::from_simple_zeros(&[c(0.3, 0.0), c(-0.3, 0.0)])?;
    let expected_death = 2.125f64.ln();
    let analytic = theorem_a_barcode(&wide, DEFAULT_ROOT_TOL)?.finite_deaths();
    let grid = grid_barcode(&build_grid(&wide, 1024)?).finite_deaths();
    let expected_distance = 0.5 * (17.0f64 / 8.0).ln();
    let pipeline = interleaving_distance(&wide, &narrow)?;
    let closed = order2_distance(rho(c(0.6, 0.0), c(-0.6, 0.0))?, rho(c(0.3, 0.0), c(-0.3, 0.0))?)?;
    let passed = analytic.len() == 1
        && (analytic[0] - expected_death).abs() <= 1e-10
        && grid.len() == 1
        && (grid[0] - expected_death).abs() <= 2e-2
        && (pipeline - expected_distance).abs() <= 1e-9
        && (closed - expected_distance).abs() <= 1e-9;
    let detail = format!(
        "analytic deaths {analytic:?}, grid deaths (N=1024) {grid:?}, expected {expected_death:.10}; distance {pipeline:.12} (closed form {closed:.12}), expected {expected_distance:.12}"
    );
    Ok(Outcome { passed, detail })
}

fn perturbations() -> Result<(Outcome, Outcome)> {
    let mut rng = seeded_rng(SEED);
    let (mut bounded, mut counted, mut worst_ratio, mut rejected) = (0, 0, 0.0f64, 0);
    for _ in 0..50 {
        let run = perturbation_experiment(&mut rng, 1024, 16384)?;
        bounded += run.within_bound() as usize;
        counted += run.rouche.passed() as usize;
        worst_ratio = worst_ratio.max(run.distance / run.bound.big_delta);
        rejected += run.rejected;
    }
    let bound = Outcome {
        passed: bounded == 50,
        detail: format!("{bounded}/50 experiments within the bound, max d_int/Delta = {worst_ratio:.3}, {rejected} inadmissible draws redrawn"),
    };
    let rouche = Outcome { passed: counted == 50, detail: format!("{counted}/50 experiments with matching per-component zero counts") };
    Ok((bound, rouche))
}

fn main() {
    let start = Instant::now();
    let (stability, rouche) = match perturbations() {
        Ok(pair) => (Ok(pair.0), Ok(pair.1)),
        Err(e) => (Err(e.clone()), Err(e)),
    };
    let criteria: Vec<(&str, Result<Outcome>)> = vec![
        ("degree-two closed form matches the pipeline", suite_outcome(&["order2-consistency"], Some(Duration::from_secs(10)))),
        ("symmetric pair exact values", symmetric_pair()),
        ("grid oracle deaths at N and 2N", suite_outcome(&["grid-oracle"], Some(Duration::from_secs(120)))),
        ("Euler characteristic equals component count", suite_outcome(&["euler"], None)),
        ("critical orders sum to degree - 1", suite_outcome(&["critical-count"], None)),
        ("Moebius invariance of barcodes and distances", suite_outcome(&["barcode-mobius"], None)),
        ("elementary inequalities", suite_outcome(&["ineq3", "ln1x", "ineq2"], None)),
        ("stability bound under perturbation", stability),
        ("zero counts per component under perturbation", rouche),
        ("metric structure", suite_outcome(&["moduli-metric", "bottleneck-metric"], None)),
        ("diameters shrink as theta decreases", suite_outcome(&["decay"], None)),
        ("matching bottleneck equals brute force", suite_outcome(&["exhaustive"], None)),
    ];
    let mut failures = 0;
    for (index, (name, outcome)) in criteria.into_iter().enumerate() {
        let (passed, detail) = match outcome {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failures += !passed as usize;
        println!("{} criterion {:2}: {name} -- {detail}", if passed { "PASS" } else { "FAIL" }, index + 1);
    }
    println!("{} of 12 criteria passed in {:.1} s", 12 - failures, start.elapsed().as_secs_f64());
    if failures > 0 {
        std::process::exit(1);
    }
}
