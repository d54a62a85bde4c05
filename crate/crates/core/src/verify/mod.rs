//! Seeded property suites behind the `verify` command.
//!
//! Every suite draws from its own ChaCha stream of the configured seed, so a suite's
//! result does not depend on which other suites run.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::barcode::{betti_at, theorem_a_barcode, Barcode};
use crate::blaschke::BlaschkeProduct;
use crate::critical::{critical_points, order2_normal_form};
use crate::distance::{
    bottleneck, delta_matching, exhaustive_bottleneck, interleaving_distance_with_witness, moduli_distance, order2_distance,
    theorem_b_bound, validate_witness,
};
use crate::error::{Error, Result};
use crate::hyperbolic::{rho_unchecked, ComplexPoint, MobiusTransform};
use crate::sampling::{
    disk_point, random_barcode_upto, random_mobius, random_product, seeded_rng, separated_points, unimodular, SAMPLE_RADIUS,
};

mod grid;

pub use grid::{grid_death_tolerance, oracle_products, perturbation_experiment, PerturbationOutcome, MAX_PERTURBATION};

/// Absolute slack for the inequality checks.
pub const SLACK: f64 = 1e-12;

/// A deliberately wrong formula constant, to check that the suites catch it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// `ln(1 - x) > -0.9 x / (1 - x)` instead of `-x / (1 - x)`.
    Ln1xConstant,
    /// `gamma = 1 + 1/sqrt(-ln delta0)` instead of `1 + 2/sqrt(-ln delta0)`.
    GammaConstant,
}

impl Fault {
    pub const ALL: [Fault; 2] = [Fault::Ln1xConstant, Fault::GammaConstant];

    pub fn name(self) -> &'static str {
        match self {
            Fault::Ln1xConstant => "ln1x-constant",
            Fault::GammaConstant => "gamma-constant",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown fault `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Suites to run; empty means all.
    pub suites: Vec<String>,
    /// Grid resolution of the level-set suites.
    pub grid: usize,
    pub samples: usize,
    pub tol: f64,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            suites: Vec::new(),
            grid: 1024,
            samples: crate::blaschke::DEFAULT_BOUNDARY_SAMPLES,
            tol: crate::critical::DEFAULT_ROOT_TOL,
            fault: None,
        }
    }
}

impl VerifyConfig {
    fn gamma_numerator(&self) -> f64 {
        if self.fault == Some(Fault::GammaConstant) {
            1.0
        } else {
            2.0
        }
    }

    fn ln1x_scale(&self) -> f64 {
        if self.fault == Some(Fault::Ln1xConstant) {
            0.9
        } else {
            1.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: u64,
    pub violations: u64,
    pub passed: bool,
    /// The first failing case, serialized.
    pub first_violation: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub grid: usize,
    pub fault: Option<Fault>,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }
}

#[derive(Default)]
pub(crate) struct Tally {
    cases: u64,
    violations: u64,
    first: Option<Value>,
}

impl Tally {
    pub(crate) fn check(&mut self, ok: bool, case: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(case());
            }
        }
    }
}

type SuiteFn = fn(&mut ChaCha8Rng, &VerifyConfig, &mut Tally) -> Result<()>;

struct Suite {
    name: &'static str,
    run: SuiteFn,
}

const SUITES: &[Suite] = &[
    Suite { name: "rho-metric", run: rho_metric },
    Suite { name: "rho-mobius", run: rho_mobius },
    Suite { name: "ineq3", run: ineq3 },
    Suite { name: "ln1x", run: ln1x },
    Suite { name: "ineq2", run: ineq2 },
    Suite { name: "max-modulus", run: max_modulus },
    Suite { name: "multiplicative", run: multiplicative },
    Suite { name: "critical-count", run: critical_count },
    Suite { name: "critical-consistency", run: critical_consistency },
    Suite { name: "critical-mobius", run: critical_mobius },
    Suite { name: "normal-form", run: normal_form },
    Suite { name: "rank-law", run: rank_law },
    Suite { name: "barcode-mobius", run: barcode_mobius },
    Suite { name: "bottleneck-metric", run: bottleneck_metric },
    Suite { name: "witness", run: witness },
    Suite { name: "exhaustive", run: exhaustive },
    Suite { name: "order2-consistency", run: order2_consistency },
    Suite { name: "moduli-metric", run: moduli_metric },
    Suite { name: "stability-constants", run: stability_constants },
    Suite { name: "stability", run: grid::stability },
    Suite { name: "grid-oracle", run: grid::grid_oracle },
    Suite { name: "euler", run: grid::euler },
    Suite { name: "merge-order", run: grid::merge_order },
    Suite { name: "critical-merges", run: grid::critical_merges },
    Suite { name: "zero-assignment", run: grid::zero_assignment },
    Suite { name: "zero-count-bound", run: grid::zero_count_bound },
    Suite { name: "decay", run: grid::decay },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Runs the selected suites in their fixed order.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    for name in &config.suites {
        if !SUITES.iter().any(|s| s.name == name) {
            return Err(Error::Domain(format!("unknown suite `{name}`; known: {}", suite_names().join(", "))));
        }
    }
    let mut suites = Vec::new();
    for (stream, suite) in SUITES.iter().enumerate() {
        if !config.suites.is_empty() && !config.suites.iter().any(|s| s == suite.name) {
            continue;
        }
        let mut rng = seeded_rng(config.seed);
        rng.set_stream(stream as u64);
        let mut tally = Tally::default();
        (suite.run)(&mut rng, config, &mut tally)?;
        suites.push(SuiteReport {
            name: suite.name,
            cases: tally.cases,
            violations: tally.violations,
            passed: tally.violations == 0,
            first_violation: tally.first,
        });
    }
    Ok(VerifyReport {
        seed: config.seed,
        grid: config.grid,
        fault: config.fault,
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

fn point_json(z: ComplexPoint) -> Value {
    json!([z.re, z.im])
}

fn points_json(zs: &[ComplexPoint]) -> Value {
    Value::Array(zs.iter().map(|&z| point_json(z)).collect())
}

fn product_json(b: &BlaschkeProduct) -> Value {
    json!({
        "phase": point_json(b.phase()),
        "zeros": b.zeros().iter().map(|z| json!([z.location.re, z.location.im, z.multiplicity])).collect::<Vec<_>>(),
    })
}

/// Open interval sample that never returns the left endpoint.
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let x: f64 = rng.gen();
        if x > 0.0 {
            return x;
        }
    }
}

fn rho_metric(rng: &mut ChaCha8Rng, _: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..10_000 {
        let [x, y, z] = [0; 3].map(|_| disk_point(rng, SAMPLE_RADIUS));
        let (xy, yz, xz) = (rho_unchecked(x, y), rho_unchecked(y, z), rho_unchecked(x, z));
        let strong = (xy + yz) / (1.0 + xy * yz);
        let ok = xz <= strong + SLACK && strong <= xy + yz + SLACK && xy == rho_unchecked(y, x) && rho_unchecked(x, x) == 0.0;
        tally.check(ok, || json!({"x": point_json(x), "y": point_json(y), "z": point_json(z), "rho_xz": xz, "bound": strong}));
    }
    Ok(())
}

fn rho_mobius(rng: &mut ChaCha8Rng, _: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..10_000 {
        let phi = random_mobius(rng, 0.9);
        let (x, y) = (disk_point(rng, SAMPLE_RADIUS), disk_point(rng, SAMPLE_RADIUS));
        let before = rho_unchecked(x, y);
        let after = rho_unchecked(phi.apply(x)?, phi.apply(y)?);
        tally.check((before - after).abs() <= SLACK, || {
            json!({"pivot": point_json(phi.pivot()), "phase": point_json(phi.phase()), "x": point_json(x), "y": point_json(y), "before": before, "after": after})
        });
    }
    Ok(())
}

/// `(1 - x)/(1 - x^{1/y}) < y` and `(1 + x^{1/y})/(1 - x^{1/y}) (1 - x)/(1 + x) < y^2`.
fn ineq3(rng: &mut ChaCha8Rng, _: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..100_000 {
        let x = open_unit(rng);
        let y = rng.gen_range(1.0..100.0);
        if y == 1.0 {
            continue;
        }
        let root = (x.ln() / y).exp();
        let one_minus_root = -(x.ln() / y).exp_m1();
        let lhs = (1.0 - x) / one_minus_root;
        let squared = (1.0 + root) / one_minus_root * (1.0 - x) / (1.0 + x);
        // y^2 is up to 1e4, where one ulp already exceeds the absolute slack.
        let ok = lhs < y + SLACK && squared < y * y * (1.0 + SLACK);
        tally.check(ok, || json!({"x": x, "y": y, "lhs": lhs, "squared_lhs": squared}));
    }
    Ok(())
}

/// `ln(1 - x) > -x / (1 - x)`.
fn ln1x(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let scale = config.ln1x_scale();
    for _ in 0..100_000 {
        let x = open_unit(rng);
        let lhs = (-x).ln_1p();
        let rhs = -scale * x / (1.0 - x);
        tally.check(lhs > rhs - SLACK, || json!({"x": x, "lhs": lhs, "rhs": rhs}));
    }
    Ok(())
}

/// `rho(y, z) >= rho(x, z)^gamma` whenever `rho(x, y) <= delta0` and `rho(x, z) >= delta`.
fn ineq2(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let inv_e = (-1.0f64).exp();
    // Inadmissible draws are redrawn, so exactly 10^5 triples are checked.
    while tally.cases < 100_000 {
        let delta0 = inv_e * open_unit(rng);
        let root = (-delta0.ln()).sqrt();
        let gamma = 1.0 + config.gamma_numerator() / root;
        let delta = delta0.powf(1.0 - 1.0 / root);
        let x = disk_point(rng, SAMPLE_RADIUS);
        // The involution swapping 0 and x carries rho-balls about 0 to rho-balls about x.
        let around_x = MobiusTransform::involution(x)?;
        let y = around_x.apply(disk_point(rng, delta0))?;
        if delta >= SAMPLE_RADIUS {
            // No sample point is that far from x.
            continue;
        }
        let radius = rng.gen_range(delta..SAMPLE_RADIUS);
        let z = around_x.apply(ComplexPoint::from_polar(radius, rng.gen_range(0.0..std::f64::consts::TAU)))?;
        let (xy, xz, yz) = (rho_unchecked(x, y), rho_unchecked(x, z), rho_unchecked(y, z));
        if xy > delta0 || xz < delta {
            continue;
        }
        tally.check(yz >= xz.powf(gamma) - SLACK, || {
            json!({"delta0": delta0, "gamma": gamma, "delta": delta, "x": point_json(x), "y": point_json(y), "z": point_json(z), "rho_yz": yz, "rho_xz_gamma": xz.powf(gamma)})
        });
    }
    Ok(())
}

/// `|B(z)|` inside the disk stays below the largest of 4096 boundary samples.
fn max_modulus(rng: &mut ChaCha8Rng, _: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..100 {
        let degree = random_degree(rng, 1, 8);
        let b = random_product(rng, degree, SAMPLE_RADIUS, 0.0);
        let boundary = (0..4096)
            .map(|k| b.eval(ComplexPoint::from_polar(1.0, k as f64 * std::f64::consts::TAU / 4096.0)).map(|v| v.norm()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        for _ in 0..100 {
            let z = disk_point(rng, SAMPLE_RADIUS);
            let value = b.eval(z)?.norm();
            tally.check(value < boundary + 1e-9, || json!({"product": product_json(&b), "z": point_json(z), "value": value, "boundary_max": boundary}));
        }
    }
    Ok(())
}

/// Evaluating the product equals multiplying single-factor evaluations.
fn multiplicative(rng: &mut ChaCha8Rng, _: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..100 {
        let degree = random_degree(rng, 1, 8);
        let b = random_product_with_multiplicity(rng, degree)?;
        for _ in 0..100 {
            let z = disk_point(rng, SAMPLE_RADIUS);
            let mut factors = b.phase();
            for zero in b.zeros() {
                let single = BlaschkeProduct::new(ComplexPoint::new(1.0, 0.0), [(zero.location, 1)])?.eval(z)?;
                factors *= single.powu(zero.multiplicity);
            }
            let whole = b.eval(z)?;
            let ok = (whole - factors).norm() <= 1e-12 * whole.norm().max(f64::MIN_POSITIVE) + 1e-300;
            tally.check(ok, || json!({"product": product_json(&b), "z": point_json(z), "whole": point_json(whole), "factors": point_json(factors)}));
        }
    }
    Ok(())
}

fn random_degree<R: Rng + ?Sized>(rng: &mut R, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi)
}

/// Product of degree `degree` with random multiplicities, sometimes with a zero at the origin.
fn random_product_with_multiplicity<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Result<BlaschkeProduct> {
    let mut multiplicities = Vec::new();
    let mut left = degree;
    while left > 0 {
        let m = rng.gen_range(1..=left.min(3));
        multiplicities.push(m as u32);
        left -= m;
    }
    let mut points = separated_points(rng, multiplicities.len(), 0.95, 0.05);
    if rng.gen_bool(0.25) {
        points[0] = ComplexPoint::new(0.0, 0.0);
    }
    BlaschkeProduct::new(unimodular(rng), points.into_iter().zip(multiplicities))
}

fn critical_count(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for trial in 0..200 {
        let degree = random_degree(rng, 1, 8);
        // Half the trials use distinct zeros, half random multiplicities.
        let b = if trial % 2 == 0 {
            random_product(rng, degree, 0.95, 0.01)
        } else {
            random_product_with_multiplicity(rng, degree)?
        };
        let total: u32 = critical_points(&b, config.tol)?.iter().map(|p| p.order).sum();
        tally.check(total as usize == degree - 1, || json!({"product": product_json(&b), "order_sum": total}));
    }
    Ok(())
}

fn critical_consistency(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..100 {
        let degree = random_degree(rng, 2, 8);
        let b = random_product(rng, degree, 0.9, 0.05);
        for p in critical_points(&b, config.tol)? {
            let value = b.eval(p.location)?.norm();
            let derivative = b.derivative(p.location)?.norm();
            // The local scale of B' near w is set by the distances to the zeros.
            let scale = b.zero_list().iter().map(|&a| (a - p.location).norm()).fold(1.0, f64::max);
            let ok = (value - p.critical_value).abs() <= 1e-10 && derivative < 1e-7 * scale;
            tally.check(ok, || json!({"product": product_json(&b), "point": point_json(p.location), "value": value, "critical_value": p.critical_value, "derivative": derivative}));
        }
    }
    Ok(())
}

fn order_death_key(b: &BlaschkeProduct, tol: f64) -> Result<Vec<(u32, f64)>> {
    let mut key: Vec<(u32, f64)> = critical_points(b, tol)?.iter().map(|p| (p.order, p.death_time)).collect();
    key.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    Ok(key)
}

fn critical_mobius(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..100 {
        let degree = random_degree(rng, 2, 6);
        let b = random_product(rng, degree, 0.9, 0.1);
        let phi = random_mobius(rng, 0.7);
        let composed = b.compose_mobius(&phi)?;
        let (before, after) = (order_death_key(&b, config.tol)?, order_death_key(&composed, config.tol)?);
        let ok = before.len() == after.len() && before.iter().zip(&after).all(|(x, y)| x.0 == y.0 && (x.1 - y.1).abs() <= 1e-9);
        tally.check(ok, || json!({"product": product_json(&b), "composed": product_json(&composed), "before": before, "after": after}));
    }
    Ok(())
}

fn normal_form(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..1000 {
        let b = random_product(rng, 2, SAMPLE_RADIUS, 0.001);
        let zeros = b.zero_list();
        let (_, value) = order2_normal_form(rho_unchecked(zeros[0], zeros[1]))?;
        let points = critical_points(&b, config.tol)?;
        let ok = points.len() == 1 && (points[0].critical_value - value).abs() <= 1e-10;
        tally.check(ok, || json!({"zeros": points_json(&zeros), "normal_form_value": value, "critical_values": points.iter().map(|p| p.critical_value).collect::<Vec<_>>()}));
    }
    Ok(())
}

/// Betti number is n below the first death, drops by the total critical order at each death
/// value, and is 1 after the last.
fn rank_law(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..100 {
        let degree = random_degree(rng, 1, 7);
        let b = random_product(rng, degree, 0.9, 0.05);
        let barcode = theorem_a_barcode(&b, config.tol)?;
        let points = critical_points(&b, config.tol)?;
        let mut deaths = barcode.finite_deaths();
        deaths.dedup();
        let mut ok = betti_at(&barcode, deaths.first().map_or(1.0, |d| d / 2.0))? == degree;
        for (i, &d) in deaths.iter().enumerate() {
            let after = deaths.get(i + 1).map_or(d + 1.0, |next| 0.5 * (d + next));
            let drop = betti_at(&barcode, d)? - betti_at(&barcode, after)?;
            let order: u32 = points.iter().filter(|p| !p.at_zero && (p.death_time - d).abs() <= 1e-12).map(|p| p.order).sum();
            ok &= drop == order as usize;
        }
        ok &= betti_at(&barcode, deaths.last().map_or(1.0, |d| d + 1.0))? == 1;
        tally.check(ok, || json!({"product": product_json(&b), "barcode": barcode}));
    }
    Ok(())
}

fn barcode_mobius(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..100 {
        let (d1, d2) = (random_degree(rng, 2, 6), random_degree(rng, 2, 6));
        let b1 = random_product(rng, d1, 0.9, 0.1);
        let b2 = random_product(rng, d2, 0.9, 0.1);
        let phi = random_mobius(rng, 0.7);
        let (c1, c2) = (b1.compose_mobius(&phi)?, b2.compose_mobius(&phi)?);
        let (self_distance, _, _) = interleaving_distance_with_witness(&b1, &c1, config.tol)?;
        let (before, _, _) = interleaving_distance_with_witness(&b1, &b2, config.tol)?;
        let (after, _, _) = interleaving_distance_with_witness(&c1, &c2, config.tol)?;
        let ok = self_distance.value <= 1e-9 && (before.value - after.value).abs() <= 1e-9;
        tally.check(ok, || {
            json!({"first": product_json(&b1), "second": product_json(&b2), "pivot": point_json(phi.pivot()), "phase": point_json(phi.phase()),
                   "self_distance": self_distance.value, "before": before.value, "after": after.value})
        });
    }
    Ok(())
}

fn barcode_triple<R: Rng + ?Sized>(rng: &mut R, max_finite: usize) -> [Barcode; 3] {
    let infinite = rng.gen_range(0..3);
    [0; 3].map(|_| random_barcode_upto(rng, max_finite, infinite))
}

fn bottleneck_metric(rng: &mut ChaCha8Rng, _: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..1000 {
        let [a, b, c] = barcode_triple(rng, 6);
        let (ab, ba) = (bottleneck(&a, &b).value, bottleneck(&b, &a).value);
        let (bc, ac) = (bottleneck(&b, &c).value, bottleneck(&a, &c).value);
        let ok = ab == ba && bottleneck(&a, &a).value == 0.0 && ac <= ab + bc + SLACK;
        tally.check(ok, || json!({"a": a, "b": b, "c": c, "ab": ab, "ba": ba, "bc": bc, "ac": ac}));
    }
    for _ in 0..100 {
        let a = random_barcode_upto(rng, 4, 1);
        let b = random_barcode_upto(rng, 4, 2);
        let d = bottleneck(&a, &b).value;
        tally.check(d == f64::INFINITY, || json!({"a": a, "b": b, "distance": d}));
    }
    Ok(())
}

fn witness(rng: &mut ChaCha8Rng, _: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..500 {
        let [a, b, _] = barcode_triple(rng, 8);
        let best = bottleneck(&a, &b);
        let w = best.witness.as_ref().expect("equal infinite counts");
        let valid = validate_witness(&a, &b, w);
        // Nothing strictly below the optimum is feasible.
        let below = best.value > 0.0 && delta_matching(&a, &b, best.value * (1.0 - 1e-12) - 1e-15).is_some();
        tally.check(valid.is_ok() && !below, || json!({"a": a, "b": b, "witness": w, "error": valid.err(), "feasible_below_optimum": below}));
    }
    Ok(())
}

fn exhaustive(rng: &mut ChaCha8Rng, _: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..200 {
        let [a, b, _] = barcode_triple(rng, 4);
        let (matched, brute) = (bottleneck(&a, &b).value, exhaustive_bottleneck(&a, &b));
        tally.check(matched == brute, || json!({"a": a, "b": b, "matching": matched, "exhaustive": brute}));
    }
    Ok(())
}

/// Degree-two product: a random separated pair, or a double zero one time in ten.
fn random_pair_product<R: Rng + ?Sized>(rng: &mut R) -> Result<(BlaschkeProduct, f64)> {
    if rng.gen_bool(0.1) {
        let b = BlaschkeProduct::new(unimodular(rng), [(disk_point(rng, 0.9), 2)])?;
        return Ok((b, 0.0));
    }
    let b = random_product(rng, 2, 0.95, 0.0);
    let zeros = b.zero_list();
    Ok((b, rho_unchecked(zeros[0], zeros[1])))
}

fn order2_consistency(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..1000 {
        let (b1, w1) = random_pair_product(rng)?;
        let (b2, w2) = random_pair_product(rng)?;
        let closed = order2_distance(w1, w2)?;
        let (pipeline, _, _) = interleaving_distance_with_witness(&b1, &b2, config.tol)?;
        tally.check((closed - pipeline.value).abs() <= 1e-9, || {
            json!({"first": product_json(&b1), "second": product_json(&b2), "closed_form": closed, "bottleneck": pipeline.value})
        });
    }
    Ok(())
}

/// The degree-two moduli distance: symmetric, triangle inequality, zero exactly on equal
/// separations, Möbius invariant, and equal to the full pipeline.
fn moduli_metric(rng: &mut ChaCha8Rng, _: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let pair = |rng: &mut ChaCha8Rng| separated_points(rng, 2, SAMPLE_RADIUS, 0.0);
    let sep = |p: &[ComplexPoint]| rho_unchecked(p[0], p[1]);
    for trial in 0..10_000 {
        let [x, y, z] = [0; 3].map(|_| pair(rng));
        let (sx, sy, sz) = (sep(&x), sep(&y), sep(&z));
        let (xy, yx) = (order2_distance(sx, sy)?, order2_distance(sy, sx)?);
        let (yz, xz) = (order2_distance(sy, sz)?, order2_distance(sx, sz)?);
        let zero_iff_equal = (xy == 0.0) == (sx == sy) && order2_distance(sx, sx)? == 0.0;
        let ok = xy == yx && xz <= xy + yz + SLACK && zero_iff_equal;
        tally.check(ok, || json!({"x": points_json(&x), "y": points_json(&y), "z": points_json(&z), "xy": xy, "yx": yx, "yz": yz, "xz": xz}));
        if trial % 50 == 0 {
            let phi = random_mobius(rng, 0.9);
            let moved = [phi.apply(x[0])?, phi.apply(x[1])?];
            let invariant = order2_distance(sx, sep(&moved))?;
            let pipeline = moduli_distance(&x, &y)?;
            let ok = invariant <= SLACK && (pipeline - xy).abs() <= 1e-9;
            tally.check(ok, || json!({"x": points_json(&x), "moved": points_json(&moved), "y": points_json(&y), "moved_distance": invariant, "pipeline": pipeline, "closed_form": xy}));
        }
    }
    Ok(())
}

/// The bound's constants against an independent evaluation, its preconditions, and its
/// decay along `eta = delta0 -> 0`.
fn stability_constants(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let inv_e = (-1.0f64).exp();
    for _ in 0..1000 {
        let delta0 = inv_e * open_unit(rng);
        let eta = 0.5 * open_unit(rng);
        let root = (-delta0.ln()).sqrt();
        let gamma = 1.0 + config.gamma_numerator() / root;
        let delta = (delta0.ln() * (1.0 - 1.0 / root)).exp();
        let level = delta + 2.0 * eta;
        match theorem_b_bound(delta0, eta) {
            Ok(bound) => {
                let t0 = ((1.0 + level) / (1.0 - level)).ln();
                let expected = t0.max(2.0 * gamma.ln());
                let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1.0);
                let ok = level < 1.0 && close(bound.gamma, gamma) && close(bound.delta, delta) && close(bound.t0, t0) && close(bound.big_delta, expected);
                tally.check(ok, || json!({"delta0": delta0, "eta": eta, "bound": bound, "expected_gamma": gamma, "expected_Delta": expected}));
            }
            Err(Error::Precondition(message)) => {
                tally.check(level >= 1.0 - 1e-12 && message.contains("delta + 2 eta"), || json!({"delta0": delta0, "eta": eta, "error": message}));
            }
            Err(e) => return Err(e),
        }
    }
    let scan = [0.1, 0.05, 0.02, 1e-2, 1e-3, 1e-4, 1e-6, 1e-9, 1e-12];
    let deltas: Vec<f64> = scan.iter().map(|&d| theorem_b_bound(d, d).map(|b| b.big_delta)).collect::<Result<_>>()?;
    tally.check(deltas.windows(2).all(|w| w[1] < w[0]), || json!({"delta0": scan, "Delta": deltas}));
    let refused = matches!(theorem_b_bound(0.3, 0.4), Err(Error::Precondition(_)));
    tally.check(refused, || json!({"delta0": 0.3, "eta": 0.4, "refused": refused}));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suites: &[&str], fault: Option<Fault>) -> VerifyReport {
        let config = VerifyConfig { suites: suites.iter().map(|s| s.to_string()).collect(), fault, grid: 512, ..Default::default() };
        run_verify(&config).unwrap()
    }

    #[test]
    fn analytic_suites_pass() {
        let names: Vec<&str> = suite_names().into_iter().take_while(|&n| n != "stability").collect();
        let report = quick(&names, None);
        for suite in &report.suites {
            assert!(suite.passed, "{suite:?}");
            assert!(suite.cases > 0, "{}", suite.name);
        }
    }

    #[test]
    fn faults_are_caught() {
        let report = quick(&["ln1x"], Some(Fault::Ln1xConstant));
        assert!(!report.passed);
        assert!(report.suites[0].first_violation.is_some());
        let report = quick(&["ineq2", "stability-constants"], Some(Fault::GammaConstant));
        assert!(report.suites.iter().all(|s| !s.passed), "{report:?}");
    }

    #[test]
    fn filter_and_determinism() {
        let a = quick(&["ln1x", "exhaustive"], None);
        assert_eq!(a.suites.iter().map(|s| s.name).collect::<Vec<_>>(), ["ln1x", "exhaustive"]);
        let b = quick(&["exhaustive"], None);
        assert_eq!(a.suites[1], b.suites[0]);
        assert!(run_verify(&VerifyConfig { suites: vec!["nope".into()], ..Default::default() }).is_err());
        assert_eq!("gamma-constant".parse::<Fault>().unwrap(), Fault::GammaConstant);
    }
}
