//! Bottleneck and interleaving distances between barcodes, with matching witnesses, the
//! closed form for degree-two products, the moduli pseudo-metric and the perturbation
//! bound for sup-norm-close products.

mod matching;

use serde::Serialize;

use crate::barcode::{theorem_a_barcode, Bar, Barcode};
use crate::blaschke::BlaschkeProduct;
use crate::critical::DEFAULT_ROOT_TOL;
use crate::error::{Error, Result};
use crate::hyperbolic::ComplexPoint;

pub use matching::hopcroft_karp;

/// A Δ-matching: matched bar pairs plus deleted bars, indexed into the canonical bar lists.
/// An index of a bar with multiplicity `m` occurs `m` times in total.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchingWitness {
    pub delta: f64,
    pub pairs: Vec<(usize, usize)>,
    pub deleted1: Vec<usize>,
    pub deleted2: Vec<usize>,
}

/// Cost of matching two bars: endpoint displacement, infinite only against infinite.
pub fn pair_cost(a: &Bar, b: &Bar) -> f64 {
    match (a.is_infinite(), b.is_infinite()) {
        (true, true) => (a.birth - b.birth).abs(),
        (false, false) => (a.birth - b.birth).abs().max((a.death - b.death).abs()),
        _ => f64::INFINITY,
    }
}

/// Smallest Δ at which a bar may be left unmatched: half its length.
pub fn deletion_cost(bar: &Bar) -> f64 {
    if bar.is_infinite() {
        f64::INFINITY
    } else {
        0.5 * bar.length()
    }
}

/// Interleaving distance between two finite interval modules:
/// `min(max((b-a)/2, (d-c)/2), max(|a-c|, |b-d|))`.
pub fn two_bar_distance(bar1: &Bar, bar2: &Bar) -> Result<f64> {
    if bar1.is_infinite() || bar2.is_infinite() {
        return Err(Error::Domain("two_bar_distance needs finite bars; use bottleneck".into()));
    }
    let delete_both = (0.5 * bar1.length()).max(0.5 * bar2.length());
    let displace = (bar1.birth - bar2.birth).abs().max((bar1.death - bar2.death).abs());
    Ok(delete_both.min(displace))
}

struct Expanded {
    first: Vec<(usize, Bar)>,
    second: Vec<(usize, Bar)>,
}

impl Expanded {
    fn new(bc1: &Barcode, bc2: &Barcode) -> Self {
        Self { first: bc1.expanded(), second: bc2.expanded() }
    }

    /// Bipartite graph of Δ-compatible choices. Left: bars of the first barcode, then
    /// diagonal slots for the second. Right: bars of the second, then diagonal slots for
    /// the first. A perfect matching is exactly a Δ-matching.
    fn witness(&self, delta: f64) -> Option<MatchingWitness> {
        let (p, q) = (self.first.len(), self.second.len());
        let mut adjacency: Vec<Vec<usize>> = Vec::with_capacity(p + q);
        for (i, (_, a)) in self.first.iter().enumerate() {
            let mut edges: Vec<usize> = self
                .second
                .iter()
                .enumerate()
                .filter(|(_, (_, b))| pair_cost(a, b) <= delta)
                .map(|(j, _)| j)
                .collect();
            if deletion_cost(a) <= delta {
                edges.push(q + i);
            }
            adjacency.push(edges);
        }
        for (j, (_, b)) in self.second.iter().enumerate() {
            let mut edges = Vec::with_capacity(p + 1);
            if deletion_cost(b) <= delta {
                edges.push(j);
            }
            edges.extend(q..q + p);
            adjacency.push(edges);
        }
        let mates = hopcroft_karp(&adjacency, p + q);
        if mates.iter().any(Option::is_none) {
            return None;
        }
        let mut witness = MatchingWitness { delta, pairs: Vec::new(), deleted1: Vec::new(), deleted2: Vec::new() };
        for (left, mate) in mates.into_iter().enumerate() {
            let right = mate.expect("perfect matching");
            match (left < p, right < q) {
                (true, true) => witness.pairs.push((self.first[left].0, self.second[right].0)),
                (true, false) => witness.deleted1.push(self.first[left].0),
                (false, true) => witness.deleted2.push(self.second[right].0),
                (false, false) => {}
            }
        }
        Some(witness)
    }

    /// Every value the optimal Δ can take.
    fn candidates(&self) -> Vec<f64> {
        let mut values = vec![0.0];
        for (_, a) in &self.first {
            values.push(deletion_cost(a));
            values.extend(self.second.iter().map(|(_, b)| pair_cost(a, b)));
        }
        values.extend(self.second.iter().map(|(_, b)| deletion_cost(b)));
        values.retain(|v| v.is_finite());
        values.sort_by(f64::total_cmp);
        values.dedup();
        values
    }
}

/// A Δ-matching between `bc1` and `bc2`, or `None` when none exists at this Δ.
pub fn delta_matching(bc1: &Barcode, bc2: &Barcode, delta: f64) -> Option<MatchingWitness> {
    if !(delta >= 0.0) {
        return None;
    }
    Expanded::new(bc1, bc2).witness(delta)
}

/// Bottleneck distance with an optimal witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bottleneck {
    /// `+inf` when the infinite-bar counts differ.
    pub value: f64,
    pub witness: Option<MatchingWitness>,
}

/// Exact bottleneck distance: the least candidate Δ admitting a Δ-matching, found by
/// binary search over the sorted candidate set.
pub fn bottleneck(bc1: &Barcode, bc2: &Barcode) -> Bottleneck {
    if bc1.infinite_multiplicity() != bc2.infinite_multiplicity() {
        return Bottleneck { value: f64::INFINITY, witness: None };
    }
    let expanded = Expanded::new(bc1, bc2);
    let candidates = expanded.candidates();
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    let mut best = expanded
        .witness(candidates[hi])
        .expect("deleting every finite bar is feasible at the largest candidate");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match expanded.witness(candidates[mid]) {
            Some(w) => {
                best = w;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    if best.delta != candidates[lo] {
        best = expanded.witness(candidates[lo]).expect("feasible by monotonicity");
    }
    Bottleneck { value: best.delta, witness: Some(best) }
}

/// Re-checks a witness against the definition of a Δ-matching.
pub fn validate_witness(bc1: &Barcode, bc2: &Barcode, witness: &MatchingWitness) -> std::result::Result<(), String> {
    let delta = witness.delta;
    let mut used1 = vec![0u32; bc1.bars().len()];
    let mut used2 = vec![0u32; bc2.bars().len()];
    for &(i, j) in &witness.pairs {
        let (a, b) = match (bc1.bars().get(i), bc2.bars().get(j)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(format!("pair ({i}, {j}) out of range")),
        };
        if a.is_infinite() != b.is_infinite() {
            return Err(format!("pair ({i}, {j}) matches a finite bar with an infinite one"));
        }
        if (a.birth - b.birth).abs() > delta {
            return Err(format!("pair ({i}, {j}): births differ by more than {delta}"));
        }
        if !a.is_infinite() && (a.death - b.death).abs() > delta {
            return Err(format!("pair ({i}, {j}): deaths differ by more than {delta}"));
        }
        used1[i] += 1;
        used2[j] += 1;
    }
    for (deleted, barcode, used, side) in [(&witness.deleted1, bc1, &mut used1, 1), (&witness.deleted2, bc2, &mut used2, 2)] {
        for &i in deleted {
            let bar = barcode.bars().get(i).ok_or_else(|| format!("deleted index {i} out of range in barcode {side}"))?;
            if bar.is_infinite() {
                return Err(format!("infinite bar {i} of barcode {side} deleted"));
            }
            if bar.length() > 2.0 * delta {
                return Err(format!("bar {i} of barcode {side} has length {} > 2Δ = {}", bar.length(), 2.0 * delta));
            }
            used[i] += 1;
        }
    }
    for (used, barcode, side) in [(&used1, bc1, 1), (&used2, bc2, 2)] {
        for (i, bar) in barcode.bars().iter().enumerate() {
            if used[i] != bar.multiplicity {
                return Err(format!("bar {i} of barcode {side} covered {} times, multiplicity {}", used[i], bar.multiplicity));
            }
        }
    }
    Ok(())
}

/// Interleaving distance of two degree-two products whose zero pairs are at
/// pseudo-hyperbolic distances `w1` and `w2` (0 encodes a double zero).
pub fn order2_distance(w1: f64, w2: f64) -> Result<f64> {
    for (name, w) in [("w1", w1), ("w2", w2)] {
        if !(0.0..1.0).contains(&w) {
            return Err(Error::Domain(format!("{name} = {w} not in [0, 1)")));
        }
    }
    // ln(1 / sqrt(1 - w^2)) is the death time of the finite bar.
    let death = |w: f64| -0.5 * (-w * w).ln_1p();
    let (s1, s2) = (death(w1), death(w2));
    Ok((0.5 * s1).max(0.5 * s2).min((s1 - s2).abs()))
}

/// Bottleneck distance of the analytic barcodes, with its witness.
pub fn interleaving_distance_with_witness(b1: &BlaschkeProduct, b2: &BlaschkeProduct, tol: f64) -> Result<(Bottleneck, Barcode, Barcode)> {
    let bc1 = theorem_a_barcode(b1, tol)?;
    let bc2 = theorem_a_barcode(b2, tol)?;
    Ok((bottleneck(&bc1, &bc2), bc1, bc2))
}

pub fn interleaving_distance(b1: &BlaschkeProduct, b2: &BlaschkeProduct) -> Result<f64> {
    Ok(interleaving_distance_with_witness(b1, b2, DEFAULT_ROOT_TOL)?.0.value)
}

/// Pseudo-metric on zero tuples modulo disk automorphisms, via phase-one products.
pub fn moduli_distance(zeros1: &[ComplexPoint], zeros2: &[ComplexPoint]) -> Result<f64> {
    if zeros1.len() != zeros2.len() {
        return Err(Error::LengthMismatch { left: zeros1.len(), right: zeros2.len() });
    }
    interleaving_distance(&BlaschkeProduct::from_simple_zeros(zeros1)?, &BlaschkeProduct::from_simple_zeros(zeros2)?)
}

/// Constants of the interleaving bound for products within sup-norm `eta` of each other.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityBound {
    pub delta0: f64,
    pub gamma: f64,
    pub delta: f64,
    pub eta: f64,
    #[serde(rename = "T0")]
    pub t0: f64,
    #[serde(rename = "Delta")]
    pub big_delta: f64,
}

/// `gamma = 1 + 2/sqrt(-ln delta0)`, `delta = delta0^(1 - 1/sqrt(-ln delta0))`,
/// `T0 = t(delta + 2 eta)`, `Delta = max(T0, 2 ln gamma)`.
pub fn theorem_b_bound(delta0: f64, eta: f64) -> Result<StabilityBound> {
    let inv_e = (-1.0f64).exp();
    if !(delta0 > 0.0 && delta0 < inv_e) {
        return Err(Error::Precondition(format!("0 < delta0 < 1/e fails for delta0 = {delta0}")));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Precondition(format!("0 < eta < 1 fails for eta = {eta}")));
    }
    let root = (-delta0.ln()).sqrt();
    let gamma = 1.0 + 2.0 / root;
    let delta = delta0.powf(1.0 - 1.0 / root);
    let level = delta + 2.0 * eta;
    if level >= 1.0 {
        return Err(Error::Precondition(format!(
            "delta + 2 eta < 1 fails: delta = {delta}, eta = {eta}, sum = {level}"
        )));
    }
    let t0 = 2.0 * level.atanh();
    Ok(StabilityBound { delta0, gamma, delta, eta, t0, big_delta: t0.max(2.0 * gamma.ln()) })
}

/// Exhaustive minimum over all partial matchings of the expanded bars. Exponential;
/// an oracle for small barcodes only.
pub fn exhaustive_bottleneck(bc1: &Barcode, bc2: &Barcode) -> f64 {
    let a: Vec<Bar> = bc1.expanded().into_iter().map(|x| x.1).collect();
    let b: Vec<Bar> = bc2.expanded().into_iter().map(|x| x.1).collect();
    fn go(i: usize, a: &[Bar], b: &[Bar], used: &mut Vec<bool>, cost: f64) -> f64 {
        if i == a.len() {
            return b
                .iter()
                .zip(used.iter())
                .filter(|(_, u)| !**u)
                .map(|(bar, _)| if bar.is_infinite() { f64::INFINITY } else { bar.length() / 2.0 })
                .fold(cost, f64::max);
        }
        let delete = if a[i].is_infinite() { f64::INFINITY } else { a[i].length() / 2.0 };
        let mut best = go(i + 1, a, b, used, cost.max(delete));
        for j in 0..b.len() {
            if !used[j] {
                let pair = match (a[i].is_infinite(), b[j].is_infinite()) {
                    (true, true) => (a[i].birth - b[j].birth).abs(),
                    (false, false) => (a[i].birth - b[j].birth).abs().max((a[i].death - b[j].death).abs()),
                    _ => f64::INFINITY,
                };
                used[j] = true;
                best = best.min(go(i + 1, a, b, used, cost.max(pair)));
                used[j] = false;
            }
        }
        best
    }
    go(0, &a, &b, &mut vec![false; b.len()], 0.0)
}
