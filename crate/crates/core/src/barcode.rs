//! Barcodes of interval modules `F(birth, death]` and the decomposition of the
//! persistence module of a finite Blaschke product.

use std::cmp::Ordering;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::blaschke::BlaschkeProduct;
use crate::critical::critical_points;
use crate::error::{Error, Result};

/// Endpoints closer than this are identified in canonical form.
pub const MERGE_TOLERANCE: f64 = 1e-12;

/// Half-open interval `(birth, death]` with multiplicity; `death = +inf` for infinite bars.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bar {
    pub birth: f64,
    pub death: f64,
    pub multiplicity: u32,
}

impl Bar {
    pub fn new(birth: f64, death: f64, multiplicity: u32) -> Result<Self> {
        let bar = Self { birth, death, multiplicity };
        bar.validate()?;
        Ok(bar)
    }

    pub fn finite(birth: f64, death: f64) -> Result<Self> {
        Self::new(birth, death, 1)
    }

    pub fn infinite(birth: f64) -> Self {
        Self { birth, death: f64::INFINITY, multiplicity: 1 }
    }

    fn validate(&self) -> Result<()> {
        let ordered = self.birth.is_finite() && !self.death.is_nan() && self.birth < self.death && self.death != f64::NEG_INFINITY;
        if !ordered || self.multiplicity == 0 {
            return Err(Error::InvalidBar { birth: self.birth, death: self.death });
        }
        Ok(())
    }

    pub fn is_infinite(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn length(&self) -> f64 {
        self.death - self.birth
    }

    /// Half-open membership `birth < t <= death`.
    pub fn contains(&self, t: f64) -> bool {
        self.birth < t && t <= self.death
    }

    fn same_interval(&self, other: &Bar) -> bool {
        let deaths_match = if self.is_infinite() || other.is_infinite() {
            self.is_infinite() && other.is_infinite()
        } else {
            (self.death - other.death).abs() <= MERGE_TOLERANCE
        };
        deaths_match && (self.birth - other.birth).abs() <= MERGE_TOLERANCE
    }
}

fn interval_order(a: &Bar, b: &Bar) -> Ordering {
    a.birth.total_cmp(&b.birth).then(a.death.total_cmp(&b.death))
}

/// Multiset of bars in canonical form: sorted by `(birth, death)`, no two entries with the
/// same interval (up to [`MERGE_TOLERANCE`]).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Barcode {
    bars: Vec<Bar>,
}

impl Barcode {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Number of bars counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.bars.iter().map(|b| b.multiplicity as usize).sum()
    }

    pub fn infinite_multiplicity(&self) -> usize {
        self.bars.iter().filter(|b| b.is_infinite()).map(|b| b.multiplicity as usize).sum()
    }

    /// Bars expanded to unit multiplicity, each tagged with its canonical index.
    pub fn expanded(&self) -> Vec<(usize, Bar)> {
        self.bars
            .iter()
            .enumerate()
            .flat_map(|(i, b)| std::iter::repeat_n((i, Bar { multiplicity: 1, ..*b }), b.multiplicity as usize))
            .collect()
    }

    /// Finite deaths repeated by multiplicity, ascending.
    pub fn finite_deaths(&self) -> Vec<f64> {
        let mut deaths: Vec<f64> = self
            .expanded()
            .into_iter()
            .filter(|(_, b)| !b.is_infinite())
            .map(|(_, b)| b.death)
            .collect();
        deaths.sort_by(f64::total_cmp);
        deaths
    }
}

/// Sorts and merges a list of bars into canonical form.
pub fn canonicalize(bars: impl IntoIterator<Item = Bar>) -> Result<Barcode> {
    let mut sorted: Vec<Bar> = bars.into_iter().collect();
    for bar in &sorted {
        bar.validate()?;
    }
    sorted.sort_by(interval_order);
    let mut merged: Vec<Bar> = Vec::with_capacity(sorted.len());
    for bar in sorted {
        match merged.iter_mut().find(|m| m.same_interval(&bar)) {
            Some(existing) => existing.multiplicity += bar.multiplicity,
            None => merged.push(bar),
        }
    }
    merged.sort_by(interval_order);
    Ok(Barcode { bars: merged })
}

/// `F(0, inf) + sum_j F(0, s_j]^{m_j}` over the critical points off the zero set.
pub fn theorem_a_barcode(b: &BlaschkeProduct, tol: f64) -> Result<Barcode> {
    let mut bars = vec![Bar::infinite(0.0)];
    for point in critical_points(b, tol)?.into_iter().filter(|p| !p.at_zero) {
        bars.push(Bar::new(0.0, point.death_time, point.order)?);
    }
    canonicalize(bars)
}

/// Dimension of `V_t`: number of bars (with multiplicity) containing `t`.
pub fn betti_at(barcode: &Barcode, t: f64) -> Result<usize> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t = {t} must be positive")));
    }
    Ok(barcode
        .bars
        .iter()
        .filter(|b| b.contains(t))
        .map(|b| b.multiplicity as usize)
        .sum())
}

pub fn direct_sum(a: &Barcode, b: &Barcode) -> Barcode {
    canonicalize(a.bars.iter().chain(&b.bars).copied()).expect("canonical bars stay valid")
}

/// `V[delta]_t = V_{t + delta}`: every bar moves left by `delta`.
pub fn shift(barcode: &Barcode, delta: f64) -> Barcode {
    canonicalize(barcode.bars.iter().map(|b| Bar {
        birth: b.birth - delta,
        death: b.death - delta,
        multiplicity: b.multiplicity,
    }))
    .expect("shift preserves bar validity")
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DeathRepr {
    Finite(f64),
    Marker(String),
}

#[derive(Serialize, Deserialize)]
struct BarRepr {
    birth: f64,
    death: DeathRepr,
    mult: u32,
}

#[derive(Serialize, Deserialize)]
struct BarcodeRepr {
    bars: Vec<BarRepr>,
}

impl Serialize for Barcode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BarcodeRepr {
            bars: self
                .bars
                .iter()
                .map(|b| BarRepr {
                    birth: b.birth,
                    death: if b.is_infinite() { DeathRepr::Marker("inf".into()) } else { DeathRepr::Finite(b.death) },
                    mult: b.multiplicity,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Barcode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = BarcodeRepr::deserialize(deserializer)?;
        let mut bars = Vec::with_capacity(repr.bars.len());
        for bar in repr.bars {
            let death = match bar.death {
                DeathRepr::Finite(d) => d,
                DeathRepr::Marker(m) if m == "inf" => f64::INFINITY,
                DeathRepr::Marker(m) => return Err(D::Error::custom(format!("unknown death marker {m:?}"))),
            };
            bars.push(Bar { birth: bar.birth, death, multiplicity: bar.mult });
        }
        canonicalize(bars).map_err(D::Error::custom)
    }
}
