//! Weights `ω: (0, 1] → (0, ∞)` and their diagnostics.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Truncation point of the `u`-integral after `t = δ e^{-u}`.
const FAST_MAJORANT_CUTOFF: f64 = 40.0;
const FAST_MAJORANT_INTERVALS: usize = 4096;
/// Below this the truncated tail is ignored.
const NEGLIGIBLE_TAIL: f64 = 1e-14;
/// Local decay rate `-d/du log(integrand)` at the cutoff below which the
/// integral is reported as divergent.
const MIN_DECAY_RATE: f64 = 0.025;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Weight {
    /// `t^α`.
    Power { alpha: f64 },
    /// `ω ≡ 1`, the Bloch space.
    Constant,
    /// `(log(e/t))^β`, either sign of `β`.
    LogGrowth { beta: f64 },
    /// `t^{-β}`.
    PowerGrowth { beta: f64 },
    /// Values at sample points `(t, ω(t))`, interpolated log-log linearly and
    /// extended by constants outside the sampled range.
    Tabulated { points: Vec<[f64; 2]> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightClass {
    LipschitzType,
    Bloch,
    NegativeSmoothness,
    Growth,
    Unclassified,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FastMajorant {
    Ratio(f64),
    Divergent,
}

impl FastMajorant {
    pub fn ratio(self) -> Option<f64> {
        match self {
            FastMajorant::Ratio(r) => Some(r),
            FastMajorant::Divergent => None,
        }
    }
}

impl Weight {
    pub fn validate(&self) -> Result<()> {
        let finite = |x: f64, name: &str| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidWeight(format!("{name} must be finite")))
            }
        };
        match self {
            Weight::Power { alpha } => finite(*alpha, "alpha"),
            Weight::LogGrowth { beta } | Weight::PowerGrowth { beta } => finite(*beta, "beta"),
            Weight::Constant => Ok(()),
            Weight::Tabulated { points } => {
                if points.is_empty() {
                    return Err(Error::InvalidWeight("tabulated weight needs samples".into()));
                }
                for w in points.windows(2) {
                    if !(w[0][0] < w[1][0]) {
                        return Err(Error::InvalidWeight("tabulated abscissae must be strictly increasing".into()));
                    }
                }
                for &[t, v] in points {
                    if !(t > 0.0 && t <= 1.0) || !(v > 0.0 && v.is_finite()) {
                        return Err(Error::InvalidWeight(format!(
                            "tabulated sample ({t}, {v}) must have t in (0,1] and a positive finite value"
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::WeightDomain(t));
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        match self {
            Weight::Power { alpha } => t.powf(*alpha),
            Weight::Constant => 1.0,
            Weight::LogGrowth { beta } => (1.0 - t.ln()).powf(*beta),
            Weight::PowerGrowth { beta } => t.powf(-*beta),
            Weight::Tabulated { points } => tabulated(points, t),
        }
    }

    /// Empirical sup of `max(ω(a)/ω(b), ω(b)/ω(a))` over pairs with
    /// `1/2 ≤ a/b ≤ 2` from the grid `{2^{-j}(1 + i/8) : j ≤ k_max, 0 ≤ i ≤ 8} ∩ (0, 1]`.
    /// A lower bound for the moderateness constant.
    pub fn moderateness_constant(&self, k_max: u32) -> Result<f64> {
        if k_max < 2 {
            return Err(Error::Precondition(format!("k_max = {k_max} must be at least 2")));
        }
        let mut grid: Vec<f64> = (0..=k_max)
            .flat_map(|j| (0..=8).map(move |i| (0.5f64).powi(j as i32) * (1.0 + i as f64 / 8.0)))
            .filter(|&t| t <= 1.0)
            .collect();
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let values: Vec<f64> = grid.iter().map(|&t| self.eval_unchecked(t)).collect();
        let mut sup = 1.0f64;
        for (i, &a) in grid.iter().enumerate() {
            for (j, &b) in grid.iter().enumerate().skip(i + 1) {
                // grid is sorted, so b > a and only b ≤ 2a needs checking
                if b > 2.0 * a {
                    break;
                }
                let r = values[i] / values[j];
                sup = sup.max(r).max(1.0 / r);
            }
        }
        Ok(sup)
    }

    /// `(∫_0^δ ω(t)/t dt) / ω(δ)`, via `t = δ e^{-u}` and composite Simpson on `[0, 40]`.
    ///
    /// A tail that has not died out by the cutoff is closed off as an
    /// exponential with the local decay rate there (exact for power weights);
    /// a rate below `MIN_DECAY_RATE` is reported as divergence.
    pub fn fast_majorant_ratio(&self, delta: f64) -> Result<FastMajorant> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::WeightDomain(delta));
        }
        let base = self.eval_unchecked(delta);
        let integrand = |u: f64| self.eval_unchecked(delta * (-u).exp()) / base;
        let end = integrand(FAST_MAJORANT_CUTOFF);
        let tail = if end > NEGLIGIBLE_TAIL {
            let rate = (integrand(FAST_MAJORANT_CUTOFF - 1.0) / end).ln();
            if !(rate >= MIN_DECAY_RATE) {
                return Ok(FastMajorant::Divergent);
            }
            end / rate
        } else {
            0.0
        };
        let n = FAST_MAJORANT_INTERVALS;
        let h = FAST_MAJORANT_CUTOFF / n as f64;
        let mut acc = integrand(0.0) + integrand(FAST_MAJORANT_CUTOFF);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * integrand(i as f64 * h);
        }
        Ok(FastMajorant::Ratio(acc * h / 3.0 + tail))
    }

    pub fn classify(&self) -> WeightClass {
        match *self {
            Weight::Power { alpha } if alpha > 0.0 => WeightClass::LipschitzType,
            Weight::Power { alpha } if alpha < 0.0 => WeightClass::Growth,
            Weight::Power { .. } | Weight::Constant => WeightClass::Bloch,
            Weight::LogGrowth { beta } if beta > 0.0 => WeightClass::NegativeSmoothness,
            Weight::LogGrowth { beta } if beta < 0.0 => WeightClass::LipschitzType,
            Weight::LogGrowth { .. } => WeightClass::Bloch,
            Weight::PowerGrowth { beta } if beta > 0.0 => WeightClass::Growth,
            Weight::PowerGrowth { beta } if beta < 0.0 => WeightClass::LipschitzType,
            Weight::PowerGrowth { .. } => WeightClass::Bloch,
            Weight::Tabulated { .. } => WeightClass::Unclassified,
        }
    }
}

fn tabulated(points: &[[f64; 2]], t: f64) -> f64 {
    let first = points[0];
    let last = points[points.len() - 1];
    if t <= first[0] {
        return first[1];
    }
    if t >= last[0] {
        return last[1];
    }
    let idx = points.partition_point(|p| p[0] <= t);
    let [t0, v0] = points[idx - 1];
    let [t1, v1] = points[idx];
    let s = (t.ln() - t0.ln()) / (t1.ln() - t0.ln());
    (v0.ln() + s * (v1.ln() - v0.ln())).exp()
}
