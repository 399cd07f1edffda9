//! Numerical evaluators for the membership criteria, the Schwarz–Pick type
//! lemma for zero-free self-maps, and the Herglotz-side quantity together
//! with its little-Bloch decay scan.
//!
//! Every supremum here is a maximum over a finite sample grid, hence a lower
//! bound for the true constant. Verdicts are trends, not proofs.

pub mod criteria;
pub mod lemma;
pub mod modulus;
pub mod thm2;
pub mod zeros;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::geometry::BallPoint;
use crate::lowdisc;
use crate::{Error, Result};

pub use criteria::{
    audit_criteria, condition_i, condition_ii, condition_iii, condition_iv, AuditSettings, ChainCheck, Conditions,
    CriteriaReport, CriteriaRow, PointValues, RowMaxima,
};
pub use lemma::{lemma_scan, rescale_to_subball, schwarz_pick_margin, LemmaReport, MarginPoint};
pub use modulus::{inf_modulus, sup_modulus, ModulusProbe};
pub use thm2::{
    little_bloch_scan, theorem2_grid, theorem2_quantity, theorem2_unnormalized, Thm2Options, Thm2Report, Thm2Row,
};
pub use zeros::{in_e, zero_count};

pub const DEFAULT_K: u32 = 10;
pub const DEFAULT_J: usize = 64;
pub const MAX_K: u32 = 16;
pub const MAX_J: usize = 1024;

/// Row maxima below this count as zero in trend detection.
pub const TREND_ZERO: f64 = 1e-12;
/// Ratio of consecutive row maxima that counts as a growth step.
pub const GROWTH_RATIO: f64 = 1.2;
/// Consecutive growth steps needed for a "growing" verdict.
pub const GROWTH_RUN: usize = 3;

/// Descriptive trend of a sequence of row maxima.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Bounded,
    Growing,
    Inconclusive,
}

impl Trend {
    /// Trend of `m_1, …, m_K`: growing when `m_k / m_{k−1} > 1.2` for three
    /// consecutive `k`, inconclusive for fewer than four rows or non-finite data.
    pub fn of(maxima: &[f64]) -> Trend {
        if maxima.len() < GROWTH_RUN + 1 || maxima.iter().any(|m| !m.is_finite()) {
            return Trend::Inconclusive;
        }
        let mut run = 0;
        for w in maxima.windows(2) {
            let (prev, next) = (w[0], w[1]);
            let step = if next < TREND_ZERO {
                false
            } else if prev < TREND_ZERO {
                true
            } else {
                next / prev > GROWTH_RATIO
            };
            run = if step { run + 1 } else { 0 };
            if run >= GROWTH_RUN {
                return Trend::Growing;
            }
        }
        Trend::Bounded
    }

    /// Growing if any part grows, bounded if all are bounded.
    pub fn combine(parts: impl IntoIterator<Item = Trend>) -> Trend {
        let mut all_bounded = true;
        for t in parts {
            match t {
                Trend::Growing => return Trend::Growing,
                Trend::Inconclusive => all_bounded = false,
                Trend::Bounded => {}
            }
        }
        if all_bounded {
            Trend::Bounded
        } else {
            Trend::Inconclusive
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Trend::Bounded => "bounded",
            Trend::Growing => "growing",
            Trend::Inconclusive => "inconclusive",
        }
    }
}

/// One evaluation point of a [`SampleGrid`]. `k = 0` is the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePoint {
    pub k: u32,
    pub direction: usize,
    pub z: BallPoint,
}

/// Points `r_k u_j` with `r_k = 1 − 2^{-k}`, `k = 1..K`, and `J` unit
/// directions `u_j`: equispaced for `n = 1`, low-discrepancy for `n > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    dim: usize,
    k_max: u32,
    directions: Vec<Vec<Complex64>>,
    include_origin: bool,
}

impl SampleGrid {
    pub fn new(dim: usize, k_max: u32, directions: usize, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension { expected: 1, got: 0 });
        }
        if !(1..=MAX_K).contains(&k_max) {
            return Err(Error::Precondition(format!("grid depth K = {k_max} must lie in 1..={MAX_K}")));
        }
        if !(1..=MAX_J).contains(&directions) {
            return Err(Error::Precondition(format!("direction count J = {directions} must lie in 1..={MAX_J}")));
        }
        Ok(Self { dim, k_max, directions: lowdisc::sphere_directions(dim, directions, seed), include_origin: false })
    }

    /// Same grid plus the origin, listed first with `k = 0`.
    pub fn with_origin(mut self) -> Self {
        self.include_origin = true;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn directions(&self) -> &[Vec<Complex64>] {
        &self.directions
    }

    pub fn radius(k: u32) -> f64 {
        1.0 - 0.5f64.powi(k as i32)
    }

    /// All points, origin first (if included), then by `k` and direction.
    pub fn points(&self) -> Vec<SamplePoint> {
        let mut out = Vec::with_capacity(self.k_max as usize * self.directions.len() + 1);
        if self.include_origin {
            out.push(SamplePoint { k: 0, direction: 0, z: BallPoint::origin(self.dim) });
        }
        for k in 1..=self.k_max {
            for (j, u) in self.directions.iter().enumerate() {
                let z = BallPoint::on_sphere(Self::radius(k), u).expect("r_k < 1 and u is a unit vector");
                out.push(SamplePoint { k, direction: j, z });
            }
        }
        out
    }
}

/// Wraps an error with the sample point it occurred at.
pub(crate) fn at_point(p: &SamplePoint, e: Error) -> Error {
    Error::AtSamplePoint {
        k: p.k,
        direction: p.direction,
        coords: p.z.coords().iter().map(|c| (c.re, c.im)).collect(),
        source: Box::new(e),
    }
}
