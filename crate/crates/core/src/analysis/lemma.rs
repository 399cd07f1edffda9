//! Schwarz–Pick type estimate for zero-free self-maps of the ball,
//!
//! ```text
//! |∇g(z)| ≤ 2/(1−|z|²) · |g(z)| log(1/|g(z)|),
//! ```
//!
//! and the rescaling `g_z(w) = f(z + d_z w / 2) / M_f(z)` that transports it
//! to the small balls `B_z`.

use rayon::prelude::*;
use serde::Serialize;

use super::modulus::{self, ModulusProbe, DEFAULT_BOUNDARY_SAMPLES};
use super::{at_point, SampleGrid, SamplePoint};
use crate::functions::{HoloFunction, ZeroSet};
use crate::geometry::{self, BallPoint};
use crate::{Error, Result};

/// `|g(z)|` may exceed 1 by this much before the self-map precondition fails.
pub const MODULUS_SLACK: f64 = 1e-9;

fn require_zero_free(g: &HoloFunction) -> Result<()> {
    if let ZeroSet::Known(planes) = g.zero_set() {
        let origin = vec![num_complex::Complex64::new(0.0, 0.0); g.dim()];
        if planes.iter().any(|h| h.distance(&origin) < 1.0) {
            return Err(Error::Precondition("the function has declared zeros in the ball".into()));
        }
    }
    Ok(())
}

/// `(|∇g(z)|, 2/(1−|z|²) · |g(z)| log(1/|g(z)|))`.
pub fn schwarz_pick_sides(g: &HoloFunction, z: &BallPoint) -> Result<(f64, f64)> {
    require_zero_free(g)?;
    let (v, grad) = g.eval_with_gradient(z)?;
    let m = v.norm();
    if m > 1.0 + MODULUS_SLACK {
        return Err(Error::Precondition(format!("|g(z)| = {m} exceeds 1")));
    }
    let rhs = if m == 0.0 { 0.0 } else { 2.0 / (1.0 - z.norm() * z.norm()) * m * (1.0 / m).ln() };
    Ok((geometry::norm(&grad), rhs))
}

/// Right side minus left side; the lemma says this is `≥ 0`.
pub fn schwarz_pick_margin(g: &HoloFunction, z: &BallPoint) -> Result<f64> {
    let (lhs, rhs) = schwarz_pick_sides(g, z)?;
    Ok(rhs - lhs)
}

/// `g_z` together with `M_f(z)`.
pub fn rescale_with(f: &HoloFunction, z: &BallPoint, probe: &ModulusProbe) -> Result<(HoloFunction, f64)> {
    let m = modulus::sup_modulus_with(f, z, probe)?;
    if !(m > 0.0) {
        return Err(Error::Precondition("M_f(z) = 0: f vanishes identically near z".into()));
    }
    Ok((f.rescaled(z.coords(), z.dz() / 2.0, 1.0 / m), m))
}

/// `g_z(w) = f(z + (d_z/2) w) / M_f(z)`, so that `|g_z| ≤ 1` and
/// `d_z/2 · |∇f(z)| = M_f(z) · |∇g_z(0)|`.
pub fn rescale_to_subball(f: &HoloFunction, z: &BallPoint) -> Result<HoloFunction> {
    Ok(rescale_with(f, z, &ModulusProbe::new(f.dim(), DEFAULT_BOUNDARY_SAMPLES, 0))?.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginPoint {
    pub k: u32,
    pub direction: usize,
    pub d_z: f64,
    pub modulus: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    #[serde(skip)]
    pub points: Vec<MarginPoint>,
    pub min_margin: f64,
    pub median_margin: f64,
    /// Point with the smallest margin.
    pub extremal: MarginPoint,
    /// Point with the largest `lhs / rhs` (closest to equality, relatively).
    pub tightest: MarginPoint,
    /// Points with margin below `−tolerance`.
    pub violations: usize,
    pub tolerance: f64,
}

/// Margins at every grid point (origin included when the grid has it).
pub fn lemma_scan(g: &HoloFunction, grid: &SampleGrid, tolerance: f64) -> Result<LemmaReport> {
    if grid.dim() != g.dim() {
        return Err(Error::Dimension { expected: g.dim(), got: grid.dim() });
    }
    let pts = grid.points();
    let eval = |p: &SamplePoint| -> Result<MarginPoint> {
        let (lhs, rhs) = schwarz_pick_sides(g, &p.z)?;
        Ok(MarginPoint {
            k: p.k,
            direction: p.direction,
            d_z: p.z.dz(),
            modulus: g.eval(&p.z)?.norm(),
            lhs,
            rhs,
            margin: rhs - lhs,
        })
    };
    let results: Vec<Result<MarginPoint>> = pts.par_iter().map(eval).collect();
    let mut points = Vec::with_capacity(results.len());
    for (p, r) in pts.iter().zip(results) {
        points.push(r.map_err(|e| at_point(p, e))?);
    }
    let mut sorted: Vec<f64> = points.iter().map(|p| p.margin).collect();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let median = if n % 2 == 1 { sorted[n / 2] } else { 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]) };
    // first occurrence wins, so ties resolve in grid order
    let extremal = points.iter().fold(&points[0], |a, b| if b.margin < a.margin { b } else { a }).clone();
    let ratio = |p: &MarginPoint| {
        if p.rhs > 0.0 {
            p.lhs / p.rhs
        } else if p.lhs > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    };
    let tightest = points.iter().fold(&points[0], |a, b| if ratio(b) > ratio(a) { b } else { a }).clone();
    let violations = points.iter().filter(|p| p.margin < -tolerance).count();
    Ok(LemmaReport { min_margin: sorted[0], median_margin: median, extremal, tightest, violations, tolerance, points })
}
