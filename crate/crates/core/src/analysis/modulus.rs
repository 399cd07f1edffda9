//! Extrema of `|f|` over the small balls `B_z`.
//!
//! The sup over the open ball `B_z` equals the max over the boundary sphere
//! of the closed ball (maximum principle plus continuity), so only the sphere
//! `|w − z| = d_z/2` is searched. The same holds for the inf when `f` has no
//! zeros in the closed ball (minimum principle); otherwise the inf is 0.
//!
//! On the circle (`n = 1`) the search is an equispaced scan refined by golden
//! section around the best sample. On `S^{2n-1}` it is a low-discrepancy scan
//! followed by projected gradient steps on `|f|^2`.

use num_complex::Complex64;

use super::zeros;
use crate::functions::{HoloFunction, ZeroSet};
use crate::geometry::{self, BallPoint};
use crate::lowdisc;
use crate::Result;

pub const DEFAULT_BOUNDARY_SAMPLES: usize = 128;
pub const ASCENT_STEPS: usize = 20;
const GOLDEN_ITERATIONS: usize = 60;

/// Sampling directions reused across many sub-balls of one dimension.
#[derive(Debug, Clone)]
pub struct ModulusProbe {
    dim: usize,
    samples: usize,
    directions: Vec<Vec<Complex64>>,
}

impl ModulusProbe {
    pub fn new(dim: usize, boundary_samples: usize, seed: u64) -> Self {
        let samples = boundary_samples.max(4);
        Self { dim, samples, directions: lowdisc::sphere_directions(dim, samples, seed) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> usize {
        self.samples
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Goal {
    Max,
    Min,
}

impl Goal {
    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Goal::Max => a > b,
            Goal::Min => a < b,
        }
    }
}

/// Extremum of `phi(θ)` over `θ ∈ [0, 2π)`: `samples` equispaced values then
/// golden-section refinement inside the bracket of the best one.
pub(crate) fn circle_extremum(
    samples: usize,
    goal: Goal,
    mut phi: impl FnMut(f64) -> Result<f64>,
) -> Result<(f64, f64)> {
    let step = 2.0 * std::f64::consts::PI / samples as f64;
    let mut best = (0.0, phi(0.0)?);
    for j in 1..samples {
        let t = j as f64 * step;
        let v = phi(t)?;
        if goal.better(v, best.1) {
            best = (t, v);
        }
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = phi(c)?;
    let mut fd = phi(d)?;
    for _ in 0..GOLDEN_ITERATIONS {
        if goal.better(fc, fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = phi(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = phi(d)?;
        }
    }
    for (t, v) in [(c, fc), (d, fd)] {
        if goal.better(v, best.1) {
            best = (t, v);
        }
    }
    Ok(best)
}

fn sphere_extremum(f: &HoloFunction, z: &BallPoint, probe: &ModulusProbe, goal: Goal) -> Result<f64> {
    let center = z.coords();
    let radius = z.dz() / 2.0;
    if f.dim() == 1 {
        let c0 = center[0];
        let (_, v) =
            circle_extremum(probe.samples, goal, |t| Ok(f.value_at(&[c0 + Complex64::from_polar(radius, t)])?.norm()))?;
        return Ok(v);
    }
    let at = |u: &[Complex64]| -> Vec<Complex64> { center.iter().zip(u).map(|(c, x)| c + x * radius).collect() };
    let mut best_u = probe.directions[0].clone();
    let mut best = f.value_at(&at(&best_u))?.norm();
    for u in &probe.directions[1..] {
        let v = f.value_at(&at(u))?.norm();
        if goal.better(v, best) {
            best = v;
            best_u = u.clone();
        }
    }
    // projected gradient steps on |f|^2 over the unit sphere of directions
    let sign = if goal == Goal::Max { 1.0 } else { -1.0 };
    let mut eta = 0.25;
    for _ in 0..ASCENT_STEPS {
        let (v, grad) = f.jet_at(&at(&best_u))?;
        // real gradient of |f|^2 w.r.t. u, packed as a complex vector
        let g: Vec<Complex64> = grad.iter().map(|d| v * d.conj() * (2.0 * radius * sign)).collect();
        let radial = geometry::inner(&g, &best_u).re;
        let tangent: Vec<Complex64> = g.iter().zip(&best_u).map(|(gi, ui)| gi - ui * radial).collect();
        let tn = geometry::norm(&tangent);
        if tn < 1e-300 {
            break;
        }
        let mut improved = false;
        for _ in 0..30 {
            let cand: Vec<Complex64> = best_u.iter().zip(&tangent).map(|(u, t)| u + t * (eta / tn)).collect();
            let cn = geometry::norm(&cand);
            let cand: Vec<Complex64> = cand.iter().map(|x| x / cn).collect();
            let val = f.value_at(&at(&cand))?.norm();
            if goal.better(val, best) {
                best = val;
                best_u = cand;
                improved = true;
                eta *= 1.5;
                break;
            }
            eta *= 0.5;
        }
        if !improved {
            break;
        }
    }
    Ok(best)
}

/// `M_f(z) = sup{|f(w)| : w ∈ B_z}`.
pub fn sup_modulus_with(f: &HoloFunction, z: &BallPoint, probe: &ModulusProbe) -> Result<f64> {
    sphere_extremum(f, z, probe, Goal::Max)
}

pub fn sup_modulus(f: &HoloFunction, z: &BallPoint, boundary_samples: usize) -> Result<f64> {
    sup_modulus_with(f, z, &ModulusProbe::new(f.dim(), boundary_samples, 0))
}

/// `inf{|f(w)| : w ∈ B_z}`: 0 when a zero lies in the closed ball, otherwise
/// the minimum over the boundary sphere.
pub fn inf_modulus_with(f: &HoloFunction, z: &BallPoint, probe: &ModulusProbe) -> Result<f64> {
    let radius = z.dz() / 2.0;
    match f.zero_set() {
        ZeroSet::Known(planes) => {
            if planes.iter().any(|h| h.distance(z.coords()) <= radius) {
                return Ok(0.0);
            }
        }
        ZeroSet::Unknown if f.dim() == 1 => {
            match zeros::zero_count(f, z.coords()[0], radius) {
                Ok(n) if n > 0 => return Ok(0.0),
                Ok(_) => {}
                // |f| vanishes (numerically) on the boundary circle itself
                Err(crate::Error::ContourHitsZero { .. }) => return Ok(0.0),
                Err(e) => return Err(e),
            }
        }
        ZeroSet::Unknown => {}
    }
    sphere_extremum(f, z, probe, Goal::Min)
}

/// Minimum of `|f|` over the boundary sphere alone, for callers that have
/// already ruled out zeros in the ball.
pub(crate) fn boundary_min(f: &HoloFunction, z: &BallPoint, probe: &ModulusProbe) -> Result<f64> {
    sphere_extremum(f, z, probe, Goal::Min)
}

pub fn inf_modulus(f: &HoloFunction, z: &BallPoint) -> Result<f64> {
    inf_modulus_with(f, z, &ModulusProbe::new(f.dim(), DEFAULT_BOUNDARY_SAMPLES, 0))
}
