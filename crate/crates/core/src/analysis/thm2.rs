//! The Herglotz-side criterion
//!
//! ```text
//! exp(Pν(z)) · [max_{w ∈ ∂B_z} Pν(w) − Pν(z)] ≤ C ω(d_z)
//! ```
//!
//! and its little-Bloch scan `Q_k`. `Pν` is harmonic, so the boundary max of
//! the closed sub-ball is the sup over the open one.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::modulus::{circle_extremum, Goal, DEFAULT_BOUNDARY_SAMPLES};
use super::{SampleGrid, Trend};
use crate::functions::{BoundaryData, HpCheck};
use crate::quadrature::{self, CircleGrid, DEFAULT_NODES};
use crate::weights::Weight;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thm2Options {
    pub boundary_samples: usize,
    pub base_nodes: usize,
}

impl Default for Thm2Options {
    fn default() -> Self {
        Self { boundary_samples: DEFAULT_BOUNDARY_SAMPLES, base_nodes: DEFAULT_NODES }
    }
}

/// `exp(Pν(z)) · [max_{∂B_z} Pν − Pν(z)]`, without the weight.
pub fn theorem2_unnormalized(bd: &BoundaryData, z: Complex64, opts: &Thm2Options) -> Result<f64> {
    let d = 1.0 - z.norm();
    if !(d > 0.0) {
        return Err(Error::OutsideBall { norm: z.norm() });
    }
    let base = opts.base_nodes.max(bd.sample_count().unwrap_or(0));
    // the ball boundary comes within d/2 of the circle
    let grid = CircleGrid::shared(quadrature::grid_size_for(base, d / 2.0))?;
    let pz = quadrature::poisson(bd, grid, z)?;
    let (_, top) = circle_extremum(opts.boundary_samples.max(4), Goal::Max, |t| {
        quadrature::poisson(bd, grid, z + Complex64::from_polar(d / 2.0, t))
    })?;
    Ok(pz.exp() * (top - pz).max(0.0))
}

/// The criterion value divided by `ω(d_z)`.
pub fn theorem2_quantity(bd: &BoundaryData, w: &Weight, z: Complex64, opts: &Thm2Options) -> Result<f64> {
    let q = theorem2_unnormalized(bd, z, opts)?;
    Ok(q / w.eval(1.0 - z.norm())?)
}

/// `Q_k = max_j` of the unnormalized quantity at `(1 − 2^{-k}) e^{2πij/J}`,
/// `k = 1..K`.
pub fn little_bloch_scan(bd: &BoundaryData, k_max: u32, directions: usize, opts: &Thm2Options) -> Result<Vec<f64>> {
    let grid = SampleGrid::new(1, k_max, directions, 0)?;
    let pts = grid.points();
    let vals: Vec<Result<f64>> = pts.par_iter().map(|p| theorem2_unnormalized(bd, p.z.coords()[0], opts)).collect();
    let mut q = vec![0.0f64; k_max as usize];
    for (p, v) in pts.iter().zip(vals) {
        let v = v.map_err(|e| super::at_point(p, e))?;
        let slot = &mut q[p.k as usize - 1];
        *slot = slot.max(v);
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm2Row {
    pub k: u32,
    pub direction: usize,
    pub d_z: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm2Report {
    #[serde(skip)]
    pub rows: Vec<Thm2Row>,
    pub empirical_constant: f64,
    pub row_maxima: Vec<f64>,
    pub trend: Trend,
    pub hp_exponent: f64,
    pub hp: HpCheck,
}

/// The normalized quantity over a one-variable grid, plus the separate
/// `ψ ∈ L^p`, `log ψ ∈ L^1` check.
pub fn theorem2_grid(
    bd: &BoundaryData,
    w: &Weight,
    grid: &SampleGrid,
    p: f64,
    opts: &Thm2Options,
) -> Result<Thm2Report> {
    w.validate()?;
    if grid.dim() != 1 {
        return Err(Error::Dimension { expected: 1, got: grid.dim() });
    }
    let pts = grid.points();
    let vals: Vec<Result<f64>> = pts.par_iter().map(|pt| theorem2_quantity(bd, w, pt.z.coords()[0], opts)).collect();
    let mut rows = Vec::with_capacity(pts.len());
    for (pt, v) in pts.iter().zip(vals) {
        let value = v.map_err(|e| super::at_point(pt, e))?;
        rows.push(Thm2Row { k: pt.k, direction: pt.direction, d_z: pt.z.dz(), value });
    }
    let mut row_maxima = vec![0.0f64; grid.k_max() as usize];
    for r in &rows {
        let slot = &mut row_maxima[r.k as usize - 1];
        *slot = slot.max(r.value);
    }
    let empirical_constant = row_maxima.iter().copied().fold(0.0, f64::max);
    let hp = bd.hp_norm(p, opts.base_nodes)?;
    Ok(Thm2Report { trend: Trend::of(&row_maxima), rows, empirical_constant, row_maxima, hp_exponent: p, hp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::Density;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn trivial_measures_give_zero() {
        let opts = Thm2Options::default();
        let zero = BoundaryData::zero();
        let flat = BoundaryData::new(Density::Constant(3.0), vec![]).unwrap();
        for z in [c(0.0), c(0.5), Complex64::new(-0.3, 0.8)] {
            assert_eq!(theorem2_unnormalized(&zero, z, &opts).unwrap(), 0.0);
            assert!(theorem2_unnormalized(&flat, z, &opts).unwrap().abs() < 1e-12);
        }
        assert!(little_bloch_scan(&zero, 6, 16, &opts).unwrap().iter().all(|&q| q == 0.0));
    }

    #[test]
    fn single_atom_against_scan_oracle() {
        let bd = BoundaryData::preset("singular_atom").unwrap();
        let z = c(-0.5);
        let p = |w: Complex64| -(1.0 - w.norm_sqr()) / (c(1.0) - w).norm_sqr();
        assert!((p(z) + 1.0 / 3.0).abs() < 1e-15);
        // fine brute-force scan of the closed-form Poisson integral on ∂B_z
        let top = (0..200_000)
            .map(|j| p(z + Complex64::from_polar(0.25, 2.0 * std::f64::consts::PI * j as f64 / 200_000.0)))
            .fold(f64::NEG_INFINITY, f64::max);
        let expect = p(z).exp() * (top - p(z));
        let got = theorem2_unnormalized(&bd, z, &Thm2Options::default()).unwrap();
        assert!(got > 0.0 && got.is_finite());
        assert!((got - expect).abs() < 1e-9, "{got} vs {expect}");
        let normalized = theorem2_quantity(&bd, &Weight::Power { alpha: 1.0 }, z, &Thm2Options::default()).unwrap();
        assert!((normalized - got / 0.5).abs() < 1e-15);
    }

    #[test]
    fn exp_cos_scan_decays() {
        // F = e^z exactly, so Q_k = e^{r_k} 2^{-k-1}
        let bd = BoundaryData::preset("exp_cos").unwrap();
        let q = little_bloch_scan(&bd, 10, 64, &Thm2Options::default()).unwrap();
        for (k, v) in q.iter().enumerate() {
            let r = 1.0 - 0.5f64.powi(k as i32 + 1);
            let expect = r.exp() * 0.5f64.powi(k as i32 + 2);
            assert!((v - expect).abs() < 1e-9 * expect.max(1.0), "k={} {v} vs {expect}", k + 1);
        }
        assert!(q[9] <= 0.01 * q[0]);
    }
}
