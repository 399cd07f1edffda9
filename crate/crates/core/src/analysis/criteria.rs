//! The four equivalent membership conditions, pointwise and over a grid.
//!
//! With `d = d_z`, `M = M_f(z)` and `χ = χ_E(z)`:
//!
//! ```text
//! (i)   |∇f(z)| · d / ω(d)
//! (ii)  (M − inf_{B_z} |f|) / ω(d)
//! (iii) (χ M + |f(z)| log(M / |f(z)|)) / ω(d)
//! (iv)  (χ M + (1 − χ) |f(z)| log(M / |f(z)|)) / ω(d)
//! ```
//!
//! The two-point oscillation in (ii) is split into separate sup and inf
//! searches, which gives the same value without a doubled search space.

use rayon::prelude::*;
use serde::Serialize;

use super::modulus::{self, ModulusProbe, DEFAULT_BOUNDARY_SAMPLES};
use super::{at_point, zeros, SampleGrid, SamplePoint, Trend, MAX_K};
use crate::functions::HoloFunction;
use crate::geometry::{self, BallPoint};
use crate::weights::Weight;
use crate::{Error, Result};

/// Slack allowed for `M_f(z) ≥ |f(z)|`, relative to `max(1, M)`.
pub const SUP_SLACK: f64 = 1e-12;

/// Everything the four conditions need at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValues {
    pub modulus: f64,
    pub grad_norm: f64,
    pub sup: f64,
    pub inf: f64,
    pub in_e: bool,
}

impl PointValues {
    pub fn compute(f: &HoloFunction, z: &BallPoint, probe: &ModulusProbe) -> Result<Self> {
        let (v, g) = f.eval_with_gradient(z)?;
        let modulus = v.norm();
        let sup = modulus::sup_modulus_with(f, z, probe)?;
        if sup < modulus - SUP_SLACK * sup.max(1.0) {
            return Err(Error::Inconsistent(format!("M_f(z) = {sup} is below |f(z)| = {modulus}")));
        }
        let in_e = zeros::in_e(f, z)?;
        // outside E the ball is zero-free, so the minimum sits on the boundary
        let inf = if in_e { 0.0 } else { modulus::boundary_min(f, z, probe)? };
        Ok(Self { modulus, grad_norm: geometry::norm(&g), sup: sup.max(modulus), inf, in_e })
    }

    /// `|f| log(M/|f|)`, taken as 0 on the zero set and where `M = 0`.
    pub fn log_term(&self) -> f64 {
        if self.modulus == 0.0 || self.sup == 0.0 {
            return 0.0;
        }
        (self.modulus * (self.sup / self.modulus).ln()).max(0.0)
    }

    fn chi_term(&self) -> f64 {
        if self.in_e {
            self.sup
        } else {
            0.0
        }
    }

    pub fn lhs_i(&self, d: f64, omega: f64) -> f64 {
        self.grad_norm * d / omega
    }

    pub fn lhs_ii(&self, omega: f64) -> f64 {
        (self.sup - self.inf).max(0.0) / omega
    }

    pub fn lhs_iii(&self, omega: f64) -> f64 {
        (self.chi_term() + self.log_term()) / omega
    }

    pub fn lhs_iv(&self, omega: f64) -> f64 {
        let masked = if self.in_e { 0.0 } else { self.log_term() };
        (self.chi_term() + masked) / omega
    }
}

fn omega_at(w: &Weight, z: &BallPoint) -> Result<f64> {
    w.eval(z.dz())
}

fn probe_for(f: &HoloFunction) -> ModulusProbe {
    ModulusProbe::new(f.dim(), DEFAULT_BOUNDARY_SAMPLES, 0)
}

pub fn condition_i(f: &HoloFunction, w: &Weight, z: &BallPoint) -> Result<f64> {
    let g = f.gradient(z)?;
    Ok(geometry::norm(&g) * z.dz() / omega_at(w, z)?)
}

pub fn condition_ii(f: &HoloFunction, w: &Weight, z: &BallPoint) -> Result<f64> {
    Ok(PointValues::compute(f, z, &probe_for(f))?.lhs_ii(omega_at(w, z)?))
}

pub fn condition_iii(f: &HoloFunction, w: &Weight, z: &BallPoint) -> Result<f64> {
    Ok(PointValues::compute(f, z, &probe_for(f))?.lhs_iii(omega_at(w, z)?))
}

pub fn condition_iv(f: &HoloFunction, w: &Weight, z: &BallPoint) -> Result<f64> {
    Ok(PointValues::compute(f, z, &probe_for(f))?.lhs_iv(omega_at(w, z)?))
}

/// One value per condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Conditions<T> {
    pub i: T,
    pub ii: T,
    pub iii: T,
    pub iv: T,
}

impl<T: Copy> Conditions<T> {
    pub fn to_array(&self) -> [T; 4] {
        [self.i, self.ii, self.iii, self.iv]
    }

    fn from_array(a: [T; 4]) -> Self {
        Self { i: a[0], ii: a[1], iii: a[2], iv: a[3] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriteriaRow {
    pub k: u32,
    pub direction: usize,
    pub d_z: f64,
    #[serde(rename = "in_E")]
    pub in_e: bool,
    pub lhs_i: f64,
    pub lhs_ii: f64,
    pub lhs_iii: f64,
    pub lhs_iv: f64,
}

impl CriteriaRow {
    pub fn lhs(&self) -> [f64; 4] {
        [self.lhs_i, self.lhs_ii, self.lhs_iii, self.lhs_iv]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RowMaxima {
    pub k: u32,
    pub maxima: Conditions<f64>,
}

/// The implication chain (i) ⇒ (ii) ⇒ (iii) ⇒ (iv) measured on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainCheck {
    /// `sup lhs_ii / sup lhs_i`.
    pub c1: f64,
    /// `3 ·` moderateness constant of `ω`.
    pub c1_bound: f64,
    pub ii_within_bound: bool,
    /// `sup lhs_iii ≤ sup lhs_ii` over the points outside `E`, where the
    /// log term is dominated by `M − |f|`.
    pub iii_le_ii: bool,
    /// `sup lhs_iii ≤ 2 sup lhs_ii` over all points: inside `E` the `χ_E M`
    /// term is bounded by the oscillation separately.
    pub iii_le_twice_ii: bool,
    pub iv_le_iii_pointwise: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditSettings {
    pub boundary_samples: usize,
    pub seed: u64,
    /// Slack for the chain comparisons.
    pub tolerance: f64,
}

impl Default for AuditSettings {
    fn default() -> Self {
        Self { boundary_samples: DEFAULT_BOUNDARY_SAMPLES, seed: 0, tolerance: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriteriaReport {
    #[serde(skip)]
    pub rows: Vec<CriteriaRow>,
    pub empirical_constants: Conditions<f64>,
    pub row_maxima: Vec<RowMaxima>,
    pub trend_flags: Conditions<Trend>,
    pub verdict: Trend,
    pub moderateness_constant: f64,
    pub chain: ChainCheck,
    pub notes: Vec<String>,
}

pub const NOTE_E_UNVERIFIED: &str = "E-membership assumed false (unverified)";
pub const NOTE_OMEGA_UNVERIFIED: &str = "ω moderateness unverified";

/// Whether the dyadic moderateness estimate has settled: finite, and the
/// same at half the grid depth.
fn moderateness(w: &Weight) -> Result<(f64, bool)> {
    let full = w.moderateness_constant(MAX_K)?;
    let half = w.moderateness_constant(MAX_K / 2)?;
    Ok((full, full.is_finite() && (full - half).abs() <= 1e-9 * full))
}

/// Evaluates all four conditions at every grid point, in parallel, and
/// aggregates constants, per-`k` row maxima and trends. Rows come back in
/// grid order regardless of scheduling.
pub fn audit_criteria(
    f: &HoloFunction,
    w: &Weight,
    grid: &SampleGrid,
    settings: &AuditSettings,
) -> Result<CriteriaReport> {
    w.validate()?;
    if grid.dim() != f.dim() {
        return Err(Error::Dimension { expected: f.dim(), got: grid.dim() });
    }
    let probe = ModulusProbe::new(f.dim(), settings.boundary_samples, settings.seed);
    let points = grid.points();
    let eval = |p: &SamplePoint| -> Result<CriteriaRow> {
        let pv = PointValues::compute(f, &p.z, &probe)?;
        let d = p.z.dz();
        let omega = w.eval(d)?;
        let row = CriteriaRow {
            k: p.k,
            direction: p.direction,
            d_z: d,
            in_e: pv.in_e,
            lhs_i: pv.lhs_i(d, omega),
            lhs_ii: pv.lhs_ii(omega),
            lhs_iii: pv.lhs_iii(omega),
            lhs_iv: pv.lhs_iv(omega),
        };
        if let Some(bad) = row.lhs().iter().find(|v| !v.is_finite()) {
            return Err(Error::Inconsistent(format!("non-finite criterion value {bad}")));
        }
        Ok(row)
    };
    let results: Vec<Result<CriteriaRow>> = points.par_iter().map(eval).collect();
    let mut rows = Vec::with_capacity(results.len());
    for (p, r) in points.iter().zip(results) {
        rows.push(r.map_err(|e| at_point(p, e))?);
    }

    let mut constants = [0.0f64; 4];
    let mut row_maxima: Vec<RowMaxima> = Vec::new();
    let mut iv_le_iii = true;
    let mut iii_outside_e = 0.0f64;
    for row in &rows {
        let lhs = row.lhs();
        for (c, v) in constants.iter_mut().zip(lhs) {
            *c = c.max(v);
        }
        iv_le_iii &= row.lhs_iv <= row.lhs_iii;
        if !row.in_e {
            iii_outside_e = iii_outside_e.max(row.lhs_iii);
        }
        match row_maxima.last_mut() {
            Some(last) if last.k == row.k => {
                let mut m = last.maxima.to_array();
                for (a, v) in m.iter_mut().zip(lhs) {
                    *a = a.max(v);
                }
                last.maxima = Conditions::from_array(m);
            }
            _ => row_maxima.push(RowMaxima { k: row.k, maxima: Conditions::from_array(lhs) }),
        }
    }
    let trend_of = |idx: usize| {
        let seq: Vec<f64> = row_maxima.iter().filter(|r| r.k > 0).map(|r| r.maxima.to_array()[idx]).collect();
        Trend::of(&seq)
    };
    let trends = Conditions::from_array([trend_of(0), trend_of(1), trend_of(2), trend_of(3)]);
    let verdict = Trend::combine(trends.to_array());

    let (c_mod, settled) = moderateness(w)?;
    let c1 = if constants[1] == 0.0 {
        0.0
    } else if constants[0] == 0.0 {
        f64::INFINITY
    } else {
        constants[1] / constants[0]
    };
    let chain = ChainCheck {
        c1,
        c1_bound: 3.0 * c_mod,
        ii_within_bound: c1 <= 3.0 * c_mod,
        iii_le_ii: iii_outside_e <= constants[1] + settings.tolerance,
        iii_le_twice_ii: constants[2] <= 2.0 * constants[1] + settings.tolerance,
        iv_le_iii_pointwise: iv_le_iii,
    };
    let mut notes = Vec::new();
    if !zeros::e_membership_verified(f) {
        notes.push(NOTE_E_UNVERIFIED.to_string());
    }
    if !settled {
        notes.push(NOTE_OMEGA_UNVERIFIED.to_string());
    }
    Ok(CriteriaReport {
        rows,
        empirical_constants: Conditions::from_array(constants),
        row_maxima,
        trend_flags: trends,
        verdict,
        moderateness_constant: c_mod,
        chain,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::presets;
    use num_complex::Complex64;

    fn at(re: f64, im: f64) -> BallPoint {
        BallPoint::scalar(Complex64::new(re, im)).unwrap()
    }

    fn identity() -> HoloFunction {
        presets::by_name("identity", &Default::default()).unwrap()
    }

    #[test]
    fn condition_i_examples() {
        assert!((condition_i(&identity(), &Weight::Constant, &at(0.9, 0.0)).unwrap() - 0.1).abs() < 1e-15);
        let l = presets::log1m(4096).unwrap();
        for r in [0.1, 0.5, 0.9] {
            assert!((condition_i(&l, &Weight::Constant, &at(r, 0.0)).unwrap() - 1.0).abs() < 1e-12);
        }
        let c = HoloFunction::constant(1, Complex64::new(3.0, 0.0)).unwrap();
        assert_eq!(condition_i(&c, &Weight::Constant, &at(0.4, 0.1)).unwrap(), 0.0);
    }

    #[test]
    fn condition_ii_examples() {
        let z = at(0.5, 0.0);
        assert!((condition_ii(&identity(), &Weight::Constant, &z).unwrap() - 0.5).abs() < 1e-14);
        assert!((condition_ii(&identity(), &Weight::Power { alpha: 1.0 }, &z).unwrap() - 1.0).abs() < 1e-14);
        let c = HoloFunction::constant(1, Complex64::new(-2.0, 1.0)).unwrap();
        assert_eq!(condition_ii(&c, &Weight::Constant, &z).unwrap(), 0.0);
    }

    #[test]
    fn conditions_iii_iv_examples() {
        let z = at(0.2, 0.0);
        let expect_iii = 0.6 + 0.2 * (0.6f64 / 0.2).ln();
        assert!((condition_iii(&identity(), &Weight::Constant, &z).unwrap() - expect_iii).abs() < 1e-14);
        assert!((condition_iv(&identity(), &Weight::Constant, &z).unwrap() - 0.6).abs() < 1e-14);
        let c = HoloFunction::constant(1, Complex64::new(0.7, 0.0)).unwrap();
        assert_eq!(condition_iii(&c, &Weight::Constant, &z).unwrap(), 0.0);
        assert_eq!(condition_iv(&c, &Weight::Constant, &z).unwrap(), 0.0);
    }

    #[test]
    fn singular_inner_log_term() {
        // single atom at 1: on the real axis Pν(r) = −(1+r)/(1−r), so
        // r = 1/3 gives |F| = e^{−2}; the ball around it reaches down to r = 0
        // where Pν = −1, and the boundary max of Pν sits there
        let f = presets::by_name("singular_inner", &Default::default()).unwrap();
        let z = at(1.0 / 3.0, 0.0);
        let pv = PointValues::compute(&f, &z, &ModulusProbe::new(1, 128, 0)).unwrap();
        assert!(!pv.in_e);
        assert!((pv.modulus - (-2f64).exp()).abs() < 1e-14);
        assert!((pv.sup - (-1f64).exp()).abs() < 1e-12);
        assert!((pv.log_term() - (-2f64).exp()).abs() < 1e-12);
        assert!((condition_iii(&f, &Weight::Constant, &z).unwrap() - 0.1353352832366127).abs() < 1e-12);
    }

    #[test]
    fn identity_audit_is_bounded() {
        let grid = SampleGrid::new(1, 10, 64, 0).unwrap();
        let r = audit_criteria(&identity(), &Weight::Constant, &grid, &AuditSettings::default()).unwrap();
        assert_eq!(r.rows.len(), 640);
        for c in r.empirical_constants.to_array() {
            assert!(c <= 2.0, "{c}");
        }
        assert_eq!(r.verdict, Trend::Bounded);
        assert!(r.chain.ii_within_bound && r.chain.iii_le_ii && r.chain.iv_le_iii_pointwise);
        assert!(r.chain.iii_le_twice_ii);
        assert!(r.notes.is_empty());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let grid = SampleGrid::new(2, 3, 8, 0).unwrap();
        assert!(audit_criteria(&identity(), &Weight::Constant, &grid, &AuditSettings::default()).is_err());
    }
}
