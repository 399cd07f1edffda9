//! Boundary data `ν = log ψ dm − μ_s` on the unit circle.
//!
//! `ψ` is split as `ψ = ψ_0 · Π_j |ζ − ζ_j|^{s_j}`: a density `ψ_0` that is
//! sampled at circle nodes, times optional power-type boundary zeros whose
//! Poisson and Herglotz integrals are known in closed form. The singular part
//! `μ_s` is a finite sum of point masses, also handled in closed form.

use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::quadrature::{CircleGrid, MAX_NODES_LOG2};
use crate::{Error, Result};

/// Zero samples of `ψ` are raised to this before taking logs.
pub const DENSITY_FLOOR: f64 = 1e-300;

pub type DensityFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The absolutely continuous factor `ψ_0`, as a function of the angle `θ`.
#[derive(Clone)]
pub enum Density {
    Constant(f64),
    /// `log ψ_0(θ) = offset + Σ_k cos[k-1] cos kθ + sin[k-1] sin kθ`.
    LogTrig {
        offset: f64,
        cos: Vec<f64>,
        sin: Vec<f64>,
    },
    /// `2^k` equispaced samples `ψ_0(2π i / L)`.
    Samples(Vec<f64>),
    Function(DensityFn),
}

impl fmt::Debug for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            Density::LogTrig { offset, cos, sin } => {
                f.debug_struct("LogTrig").field("offset", offset).field("cos", cos).field("sin", sin).finish()
            }
            Density::Samples(s) => write!(f, "Samples(len = {})", s.len()),
            Density::Function(_) => f.write_str("Function(..)"),
        }
    }
}

impl Density {
    /// `ψ(θ) = e^{cos θ}`.
    pub fn exp_cos() -> Self {
        Density::LogTrig { offset: 0.0, cos: vec![1.0], sin: vec![] }
    }

    /// `ψ(θ) = exp(-1 / (1.25 - cos θ))`, smooth, real-analytic, `0 < ψ < 1`.
    pub fn smooth_bump() -> Self {
        Density::Function(Arc::new(|t: f64| (-1.0 / (1.25 - t.cos())).exp()))
    }

    fn log_at(&self, theta: f64) -> f64 {
        match self {
            Density::Constant(c) => c.max(DENSITY_FLOOR).ln(),
            Density::LogTrig { offset, cos, sin } => {
                let mut acc = *offset;
                for (k, a) in cos.iter().enumerate() {
                    acc += a * ((k + 1) as f64 * theta).cos();
                }
                for (k, b) in sin.iter().enumerate() {
                    acc += b * ((k + 1) as f64 * theta).sin();
                }
                acc
            }
            Density::Function(f) => f(theta).max(DENSITY_FLOOR).ln(),
            Density::Samples(_) => unreachable!("sampled densities are tabulated directly"),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Density::Constant(c) if !(c.is_finite() && *c >= 0.0) => {
                Err(Error::InvalidBoundary(format!("constant density {c} must be finite and >= 0")))
            }
            Density::LogTrig { offset, cos, sin }
                if !(offset.is_finite() && cos.iter().chain(sin).all(|x| x.is_finite())) =>
            {
                Err(Error::InvalidBoundary("log-trigonometric coefficients must be finite".into()))
            }
            Density::Samples(s) => {
                if s.len() < 2 || !s.len().is_power_of_two() {
                    return Err(Error::InvalidBoundary(format!(
                        "sample count {} must be a power of two >= 2",
                        s.len()
                    )));
                }
                if s.len() > 1 << MAX_NODES_LOG2 {
                    return Err(Error::InvalidBoundary(format!("at most {} samples", 1 << MAX_NODES_LOG2)));
                }
                if let Some((i, v)) = s.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0)) {
                    return Err(Error::InvalidBoundary(format!("sample {i} = {v} must be finite and >= 0")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// A point mass `σ δ_ζ` of the singular measure `μ_s`, `ζ = e^{iθ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub angle: f64,
    pub mass: f64,
}

impl Atom {
    pub fn new(angle: f64, mass: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) || !angle.is_finite() {
            return Err(Error::InvalidBoundary(format!(
                "atom at angle {angle} needs a finite positive mass, got {mass}"
            )));
        }
        Ok(Self { angle, mass })
    }

    pub fn location(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }
}

/// A factor `|ζ − e^{iθ}|^{order}` of `ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryZero {
    pub angle: f64,
    pub order: f64,
}

impl BoundaryZero {
    pub fn location(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }
}

#[derive(Default)]
struct TableCache {
    slots: [OnceLock<Arc<[f64]>>; MAX_NODES_LOG2 as usize + 1],
    fully_positive: OnceLock<bool>,
}

/// The measure `ν = log ψ dm − μ_s`.
#[derive(Clone)]
pub struct BoundaryData {
    density: Density,
    zeros: Vec<BoundaryZero>,
    atoms: Vec<Atom>,
    cache: Arc<TableCache>,
}

impl fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryData")
            .field("density", &self.density)
            .field("zeros", &self.zeros)
            .field("atoms", &self.atoms)
            .finish()
    }
}

impl BoundaryData {
    pub fn new(density: Density, atoms: Vec<Atom>) -> Result<Self> {
        Self::with_zeros(density, Vec::new(), atoms)
    }

    pub fn with_zeros(density: Density, zeros: Vec<BoundaryZero>, atoms: Vec<Atom>) -> Result<Self> {
        density.validate()?;
        for a in &atoms {
            Atom::new(a.angle, a.mass)?;
        }
        for z in &zeros {
            if !(z.order > 0.0 && z.order.is_finite() && z.angle.is_finite()) {
                return Err(Error::InvalidBoundary(format!(
                    "boundary zero at angle {} needs a finite positive order",
                    z.angle
                )));
            }
        }
        Ok(Self { density, zeros, atoms, cache: Arc::default() })
    }

    /// `ν = 0`.
    pub fn zero() -> Self {
        Self::new(Density::Constant(1.0), Vec::new()).expect("valid")
    }

    /// Named boundary-data presets.
    pub fn preset(name: &str) -> Option<Self> {
        let bd = match name {
            "zero" | "one" => Self::zero(),
            "exp_cos" => Self::new(Density::exp_cos(), vec![]).ok()?,
            "smooth_bump" => Self::new(Density::smooth_bump(), vec![]).ok()?,
            "abs_one_minus" => {
                Self::with_zeros(Density::Constant(1.0), vec![BoundaryZero { angle: 0.0, order: 1.0 }], vec![]).ok()?
            }
            "singular_atom" => Self::new(Density::Constant(1.0), vec![Atom { angle: 0.0, mass: 1.0 }]).ok()?,
            "two_atoms" => {
                Self::new(Density::Constant(1.0), vec![Atom { angle: 0.0, mass: 0.5 }, Atom { angle: PI, mass: 0.5 }])
                    .ok()?
            }
            "exp_cos_atoms" => {
                Self::new(Density::exp_cos(), vec![Atom { angle: 1.0, mass: 0.3 }, Atom { angle: -2.0, mass: 0.2 }])
                    .ok()?
            }
            _ => return None,
        };
        Some(bd)
    }

    pub const PRESETS: &'static [&'static str] =
        &["zero", "exp_cos", "smooth_bump", "abs_one_minus", "singular_atom", "two_atoms", "exp_cos_atoms"];

    pub fn density(&self) -> &Density {
        &self.density
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn boundary_zeros(&self) -> &[BoundaryZero] {
        &self.zeros
    }

    pub fn has_singular_part(&self) -> bool {
        !self.atoms.is_empty()
    }

    /// Number of native samples of a sampled density.
    pub fn sample_count(&self) -> Option<usize> {
        match &self.density {
            Density::Samples(s) => Some(s.len()),
            _ => None,
        }
    }

    /// Whether `ψ_0` is positive (before flooring) at every node of the finest grid.
    pub fn density_positive(&self) -> bool {
        *self.cache.fully_positive.get_or_init(|| match &self.density {
            Density::Constant(c) => *c > 0.0,
            Density::LogTrig { .. } => true,
            Density::Samples(s) => s.iter().all(|&v| v > 0.0),
            Density::Function(f) => {
                let n = 1usize << MAX_NODES_LOG2;
                (0..n).all(|k| f(2.0 * PI * k as f64 / n as f64) > 0.0)
            }
        })
    }

    /// `true` when `ψ_0` vanishes identically at the nodes.
    pub fn density_identically_zero(&self) -> bool {
        match &self.density {
            Density::Constant(c) => *c == 0.0,
            Density::Samples(s) => s.iter().all(|&v| v == 0.0),
            _ => false,
        }
    }

    /// `log ψ_0` at the nodes of `grid`, cached per grid size.
    pub(crate) fn log_table(&self, grid: &CircleGrid) -> Arc<[f64]> {
        let slot = &self.cache.slots[grid.len().trailing_zeros() as usize];
        slot.get_or_init(|| self.build_log_table(grid.len())).clone()
    }

    fn build_log_table(&self, n: usize) -> Arc<[f64]> {
        match &self.density {
            Density::Samples(s) => {
                let logs: Vec<f64> = s.iter().map(|v| v.max(DENSITY_FLOOR).ln()).collect();
                resample(&logs, n).into()
            }
            d => (0..n).map(|k| d.log_at(2.0 * PI * k as f64 / n as f64)).collect(),
        }
    }

    /// `ψ` itself at the nodes, boundary-zero factors included.
    pub(crate) fn density_values(&self, grid: &CircleGrid) -> Vec<f64> {
        let logs = self.log_table(grid);
        grid.nodes()
            .iter()
            .zip(logs.iter())
            .map(|(zeta, l)| {
                let zero_factor: f64 =
                    self.zeros.iter().map(|bz| (zeta - bz.location()).norm().powf(bz.order)).product();
                let base = match &self.density {
                    Density::Constant(c) => *c,
                    _ => l.exp(),
                };
                base * zero_factor
            })
            .collect()
    }
}

/// Quadrature check that `ψ ∈ L^p` with `log ψ ∈ L^1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HpCheck {
    /// `(∫ ψ^p dm)^{1/p}`, or the largest node value for `p = ∞`.
    pub norm: f64,
    /// `∫ |log ψ| dm`, boundary zeros included.
    pub log_l1: f64,
    /// `false` when `ψ_0` hits the density floor at some node.
    pub log_integrable: bool,
}

impl BoundaryData {
    /// `L^p(m)` norm of `ψ` on an `nodes`-point grid. The singular part plays
    /// no role: `ψ` is the density of the absolutely continuous part only.
    pub fn hp_norm(&self, p: f64, nodes: usize) -> Result<HpCheck> {
        if !(p > 0.0) {
            return Err(Error::InvalidBoundary(format!("exponent p = {p} must be positive")));
        }
        let grid = CircleGrid::shared(nodes.max(self.sample_count().unwrap_or(0)))?;
        let psi = self.density_values(grid);
        let norm = if p.is_infinite() {
            psi.iter().copied().fold(0.0, f64::max)
        } else {
            (psi.iter().map(|v| v.powf(p)).sum::<f64>() * grid.weight()).powf(1.0 / p)
        };
        let logs = self.log_table(grid);
        let mut log_l1 = 0.0;
        for (zeta, l) in grid.nodes().iter().zip(logs.iter()) {
            let mut v = *l;
            for bz in &self.zeros {
                let dist = (zeta - bz.location()).norm();
                // integrable singularity, skipped at the node it sits on
                if dist > 0.0 {
                    v += bz.order * dist.ln();
                }
            }
            log_l1 += v.abs();
        }
        log_l1 *= grid.weight();
        let floor = DENSITY_FLOOR.ln();
        let log_integrable = log_l1.is_finite() && logs.iter().all(|&l| l > floor);
        Ok(HpCheck { norm, log_l1, log_integrable })
    }
}

/// Trigonometric interpolation of periodic samples onto `n` equispaced nodes
/// (zero-padding in frequency); plain decimation when `n` is coarser.
fn resample(values: &[f64], n: usize) -> Vec<f64> {
    let l = values.len();
    if n == l {
        return values.to_vec();
    }
    if n < l {
        return values.iter().step_by(l / n).copied().collect();
    }
    let mut planner = FftPlanner::<f64>::new();
    let mut spec: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    planner.plan_fft_forward(l).process(&mut spec);
    let mut padded = vec![Complex64::new(0.0, 0.0); n];
    let half = l / 2;
    padded[..half].copy_from_slice(&spec[..half]);
    for k in 1..half {
        padded[n - k] = spec[l - k];
    }
    // split the Nyquist bin symmetrically
    padded[half] = spec[half] * 0.5;
    padded[n - half] += spec[half] * 0.5;
    planner.plan_fft_inverse(n).process(&mut padded);
    padded.iter().map(|c| c.re / l as f64).collect()
}

/// Parses a sample file: one `index value` pair per line, indices `0..L` in
/// order, `L` a power of two. Blank lines and `#` comments are skipped.
pub fn parse_samples(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let bad = || Error::InvalidBoundary(format!("line {}: expected `index value`", lineno + 1));
        let idx: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let val: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if parts.next().is_some() {
            return Err(bad());
        }
        if idx != out.len() {
            return Err(Error::InvalidBoundary(format!(
                "line {}: index {idx} out of sequence (expected {})",
                lineno + 1,
                out.len()
            )));
        }
        out.push(val);
    }
    if out.is_empty() || !out.len().is_power_of_two() {
        return Err(Error::InvalidBoundary(format!("sample count {} is not a power of two", out.len())));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hp_norm_examples() {
        let one = BoundaryData::zero();
        for p in [0.5, 1.0, 2.0, f64::INFINITY] {
            assert!((one.hp_norm(p, 256).unwrap().norm - 1.0).abs() < 1e-15);
        }
        let two = BoundaryData::new(Density::Constant(2.0), vec![]).unwrap();
        assert_eq!(two.hp_norm(f64::INFINITY, 256).unwrap().norm, 2.0);
        // brute-force Simpson value of the mean of e^{cos θ}
        let n = 1 << 16;
        let h = 2.0 * PI / n as f64;
        let mut acc = 2.0 * 1f64.exp();
        for i in 1..n {
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * (i as f64 * h).cos().exp();
        }
        let i0 = acc * h / 3.0 / (2.0 * PI);
        let c = BoundaryData::preset("exp_cos").unwrap().hp_norm(1.0, 256).unwrap();
        assert!((c.norm - i0).abs() < 1e-12);
        assert!(c.log_integrable);
        // ∫|cos θ| dm = 2/π
        assert!((c.log_l1 - 2.0 / PI).abs() < 1e-3);
    }

    #[test]
    fn hp_norm_flags_vanishing_density() {
        let z = BoundaryData::new(Density::Constant(0.0), vec![]).unwrap();
        assert!(!z.hp_norm(1.0, 64).unwrap().log_integrable);
        // ∫ log|1 − e^{iθ}| dm = 0; a power-type zero keeps log ψ integrable
        let a = BoundaryData::preset("abs_one_minus").unwrap().hp_norm(2.0, 1024).unwrap();
        assert!(a.log_integrable);
        assert!((a.norm - 2f64.sqrt()).abs() < 1e-12);
        assert!(BoundaryData::zero().hp_norm(0.0, 64).is_err());
    }

    #[test]
    fn rejects_nonpositive_atoms() {
        assert!(Atom::new(0.0, 0.0).is_err());
        assert!(Atom::new(0.0, -1.0).is_err());
        assert!(BoundaryData::new(Density::Constant(1.0), vec![Atom { angle: 0.0, mass: -2.0 }]).is_err());
    }

    #[test]
    fn atom_locations_are_unimodular() {
        for angle in [0.0, 1.0, PI, -2.5, 100.0] {
            assert!((Atom::new(angle, 1.0).unwrap().location().norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn sample_validation() {
        assert!(BoundaryData::new(Density::Samples(vec![1.0; 3]), vec![]).is_err());
        assert!(BoundaryData::new(Density::Samples(vec![1.0, -1.0]), vec![]).is_err());
        assert!(BoundaryData::new(Density::Samples(vec![1.0, 0.0, 2.0, 1.0]), vec![]).is_ok());
    }

    #[test]
    fn parses_sample_files() {
        let s = parse_samples("# psi\n0 1.0\n1 2.0\n\n2 3.5\n3 0\n").unwrap();
        assert_eq!(s, vec![1.0, 2.0, 3.5, 0.0]);
        assert!(parse_samples("0 1\n1 2\n2 3\n").is_err());
        assert!(parse_samples("0 1\n2 2\n").is_err());
        assert!(parse_samples("0 x\n1 2\n").is_err());
    }

    #[test]
    fn trig_resampling_is_exact_for_band_limited_data() {
        let l = 16;
        let f = |t: f64| 0.3 + (t).cos() - 0.5 * (3.0 * t).sin() + 0.25 * (8.0 * t).cos();
        let samples: Vec<f64> = (0..l).map(|k| f(2.0 * PI * k as f64 / l as f64)).collect();
        let up = resample(&samples, 64);
        for (k, v) in up.iter().enumerate() {
            let t = 2.0 * PI * k as f64 / 64.0;
            // the Nyquist mode cos 8t interpolates to its even part cos 8t only at the native nodes
            let expect = 0.3 + t.cos() - 0.5 * (3.0 * t).sin() + 0.25 * (8.0 * t).cos();
            if k % 4 == 0 {
                assert!((v - expect).abs() < 1e-12);
            }
            let smooth = 0.3 + t.cos() - 0.5 * (3.0 * t).sin();
            assert!((v - smooth).abs() <= 0.25 + 1e-12);
        }
    }

    #[test]
    fn floors_zero_samples() {
        let bd = BoundaryData::new(Density::Samples(vec![1.0, 0.0, 1.0, 1.0]), vec![]).unwrap();
        assert!(!bd.density_positive());
        let grid = CircleGrid::new(64).unwrap();
        assert!(bd.log_table(&grid).iter().all(|v| v.is_finite()));
    }
}
