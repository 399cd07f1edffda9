//! Named example functions used by the CLI configs and the test suites.

use num_complex::Complex64;

use super::{Atom, BoundaryData, HoloFunction, MAX_UNIVARIATE_DEGREE};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresetParams {
    /// Truncation degree for series presets.
    pub degree: usize,
    /// Value of the `constant` preset.
    pub value: Complex64,
    /// Atom mass of the `singular_inner` preset.
    pub sigma: f64,
    /// Base circle grid for Herglotz presets.
    pub nodes: usize,
}

impl Default for PresetParams {
    fn default() -> Self {
        Self {
            degree: MAX_UNIVARIATE_DEGREE,
            value: Complex64::new(1.0, 0.0),
            sigma: 1.0,
            nodes: crate::quadrature::DEFAULT_NODES,
        }
    }
}

pub const NAMES: &[&str] = &[
    "identity",
    "constant",
    "log1m",
    "geometric",
    "log1m_squared",
    "exp_shift",
    "singular_inner",
    "two_atoms",
    "outer_exp_cos",
    "outer_smooth_bump",
    "outer_abs_one_minus",
    "outer_exp_cos_atoms",
    "trivial_measure",
];

/// Truncated `log(1/(1−z)) = Σ_{k≥1} z^k / k`.
pub fn log1m(degree: usize) -> Result<HoloFunction> {
    let mut a = vec![Complex64::new(0.0, 0.0); degree + 1];
    for (k, c) in a.iter_mut().enumerate().skip(1) {
        *c = Complex64::new(1.0 / k as f64, 0.0);
    }
    HoloFunction::polynomial(a)
}

/// Truncated `1/(1−z) = Σ z^k`.
pub fn geometric(degree: usize) -> Result<HoloFunction> {
    HoloFunction::polynomial(vec![Complex64::new(1.0, 0.0); degree + 1])
}

pub fn by_name(name: &str, p: &PresetParams) -> Result<HoloFunction> {
    let herglotz = |preset: &str| {
        let bd = BoundaryData::preset(preset).expect("boundary preset exists");
        HoloFunction::herglotz(bd, p.nodes)
    };
    match name {
        "identity" => HoloFunction::polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]),
        "constant" => HoloFunction::polynomial(vec![p.value]),
        "log1m" => log1m(p.degree),
        "geometric" => geometric(p.degree),
        "log1m_squared" => HoloFunction::product(vec![log1m(p.degree)?, log1m(p.degree)?]),
        // exp(z − 1): zero-free, |g| ≤ 1 on the disk
        "exp_shift" => {
            Ok(HoloFunction::exp(HoloFunction::polynomial(vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)])?))
        }
        "singular_inner" => {
            let bd = BoundaryData::new(super::Density::Constant(1.0), vec![Atom::new(0.0, p.sigma)?])?;
            HoloFunction::herglotz(bd, p.nodes)
        }
        "two_atoms" => herglotz("two_atoms"),
        "outer_exp_cos" => herglotz("exp_cos"),
        "outer_smooth_bump" => herglotz("smooth_bump"),
        "outer_abs_one_minus" => herglotz("abs_one_minus"),
        "outer_exp_cos_atoms" => herglotz("exp_cos_atoms"),
        "trivial_measure" => herglotz("zero"),
        other => {
            Err(Error::InvalidFunction(format!("unknown function preset `{other}` (known: {})", NAMES.join(", "))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BallPoint;

    #[test]
    fn every_name_builds() {
        let p = PresetParams { degree: 64, ..Default::default() };
        for name in NAMES {
            let f = by_name(name, &p).unwrap();
            f.eval(&BallPoint::origin(1)).unwrap();
        }
        assert!(by_name("nope", &p).is_err());
    }

    #[test]
    fn truncated_series_track_closed_forms() {
        let z = BallPoint::scalar(Complex64::new(0.5, 0.2)).unwrap();
        let w = z.coords()[0];
        let one = Complex64::new(1.0, 0.0);
        let l = log1m(4096).unwrap().eval(&z).unwrap();
        assert!((l - (one / (one - w)).ln()).norm() < 1e-12);
        let g = geometric(4096).unwrap().eval(&z).unwrap();
        assert!((g - one / (one - w)).norm() < 1e-12);
    }
}
