//! Zero detection: the neighbourhood `E_f` of the zero set and the
//! argument-principle oracle for one-variable functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::functions::{HoloFunction, ZeroSet};
use crate::geometry::BallPoint;
use crate::{Error, Result};

/// `|f|` below this on a winding contour counts as hitting a zero.
pub const CONTOUR_ZERO: f64 = 1e-12;
/// Contour radius for `E_f` membership is `(1 − SHRINK) · d_z / 2`.
pub const CONTOUR_SHRINK: f64 = 1e-10;
const INITIAL_ARCS: usize = 64;
const MAX_DEPTH: u32 = 48;

#[allow(clippy::too_many_arguments)]
fn arc_winding(
    f: &HoloFunction,
    center: Complex64,
    radius: f64,
    t0: f64,
    t1: f64,
    f0: Complex64,
    f1: Complex64,
    depth: u32,
) -> Result<f64> {
    let step = (f1 / f0).arg();
    if step.abs() <= PI / 4.0 || depth >= MAX_DEPTH {
        return Ok(step);
    }
    let tm = 0.5 * (t0 + t1);
    let fm = eval_on_contour(f, center, radius, tm)?;
    Ok(arc_winding(f, center, radius, t0, tm, f0, fm, depth + 1)?
        + arc_winding(f, center, radius, tm, t1, fm, f1, depth + 1)?)
}

fn eval_on_contour(f: &HoloFunction, center: Complex64, radius: f64, t: f64) -> Result<Complex64> {
    let v = f.value_at(&[center + Complex64::from_polar(radius, t)])?;
    if v.norm() < CONTOUR_ZERO {
        return Err(Error::ContourHitsZero { center: vec![(center.re, center.im)], radius, threshold: CONTOUR_ZERO });
    }
    Ok(v)
}

fn winding_with(f: &HoloFunction, center: Complex64, radius: f64, arcs: usize) -> Result<f64> {
    let ts: Vec<f64> = (0..=arcs).map(|k| 2.0 * PI * k as f64 / arcs as f64).collect();
    let vals = ts.iter().map(|&t| eval_on_contour(f, center, radius, t)).collect::<Result<Vec<_>>>()?;
    let mut total = 0.0;
    for k in 0..arcs {
        total += arc_winding(f, center, radius, ts[k], ts[k + 1], vals[k], vals[k + 1], 0)?;
    }
    Ok(total / (2.0 * PI))
}

/// Number of zeros of a one-variable `f` inside `|w − center| < radius`,
/// `(1/2πi) ∮ f'/f dw`, accumulated as argument increments on an adaptively
/// bisected contour and rounded to the nearest integer.
pub fn zero_count(f: &HoloFunction, center: Complex64, radius: f64) -> Result<i64> {
    if f.dim() != 1 {
        return Err(Error::Dimension { expected: 1, got: f.dim() });
    }
    let coarse = winding_with(f, center, radius, INITIAL_ARCS)?.round();
    let fine = winding_with(f, center, radius, 2 * INITIAL_ARCS)?.round();
    if coarse == fine {
        return Ok(fine as i64);
    }
    Ok(winding_with(f, center, radius, 16 * INITIAL_ARCS)?.round() as i64)
}

/// Whether `B_z` meets the zero set of `f`.
///
/// Known zero sets (declared, structural) are checked by distance. Unknown
/// zero sets of one-variable functions go through [`zero_count`] on the
/// slightly shrunken boundary circle of `B_z`, retried once on a smaller
/// circle if the contour passes through a zero. Unknown zero sets in several
/// variables are reported as not meeting `B_z`; callers flag that case.
pub fn in_e(f: &HoloFunction, z: &BallPoint) -> Result<bool> {
    let radius = z.dz() / 2.0;
    match f.zero_set() {
        ZeroSet::Known(planes) => Ok(planes.iter().any(|h| h.distance(z.coords()) < radius)),
        ZeroSet::Unknown if f.dim() == 1 => {
            let center = z.coords()[0];
            let r = (1.0 - CONTOUR_SHRINK) * radius;
            match zero_count(f, center, r) {
                Err(Error::ContourHitsZero { .. }) => Ok(zero_count(f, center, (1.0 - 1e-7) * radius)? > 0),
                other => Ok(other? > 0),
            }
        }
        ZeroSet::Unknown => Ok(false),
    }
}

/// Whether `E_f` membership of `f` is backed by a zero oracle.
pub fn e_membership_verified(f: &HoloFunction) -> bool {
    f.dim() == 1 || f.zero_set() != ZeroSet::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::presets;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_e_region() {
        let f = presets::by_name("identity", &Default::default()).unwrap();
        assert!(in_e(&f, &BallPoint::scalar(c(0.2, 0.0)).unwrap()).unwrap());
        assert!(!in_e(&f, &BallPoint::scalar(c(0.5, 0.0)).unwrap()).unwrap());
        assert!(in_e(&f, &BallPoint::origin(1)).unwrap());
    }

    #[test]
    fn zero_free_functions_have_empty_e() {
        let s = presets::by_name("singular_inner", &Default::default()).unwrap();
        let one = HoloFunction::constant(1, c(1.0, 0.0)).unwrap();
        for r in [0.0, 0.3, 0.9, 0.999] {
            let z = BallPoint::scalar(c(r, 0.0)).unwrap();
            assert!(!in_e(&s, &z).unwrap());
            assert!(!in_e(&one, &z).unwrap());
        }
    }

    #[test]
    fn counts_polynomial_roots() {
        // (z − 0.1)(z + 0.3i)^2(z − 0.5 + 0.2i)
        let roots = [c(0.1, 0.0), c(0.0, -0.3), c(0.0, -0.3), c(0.5, -0.2)];
        let mut coeffs = vec![c(1.0, 0.0)];
        for r in roots {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (k, a) in coeffs.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * r;
            }
            coeffs = next;
        }
        let f = HoloFunction::polynomial(coeffs).unwrap();
        assert_eq!(zero_count(&f, c(0.0, 0.0), 0.9).unwrap(), 4);
        assert_eq!(zero_count(&f, c(0.0, -0.3), 0.05).unwrap(), 2);
        assert_eq!(zero_count(&f, c(0.8, 0.8), 0.1).unwrap(), 0);
    }

    #[test]
    fn contour_through_zero_is_reported() {
        let f = presets::by_name("identity", &Default::default()).unwrap();
        assert!(matches!(zero_count(&f, c(0.3, 0.0), 0.3), Err(Error::ContourHitsZero { .. })));
    }
}
