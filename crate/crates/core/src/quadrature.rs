//! Trapezoid rule on the unit circle against the normalized arclength `m`.
//!
//! For the kernels used here (Poisson, Herglotz, `2ζ/(ζ−z)^2`) and smooth
//! densities the rule converges geometrically, at rate roughly `|z|^N`.
//! Constant densities, atoms and power-type boundary zeros never go through
//! the rule; their contributions are added in closed form.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::functions::{BoundaryData, Density, DENSITY_FLOOR};
use crate::{Error, Result};

pub const MIN_NODES: usize = 64;
pub const MAX_NODES_LOG2: u32 = 16;
pub const MAX_NODES: usize = 1 << MAX_NODES_LOG2;
pub const DEFAULT_NODES: usize = 1024;
/// Evaluations closer than this to an atom are rejected.
pub const ATOM_EXCLUSION: f64 = 1e-9;

/// The `N`-th roots of unity with uniform weights `1/N`.
#[derive(Debug, Clone)]
pub struct CircleGrid {
    nodes: Vec<Complex64>,
}

fn check_size(node_count: usize) -> Result<()> {
    if !node_count.is_power_of_two() || !(MIN_NODES..=MAX_NODES).contains(&node_count) {
        return Err(Error::Precondition(format!(
            "circle grid size {node_count} must be a power of two in [{MIN_NODES}, {MAX_NODES}]"
        )));
    }
    Ok(())
}

static SHARED: [OnceLock<CircleGrid>; MAX_NODES_LOG2 as usize + 1] = [const { OnceLock::new() }; 17];

impl CircleGrid {
    pub fn new(node_count: usize) -> Result<Self> {
        check_size(node_count)?;
        let nodes =
            (0..node_count).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / node_count as f64)).collect();
        Ok(Self { nodes })
    }

    /// Process-wide grid of the given size.
    pub fn shared(node_count: usize) -> Result<&'static CircleGrid> {
        check_size(node_count)?;
        Ok(SHARED[node_count.trailing_zeros() as usize]
            .get_or_init(|| CircleGrid::new(node_count).expect("size checked")))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.nodes.len() as f64
    }
}

/// Smallest power-of-two grid, at least `base`, that resolves kernels of
/// width `d`: `d ≥ 10 · 2π / N`, capped at `MAX_NODES`.
pub fn grid_size_for(base: usize, d: f64) -> usize {
    let need = if d > 0.0 { (20.0 * PI / d).ceil() } else { f64::INFINITY };
    let mut n = base.clamp(MIN_NODES, MAX_NODES);
    while (n as f64) < need && n < MAX_NODES {
        n *= 2;
    }
    n
}

/// `∫ f dm ≈ (1/N) Σ f(ζ_k)`.
pub fn integrate(grid: &CircleGrid, integrand: impl Fn(Complex64) -> Complex64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (index, &zeta) in grid.nodes.iter().enumerate() {
        let v = integrand(zeta);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFiniteIntegrand { index });
        }
        acc += v;
    }
    Ok(acc * grid.weight())
}

fn check_atoms(bd: &BoundaryData, z: Complex64) -> Result<()> {
    for a in bd.atoms() {
        if (a.location() - z).norm() < ATOM_EXCLUSION {
            return Err(Error::AtomSingularity { angle: a.angle, tolerance: ATOM_EXCLUSION });
        }
    }
    if z.norm() >= 1.0 {
        return Err(Error::OutsideBall { norm: z.norm() });
    }
    Ok(())
}

/// Both kernels integrate constants exactly: `∫ (ζ+z)/(ζ−z) dm = 1`.
fn constant_log(bd: &BoundaryData) -> Option<f64> {
    match bd.density() {
        Density::Constant(c) => Some(c.max(DENSITY_FLOOR).ln()),
        _ => None,
    }
}

/// `Pν(z) = ∫ (1−|z|²)/|ζ−z|² dν(ζ)`.
pub fn poisson(bd: &BoundaryData, grid: &CircleGrid, z: Complex64) -> Result<f64> {
    check_atoms(bd, z)?;
    let t = 1.0 - z.norm_sqr();
    let mut acc = match constant_log(bd) {
        Some(c) => c,
        None => {
            let logs = bd.log_table(grid);
            let mut acc = 0.0;
            for (zeta, h) in grid.nodes.iter().zip(logs.iter()) {
                acc += h * t / (zeta - z).norm_sqr();
            }
            acc * grid.weight()
        }
    };
    for a in bd.atoms() {
        acc -= a.mass * t / (a.location() - z).norm_sqr();
    }
    for bz in bd.boundary_zeros() {
        acc += bz.order * (Complex64::new(1.0, 0.0) - z * bz.location().conj()).norm().ln();
    }
    Ok(acc)
}

/// `∫ (ζ+z)/(ζ−z) dν(ζ)`, the exponent of the Herglotz-type function.
pub fn herglotz_integral(bd: &BoundaryData, grid: &CircleGrid, z: Complex64) -> Result<Complex64> {
    Ok(herglotz_pair(bd, grid, z)?.0)
}

/// `U(z) = ∫ 2ζ/(ζ−z)² dν(ζ)`, the logarithmic derivative of the Herglotz-type function.
pub fn herglotz_derivative_factor(bd: &BoundaryData, grid: &CircleGrid, z: Complex64) -> Result<Complex64> {
    Ok(herglotz_pair(bd, grid, z)?.1)
}

/// Herglotz integral and its derivative in a single pass over the nodes.
pub(crate) fn herglotz_pair(bd: &BoundaryData, grid: &CircleGrid, z: Complex64) -> Result<(Complex64, Complex64)> {
    check_atoms(bd, z)?;
    let (mut h, mut u) = match constant_log(bd) {
        Some(c) => (Complex64::new(c, 0.0), Complex64::new(0.0, 0.0)),
        None => {
            let logs = bd.log_table(grid);
            let mut h = Complex64::new(0.0, 0.0);
            let mut u = Complex64::new(0.0, 0.0);
            for (&zeta, &lg) in grid.nodes.iter().zip(logs.iter()) {
                let r = (zeta - z).inv();
                h += (zeta + z) * r * lg;
                u += zeta * r * r * (2.0 * lg);
            }
            (h * grid.weight(), u * grid.weight())
        }
    };
    for a in bd.atoms() {
        let zeta = a.location();
        let r = (zeta - z).inv();
        h -= (zeta + z) * r * a.mass;
        u -= zeta * r * r * (2.0 * a.mass);
    }
    // |ζ − ζ_j|^s has Herglotz integral s·log(1 − z conj ζ_j).
    for bz in bd.boundary_zeros() {
        let c = bz.location().conj();
        let w = Complex64::new(1.0, 0.0) - z * c;
        h += w.ln() * bz.order;
        u -= c / w * bz.order;
    }
    Ok((h, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{Atom, Density};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Brute-force `∫ e^{cos θ} dθ/2π` with composite Simpson at 2^16 intervals.
    fn bessel_i0_of_one() -> f64 {
        let n = 1 << 16;
        let h = 2.0 * PI / n as f64;
        let mut acc = 1f64.exp() * 2.0;
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * (i as f64 * h).cos().exp();
        }
        acc * h / 3.0 / (2.0 * PI)
    }

    #[test]
    fn grid_nodes_are_roots_of_unity() {
        let g = CircleGrid::new(256).unwrap();
        for z in g.nodes() {
            let mut p = c(1.0, 0.0);
            for _ in 0..256 {
                p *= z;
            }
            assert!((p - c(1.0, 0.0)).norm() < 1e-12);
            assert!((z.norm() - 1.0).abs() < 1e-15);
        }
        assert!((g.weight() * g.len() as f64 - 1.0).abs() < 1e-15);
        assert!(CircleGrid::new(100).is_err());
        assert!(CircleGrid::new(32).is_err());
    }

    #[test]
    fn integrate_examples() {
        let g = CircleGrid::new(256).unwrap();
        assert!((integrate(&g, |_| c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(integrate(&g, |z| z).unwrap().norm() < 1e-15);
        let i0 = bessel_i0_of_one();
        assert!((i0 - 1.266_065_877_752_008).abs() < 1e-12);
        let v = integrate(&g, |z| c(z.re.exp(), 0.0)).unwrap();
        assert!((v.re - i0).abs() < 1e-12);
    }

    #[test]
    fn integrate_names_bad_node() {
        let g = CircleGrid::new(64).unwrap();
        let err = integrate(&g, |z| if z.re == 1.0 { c(f64::NAN, 0.0) } else { z }).unwrap_err();
        assert_eq!(err, Error::NonFiniteIntegrand { index: 0 });
    }

    #[test]
    fn poisson_examples() {
        let g = CircleGrid::new(1024).unwrap();
        let e = BoundaryData::new(Density::Constant(std::f64::consts::E), vec![]).unwrap();
        for z in [c(0.0, 0.0), c(0.3, -0.4), c(-0.85, 0.1)] {
            assert!((poisson(&e, &g, z).unwrap() - 1.0).abs() < 1e-12);
        }
        let sigma = 0.7;
        let atom = BoundaryData::new(Density::Constant(1.0), vec![Atom::new(0.0, sigma).unwrap()]).unwrap();
        assert!((poisson(&atom, &g, c(0.0, 0.0)).unwrap() + sigma).abs() < 1e-15);
        let r = 0.6;
        let expect = -sigma * (1.0 + r) / (1.0 - r);
        assert!((poisson(&atom, &g, c(r, 0.0)).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn poisson_rejects_atom_proximity() {
        let g = CircleGrid::new(64).unwrap();
        let atom = BoundaryData::new(Density::Constant(1.0), vec![Atom::new(0.0, 1.0).unwrap()]).unwrap();
        assert!(matches!(poisson(&atom, &g, c(1.0 - 1e-10, 0.0)), Err(Error::AtomSingularity { .. })));
    }

    #[test]
    fn derivative_factor_examples() {
        let g = CircleGrid::new(1024).unwrap();
        assert!(herglotz_derivative_factor(&BoundaryData::zero(), &g, c(0.2, 0.1)).unwrap().norm() < 1e-15);
        let atom = BoundaryData::new(Density::Constant(1.0), vec![Atom::new(0.0, 0.4).unwrap()]).unwrap();
        assert!((herglotz_derivative_factor(&atom, &g, c(0.0, 0.0)).unwrap() - c(-0.8, 0.0)).norm() < 1e-15);
        let ec = BoundaryData::new(Density::exp_cos(), vec![]).unwrap();
        assert!((herglotz_derivative_factor(&ec, &g, c(0.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-13);
        // Herglotz integral of cos θ is z itself.
        let z = c(0.3, 0.5);
        assert!((herglotz_integral(&ec, &g, z).unwrap() - z).norm() < 1e-13);
    }

    #[test]
    fn boundary_zero_closed_form() {
        // ψ = |1 − ζ| gives the outer function 1 − z.
        let bd = BoundaryData::preset("abs_one_minus").unwrap();
        let g = CircleGrid::new(64).unwrap();
        for z in [c(0.0, 0.0), c(0.5, 0.2), c(-0.9, 0.0)] {
            let h = herglotz_integral(&bd, &g, z).unwrap();
            assert!((h.exp() - (c(1.0, 0.0) - z)).norm() < 1e-14);
        }
    }

    #[test]
    fn grid_escalation() {
        assert_eq!(grid_size_for(1024, 0.5), 1024);
        assert_eq!(grid_size_for(1024, 0.01), 8192);
        assert_eq!(grid_size_for(1024, 1e-6), MAX_NODES);
        assert_eq!(grid_size_for(10, 0.5), 128);
    }
}
