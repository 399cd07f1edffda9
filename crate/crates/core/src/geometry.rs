//! Points of the unit ball `B_n`, the small balls `B_z` and the involutive
//! automorphisms `φ_a`.
//!
//! Vectors are plain `Vec<Complex64>` of runtime length `n`. Gradients and
//! Jacobians use the row-vector convention: the chain rule for `g ∘ φ_a`
//! reads `∇(g∘φ_a)(z) = ∇g(φ_a(z)) · φ_a'(z)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

/// Hermitian inner product `⟨z, w⟩ = Σ z_j conj(w_j)`.
pub fn inner(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

/// Euclidean norm on C^n.
pub fn norm(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// A point `z` of the open unit ball with `|z|` and `d_z = 1 - |z|` cached.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    coords: Vec<Complex64>,
    norm: f64,
    dz: f64,
}

impl BallPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Dimension { expected: 1, got: 0 });
        }
        let norm = norm(&coords);
        if !(norm < 1.0) {
            return Err(Error::OutsideBall { norm });
        }
        Ok(Self { coords, norm, dz: 1.0 - norm })
    }

    /// A point of the disk (`n = 1`).
    pub fn scalar(z: Complex64) -> Result<Self> {
        Self::new(vec![z])
    }

    pub fn origin(dim: usize) -> Self {
        Self { coords: vec![Complex64::new(0.0, 0.0); dim.max(1)], norm: 0.0, dz: 1.0 }
    }

    /// `radius · direction` for a unit `direction`, with `|z|` pinned to `radius`
    /// so that sample grids get `d_z` exactly.
    pub fn on_sphere(radius: f64, direction: &[Complex64]) -> Result<Self> {
        if !(0.0..1.0).contains(&radius) {
            return Err(Error::OutsideBall { norm: radius });
        }
        let coords: Vec<Complex64> = direction.iter().map(|c| c * radius).collect();
        Ok(Self { coords, norm: radius, dz: 1.0 - radius })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// Distance to the boundary sphere, `1 - |z|`.
    pub fn dz(&self) -> f64 {
        self.dz
    }

    pub fn is_origin(&self) -> bool {
        self.norm == 0.0
    }
}

/// The Euclidean ball `B_z` of radius `d_z / 2` about `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubBall {
    center: BallPoint,
    radius: f64,
}

impl SubBall {
    pub fn center(&self) -> &BallPoint {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Open-ball membership.
    pub fn contains(&self, w: &BallPoint) -> bool {
        if w.dim() != self.center.dim() {
            return false;
        }
        let diff: f64 = w.coords.iter().zip(&self.center.coords).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        diff < self.radius
    }

    /// `center + radius · u` for a unit vector `u`; lies on the boundary sphere.
    pub fn boundary_point(&self, unit: &[Complex64]) -> Vec<Complex64> {
        self.center.coords.iter().zip(unit).map(|(c, u)| c + u * self.radius).collect()
    }
}

pub fn sub_ball(z: &BallPoint) -> SubBall {
    SubBall { center: z.clone(), radius: z.dz / 2.0 }
}

/// The automorphism `φ_a` of `B_n` exchanging `a` and `0`.
#[derive(Debug, Clone)]
pub struct Automorphism {
    base: BallPoint,
    p: DMatrix<Complex64>,
    q: DMatrix<Complex64>,
}

impl Automorphism {
    pub fn new(base: BallPoint) -> Result<Self> {
        if base.is_origin() {
            return Err(Error::DegenerateAutomorphism);
        }
        let n = base.dim();
        let a = &base.coords;
        let a2 = base.norm * base.norm;
        // P_a = a a* / |a|^2
        let p = DMatrix::from_fn(n, n, |i, j| a[i] * a[j].conj() / a2);
        let q = DMatrix::identity(n, n) - &p;
        Ok(Self { base, p, q })
    }

    pub fn base(&self) -> &BallPoint {
        &self.base
    }

    /// Orthogonal projection onto `span{a}`.
    pub fn projection(&self) -> &DMatrix<Complex64> {
        &self.p
    }

    /// `Q_a = I - P_a`.
    pub fn complement(&self) -> &DMatrix<Complex64> {
        &self.q
    }

    /// `φ_a(z) = (a - P_a z - s Q_a z) / (1 - ⟨z, a⟩)` with `s = (1 - |a|^2)^{1/2}`.
    pub fn apply_raw(&self, z: &[Complex64]) -> Vec<Complex64> {
        let a = &self.base.coords;
        let s = (1.0 - self.base.norm * self.base.norm).sqrt();
        let za = inner(z, a);
        let a2 = self.base.norm * self.base.norm;
        let denom = Complex64::new(1.0, 0.0) - za;
        a.iter()
            .zip(z)
            .map(|(ai, zi)| {
                let pz = ai * za / a2;
                let qz = zi - pz;
                (ai - pz - qz * s) / denom
            })
            .collect()
    }

    pub fn apply(&self, z: &BallPoint) -> Result<BallPoint> {
        if z.dim() != self.base.dim() {
            return Err(Error::Dimension { expected: self.base.dim(), got: z.dim() });
        }
        BallPoint::new(self.apply_raw(&z.coords))
    }

    /// `φ_a'(a) = -(1-|a|^2)^{-1} P_a - (1-|a|^2)^{-1/2} Q_a`.
    pub fn jacobian_at_base(&self) -> DMatrix<Complex64> {
        let t = 1.0 - self.base.norm * self.base.norm;
        let p_scale = Complex64::new(-1.0 / t, 0.0);
        let q_scale = Complex64::new(-1.0 / t.sqrt(), 0.0);
        self.p.map(|x| x * p_scale) + self.q.map(|x| x * q_scale)
    }
}

pub fn apply_automorphism(a: &BallPoint, z: &BallPoint) -> Result<BallPoint> {
    Automorphism::new(a.clone())?.apply(z)
}

pub fn jacobian_at_base(a: &BallPoint) -> Result<DMatrix<Complex64>> {
    Ok(Automorphism::new(a.clone())?.jacobian_at_base())
}

/// Largest singular value.
pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    m.clone().svd(false, false).singular_values.iter().cloned().fold(0.0, f64::max)
}
