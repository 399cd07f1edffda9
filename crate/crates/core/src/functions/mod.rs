//! Holomorphic functions on the disk and on the ball `B_n`.
//!
//! A [`HoloFunction`] is a small expression tree: truncated power series,
//! Herglotz-type functions `exp(∫ (ζ+z)/(ζ−z) dν(ζ))` built from
//! [`BoundaryData`], affine zero polynomials, products, exponentials, ridge
//! lifts `z ↦ h(Σ u_j z_j)`, one-variable slices and rescalings onto a
//! sub-ball. Each node knows its value, its gradient and, where possible, its
//! zero set.

mod boundary;
pub mod presets;

use num_complex::Complex64;

pub use boundary::{parse_samples, Atom, BoundaryData, BoundaryZero, Density, DensityFn, HpCheck, DENSITY_FLOOR};

use crate::geometry::{self, BallPoint};
use crate::quadrature::{self, CircleGrid, DEFAULT_NODES};
use crate::{Error, Result};

pub const MAX_UNIVARIATE_DEGREE: usize = 4096;
pub const MAX_TOTAL_DEGREE: u32 = 64;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// The complex hyperplane `{z : Σ_j c_j z_j = b}`; a point when `n = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroHyperplane {
    pub coeffs: Vec<Complex64>,
    pub offset: Complex64,
}

impl ZeroHyperplane {
    pub fn point(p: Complex64) -> Self {
        Self { coeffs: vec![one()], offset: p }
    }

    /// `{z : ⟨z − p, u⟩ = 0}`.
    pub fn through(p: &[Complex64], normal: &[Complex64]) -> Self {
        let coeffs: Vec<Complex64> = normal.iter().map(|u| u.conj()).collect();
        let offset = geometry::inner(p, normal);
        Self { coeffs, offset }
    }

    /// Affine form `Σ c_j z_j − b`; vanishes exactly on the hyperplane.
    pub fn affine(&self, z: &[Complex64]) -> Complex64 {
        self.coeffs.iter().zip(z).map(|(c, x)| c * x).sum::<Complex64>() - self.offset
    }

    /// Euclidean distance from `z` to the hyperplane.
    pub fn distance(&self, z: &[Complex64]) -> f64 {
        self.affine(z).norm() / geometry::norm(&self.coeffs)
    }
}

/// What is known about the zero set `Z_f`.
#[derive(Debug, Clone, PartialEq)]
pub enum ZeroSet {
    Known(Vec<ZeroHyperplane>),
    Unknown,
}

impl ZeroSet {
    fn union(sets: impl IntoIterator<Item = ZeroSet>) -> ZeroSet {
        let mut all = Vec::new();
        for s in sets {
            match s {
                ZeroSet::Known(z) => all.extend(z),
                ZeroSet::Unknown => return ZeroSet::Unknown,
            }
        }
        ZeroSet::Known(all)
    }

    pub fn is_empty_known(&self) -> bool {
        matches!(self, ZeroSet::Known(z) if z.is_empty())
    }
}

#[derive(Debug, Clone)]
pub enum PowerSeries {
    /// Coefficients `a_0, a_1, …` of `Σ a_k z^k`.
    Univariate(Vec<Complex64>),
    /// Monomials `c · z^e` with multi-index `e`.
    Multivariate { dim: usize, terms: Vec<(Vec<u32>, Complex64)> },
}

impl PowerSeries {
    fn jet(&self, z: &[Complex64]) -> (Complex64, Vec<Complex64>) {
        match self {
            PowerSeries::Univariate(a) => {
                let x = z[0];
                let mut p = zero();
                let mut dp = zero();
                for &c in a.iter().rev() {
                    dp = dp * x + p;
                    p = p * x + c;
                }
                (p, vec![dp])
            }
            PowerSeries::Multivariate { dim, terms } => {
                let max_deg = terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize;
                let pows: Vec<Vec<Complex64>> = z
                    .iter()
                    .map(|&x| {
                        let mut v = Vec::with_capacity(max_deg + 1);
                        let mut acc = one();
                        for _ in 0..=max_deg {
                            v.push(acc);
                            acc *= x;
                        }
                        v
                    })
                    .collect();
                let mut value = zero();
                let mut grad = vec![zero(); *dim];
                for (e, c) in terms {
                    let mono: Complex64 = e.iter().enumerate().map(|(j, &k)| pows[j][k as usize]).product();
                    value += c * mono;
                    for j in 0..*dim {
                        if e[j] == 0 {
                            continue;
                        }
                        let mut d = c * e[j] as f64;
                        for (i, &k) in e.iter().enumerate() {
                            let k = if i == j { k - 1 } else { k };
                            d *= pows[i][k as usize];
                        }
                        grad[j] += d;
                    }
                }
                (value, grad)
            }
        }
    }
}

/// A Herglotz-type function `exp(∫ (ζ+z)/(ζ−z) dν(ζ))` on the disk.
#[derive(Debug, Clone)]
pub struct Herglotz {
    boundary: BoundaryData,
    base_nodes: usize,
}

impl Herglotz {
    pub fn boundary(&self) -> &BoundaryData {
        &self.boundary
    }

    pub fn base_nodes(&self) -> usize {
        self.base_nodes
    }

    /// Grid used at `z`: at least the base size and the native sample count,
    /// refined so the kernel width `1 − |z|` is resolved.
    pub fn grid_for(&self, z: Complex64) -> Result<&'static CircleGrid> {
        let base = self.base_nodes.max(self.boundary.sample_count().unwrap_or(0));
        CircleGrid::shared(quadrature::grid_size_for(base, 1.0 - z.norm()))
    }

    /// `Pν(z) = log|F(z)|`.
    pub fn poisson(&self, z: Complex64) -> Result<f64> {
        quadrature::poisson(&self.boundary, self.grid_for(z)?, z)
    }

    fn jet(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let (h, u) = quadrature::herglotz_pair(&self.boundary, self.grid_for(z)?, z)?;
        let f = h.exp();
        Ok((f, f * u))
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Series(PowerSeries),
    Herglotz(Herglotz),
    Product(Vec<HoloFunction>),
    ZeroPoly(Vec<ZeroHyperplane>),
    Exp(Box<HoloFunction>),
    Ridge { profile: Box<HoloFunction>, direction: Vec<Complex64> },
    Slice { ambient: Box<HoloFunction>, direction: Vec<Complex64> },
    Rescaled { inner: Box<HoloFunction>, center: Vec<Complex64>, radius: f64, scale: f64 },
}

/// A holomorphic function on `B_n`, optionally with declared zeros.
#[derive(Debug, Clone)]
pub struct HoloFunction {
    dim: usize,
    repr: Repr,
    declared_zeros: Option<Vec<ZeroHyperplane>>,
}

impl HoloFunction {
    fn from_repr(dim: usize, repr: Repr) -> Self {
        Self { dim, repr, declared_zeros: None }
    }

    /// `Σ a_k z^k` on the disk, degree at most 4096.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidFunction("power series needs at least one coefficient".into()));
        }
        if coeffs.len() > MAX_UNIVARIATE_DEGREE + 1 {
            return Err(Error::InvalidFunction(format!(
                "univariate truncation degree {} exceeds {MAX_UNIVARIATE_DEGREE}",
                coeffs.len() - 1
            )));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidFunction("coefficients must be finite".into()));
        }
        Ok(Self::from_repr(1, Repr::Series(PowerSeries::Univariate(coeffs))))
    }

    /// A polynomial in `dim` variables given by monomials, total degree at most 64.
    pub fn multivariate(dim: usize, terms: Vec<(Vec<u32>, Complex64)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidFunction("dimension must be positive".into()));
        }
        for (e, c) in &terms {
            if e.len() != dim {
                return Err(Error::Dimension { expected: dim, got: e.len() });
            }
            let total: u32 = e.iter().sum();
            if total > MAX_TOTAL_DEGREE {
                return Err(Error::InvalidFunction(format!("total degree {total} exceeds {MAX_TOTAL_DEGREE}")));
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidFunction("coefficients must be finite".into()));
            }
        }
        if dim == 1 {
            let deg = terms.iter().map(|(e, _)| e[0] as usize).max().unwrap_or(0);
            let mut coeffs = vec![zero(); deg + 1];
            for (e, c) in terms {
                coeffs[e[0] as usize] += c;
            }
            return Self::polynomial(coeffs);
        }
        Ok(Self::from_repr(dim, Repr::Series(PowerSeries::Multivariate { dim, terms })))
    }

    pub fn constant(dim: usize, c: Complex64) -> Result<Self> {
        if dim == 1 {
            return Self::polynomial(vec![c]);
        }
        Self::multivariate(dim, vec![(vec![0; dim], c)])
    }

    /// `exp(∫ (ζ+z)/(ζ−z) dν(ζ))`; zero-free by construction.
    pub fn herglotz(boundary: BoundaryData, base_nodes: usize) -> Result<Self> {
        CircleGrid::new(base_nodes)?;
        Ok(Self::from_repr(1, Repr::Herglotz(Herglotz { boundary, base_nodes })))
    }

    /// The outer function with modulus `ψ`.
    pub fn make_outer(boundary: BoundaryData) -> Result<Self> {
        if boundary.has_singular_part() {
            return Err(Error::InvalidBoundary("an outer function takes boundary data without atoms".into()));
        }
        if boundary.density_identically_zero() {
            return Err(Error::InvalidBoundary("ψ ≡ 0 has no outer function".into()));
        }
        Self::herglotz(boundary, DEFAULT_NODES)
    }

    /// The singular inner function `exp(−Σ σ_j (ζ_j+z)/(ζ_j−z))`.
    pub fn make_singular_inner(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidBoundary("a singular inner function needs at least one atom".into()));
        }
        Self::herglotz(BoundaryData::new(Density::Constant(1.0), atoms)?, DEFAULT_NODES)
    }

    pub fn product(factors: Vec<HoloFunction>) -> Result<Self> {
        let dim = factors.first().map(|f| f.dim).ok_or_else(|| Error::InvalidFunction("empty product".into()))?;
        if let Some(f) = factors.iter().find(|f| f.dim != dim) {
            return Err(Error::Dimension { expected: dim, got: f.dim });
        }
        Ok(Self::from_repr(dim, Repr::Product(factors)))
    }

    /// `Π_j (Σ_k c_jk z_k − b_j)`: vanishes exactly on the listed hyperplanes.
    pub fn zero_poly(dim: usize, zeros: Vec<ZeroHyperplane>) -> Result<Self> {
        for z in &zeros {
            if z.coeffs.len() != dim {
                return Err(Error::Dimension { expected: dim, got: z.coeffs.len() });
            }
            if geometry::norm(&z.coeffs) == 0.0 {
                return Err(Error::InvalidFunction("zero hyperplane needs a nonzero normal".into()));
            }
        }
        Ok(Self::from_repr(dim, Repr::ZeroPoly(zeros)))
    }

    pub fn exp(exponent: HoloFunction) -> Self {
        Self::from_repr(exponent.dim, Repr::Exp(Box::new(exponent)))
    }

    /// `z ↦ profile(Σ_j u_j z_j)` on `B_n` for a one-variable `profile` and `|u| ≤ 1`.
    pub fn ridge(profile: HoloFunction, direction: Vec<Complex64>) -> Result<Self> {
        if profile.dim != 1 {
            return Err(Error::Dimension { expected: 1, got: profile.dim });
        }
        if geometry::norm(&direction) > 1.0 + 1e-14 || direction.is_empty() {
            return Err(Error::InvalidFunction("ridge direction must have norm at most 1".into()));
        }
        let dim = direction.len();
        Ok(Self::from_repr(dim, Repr::Ridge { profile: Box::new(profile), direction }))
    }

    /// `G(w) = f(w · conj(ζ))` on the disk, for a unit vector `ζ`.
    pub fn slice(&self, direction: &[Complex64]) -> Result<Self> {
        if direction.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: direction.len() });
        }
        if (geometry::norm(direction) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidFunction("slice direction must be a unit vector".into()));
        }
        Ok(Self::from_repr(1, Repr::Slice { ambient: Box::new(self.clone()), direction: direction.to_vec() }))
    }

    /// `w ↦ scale · f(center + radius · w)`.
    pub(crate) fn rescaled(&self, center: &[Complex64], radius: f64, scale: f64) -> Self {
        Self::from_repr(
            self.dim,
            Repr::Rescaled { inner: Box::new(self.clone()), center: center.to_vec(), radius, scale },
        )
    }

    /// Declares the zero set explicitly; authoritative for `E_f`.
    pub fn with_declared_zeros(mut self, zeros: Vec<ZeroHyperplane>) -> Result<Self> {
        if let Some(z) = zeros.iter().find(|z| z.coeffs.len() != self.dim) {
            return Err(Error::Dimension { expected: self.dim, got: z.coeffs.len() });
        }
        if matches!(self.repr, Repr::Herglotz(_)) && !zeros.is_empty() {
            return Err(Error::InvalidFunction("Herglotz-type functions are zero-free".into()));
        }
        self.declared_zeros = Some(zeros);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_herglotz(&self) -> Option<&Herglotz> {
        match &self.repr {
            Repr::Herglotz(h) => Some(h),
            _ => None,
        }
    }

    pub fn is_power_series(&self) -> bool {
        matches!(self.repr, Repr::Series(_))
    }

    /// Zero set as far as structure and declarations determine it.
    pub fn zero_set(&self) -> ZeroSet {
        if let Some(z) = &self.declared_zeros {
            return ZeroSet::Known(z.clone());
        }
        match &self.repr {
            Repr::Series(PowerSeries::Univariate(a)) if a.len() == 1 => {
                // A nonzero constant has no zeros.
                if a[0] != zero() {
                    ZeroSet::Known(vec![])
                } else {
                    ZeroSet::Unknown
                }
            }
            Repr::Series(PowerSeries::Multivariate { terms, .. })
                if terms.iter().all(|(e, _)| e.iter().all(|&k| k == 0)) =>
            {
                let c: Complex64 = terms.iter().map(|(_, c)| c).sum();
                if c != zero() {
                    ZeroSet::Known(vec![])
                } else {
                    ZeroSet::Unknown
                }
            }
            Repr::Series(_) => ZeroSet::Unknown,
            Repr::Herglotz(_) | Repr::Exp(_) => ZeroSet::Known(vec![]),
            Repr::ZeroPoly(z) => ZeroSet::Known(z.clone()),
            Repr::Product(fs) => ZeroSet::union(fs.iter().map(|f| f.zero_set())),
            Repr::Ridge { profile, direction } => match profile.zero_set() {
                ZeroSet::Known(pts) => ZeroSet::Known(
                    pts.iter()
                        .map(|p| ZeroHyperplane {
                            coeffs: direction.iter().map(|u| u * p.coeffs[0]).collect(),
                            offset: p.offset,
                        })
                        .collect(),
                ),
                ZeroSet::Unknown => ZeroSet::Unknown,
            },
            Repr::Slice { ambient, direction } => match ambient.zero_set() {
                ZeroSet::Known(planes) => {
                    let mut pts = Vec::new();
                    for h in planes {
                        let c: Complex64 = h.coeffs.iter().zip(direction).map(|(c, u)| c * u.conj()).sum();
                        if c.norm() > 1e-300 {
                            pts.push(ZeroHyperplane::point(h.offset / c));
                        } else if h.offset.norm() == 0.0 {
                            // the slice lies inside the zero set
                            return ZeroSet::Unknown;
                        }
                    }
                    ZeroSet::Known(pts)
                }
                ZeroSet::Unknown => ZeroSet::Unknown,
            },
            Repr::Rescaled { inner, center, radius, .. } => match inner.zero_set() {
                ZeroSet::Known(planes) => ZeroSet::Known(
                    planes
                        .iter()
                        .map(|h| ZeroHyperplane {
                            coeffs: h.coeffs.iter().map(|c| c * *radius).collect(),
                            offset: h.offset - h.coeffs.iter().zip(center).map(|(c, x)| c * x).sum::<Complex64>(),
                        })
                        .collect(),
                ),
                ZeroSet::Unknown => ZeroSet::Unknown,
            },
        }
    }

    fn check_dim(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: z.len() });
        }
        Ok(())
    }

    /// `f(z)`.
    pub fn eval(&self, z: &BallPoint) -> Result<Complex64> {
        self.check_dim(z.coords())?;
        self.value_at(z.coords())
    }

    /// `∇f(z) = (∂_1 f, …, ∂_n f)(z)`.
    pub fn gradient(&self, z: &BallPoint) -> Result<Vec<Complex64>> {
        self.check_dim(z.coords())?;
        Ok(self.jet_at(z.coords())?.1)
    }

    /// `(f(z), ∇f(z))`.
    pub fn eval_with_gradient(&self, z: &BallPoint) -> Result<(Complex64, Vec<Complex64>)> {
        self.check_dim(z.coords())?;
        self.jet_at(z.coords())
    }

    /// Evaluation at raw coordinates. Points must lie in the closed domain of
    /// definition of every node (inside the disk for Herglotz nodes).
    pub(crate) fn value_at(&self, z: &[Complex64]) -> Result<Complex64> {
        match &self.repr {
            Repr::Series(s) => Ok(s.jet(z).0),
            Repr::Herglotz(h) => {
                let g = h.grid_for(z[0])?;
                Ok(quadrature::herglotz_integral(&h.boundary, g, z[0])?.exp())
            }
            Repr::Product(fs) => {
                let mut acc = one();
                for f in fs {
                    acc *= f.value_at(z)?;
                }
                Ok(acc)
            }
            Repr::ZeroPoly(zs) => Ok(zs.iter().map(|h| h.affine(z)).product()),
            Repr::Exp(h) => Ok(h.value_at(z)?.exp()),
            Repr::Ridge { profile, direction } => {
                let s: Complex64 = direction.iter().zip(z).map(|(u, x)| u * x).sum();
                profile.value_at(&[s])
            }
            Repr::Slice { ambient, direction } => {
                let p: Vec<Complex64> = direction.iter().map(|u| z[0] * u.conj()).collect();
                ambient.value_at(&p)
            }
            Repr::Rescaled { inner, center, radius, scale } => {
                let p: Vec<Complex64> = center.iter().zip(z).map(|(c, w)| c + w * *radius).collect();
                Ok(inner.value_at(&p)? * *scale)
            }
        }
    }

    pub(crate) fn jet_at(&self, z: &[Complex64]) -> Result<(Complex64, Vec<Complex64>)> {
        match &self.repr {
            Repr::Series(s) => Ok(s.jet(z)),
            Repr::Herglotz(h) => {
                let (f, df) = h.jet(z[0])?;
                Ok((f, vec![df]))
            }
            Repr::Product(fs) => {
                let jets = fs.iter().map(|f| f.jet_at(z)).collect::<Result<Vec<_>>>()?;
                Ok(leibniz(self.dim, &jets))
            }
            Repr::ZeroPoly(zs) => {
                let jets: Vec<(Complex64, Vec<Complex64>)> =
                    zs.iter().map(|h| (h.affine(z), h.coeffs.clone())).collect();
                if jets.is_empty() {
                    return Ok((one(), vec![zero(); self.dim]));
                }
                Ok(leibniz(self.dim, &jets))
            }
            Repr::Exp(h) => {
                let (v, g) = h.jet_at(z)?;
                let e = v.exp();
                Ok((e, g.iter().map(|x| x * e).collect()))
            }
            Repr::Ridge { profile, direction } => {
                let s: Complex64 = direction.iter().zip(z).map(|(u, x)| u * x).sum();
                let (v, d) = profile.jet_at(&[s])?;
                Ok((v, direction.iter().map(|u| d[0] * u).collect()))
            }
            Repr::Slice { ambient, direction } => {
                let p: Vec<Complex64> = direction.iter().map(|u| z[0] * u.conj()).collect();
                let (v, g) = ambient.jet_at(&p)?;
                Ok((v, vec![g.iter().zip(direction).map(|(d, u)| d * u.conj()).sum()]))
            }
            Repr::Rescaled { inner, center, radius, scale } => {
                let p: Vec<Complex64> = center.iter().zip(z).map(|(c, w)| c + w * *radius).collect();
                let (v, g) = inner.jet_at(&p)?;
                Ok((v * *scale, g.iter().map(|d| d * (*radius * *scale)).collect()))
            }
        }
    }
}

/// Product rule over factor jets, robust to vanishing factors.
fn leibniz(dim: usize, jets: &[(Complex64, Vec<Complex64>)]) -> (Complex64, Vec<Complex64>) {
    let m = jets.len();
    let mut prefix = vec![one(); m + 1];
    for i in 0..m {
        prefix[i + 1] = prefix[i] * jets[i].0;
    }
    let mut suffix = vec![one(); m + 1];
    for i in (0..m).rev() {
        suffix[i] = suffix[i + 1] * jets[i].0;
    }
    let mut grad = vec![zero(); dim];
    for (i, (_, g)) in jets.iter().enumerate() {
        let others = prefix[i] * suffix[i + 1];
        for (acc, d) in grad.iter_mut().zip(g) {
            *acc += d * others;
        }
    }
    (prefix[m], grad)
}
