//! TOML audit configs and their translation into library objects.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::modulus::DEFAULT_BOUNDARY_SAMPLES;
use crate::analysis::{DEFAULT_J, DEFAULT_K, MAX_J, MAX_K};
use crate::functions::{
    parse_samples, presets, Atom, BoundaryData, BoundaryZero, Density, HoloFunction, ZeroHyperplane,
    MAX_UNIVARIATE_DEGREE,
};
use crate::quadrature::{DEFAULT_NODES, MAX_NODES};
use crate::weights::Weight;

/// `[re, im]`.
pub type C = [f64; 2];

fn cx(c: &C) -> Complex64 {
    Complex64::new(c[0], c[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Optional guard: the subcommand this config is meant for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionSpec>,
    #[serde(default = "default_weight")]
    pub weight: Weight,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub thm2: Thm2Spec,
    #[serde(default)]
    pub weights: WeightsSpec,
    #[serde(default, skip_serializing)]
    pub output: OutputSpec,
}

fn default_weight() -> Weight {
    Weight::Constant
}

fn default_tolerance() -> f64 {
    1e-9
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "default_k")]
    pub k: u32,
    #[serde(default = "default_j")]
    pub j: usize,
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    #[serde(default = "default_boundary_samples")]
    pub boundary_samples: usize,
}

fn default_k() -> u32 {
    DEFAULT_K
}
fn default_j() -> usize {
    DEFAULT_J
}
fn default_nodes() -> usize {
    DEFAULT_NODES
}
fn default_boundary_samples() -> usize {
    DEFAULT_BOUNDARY_SAMPLES
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { k: DEFAULT_K, j: DEFAULT_J, nodes: DEFAULT_NODES, boundary_samples: DEFAULT_BOUNDARY_SAMPLES }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thm2Spec {
    /// Exponent of the `ψ ∈ L^p` check.
    #[serde(default = "default_p")]
    pub p: f64,
}

fn default_p() -> f64 {
    2.0
}

impl Default for Thm2Spec {
    fn default() -> Self {
        Self { p: 2.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsSpec {
    /// Depth of the dyadic moderateness grid.
    #[serde(default = "default_k_max")]
    pub k_max: u32,
    /// Upper limit `δ` of the fast-majorant integral.
    #[serde(default = "default_delta")]
    pub delta: f64,
}

fn default_k_max() -> u32 {
    MAX_K
}
fn default_delta() -> f64 {
    0.5
}

impl Default for WeightsSpec {
    fn default() -> Self {
        Self { k_max: MAX_K, delta: 0.5 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: Option<PathBuf>,
    pub format: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    Preset {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<C>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<f64>,
    },
    PowerSeries {
        #[serde(default = "one")]
        dim: usize,
        /// Taylor coefficients `a_0, a_1, …` (one variable).
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        coefficients: Vec<C>,
        /// Monomials `c z^e` (several variables).
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        terms: Vec<TermSpec>,
        /// Declared zeros: points (one variable) or hyperplanes.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        zeros: Option<Vec<ZeroSpec>>,
    },
    Herglotz {
        boundary: BoundarySpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nodes: Option<usize>,
    },
    Product {
        factors: Vec<FunctionSpec>,
    },
    ShiftedZeroPoly {
        #[serde(default = "one")]
        dim: usize,
        zeros: Vec<ZeroSpec>,
    },
    Exp {
        exponent: Box<FunctionSpec>,
    },
    Ridge {
        profile: Box<FunctionSpec>,
        direction: Vec<C>,
    },
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub exponents: Vec<u32>,
    pub coeff: C,
}

/// A point `[re, im]` in one variable, or `{ coeffs, offset }` for the
/// hyperplane `Σ c_j z_j = offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ZeroSpec {
    Point(C),
    Hyperplane { coeffs: Vec<C>, offset: C },
}

impl ZeroSpec {
    fn build(&self, dim: usize) -> Result<ZeroHyperplane, String> {
        match self {
            ZeroSpec::Point(p) if dim == 1 => Ok(ZeroHyperplane::point(cx(p))),
            ZeroSpec::Point(_) => Err(format!("point zeros need dim = 1 (got {dim}); use {{ coeffs, offset }}")),
            ZeroSpec::Hyperplane { coeffs, offset } => {
                if coeffs.len() != dim {
                    return Err(format!("hyperplane has {} coefficients, expected {dim}", coeffs.len()));
                }
                Ok(ZeroHyperplane { coeffs: coeffs.iter().map(cx).collect(), offset: cx(offset) })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySpec {
    /// Named boundary data; `density`, `atoms` and `zeros` must then be absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<DensitySpec>,
    /// `[angle, mass]` pairs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atoms: Vec<[f64; 2]>,
    /// `[angle, order]` pairs for factors `|ζ − e^{iθ}|^order` of `ψ`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zeros: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensitySpec {
    Constant {
        value: f64,
    },
    ExpCos,
    SmoothBump,
    LogTrig {
        #[serde(default)]
        offset: f64,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
    },
    /// Plain-text sample file, resolved relative to the config file.
    Samples {
        file: PathBuf,
    },
}

/// Builds library objects, resolving relative paths against `base`.
pub struct Builder<'a> {
    pub base: &'a Path,
    pub nodes: usize,
}

impl Builder<'_> {
    pub fn boundary(&self, spec: &BoundarySpec) -> Result<BoundaryData, String> {
        if let Some(name) = &spec.preset {
            if spec.density.is_some() || !spec.atoms.is_empty() || !spec.zeros.is_empty() {
                return Err("boundary `preset` excludes `density`, `atoms` and `zeros`".into());
            }
            return BoundaryData::preset(name).ok_or_else(|| {
                format!("unknown boundary preset `{name}` (known: {})", BoundaryData::PRESETS.join(", "))
            });
        }
        let density = match spec.density.as_ref().unwrap_or(&DensitySpec::Constant { value: 1.0 }) {
            DensitySpec::Constant { value } => Density::Constant(*value),
            DensitySpec::ExpCos => Density::exp_cos(),
            DensitySpec::SmoothBump => Density::smooth_bump(),
            DensitySpec::LogTrig { offset, cos, sin } => {
                Density::LogTrig { offset: *offset, cos: cos.clone(), sin: sin.clone() }
            }
            DensitySpec::Samples { file } => {
                let path = self.base.join(file);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read sample file {}: {e}", path.display()))?;
                Density::Samples(parse_samples(&text).map_err(|e| format!("{}: {e}", path.display()))?)
            }
        };
        let atoms = spec.atoms.iter().map(|[a, m]| Atom::new(*a, *m)).collect::<crate::Result<Vec<_>>>();
        let zeros = spec.zeros.iter().map(|[a, s]| BoundaryZero { angle: *a, order: *s }).collect();
        BoundaryData::with_zeros(density, zeros, atoms.map_err(|e| e.to_string())?).map_err(|e| e.to_string())
    }

    pub fn function(&self, spec: &FunctionSpec) -> Result<HoloFunction, String> {
        let lib = |r: crate::Result<HoloFunction>| r.map_err(|e| e.to_string());
        match spec {
            FunctionSpec::Preset { name, degree, value, sigma } => {
                let p = presets::PresetParams {
                    degree: degree.unwrap_or(MAX_UNIVARIATE_DEGREE),
                    value: value.as_ref().map(cx).unwrap_or(Complex64::new(1.0, 0.0)),
                    sigma: sigma.unwrap_or(1.0),
                    nodes: self.nodes,
                };
                lib(presets::by_name(name, &p))
            }
            FunctionSpec::PowerSeries { dim, coefficients, terms, zeros } => {
                let f = match (*dim, coefficients.is_empty(), terms.is_empty()) {
                    (1, false, true) => lib(HoloFunction::polynomial(coefficients.iter().map(cx).collect()))?,
                    (_, true, false) => lib(HoloFunction::multivariate(
                        *dim,
                        terms.iter().map(|t| (t.exponents.clone(), cx(&t.coeff))).collect(),
                    ))?,
                    _ => return Err("power_series needs `coefficients` (dim = 1) or `terms`, not both".into()),
                };
                match zeros {
                    Some(zs) => {
                        let planes = zs.iter().map(|z| z.build(*dim)).collect::<Result<Vec<_>, _>>()?;
                        lib(f.with_declared_zeros(planes))
                    }
                    None => Ok(f),
                }
            }
            FunctionSpec::Herglotz { boundary, nodes } => {
                lib(HoloFunction::herglotz(self.boundary(boundary)?, nodes.unwrap_or(self.nodes)))
            }
            FunctionSpec::Product { factors } => {
                let fs = factors.iter().map(|f| self.function(f)).collect::<Result<Vec<_>, _>>()?;
                lib(HoloFunction::product(fs))
            }
            FunctionSpec::ShiftedZeroPoly { dim, zeros } => {
                let planes = zeros.iter().map(|z| z.build(*dim)).collect::<Result<Vec<_>, _>>()?;
                lib(HoloFunction::zero_poly(*dim, planes))
            }
            FunctionSpec::Exp { exponent } => Ok(HoloFunction::exp(self.function(exponent)?)),
            FunctionSpec::Ridge { profile, direction } => {
                lib(HoloFunction::ridge(self.function(profile)?, direction.iter().map(cx).collect()))
            }
        }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    /// Resource guards and basic sanity.
    pub fn validate(&self) -> Result<(), String> {
        let g = &self.grid;
        if !(1..=MAX_K).contains(&g.k) {
            return Err(format!("grid.k = {} must lie in 1..={MAX_K}", g.k));
        }
        if !(1..=MAX_J).contains(&g.j) {
            return Err(format!("grid.j = {} must lie in 1..={MAX_J}", g.j));
        }
        if !g.nodes.is_power_of_two() || g.nodes > MAX_NODES || g.nodes < crate::quadrature::MIN_NODES {
            return Err(format!(
                "grid.nodes = {} must be a power of two in {}..={MAX_NODES}",
                g.nodes,
                crate::quadrature::MIN_NODES
            ));
        }
        if !(4..=1 << 16).contains(&g.boundary_samples) {
            return Err(format!("grid.boundary_samples = {} must lie in 4..=65536", g.boundary_samples));
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return Err(format!("tolerance = {} must be finite and >= 0", self.tolerance));
        }
        if !(self.thm2.p > 0.0) {
            return Err(format!("thm2.p = {} must be positive (inf allowed)", self.thm2.p));
        }
        self.weight.validate().map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_config() {
        let cfg = Config::parse(
            r#"
            command = "check"
            tolerance = 1e-8
            [function]
            tag = "product"
            factors = [
              { tag = "preset", name = "log1m", degree = 256 },
              { tag = "power_series", coefficients = [[0.0, 0.0], [1.0, 0.0]], zeros = [[0.0, 0.0]] },
            ]
            [weight]
            kind = "log_growth"
            beta = 1.0
            [grid]
            k = 6
            j = 16
            "#,
        )
        .unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.grid.nodes, DEFAULT_NODES);
        assert_eq!(cfg.weight, Weight::LogGrowth { beta: 1.0 });
        let b = Builder { base: Path::new("."), nodes: 1024 };
        let f = b.function(cfg.function.as_ref().unwrap()).unwrap();
        assert_eq!(f.dim(), 1);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_grids() {
        assert!(Config::parse("bogus = 1").is_err());
        let mut cfg = Config::parse("").unwrap();
        cfg.grid.k = 17;
        assert!(cfg.validate().is_err());
        cfg.grid.k = 4;
        cfg.grid.nodes = 1000;
        assert!(cfg.validate().is_err());
        cfg.grid.nodes = 1 << 17;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn boundary_specs() {
        let b = Builder { base: Path::new("."), nodes: 256 };
        let spec: BoundarySpec = toml::from_str("atoms = [[0.0, 1.0]]").unwrap();
        assert_eq!(b.boundary(&spec).unwrap().atoms().len(), 1);
        let spec: BoundarySpec = toml::from_str("atoms = [[0.0, -1.0]]").unwrap();
        assert!(b.boundary(&spec).is_err());
        let spec: BoundarySpec = toml::from_str("preset = \"exp_cos\"\natoms = [[0.0, 1.0]]").unwrap();
        assert!(b.boundary(&spec).is_err());
        let spec: BoundarySpec = toml::from_str("density = { kind = \"samples\", file = \"missing.txt\" }").unwrap();
        assert!(b.boundary(&spec).unwrap_err().contains("missing.txt"));
    }
}
