use std::f64::consts::PI;

use blochgauge::analysis::lemma::rescale_with;
use blochgauge::analysis::modulus::DEFAULT_BOUNDARY_SAMPLES;
use blochgauge::analysis::{self, ModulusProbe, PointValues};
use blochgauge::functions::{Atom, Density};
use blochgauge::geometry::{self, Automorphism};
use blochgauge::quadrature::{self, CircleGrid};
use blochgauge::{BallPoint, BoundaryData, Complex64, HoloFunction, Trend, Weight};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A point of `B_n` with `|z| ≤ max_r`, from raw coordinates in `[-1, 1]^{2n}`.
fn ball_point(n: usize, max_r: f64) -> impl Strategy<Value = BallPoint> {
    (prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n), 0.0..1.0f64).prop_filter_map(
        "degenerate direction",
        move |(raw, t)| {
            let v: Vec<Complex64> = raw.iter().map(|&(a, b)| c(a, b)).collect();
            let norm = geometry::norm(&v);
            (norm > 1e-3).then(|| BallPoint::new(v.iter().map(|x| x * (t * max_r / norm)).collect()).unwrap())
        },
    )
}

fn disk_point(max_r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max_r, -PI..PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn atoms() -> impl Strategy<Value = Vec<Atom>> {
    prop::collection::vec((-PI..PI, 0.05..2.0f64), 1..4)
        .prop_map(|v| v.into_iter().map(|(a, m)| Atom::new(a, m).unwrap()).collect())
}

fn log_trig() -> impl Strategy<Value = Density> {
    (prop::collection::vec(-0.5..0.5f64, 0..4), prop::collection::vec(-0.5..0.5f64, 0..4), -1.0..1.0f64)
        .prop_map(|(cos, sin, offset)| Density::LogTrig { offset, cos, sin })
}

fn boundary() -> impl Strategy<Value = BoundaryData> {
    (log_trig(), prop::option::of(atoms())).prop_map(|(d, a)| BoundaryData::new(d, a.unwrap_or_default()).unwrap())
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = HoloFunction> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=max_degree + 1)
        .prop_map(|v| HoloFunction::polynomial(v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
}

fn bivariate() -> impl Strategy<Value = HoloFunction> {
    prop::collection::vec(((0u32..4, 0u32..4), (-1.0..1.0f64, -1.0..1.0f64)), 1..6).prop_map(|terms| {
        HoloFunction::multivariate(2, terms.into_iter().map(|((i, j), (a, b))| (vec![i, j], c(a, b))).collect())
            .unwrap()
    })
}

/// `1e-6 |∇f|` plus the rounding error of the difference quotient itself,
/// which dominates when `|f| / |∇f|` is large.
fn fd_tolerance(f: &HoloFunction, z: &BallPoint, grad_norm: f64, h: f64) -> f64 {
    1e-6 * grad_norm + 32.0 * f64::EPSILON * f.eval(z).unwrap().norm() / h
}

/// Central differences of `f` along each coordinate with step `h`, with one
/// Richardson step to cancel the `h²` term.
fn fd_gradient(f: &HoloFunction, z: &BallPoint, h: f64) -> Vec<Complex64> {
    (0..z.dim())
        .map(|k| {
            let quotient = |h: f64| {
                let shift = |s: f64| {
                    let mut p = z.coords().to_vec();
                    p[k] += s;
                    f.eval(&BallPoint::new(p).unwrap()).unwrap()
                };
                (shift(h) - shift(-h)) / (2.0 * h)
            };
            (quotient(h / 2.0) * 4.0 - quotient(h)) / 3.0
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn automorphism_is_an_involution(
        (a, z) in (1usize..=3).prop_flat_map(|n| (ball_point(n, 0.95), ball_point(n, 0.999)))
    ) {
        prop_assume!(!a.is_origin());
        let phi = Automorphism::new(a.clone()).unwrap();
        let w = phi.apply(&z).unwrap();
        prop_assert!(w.norm() < 1.0);
        let back = phi.apply_raw(w.coords());
        let err: f64 = back.iter().zip(z.coords()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(err <= 1e-12, "involution error {err:e}");
        prop_assert!(geometry::norm(&phi.apply_raw(a.coords())) <= 1e-13);
        let bound = 1.0 / (1.0 - a.norm() * a.norm());
        prop_assert!(geometry::operator_norm(&phi.jacobian_at_base()) <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn log_modulus_equals_poisson_integral(bd in boundary(), z in disk_point(0.9)) {
        let f = HoloFunction::herglotz(bd, 1024).unwrap();
        let lhs = f.eval(&BallPoint::scalar(z).unwrap()).unwrap().norm().ln();
        let rhs = f.as_herglotz().unwrap().poisson(z).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9, "log|F| = {lhs}, Pν = {rhs}");
    }

    #[test]
    fn doubling_nodes_leaves_smooth_poisson_integrals_unchanged(d in log_trig(), z in disk_point(0.9)) {
        let bd = BoundaryData::new(d, vec![]).unwrap();
        let a = quadrature::poisson(&bd, CircleGrid::shared(256).unwrap(), z).unwrap();
        let b = quadrature::poisson(&bd, CircleGrid::shared(512).unwrap(), z).unwrap();
        prop_assert!((a - b).abs() <= 1e-10, "256 → 512 moved Pν by {:e}", (a - b).abs());
    }

    #[test]
    fn singular_inner_functions_are_bounded_by_one(a in atoms(), z in disk_point(0.999)) {
        let f = HoloFunction::make_singular_inner(a).unwrap();
        if let Ok(v) = f.eval(&BallPoint::scalar(z).unwrap()) {
            prop_assert!(v.norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn log_derivative_of_singular_measure_is_dominated(a in atoms(), z in disk_point(0.99)) {
        let bd = BoundaryData::new(Density::Constant(1.0), a).unwrap();
        let grid = CircleGrid::shared(1024).unwrap();
        let u = quadrature::herglotz_derivative_factor(&bd, grid, z).unwrap();
        let p = quadrature::poisson(&bd, grid, z).unwrap();
        let bound = -2.0 * p / (1.0 - z.norm_sqr());
        prop_assert!(u.norm() <= bound * (1.0 + 1e-12), "|U| = {} > {bound}", u.norm());
    }

    #[test]
    fn polynomial_gradient_matches_finite_differences(f in polynomial(12), z in ball_point(1, 0.95)) {
        let (g, h) = (f.gradient(&z).unwrap(), 1e-5 * z.dz());
        let fd = fd_gradient(&f, &z, h);
        if g[0].norm() >= 1e-8 {
            prop_assert!((fd[0] - g[0]).norm() <= fd_tolerance(&f, &z, g[0].norm(), h), "{:?} vs {:?}", fd[0], g[0]);
        }
    }

    #[test]
    fn bivariate_gradient_matches_finite_differences(f in bivariate(), z in ball_point(2, 0.95)) {
        let (g, h) = (f.gradient(&z).unwrap(), 1e-5 * z.dz());
        let fd = fd_gradient(&f, &z, h);
        let norm = geometry::norm(&g);
        let diff: Vec<Complex64> = fd.iter().zip(&g).map(|(a, b)| a - b).collect();
        if norm >= 1e-8 {
            prop_assert!(geometry::norm(&diff) <= fd_tolerance(&f, &z, norm, h), "{fd:?} vs {g:?}");
        }
    }

    #[test]
    fn herglotz_gradient_matches_finite_differences(bd in boundary(), z in ball_point(1, 0.9)) {
        let f = HoloFunction::herglotz(bd, 1024).unwrap();
        let (g, h) = (f.gradient(&z).unwrap(), 1e-5 * z.dz());
        let fd = fd_gradient(&f, &z, h);
        if g[0].norm() >= 1e-8 {
            prop_assert!((fd[0] - g[0]).norm() <= fd_tolerance(&f, &z, g[0].norm(), h), "{:?} vs {:?}", fd[0], g[0]);
        }
    }

    #[test]
    fn product_evaluates_factorwise(f in polynomial(6), g in polynomial(6), z in ball_point(1, 0.99)) {
        let p = HoloFunction::product(vec![f.clone(), g.clone()]).unwrap();
        let want = f.eval(&z).unwrap() * g.eval(&z).unwrap();
        let got = p.eval(&z).unwrap();
        prop_assert!((got - want).norm() <= 1e-12 * want.norm().max(1e-300) || want.norm() == 0.0 && got.norm() == 0.0);
    }

    #[test]
    fn masked_condition_never_exceeds_unmasked(f in polynomial(5), z in ball_point(1, 0.95)) {
        let probe = ModulusProbe::new(1, 64, 0);
        let pv = PointValues::compute(&f, &z, &probe).unwrap();
        prop_assert!(pv.lhs_iv(1.0) <= pv.lhs_iii(1.0));
        prop_assert!(pv.sup >= pv.modulus);
        prop_assert!(pv.log_term() >= 0.0);
    }

    #[test]
    fn rescaling_preserves_the_gradient_identity(f in polynomial(8), z in ball_point(1, 0.95)) {
        let probe = ModulusProbe::new(1, DEFAULT_BOUNDARY_SAMPLES, 0);
        let (g, m) = rescale_with(&f, &z, &probe).unwrap();
        let gf = geometry::norm(&f.gradient(&z).unwrap());
        let gg = geometry::norm(&g.gradient(&BallPoint::origin(1)).unwrap());
        prop_assert!((gg * 2.0 * m / z.dz() - gf).abs() <= 1e-9 * gf.max(1e-300) || gf == 0.0 && gg == 0.0);
    }

    #[test]
    fn zero_counts_match_constructed_roots(
        roots in prop::collection::vec((0.0..0.95f64, -PI..PI), 1..=6),
        center in disk_point(0.4),
        radius in 0.1..0.5f64,
    ) {
        let roots: Vec<Complex64> = roots.iter().map(|&(r, t)| Complex64::from_polar(r, t)).collect();
        prop_assume!(roots.iter().all(|r| ((r - center).norm() - radius).abs() > 1e-3));
        prop_assume!(center.norm() + radius < 1.0);
        let mut a = vec![c(1.0, 0.0)];
        for r in &roots {
            let mut next = vec![c(0.0, 0.0); a.len() + 1];
            for (k, &x) in a.iter().enumerate() {
                next[k + 1] += x;
                next[k] -= x * r;
            }
            a = next;
        }
        let f = HoloFunction::polynomial(a).unwrap();
        let want = roots.iter().filter(|r| (*r - center).norm() < radius).count() as i64;
        prop_assert_eq!(analysis::zero_count(&f, center, radius).unwrap(), want);
    }

    #[test]
    fn trends_are_scale_invariant(m in prop::collection::vec(1e-6..1e3f64, 4..12), s in 1.0..100.0f64) {
        let scaled: Vec<f64> = m.iter().map(|x| x * s).collect();
        prop_assert_eq!(Trend::of(&m), Trend::of(&scaled));
    }

    #[test]
    fn moderateness_constants_are_at_least_one(alpha in 0.0..1.0f64, beta in -2.0..2.0f64) {
        for w in [Weight::Power { alpha }, Weight::LogGrowth { beta }, Weight::PowerGrowth { beta: beta.abs() }] {
            prop_assert!(w.moderateness_constant(12).unwrap() >= 1.0);
        }
    }
}
