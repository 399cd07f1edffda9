//! Deterministic low-discrepancy directions on the unit sphere `S^{2n-1} ⊂ C^n`.
//!
//! Points of the additive recurrence `x_j = frac(s + j·α)` with Roberts'
//! generalized golden ratio are pushed through the Gaussian quantile per
//! coordinate and normalized. The offset `s` is the only randomness: `0.5`
//! for seed 0, otherwise drawn from a ChaCha stream keyed by the seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

/// Root of `x^{d+1} = x + 1`.
fn generalized_golden(d: usize) -> f64 {
    let mut x = 2.0f64;
    for _ in 0..64 {
        let f = x.powi(d as i32 + 1) - x - 1.0;
        let df = (d as f64 + 1.0) * x.powi(d as i32) - 1.0;
        x -= f / df;
    }
    x
}

/// Equispaced unit complex numbers `e^{2πij/count}`, `j = 0..count`.
pub fn circle_directions(count: usize) -> Vec<Complex64> {
    (0..count).map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / count as f64)).collect()
}

/// `count` unit vectors in `C^dim`. For `dim = 1` these are equispaced on the circle.
pub fn sphere_directions(dim: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    if dim == 1 {
        return circle_directions(count).into_iter().map(|z| vec![z]).collect();
    }
    let real_dim = 2 * dim;
    let phi = generalized_golden(real_dim);
    let alpha: Vec<f64> = (1..=real_dim).map(|i| phi.powi(-(i as i32)).fract()).collect();
    let offsets: Vec<f64> = if seed == 0 {
        vec![0.5; real_dim]
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..real_dim).map(|_| rng.gen::<f64>()).collect()
    };
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (1..=count)
        .map(|j| {
            let g: Vec<f64> = (0..real_dim)
                .map(|i| {
                    let u = (offsets[i] + j as f64 * alpha[i]).fract().clamp(1e-12, 1.0 - 1e-12);
                    normal.inverse_cdf(u)
                })
                .collect();
            let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            (0..dim).map(|k| Complex64::new(g[2 * k] / norm, g[2 * k + 1] / norm)).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_roots() {
        assert!((generalized_golden(1) - 1.618_033_988_749_895).abs() < 1e-14);
        assert!((generalized_golden(2) - 1.324_717_957_244_746).abs() < 1e-14);
    }

    #[test]
    fn directions_are_unit_and_deterministic() {
        for dim in 1..=3 {
            let a = sphere_directions(dim, 50, 7);
            let b = sphere_directions(dim, 50, 7);
            assert_eq!(a, b);
            for v in &a {
                assert_eq!(v.len(), dim);
                let n: f64 = v.iter().map(|c| c.norm_sqr()).sum();
                assert!((n - 1.0).abs() < 1e-14);
            }
        }
        assert_ne!(sphere_directions(2, 8, 0), sphere_directions(2, 8, 1));
    }

    #[test]
    fn directions_cover_the_sphere() {
        // every coordinate hemisphere gets a fair share
        let pts = sphere_directions(2, 512, 0);
        for k in 0..2 {
            let pos = pts.iter().filter(|v| v[k].re > 0.0).count();
            assert!((200..=312).contains(&pos), "{pos}");
        }
    }
}
