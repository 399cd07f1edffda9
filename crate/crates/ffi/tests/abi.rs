use std::ffi::{CStr, CString};
use std::ptr;

use blochgauge_ffi::*;

fn c(re: f64, im: f64) -> BgComplex {
    BgComplex { re, im }
}

fn last_error() -> String {
    let p = bg_last_error();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn weights_round_trip() {
    unsafe {
        let mut w = ptr::null_mut();
        assert_eq!(bg_weight_power(0.5, &mut w), BgStatus::Ok);
        assert!(bg_last_error().is_null());
        let mut v = 0.0;
        assert_eq!(bg_weight_eval(w, 0.25, &mut v), BgStatus::Ok);
        assert!((v - 0.5).abs() < 1e-15);
        assert_eq!(bg_weight_moderateness(w, 16, &mut v), BgStatus::Ok);
        assert!((v - 2f64.sqrt()).abs() < 1e-9);
        let (mut r, mut div) = (0.0, -1);
        assert_eq!(bg_weight_fast_majorant(w, 0.5, &mut r, &mut div), BgStatus::Ok);
        assert_eq!(div, 0);
        assert!((r - 2.0).abs() < 1e-6);
        assert_eq!(bg_weight_eval(w, 1.5, &mut v), BgStatus::InvalidArgument);
        assert!(last_error().contains("outside"));
        bg_weight_free(w);

        let mut k = ptr::null_mut();
        assert_eq!(bg_weight_constant(&mut k), BgStatus::Ok);
        assert_eq!(bg_weight_fast_majorant(k, 0.5, &mut r, &mut div), BgStatus::Ok);
        assert_eq!(div, 1);
        assert!(r.is_infinite());
        bg_weight_free(k);

        assert_eq!(bg_weight_power(f64::NAN, &mut w), BgStatus::InvalidArgument);
        bg_weight_free(ptr::null_mut());
    }
}

#[test]
fn null_pointers_are_reported() {
    unsafe {
        assert_eq!(bg_weight_power(0.5, ptr::null_mut()), BgStatus::NullPointer);
        let mut v = 0.0;
        assert_eq!(bg_weight_eval(ptr::null(), 0.5, &mut v), BgStatus::NullPointer);
        assert!(last_error().contains("NULL"));
        assert_eq!(bg_function_preset(ptr::null(), &mut ptr::null_mut()), BgStatus::NullPointer);
        assert_eq!(bg_function_dim(ptr::null()), 0);
    }
}

#[test]
fn polynomial_eval_and_gradient() {
    unsafe {
        // 1 + 2z + i z^2
        let coeffs = [c(1.0, 0.0), c(2.0, 0.0), c(0.0, 1.0)];
        let mut f = ptr::null_mut();
        assert_eq!(bg_function_polynomial(coeffs.as_ptr(), 3, &mut f), BgStatus::Ok);
        assert_eq!(bg_function_dim(f), 1);
        let z = [c(0.5, 0.0)];
        let mut v = c(0.0, 0.0);
        assert_eq!(bg_function_eval(f, z.as_ptr(), 1, &mut v), BgStatus::Ok);
        assert_eq!(v, c(2.0, 0.25));
        let mut g = [c(0.0, 0.0)];
        assert_eq!(bg_function_gradient(f, z.as_ptr(), 1, g.as_mut_ptr()), BgStatus::Ok);
        assert_eq!(g[0], c(2.0, 1.0));

        let far = [c(1.0, 0.0)];
        assert_eq!(bg_function_eval(f, far.as_ptr(), 1, &mut v), BgStatus::OutsideBall);
        let two = [c(0.1, 0.0), c(0.1, 0.0)];
        assert_eq!(bg_function_eval(f, two.as_ptr(), 2, &mut v), BgStatus::InvalidArgument);
        bg_function_free(f);
    }
}

#[test]
fn unknown_presets_are_invalid() {
    unsafe {
        let name = CString::new("no_such_thing").unwrap();
        let mut f = ptr::null_mut();
        assert_eq!(bg_function_preset(name.as_ptr(), &mut f), BgStatus::InvalidArgument);
        assert!(f.is_null());
        let mut b = ptr::null_mut();
        assert_eq!(bg_boundary_preset(name.as_ptr(), &mut b), BgStatus::InvalidArgument);
        assert!(last_error().contains("no_such_thing"));
    }
}

#[test]
fn identity_conditions_match_closed_forms() {
    unsafe {
        let name = CString::new("identity").unwrap();
        let mut f = ptr::null_mut();
        assert_eq!(bg_function_preset(name.as_ptr(), &mut f), BgStatus::Ok);
        let mut w = ptr::null_mut();
        assert_eq!(bg_weight_constant(&mut w), BgStatus::Ok);
        // at z = 0.5: d = 0.5, B_z = D(0.5, 0.25) misses 0
        let z = [c(0.5, 0.0)];
        let mut v = [0.0; 4];
        assert_eq!(bg_conditions(f, w, z.as_ptr(), 1, v.as_mut_ptr()), BgStatus::Ok);
        assert!((v[0] - 0.5).abs() < 1e-12);
        assert!((v[1] - 0.5).abs() < 1e-9);
        let mut inside = -1;
        assert_eq!(bg_in_e(f, z.as_ptr(), 1, &mut inside), BgStatus::Ok);
        assert_eq!(inside, 0);
        let z = [c(0.2, 0.0)];
        assert_eq!(bg_in_e(f, z.as_ptr(), 1, &mut inside), BgStatus::Ok);
        assert_eq!(inside, 1);
        bg_function_free(f);
        bg_weight_free(w);
    }
}

#[test]
fn singular_atom_is_schwarz_pick_extremal() {
    unsafe {
        let name = CString::new("singular_atom").unwrap();
        let mut b = ptr::null_mut();
        assert_eq!(bg_boundary_preset(name.as_ptr(), &mut b), BgStatus::Ok);
        let mut f = ptr::null_mut();
        assert_eq!(bg_function_herglotz(b, 1024, &mut f), BgStatus::Ok);
        let mut m = 1.0;
        let z = [c(0.0, 0.0)];
        assert_eq!(bg_schwarz_pick_margin(f, z.as_ptr(), 1, &mut m), BgStatus::Ok);
        assert!(m.abs() < 1e-9, "margin {m}");
        // Pν(0) = −1 for a unit atom
        let mut p = 0.0;
        assert_eq!(bg_poisson(b, c(0.0, 0.0), 1024, &mut p), BgStatus::Ok);
        assert!((p + 1.0).abs() < 1e-12);
        let mut q = -1.0;
        assert_eq!(bg_theorem2(b, ptr::null(), c(0.5, 0.0), &mut q), BgStatus::Ok);
        assert!(q > 0.0 && q.is_finite());
        bg_function_free(f);
        bg_boundary_free(b);
    }
}

#[test]
fn boundary_from_samples_and_atoms() {
    unsafe {
        let samples = vec![1.0; 64];
        let (angles, masses) = ([0.0], [1.0]);
        let mut b = ptr::null_mut();
        let st = bg_boundary_new(samples.as_ptr(), 64, angles.as_ptr(), masses.as_ptr(), 1, &mut b);
        assert_eq!(st, BgStatus::Ok);
        let mut p = 0.0;
        assert_eq!(bg_poisson(b, c(0.0, 0.0), 1024, &mut p), BgStatus::Ok);
        assert!((p + 1.0).abs() < 1e-12);
        bg_boundary_free(b);

        let bad = [-1.0];
        let st = bg_boundary_new(ptr::null(), 0, angles.as_ptr(), bad.as_ptr(), 1, &mut b);
        assert_eq!(st, BgStatus::InvalidArgument);
        let st = bg_boundary_new(ptr::null(), 0, ptr::null(), ptr::null(), 1, &mut b);
        assert_eq!(st, BgStatus::NullPointer);
    }
}

#[test]
fn automorphism_swaps_base_and_origin() {
    unsafe {
        let a = [c(0.3, 0.1), c(-0.2, 0.4)];
        let zero = [c(0.0, 0.0), c(0.0, 0.0)];
        let mut r = [c(9.0, 9.0); 2];
        assert_eq!(bg_automorphism_apply(a.as_ptr(), zero.as_ptr(), 2, r.as_mut_ptr()), BgStatus::Ok);
        for (x, y) in r.iter().zip(&a) {
            assert!((x.re - y.re).abs() < 1e-15 && (x.im - y.im).abs() < 1e-15);
        }
        assert_eq!(bg_automorphism_apply(a.as_ptr(), a.as_ptr(), 2, r.as_mut_ptr()), BgStatus::Ok);
        assert!(r.iter().all(|x| x.re.abs() < 1e-15 && x.im.abs() < 1e-15));
        assert_eq!(bg_automorphism_apply(zero.as_ptr(), a.as_ptr(), 2, r.as_mut_ptr()), BgStatus::InvalidArgument);
    }
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(bg_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
