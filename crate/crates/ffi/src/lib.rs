//! C ABI for blochgauge.
//!
//! Objects cross the boundary as opaque handles created by `bg_*_new` or
//! `bg_*_preset` and released with the matching `bg_*_free`. Every fallible
//! call returns a [`BgStatus`] and writes its result through an out pointer;
//! on failure [`bg_last_error`] describes what went wrong on the calling
//! thread. Panics never unwind into C.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use blochgauge::analysis::modulus::DEFAULT_BOUNDARY_SAMPLES;
use blochgauge::analysis::{self, Thm2Options};
use blochgauge::functions::presets::{self, PresetParams};
use blochgauge::functions::{Atom, Density};
use blochgauge::geometry;
use blochgauge::weights::FastMajorant;
use blochgauge::{BallPoint, BoundaryData, Complex64, Error, HoloFunction, Weight};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutsideBall = 3,
    Precondition = 4,
    Numerical = 5,
    Panic = 6,
}

/// A complex number, layout-compatible with C99 `double _Complex`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BgComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for BgComplex {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<BgComplex> for Complex64 {
    fn from(c: BgComplex) -> Self {
        Complex64::new(c.re, c.im)
    }
}

/// Opaque weight `ω`.
pub struct BgWeight(Weight);
/// Opaque boundary data `ν = log ψ dm − μ_s`.
pub struct BgBoundary(BoundaryData);
/// Opaque holomorphic function.
pub struct BgFunction(HoloFunction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(BgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e.root() {
            Error::OutsideBall { .. } => BgStatus::OutsideBall,
            Error::Precondition(_) => BgStatus::Precondition,
            Error::Dimension { .. }
            | Error::DegenerateAutomorphism
            | Error::WeightDomain(_)
            | Error::InvalidWeight(_)
            | Error::InvalidBoundary(_)
            | Error::InvalidFunction(_) => BgStatus::InvalidArgument,
            _ => BgStatus::Numerical,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(BgStatus::NullPointer, format!("{what} is NULL"))
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(BgStatus::InvalidArgument, msg.into())
}

/// Runs `body`, records any failure or panic, and returns the status.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> BgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            BgStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            BgStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn point(z: *const BgComplex, n: usize) -> Result<BallPoint, Fail> {
    let coords = slice(z, n, "z")?.iter().map(|&c| c.into()).collect();
    Ok(BallPoint::new(coords)?)
}

unsafe fn emit<T>(handle: T, dst: *mut *mut T) -> Result<(), Fail> {
    *out(dst, "out")? = Box::into_raw(Box::new(handle));
    Ok(())
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message for the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next `bg_*` call on the same thread.
#[no_mangle]
pub extern "C" fn bg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// ---- weights ----

unsafe fn new_weight(w: Weight, dst: *mut *mut BgWeight) -> BgStatus {
    guard(|| {
        w.validate()?;
        emit(BgWeight(w), dst)
    })
}

/// `ω(t) = t^α` for finite `α`.
///
/// # Safety
/// `dst` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bg_weight_power(alpha: f64, dst: *mut *mut BgWeight) -> BgStatus {
    new_weight(Weight::Power { alpha }, dst)
}

/// `ω ≡ 1`.
///
/// # Safety
/// `dst` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bg_weight_constant(dst: *mut *mut BgWeight) -> BgStatus {
    new_weight(Weight::Constant, dst)
}

/// `ω(t) = (log(e/t))^β`.
///
/// # Safety
/// `dst` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bg_weight_log_growth(beta: f64, dst: *mut *mut BgWeight) -> BgStatus {
    new_weight(Weight::LogGrowth { beta }, dst)
}

/// `ω(t) = t^{-β}`.
///
/// # Safety
/// `dst` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bg_weight_power_growth(beta: f64, dst: *mut *mut BgWeight) -> BgStatus {
    new_weight(Weight::PowerGrowth { beta }, dst)
}

/// # Safety
/// `w` must be NULL or a handle from a `bg_weight_*` constructor, freed once.
#[no_mangle]
pub unsafe extern "C" fn bg_weight_free(w: *mut BgWeight) {
    release(w)
}

/// `ω(t)` for `t ∈ (0, 1]`.
///
/// # Safety
/// `w` must be a live weight handle and `value` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bg_weight_eval(w: *const BgWeight, t: f64, value: *mut f64) -> BgStatus {
    guard(|| {
        *out(value, "value")? = get(w, "w")?.0.eval(t)?;
        Ok(())
    })
}

/// Empirical moderateness constant over dyadic `t = 2^{-k}`, `k ≤ k_max`.
///
/// # Safety
/// `w` must be a live weight handle and `value` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bg_weight_moderateness(w: *const BgWeight, k_max: u32, value: *mut f64) -> BgStatus {
    guard(|| {
        *out(value, "value")? = get(w, "w")?.0.moderateness_constant(k_max)?;
        Ok(())
    })
}

/// `∫_0^δ ω(t)/t dt / ω(δ)`. Sets `*divergent` to 1 (and `*ratio` to
/// infinity) when the integral diverges, else 0.
///
/// # Safety
/// `w` must be a live weight handle; `ratio` and `divergent` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bg_weight_fast_majorant(
    w: *const BgWeight,
    delta: f64,
    ratio: *mut f64,
    divergent: *mut c_int,
) -> BgStatus {
    guard(|| {
        let r = get(w, "w")?.0.fast_majorant_ratio(delta)?;
        let (ratio, divergent) = (out(ratio, "ratio")?, out(divergent, "divergent")?);
        match r {
            FastMajorant::Ratio(x) => (*ratio, *divergent) = (x, 0),
            FastMajorant::Divergent => (*ratio, *divergent) = (f64::INFINITY, 1),
        }
        Ok(())
    })
}

// ---- boundary data ----

/// Named boundary data: `zero`, `exp_cos`, `smooth_bump`, `abs_one_minus`,
/// `singular_atom`, `two_atoms`, `exp_cos_atoms`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `dst` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bg_boundary_preset(name: *const c_char, dst: *mut *mut BgBoundary) -> BgStatus {
    guard(|| {
        let name = text(name, "name")?;
        let bd = BoundaryData::preset(name).ok_or_else(|| invalid(format!("unknown boundary preset `{name}`")))?;
        emit(BgBoundary(bd), dst)
    })
}

/// Boundary data from `2^k` equispaced density samples `ψ(2πi/L)` (or a
/// constant density `ψ ≡ 1` when `sample_count` is 0) and `atom_count`
/// point masses `(angle, mass)`.
///
/// # Safety
/// `samples` must hold `sample_count` doubles, `atom_angles` and `atom_masses`
/// `atom_count` doubles each; `dst` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bg_boundary_new(
    samples: *const f64,
    sample_count: usize,
    atom_angles: *const f64,
    atom_masses: *const f64,
    atom_count: usize,
    dst: *mut *mut BgBoundary,
) -> BgStatus {
    guard(|| {
        let density = match sample_count {
            0 => Density::Constant(1.0),
            _ => Density::Samples(slice(samples, sample_count, "samples")?.to_vec()),
        };
        let angles = slice(atom_angles, atom_count, "atom_angles")?;
        let masses = slice(atom_masses, atom_count, "atom_masses")?;
        let atoms = angles.iter().zip(masses).map(|(&a, &m)| Atom::new(a, m)).collect::<Result<Vec<_>, _>>()?;
        emit(BgBoundary(BoundaryData::new(density, atoms)?), dst)
    })
}

/// # Safety
/// `b` must be NULL or a handle from a `bg_boundary_*` constructor, freed once.
#[no_mangle]
pub unsafe extern "C" fn bg_boundary_free(b: *mut BgBoundary) {
    release(b)
}

/// Poisson integral `Pν(z)` on the disk.
///
/// # Safety
/// `b` must be a live boundary handle and `value` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bg_poisson(b: *const BgBoundary, z: BgComplex, nodes: usize, value: *mut f64) -> BgStatus {
    guard(|| {
        let f = HoloFunction::herglotz(get(b, "b")?.0.clone(), nodes)?;
        let h = f.as_herglotz().expect("herglotz constructor");
        *out(value, "value")? = h.poisson(z.into())?;
        Ok(())
    })
}

/// `exp(Pν(z)) · [max_{∂B_z} Pν − Pν(z)] / ω(1 − |z|)`; a NULL weight means `ω ≡ 1`.
///
/// # Safety
/// `b` must be a live boundary handle, `w` NULL or a live weight handle, and
/// `value` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bg_theorem2(
    b: *const BgBoundary,
    w: *const BgWeight,
    z: BgComplex,
    value: *mut f64,
) -> BgStatus {
    guard(|| {
        let bd = &get(b, "b")?.0;
        let w = w.as_ref().map_or(Weight::Constant, |w| w.0.clone());
        *out(value, "value")? = analysis::theorem2_quantity(bd, &w, z.into(), &Thm2Options::default())?;
        Ok(())
    })
}

// ---- functions ----

/// Named example function (see the `presets` config names), with the default
/// truncation degree and parameters.
///
/// # Safety
/// `name` must be a NUL-terminated string and `dst` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bg_function_preset(name: *const c_char, dst: *mut *mut BgFunction) -> BgStatus {
    guard(|| {
        let name = text(name, "name")?;
        if !presets::NAMES.contains(&name) {
            return Err(invalid(format!("unknown function preset `{name}`")));
        }
        emit(BgFunction(presets::by_name(name, &PresetParams::default())?), dst)
    })
}

/// Polynomial `Σ_k c_k z^k` on the disk.
///
/// # Safety
/// `coeffs` must hold `len` values and `dst` be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bg_function_polynomial(
    coeffs: *const BgComplex,
    len: usize,
    dst: *mut *mut BgFunction,
) -> BgStatus {
    guard(|| {
        let c = slice(coeffs, len, "coeffs")?.iter().map(|&c| c.into()).collect();
        emit(BgFunction(HoloFunction::polynomial(c)?), dst)
    })
}

/// `F = exp(∫ (ζ+z)/(ζ−z) dν(ζ))` from boundary data; `base_nodes` is the
/// initial circle grid (a power of two).
///
/// # Safety
/// `b` must be a live boundary handle and `dst` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn bg_function_herglotz(
    b: *const BgBoundary,
    base_nodes: usize,
    dst: *mut *mut BgFunction,
) -> BgStatus {
    guard(|| emit(BgFunction(HoloFunction::herglotz(get(b, "b")?.0.clone(), base_nodes)?), dst))
}

/// # Safety
/// `f` must be NULL or a handle from a `bg_function_*` constructor, freed once.
#[no_mangle]
pub unsafe extern "C" fn bg_function_free(f: *mut BgFunction) {
    release(f)
}

/// Complex dimension `n`, or 0 for a NULL handle.
///
/// # Safety
/// `f` must be NULL or a live function handle.
#[no_mangle]
pub unsafe extern "C" fn bg_function_dim(f: *const BgFunction) -> usize {
    f.as_ref().map_or(0, |f| f.0.dim())
}

/// `f(z)` at the ball point `z` with `n` coordinates.
///
/// # Safety
/// `f` must be a live function handle, `z` hold `n` values, `value` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bg_function_eval(
    f: *const BgFunction,
    z: *const BgComplex,
    n: usize,
    value: *mut BgComplex,
) -> BgStatus {
    guard(|| {
        let v = get(f, "f")?.0.eval(&point(z, n)?)?;
        *out(value, "value")? = v.into();
        Ok(())
    })
}

/// Complex gradient `(∂f/∂z_1, …, ∂f/∂z_n)` written to `grad[0..n]`.
///
/// # Safety
/// `f` must be a live function handle; `z` and `grad` must hold `n` values.
#[no_mangle]
pub unsafe extern "C" fn bg_function_gradient(
    f: *const BgFunction,
    z: *const BgComplex,
    n: usize,
    grad: *mut BgComplex,
) -> BgStatus {
    guard(|| {
        let g = get(f, "f")?.0.gradient(&point(z, n)?)?;
        if grad.is_null() {
            return Err(null("grad"));
        }
        let dst = std::slice::from_raw_parts_mut(grad, n);
        for (d, v) in dst.iter_mut().zip(g) {
            *d = v.into();
        }
        Ok(())
    })
}

/// The four condition values `(lhs_i, lhs_ii, lhs_iii, lhs_iv)` at `z`.
///
/// # Safety
/// `f` and `w` must be live handles, `z` hold `n` values and `values` hold 4.
#[no_mangle]
pub unsafe extern "C" fn bg_conditions(
    f: *const BgFunction,
    w: *const BgWeight,
    z: *const BgComplex,
    n: usize,
    values: *mut f64,
) -> BgStatus {
    guard(|| {
        let (f, w, z) = (&get(f, "f")?.0, &get(w, "w")?.0, point(z, n)?);
        let probe = analysis::ModulusProbe::new(f.dim(), DEFAULT_BOUNDARY_SAMPLES, 0);
        let pv = analysis::PointValues::compute(f, &z, &probe)?;
        let omega = w.eval(z.dz())?;
        let v = [pv.lhs_i(z.dz(), omega), pv.lhs_ii(omega), pv.lhs_iii(omega), pv.lhs_iv(omega)];
        if values.is_null() {
            return Err(null("values"));
        }
        std::slice::from_raw_parts_mut(values, 4).copy_from_slice(&v);
        Ok(())
    })
}

/// Schwarz–Pick margin `2|g| log(1/|g|)/(1−|z|²) − |∇g|` of a zero-free
/// self-map `g` of the disk or ball.
///
/// # Safety
/// `g` must be a live function handle, `z` hold `n` values, `value` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bg_schwarz_pick_margin(
    g: *const BgFunction,
    z: *const BgComplex,
    n: usize,
    value: *mut f64,
) -> BgStatus {
    guard(|| {
        *out(value, "value")? = analysis::schwarz_pick_margin(&get(g, "g")?.0, &point(z, n)?)?;
        Ok(())
    })
}

/// Sets `*inside` to 1 when the small ball `B_z` meets the zero set, else 0.
///
/// # Safety
/// `f` must be a live function handle, `z` hold `n` values, `inside` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn bg_in_e(f: *const BgFunction, z: *const BgComplex, n: usize, inside: *mut c_int) -> BgStatus {
    guard(|| {
        *out(inside, "inside")? = c_int::from(analysis::in_e(&get(f, "f")?.0, &point(z, n)?)?);
        Ok(())
    })
}

/// `φ_a(z)`, the ball automorphism exchanging `a` and 0, written to `result[0..n]`.
///
/// # Safety
/// `a`, `z` and `result` must each hold `n` values.
#[no_mangle]
pub unsafe extern "C" fn bg_automorphism_apply(
    a: *const BgComplex,
    z: *const BgComplex,
    n: usize,
    result: *mut BgComplex,
) -> BgStatus {
    guard(|| {
        let w = geometry::apply_automorphism(&point(a, n)?, &point(z, n)?)?;
        if result.is_null() {
            return Err(null("result"));
        }
        let dst = std::slice::from_raw_parts_mut(result, n);
        for (d, &v) in dst.iter_mut().zip(w.coords()) {
            *d = v.into();
        }
        Ok(())
    })
}
