//! C interface to the `weno3` solver.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_parse`/`*_run`
//! functions and released by the matching `*_free`. Every fallible function
//! returns a [`Weno3Status`]; on failure a message is kept per thread and can
//! be copied out with [`weno3_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weno3::cli::{format_scheme, parse_scheme, resolve_run, RunConfig};
use weno3::problems::PROBLEM_IDS;
use weno3::reconstruction::interface_flux;
use weno3::solvers::{RunOutput, Solution};
use weno3::weights::{compute_weights, StencilValues, WeightScheme};
use weno3::WenoError;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weno3Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidScheme = 3,
    UnknownProblem = 4,
    SolverFailure = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Field selector for [`weno3_simulation_copy_field`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weno3Field {
    /// Cell-center x coordinates (`nx` values).
    X = 0,
    /// Cell-center y coordinates (`ny` values; empty in 1D).
    Y = 1,
    /// Scalar unknown (scalar problems only).
    U = 2,
    Density = 3,
    VelocityX = 4,
    VelocityY = 5,
    Pressure = 6,
}

/// Optional overrides of a registered problem; zero keeps the default.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Weno3RunOptions {
    pub nx: usize,
    pub ny: usize,
    pub cfl: f64,
    pub dt_over_dx: f64,
    pub t_final: f64,
    pub gamma: f64,
}

/// Opaque nonlinear-weight scheme.
pub struct Weno3Scheme {
    scheme: WeightScheme,
}

/// Opaque finished simulation.
pub struct Weno3Simulation {
    output: RunOutput,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: Weno3Status, msg: impl Into<String>) -> Weno3Status {
    set_error(msg);
    status
}

fn status_of(err: &WenoError) -> Weno3Status {
    match err {
        WenoError::InvalidScheme { .. } => Weno3Status::InvalidScheme,
        WenoError::UnknownProblem(_) => Weno3Status::UnknownProblem,
        e if e.is_config_error() => Weno3Status::InvalidArgument,
        WenoError::NonFiniteStencil { .. } => Weno3Status::InvalidArgument,
        _ => Weno3Status::SolverFailure,
    }
}

fn from_error(err: WenoError) -> Weno3Status {
    fail(status_of(&err), err.to_string())
}

/// Runs `f`, converting a panic into [`Weno3Status::Panic`].
fn guarded(f: impl FnOnce() -> Weno3Status) -> Weno3Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == Weno3Status::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(Weno3Status::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Weno3Status> {
    if s.is_null() {
        return Err(fail(Weno3Status::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(Weno3Status::InvalidArgument, format!("{what} is not UTF-8")))
}

/// Copies `text` and a terminating NUL into `buf`; `required` (if not null)
/// receives the needed size including the NUL.
unsafe fn write_str(text: &str, buf: *mut c_char, len: usize, required: *mut usize) -> Weno3Status {
    let need = text.len() + 1;
    if !required.is_null() {
        *required = need;
    }
    if buf.is_null() || len < need {
        return fail(
            Weno3Status::BufferTooSmall,
            format!("buffer of {len} bytes, {need} required"),
        );
    }
    ptr::copy_nonoverlapping(text.as_ptr() as *const c_char, buf, text.len());
    *buf.add(text.len()) = 0;
    Weno3Status::Ok
}

/// Copies the calling thread's last error message into `buf`.
///
/// # Safety
/// `buf` must be valid for `len` bytes or null; `required` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn weno3_last_error_message(buf: *mut c_char, len: usize, required: *mut usize) -> Weno3Status {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    write_str(&msg, buf, len, required)
}

/// NUL-terminated library version; static storage, never freed.
#[no_mangle]
pub extern "C" fn weno3_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Number of registered problems.
#[no_mangle]
pub extern "C" fn weno3_problem_count() -> usize {
    PROBLEM_IDS.len()
}

/// Copies the id of problem `index` into `buf`.
///
/// # Safety
/// Same buffer contract as [`weno3_last_error_message`].
#[no_mangle]
pub unsafe extern "C" fn weno3_problem_id(index: usize, buf: *mut c_char, len: usize, required: *mut usize) -> Weno3Status {
    guarded(|| match PROBLEM_IDS.get(index) {
        Some(id) => write_str(id, buf, len, required),
        None => fail(Weno3Status::InvalidArgument, format!("problem index {index} out of range")),
    })
}

/// Parses a scheme descriptor such as `"limiter:chi5:k=3"` or `"js3:eps=1e-6:p=2"`.
///
/// # Safety
/// `descriptor` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn weno3_scheme_parse(
    descriptor: *const c_char,
    allow_unsafe_k: bool,
    out: *mut *mut Weno3Scheme,
) -> Weno3Status {
    guarded(|| {
        if out.is_null() {
            return fail(Weno3Status::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let text = match read_str(descriptor, "descriptor") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_scheme(text, allow_unsafe_k) {
            Ok(scheme) => {
                *out = Box::into_raw(Box::new(Weno3Scheme { scheme }));
                Weno3Status::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a scheme. Null is ignored.
///
/// # Safety
/// `scheme` must come from [`weno3_scheme_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn weno3_scheme_free(scheme: *mut Weno3Scheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Writes the canonical descriptor of `scheme` into `buf`.
///
/// # Safety
/// `scheme` must be a live handle; buffer contract as [`weno3_last_error_message`].
#[no_mangle]
pub unsafe extern "C" fn weno3_scheme_descriptor(
    scheme: *const Weno3Scheme,
    buf: *mut c_char,
    len: usize,
    required: *mut usize,
) -> Weno3Status {
    guarded(|| match scheme.as_ref() {
        Some(s) => write_str(&format_scheme(&s.scheme), buf, len, required),
        None => fail(Weno3Status::NullPointer, "scheme is null"),
    })
}

/// Nonlinear weights `(w0, w1)` of the stencil `(fm1, f0, fp1)`. `dx` is used by P+3 only.
///
/// # Safety
/// `scheme` must be a live handle; `w0` and `w1` must be writable.
#[no_mangle]
pub unsafe extern "C" fn weno3_weights(
    scheme: *const Weno3Scheme,
    fm1: f64,
    f0: f64,
    fp1: f64,
    dx: f64,
    w0: *mut f64,
    w1: *mut f64,
) -> Weno3Status {
    guarded(|| {
        let Some(s) = scheme.as_ref() else {
            return fail(Weno3Status::NullPointer, "scheme is null");
        };
        if w0.is_null() || w1.is_null() {
            return fail(Weno3Status::NullPointer, "output pointer is null");
        }
        match compute_weights(s.scheme, &StencilValues::new(fm1, f0, fp1), dx) {
            Ok(p) => {
                *w0 = p.w0;
                *w1 = p.w1;
                Weno3Status::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Weight limiter `χ(r)` of a limiter scheme.
///
/// # Safety
/// `scheme` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn weno3_chi(scheme: *const Weno3Scheme, r: f64, out: *mut f64) -> Weno3Status {
    guarded(|| {
        let Some(s) = scheme.as_ref() else {
            return fail(Weno3Status::NullPointer, "scheme is null");
        };
        if out.is_null() {
            return fail(Weno3Status::NullPointer, "out is null");
        }
        if !r.is_finite() {
            return fail(Weno3Status::InvalidArgument, "r must be finite");
        }
        match s.scheme {
            WeightScheme::Limiter(kind) => {
                *out = kind.eval(r);
                Weno3Status::Ok
            }
            _ => fail(Weno3Status::InvalidScheme, "chi is defined for limiter schemes only"),
        }
    })
}

/// Reconstructed flux `f̂_{i+1/2}` of the positive-speed stencil `(f_{i-1}, f_i, f_{i+1})`.
///
/// # Safety
/// `scheme` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn weno3_interface_flux(
    scheme: *const Weno3Scheme,
    fm1: f64,
    f0: f64,
    fp1: f64,
    dx: f64,
    out: *mut f64,
) -> Weno3Status {
    guarded(|| {
        let Some(s) = scheme.as_ref() else {
            return fail(Weno3Status::NullPointer, "scheme is null");
        };
        if out.is_null() {
            return fail(Weno3Status::NullPointer, "out is null");
        }
        match interface_flux(&StencilValues::new(fm1, f0, fp1), s.scheme, dx) {
            Ok(v) => {
                *out = v;
                Weno3Status::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Runs the registered problem `problem_id` with `scheme` to its final time.
///
/// `options` may be null for the problem defaults.
///
/// # Safety
/// `problem_id` must be NUL-terminated; `scheme` a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn weno3_simulation_run(
    problem_id: *const c_char,
    scheme: *const Weno3Scheme,
    options: *const Weno3RunOptions,
    out: *mut *mut Weno3Simulation,
) -> Weno3Status {
    guarded(|| {
        if out.is_null() {
            return fail(Weno3Status::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let id = match read_str(problem_id, "problem id") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let Some(s) = scheme.as_ref() else {
            return fail(Weno3Status::NullPointer, "scheme is null");
        };
        let o = options.as_ref().copied().unwrap_or_default();
        let nonzero = |v: f64| (v != 0.0).then_some(v);
        let config = RunConfig {
            problem: Some(id.to_string()),
            scheme: Some(format_scheme(&s.scheme)),
            nx: (o.nx != 0).then_some(o.nx),
            ny: (o.ny != 0).then_some(o.ny),
            cfl: nonzero(o.cfl),
            dt_over_dx: nonzero(o.dt_over_dx),
            t_final: nonzero(o.t_final),
            gamma: nonzero(o.gamma),
            unsafe_k: true,
            ..RunConfig::default()
        };
        let output = match resolve_run(&config).and_then(|r| r.execute()) {
            Ok(o) => o,
            Err(e) => return from_error(e),
        };
        *out = Box::into_raw(Box::new(Weno3Simulation { output }));
        Weno3Status::Ok
    })
}

/// Releases a simulation. Null is ignored.
///
/// # Safety
/// `sim` must come from [`weno3_simulation_run`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn weno3_simulation_free(sim: *mut Weno3Simulation) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Grid size, step count and reached time of a finished simulation.
///
/// # Safety
/// `sim` must be a live handle; each output pointer may be null.
#[no_mangle]
pub unsafe extern "C" fn weno3_simulation_info(
    sim: *const Weno3Simulation,
    nx: *mut usize,
    ny: *mut usize,
    steps: *mut usize,
    t_final: *mut f64,
) -> Weno3Status {
    guarded(|| {
        let Some(s) = sim.as_ref() else {
            return fail(Weno3Status::NullPointer, "simulation is null");
        };
        let o = &s.output;
        if !nx.is_null() {
            *nx = o.x.len();
        }
        if !ny.is_null() {
            *ny = o.y.len().max(1);
        }
        if !steps.is_null() {
            *steps = o.diagnostics.steps;
        }
        if !t_final.is_null() {
            *t_final = o.diagnostics.t_final;
        }
        Weno3Status::Ok
    })
}

fn field_values(output: &RunOutput, field: Weno3Field) -> Result<Vec<f64>, String> {
    let missing = || format!("field {field:?} is not available for this problem");
    match (field, &output.solution) {
        (Weno3Field::X, _) => Ok(output.x.clone()),
        (Weno3Field::Y, _) => Ok(output.y.clone()),
        (Weno3Field::U, Solution::Scalar(u)) => Ok(u.clone()),
        (Weno3Field::Density, Solution::Euler1d(s)) => Ok(s.rho.clone()),
        (Weno3Field::VelocityX, Solution::Euler1d(s)) => Ok((0..s.len()).map(|i| s.velocity(i)).collect()),
        (Weno3Field::Pressure, Solution::Euler1d(s)) => Ok((0..s.len()).map(|i| s.pressure(i)).collect()),
        (Weno3Field::Density, Solution::Euler2d(s)) => Ok(s.rho.clone()),
        (Weno3Field::VelocityX, Solution::Euler2d(s)) => {
            Ok(s.mom_x.iter().zip(&s.rho).map(|(m, r)| m / r).collect())
        }
        (Weno3Field::VelocityY, Solution::Euler2d(s)) => {
            Ok(s.mom_y.iter().zip(&s.rho).map(|(m, r)| m / r).collect())
        }
        (Weno3Field::Pressure, Solution::Euler2d(s)) => Ok((0..s.rho.len()).map(|i| s.pressure(i)).collect()),
        _ => Err(missing()),
    }
}

/// Copies one field of the final state into `buf` (row-major `j * nx + i` in 2D).
///
/// `count` (if not null) receives the number of values of the field. Fails
/// with [`Weno3Status::BufferTooSmall`] if `len` is smaller.
///
/// # Safety
/// `sim` must be a live handle; `buf` valid for `len` doubles or null.
#[no_mangle]
pub unsafe extern "C" fn weno3_simulation_copy_field(
    sim: *const Weno3Simulation,
    field: Weno3Field,
    buf: *mut f64,
    len: usize,
    count: *mut usize,
) -> Weno3Status {
    guarded(|| {
        let Some(s) = sim.as_ref() else {
            return fail(Weno3Status::NullPointer, "simulation is null");
        };
        let values = match field_values(&s.output, field) {
            Ok(v) => v,
            Err(msg) => return fail(Weno3Status::InvalidArgument, msg),
        };
        if !count.is_null() {
            *count = values.len();
        }
        if values.is_empty() {
            return Weno3Status::Ok;
        }
        if buf.is_null() || len < values.len() {
            return fail(
                Weno3Status::BufferTooSmall,
                format!("buffer of {len} values, {} required", values.len()),
            );
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        Weno3Status::Ok
    })
}

/// Relative conservation drift of component `component` (0 = mass).
///
/// # Safety
/// `sim` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn weno3_simulation_drift(sim: *const Weno3Simulation, component: usize, out: *mut f64) -> Weno3Status {
    guarded(|| {
        let Some(s) = sim.as_ref() else {
            return fail(Weno3Status::NullPointer, "simulation is null");
        };
        if out.is_null() {
            return fail(Weno3Status::NullPointer, "out is null");
        }
        match s.output.diagnostics.conservation_drift.get(component) {
            Some(&d) => {
                *out = d;
                Weno3Status::Ok
            }
            None => fail(Weno3Status::InvalidArgument, format!("no component {component}")),
        }
    })
}
