//! C ABI over `dmchain`.
//!
//! Every function returns a [`DmStatus`] and writes results through out-pointers.
//! Handles are opaque and owned by the caller once returned; release them with the
//! matching `*_free`. On failure, [`dm_last_error_message`] describes the error on
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dmchain::dynamics::{
    asymptotic_state, default_degeneracy_tol, evolve, EvolutionParams, InitialFamily,
    InitialStateSpec,
};
use dmchain::entanglement::concurrence;
use dmchain::model::{build_hamiltonian, ModelParams, Variant};
use dmchain::numerics::{herm_eig, DensityMatrix, Matrix4C, Spectrum, C64};
use dmchain::studio::{figure_recipe, run_sweep, SweepConfig};
use dmchain::teleport::{fidelity, output_concurrence, teleport_output, InputState};
use dmchain::Error;

pub const DM_VARIANT_DZ: u32 = 0;
pub const DM_VARIANT_DX: u32 = 1;
pub const DM_FAMILY_ANTIPARALLEL: u32 = 0;
pub const DM_FAMILY_PARALLEL: u32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DmStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad parameter, config or recipe name. Matches CLI exit code 1.
    Invalid = 2,
    /// A numerical invariant failed. Matches CLI exit code 2.
    Numerical = 3,
    Io = 4,
    Panic = 5,
}

/// Model parameters with their cached eigendecomposition.
pub struct DmModel {
    params: ModelParams,
    spectrum: Spectrum,
}

pub struct DmDensity(DensityMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type FfiResult = Result<(), Failure>;

fn guard(f: impl FnOnce() -> FfiResult) -> DmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            DmStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(&format!("null pointer: {what}"));
            DmStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            match e {
                Error::Io(_) => DmStatus::Io,
                e if e.is_numerical() => DmStatus::Numerical,
                _ => DmStatus::Invalid,
            }
        }
        Err(_) => {
            set_last_error("internal panic");
            DmStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> FfiResult {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn c_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure::Lib(Error::InvalidParameter(format!(
            "{what} is not valid UTF-8"
        )))
    })
}

fn variant(code: u32) -> Result<Variant, Failure> {
    match code {
        DM_VARIANT_DZ => Ok(Variant::Dz),
        DM_VARIANT_DX => Ok(Variant::Dx),
        _ => Err(Error::InvalidParameter(format!("unknown variant code {code}")).into()),
    }
}

fn family(code: u32) -> Result<InitialFamily, Failure> {
    match code {
        DM_FAMILY_ANTIPARALLEL => Ok(InitialFamily::Antiparallel),
        DM_FAMILY_PARALLEL => Ok(InitialFamily::Parallel),
        _ => Err(Error::InvalidParameter(format!("unknown family code {code}")).into()),
    }
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

unsafe fn string_out(out: *mut *mut c_char, s: String) -> FfiResult {
    let c = CString::new(s).map_err(|_| Error::InvalidParameter("output contains NUL".into()))?;
    write_out(out, c.into_raw(), "out")
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn dm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a model and diagonalizes its Hamiltonian.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dm_model_new(
    variant_code: u32,
    j: f64,
    gamma: f64,
    jz: f64,
    d: f64,
    out: *mut *mut DmModel,
) -> DmStatus {
    guard(|| {
        let params = ModelParams::new(variant(variant_code)?, j, gamma, jz, d)?;
        let spectrum = herm_eig(&build_hamiltonian(&params))?;
        write_out(out, boxed(DmModel { params, spectrum }), "out")
    })
}

/// # Safety
/// `model` must come from [`dm_model_new`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dm_model_free(model: *mut DmModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Ascending energies, written to `out[0..4]`.
///
/// # Safety
/// `model` must be a live handle; `out` must hold 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn dm_model_energies(model: *const DmModel, out: *mut f64) -> DmStatus {
    guard(|| {
        let m = deref(model, "model")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        ptr::copy_nonoverlapping(m.spectrum.energies().as_ptr(), out, 4);
        Ok(())
    })
}

/// Row-major Hamiltonian, real and imaginary parts into two 16-double buffers.
///
/// # Safety
/// `model` must be a live handle; `re` and `im` must hold 16 doubles each.
#[no_mangle]
pub unsafe extern "C" fn dm_model_hamiltonian(
    model: *const DmModel,
    re: *mut f64,
    im: *mut f64,
) -> DmStatus {
    guard(|| {
        let m = deref(model, "model")?;
        write_matrix(&build_hamiltonian(&m.params), re, im)
    })
}

unsafe fn write_matrix(m: &Matrix4C, re: *mut f64, im: *mut f64) -> FfiResult {
    if re.is_null() || im.is_null() {
        return Err(Failure::Null("re/im"));
    }
    for r in 0..4 {
        for c in 0..4 {
            re.add(4 * r + c).write(m[(r, c)].re);
            im.add(4 * r + c).write(m[(r, c)].im);
        }
    }
    Ok(())
}

/// `cos(alpha)|01> + sin(alpha)|10>` or `cos(alpha)|00> + sin(alpha)|11>` as a density matrix.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dm_initial_state(
    family_code: u32,
    alpha: f64,
    out: *mut *mut DmDensity,
) -> DmStatus {
    guard(|| {
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("alpha = {alpha}")).into());
        }
        let rho = InitialStateSpec::new(family(family_code)?, alpha).density()?;
        write_out(out, boxed(DmDensity(rho)), "out")
    })
}

/// Validates a row-major matrix as a density operator.
///
/// # Safety
/// `re` and `im` must hold 16 doubles each; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dm_density_from_entries(
    re: *const f64,
    im: *const f64,
    out: *mut *mut DmDensity,
) -> DmStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(Failure::Null("re/im"));
        }
        let mut m = Matrix4C::zeros();
        for r in 0..4 {
            for c in 0..4 {
                m[(r, c)] = C64::new(*re.add(4 * r + c), *im.add(4 * r + c));
            }
        }
        write_out(out, boxed(DmDensity(DensityMatrix::new(m)?)), "out")
    })
}

/// # Safety
/// `rho` must be a live handle; `re` and `im` must hold 16 doubles each.
#[no_mangle]
pub unsafe extern "C" fn dm_density_entries(
    rho: *const DmDensity,
    re: *mut f64,
    im: *mut f64,
) -> DmStatus {
    guard(|| write_matrix(deref(rho, "rho")?.0.matrix(), re, im))
}

/// # Safety
/// `rho` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dm_density_free(rho: *mut DmDensity) {
    if !rho.is_null() {
        drop(Box::from_raw(rho));
    }
}

/// State at time `t` under decoherence rate `gamma`.
///
/// # Safety
/// `model` and `rho0` must be live handles; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dm_evolve(
    model: *const DmModel,
    rho0: *const DmDensity,
    gamma: f64,
    t: f64,
    out: *mut *mut DmDensity,
) -> DmStatus {
    guard(|| {
        let m = deref(model, "model")?;
        let rho = evolve(
            &m.spectrum,
            &deref(rho0, "rho0")?.0,
            &EvolutionParams::new(gamma, t)?,
        )?;
        write_out(out, boxed(DmDensity(rho)), "out")
    })
}

/// Long-time limit for any positive decoherence rate.
///
/// # Safety
/// `model` and `rho0` must be live handles; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dm_asymptotic_state(
    model: *const DmModel,
    rho0: *const DmDensity,
    out: *mut *mut DmDensity,
) -> DmStatus {
    guard(|| {
        let m = deref(model, "model")?;
        let rho = asymptotic_state(
            &m.spectrum,
            &deref(rho0, "rho0")?.0,
            default_degeneracy_tol(&m.spectrum),
        )?;
        write_out(out, boxed(DmDensity(rho)), "out")
    })
}

/// # Safety
/// `rho` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dm_concurrence(rho: *const DmDensity, out: *mut f64) -> DmStatus {
    guard(|| write_out(out, concurrence(&deref(rho, "rho")?.0)?, "out"))
}

/// Mixed-state fidelity between two density matrices.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dm_fidelity(
    a: *const DmDensity,
    b: *const DmDensity,
    out: *mut f64,
) -> DmStatus {
    guard(|| write_out(out, fidelity(&deref(a, "a")?.0, &deref(b, "b")?.0)?, "out"))
}

/// Fidelity of teleporting `cos(theta/2)|10> + e^{i phi} sin(theta/2)|01>` through two copies of `channel`.
///
/// # Safety
/// `channel` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dm_teleport_fidelity(
    channel: *const DmDensity,
    theta: f64,
    phi: f64,
    out: *mut f64,
) -> DmStatus {
    guard(|| {
        let ch = &deref(channel, "channel")?.0;
        let input = InputState::new(theta, phi)?;
        write_out(
            out,
            fidelity(&input.density()?, &teleport_output(ch, ch, &input)?)?,
            "out",
        )
    })
}

/// Concurrence of the teleported state.
///
/// # Safety
/// `channel` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dm_output_concurrence(
    channel: *const DmDensity,
    theta: f64,
    phi: f64,
    out: *mut f64,
) -> DmStatus {
    guard(|| {
        let ch = &deref(channel, "channel")?.0;
        write_out(
            out,
            output_concurrence(ch, ch, &InputState::new(theta, phi)?)?,
            "out",
        )
    })
}

fn sweep_string(cfg: &SweepConfig) -> Result<String, Failure> {
    let mut buf = Vec::new();
    run_sweep(cfg, &mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV is ASCII"))
}

/// Runs a TOML sweep config and returns the CSV. Free with [`dm_string_free`].
///
/// # Safety
/// `config_toml` must be a NUL-terminated string; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dm_sweep_csv(
    config_toml: *const c_char,
    out: *mut *mut c_char,
) -> DmStatus {
    guard(|| {
        let cfg = SweepConfig::from_toml(c_str(config_toml, "config_toml")?)?;
        string_out(out, sweep_string(&cfg)?)
    })
}

/// Runs a named figure recipe and returns the CSV. Free with [`dm_string_free`].
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dm_figure_csv(name: *const c_char, out: *mut *mut c_char) -> DmStatus {
    guard(|| {
        let recipe = figure_recipe(c_str(name, "name")?)?;
        string_out(out, sweep_string(&recipe.config)?)
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
