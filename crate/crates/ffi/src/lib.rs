//! C ABI for the spinchain library. Opaque handles, integer error codes,
//! out-parameters; the header is generated by cbindgen into
//! include/spinchain.h.

use std::ffi::{c_char, CStr};

use spinchain::{design, evolve, optimize, protocols, ChainSpec, Error, Model};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SpinchainStatus {
    Ok = 0,
    InvalidArgument = 1,
    InvalidSpec = 2,
    NumericalFailure = 3,
    ParseError = 4,
}

fn status_of(err: &Error) -> SpinchainStatus {
    match err {
        Error::InvalidSpec(_) | Error::DimensionOverflow { .. } => SpinchainStatus::InvalidSpec,
        Error::Parse(_) | Error::Io(_) => SpinchainStatus::ParseError,
        Error::LeakageTooLarge { .. }
        | Error::NotHermitian(_)
        | Error::NotNormalized(_)
        | Error::NotMirrorSymmetric => SpinchainStatus::NumericalFailure,
        _ => SpinchainStatus::InvalidArgument,
    }
}

/// Opaque chain-spec handle.
pub struct SpinchainSpec {
    inner: ChainSpec,
}

unsafe fn slice_from<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

/// Create a homogeneous linear chain spec. `model` is 0 for XY, 1 for
/// Heisenberg. Returns null on failure.
#[no_mangle]
pub extern "C" fn spinchain_spec_new_homogeneous(
    n_spins: usize,
    model: u32,
    omega: f64,
) -> *mut SpinchainSpec {
    let model = match model {
        0 => Model::Xy,
        1 => Model::Heisenberg,
        _ => return std::ptr::null_mut(),
    };
    match ChainSpec::homogeneous(n_spins, model, omega) {
        Ok(inner) => Box::into_raw(Box::new(SpinchainSpec { inner })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Create a chain spec from a JSON document (same schema as the CLI's
/// --spec files). Returns null on failure.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn spinchain_spec_from_json(json: *const c_char) -> *mut SpinchainSpec {
    if json.is_null() {
        return std::ptr::null_mut();
    }
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        return std::ptr::null_mut();
    };
    match ChainSpec::from_json(text) {
        Ok(inner) => Box::into_raw(Box::new(SpinchainSpec { inner })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Set per-site sigma_z field strengths (length must equal n_spins).
///
/// # Safety
/// `spec` must be a live handle from this library; `fields` must point to
/// `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn spinchain_spec_set_fields(
    spec: *mut SpinchainSpec,
    fields: *const f64,
    len: usize,
) -> SpinchainStatus {
    let Some(spec) = spec.as_mut() else {
        return SpinchainStatus::InvalidArgument;
    };
    let Some(fields) = slice_from(fields, len) else {
        return SpinchainStatus::InvalidArgument;
    };
    match spec.inner.clone().with_fields(fields.to_vec()) {
        Ok(updated) => {
            spec.inner = updated;
            SpinchainStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `spec` must be a handle from this library or null; double frees are
/// undefined.
#[no_mangle]
pub unsafe extern "C" fn spinchain_spec_free(spec: *mut SpinchainSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Transfer amplitude f(t) = |<10..0| exp(-iHt) |0..01>|.
///
/// # Safety
/// `spec` must be a live handle; `out_f` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spinchain_transfer_amplitude(
    spec: *const SpinchainSpec,
    t: f64,
    out_f: *mut f64,
) -> SpinchainStatus {
    let (Some(spec), Some(out)) = (spec.as_ref(), out_f.as_mut()) else {
        return SpinchainStatus::InvalidArgument;
    };
    match evolve::transfer_amplitude(&spec.inner, t) {
        Ok(f) => {
            *out = f;
            SpinchainStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Input-averaged fidelity F = f/3 + f^2/6 + 1/2.
#[no_mangle]
pub extern "C" fn spinchain_average_fidelity(f: f64) -> f64 {
    evolve::average_fidelity(f)
}

/// Sample f(t) on a uniform grid of `samples` points over [t_min, t_max];
/// `out_f` must hold `samples` doubles.
///
/// # Safety
/// `spec` must be a live handle; `out_f` must point to `samples` doubles.
#[no_mangle]
pub unsafe extern "C" fn spinchain_scan(
    spec: *const SpinchainSpec,
    t_min: f64,
    t_max: f64,
    samples: usize,
    out_f: *mut f64,
) -> SpinchainStatus {
    let Some(spec) = spec.as_ref() else {
        return SpinchainStatus::InvalidArgument;
    };
    if out_f.is_null() {
        return SpinchainStatus::InvalidArgument;
    }
    match optimize::scan(&spec.inner, t_min, t_max, samples) {
        Ok(curve) => {
            let out = std::slice::from_raw_parts_mut(out_f, samples);
            for (slot, s) in out.iter_mut().zip(curve.samples.iter()) {
                *slot = s.f;
            }
            SpinchainStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Located fidelity peak.
#[repr(C)]
pub struct SpinchainPeak {
    pub t_star: f64,
    pub f_star: f64,
    pub fidelity_star: f64,
}

/// Scan and refine the best fidelity peak in [t_min, t_max].
///
/// # Safety
/// `spec` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spinchain_find_peak(
    spec: *const SpinchainSpec,
    t_min: f64,
    t_max: f64,
    samples: usize,
    refine_tol: f64,
    out: *mut SpinchainPeak,
) -> SpinchainStatus {
    let (Some(spec), Some(out)) = (spec.as_ref(), out.as_mut()) else {
        return SpinchainStatus::InvalidArgument;
    };
    match optimize::scan_and_find_peak(&spec.inner, t_min, t_max, samples, refine_tol) {
        Ok(peak) => {
            out.t_star = peak.t_star;
            out.f_star = peak.f_star;
            out.fidelity_star = peak.fidelity_star;
            SpinchainStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The three-spin gate time tau = pi/(sqrt(2) omega).
#[no_mangle]
pub extern "C" fn spinchain_tau(omega: f64) -> f64 {
    protocols::tau(omega)
}

/// Gate extraction result for the three-spin chain or a star network.
#[repr(C)]
pub struct SpinchainGateReport {
    pub leakage: f64,
    pub decomposition_residual: f64,
    /// Row-major 4x4 effective gate, interleaved re/im pairs (32 doubles).
    pub effective_gate: [f64; 32],
}

/// Extract the effective end-spin gate of a star network with the given
/// branch couplings at t = pi/(sqrt(2) omega_collective).
///
/// # Safety
/// `branches` must point to `n_branches` doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spinchain_network_gate(
    branches: *const f64,
    n_branches: usize,
    out: *mut SpinchainGateReport,
) -> SpinchainStatus {
    let (Some(branches), Some(out)) = (slice_from(branches, n_branches), out.as_mut()) else {
        return SpinchainStatus::InvalidArgument;
    };
    let net = match protocols::NetworkSpec::new(branches.to_vec()) {
        Ok(net) => net,
        Err(e) => return status_of(&e),
    };
    match protocols::run_network_gate(&net) {
        Ok(report) => {
            out.leakage = report.leakage;
            out.decomposition_residual = report.decomposition_residual;
            for i in 0..4 {
                for j in 0..4 {
                    let z = report.effective_gate[(i, j)];
                    out.effective_gate[2 * (4 * i + j)] = z.re;
                    out.effective_gate[2 * (4 * i + j) + 1] = z.im;
                }
            }
            SpinchainStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Engineered half-time entanglement design for an N-spin chain.
///
/// `out_couplings` must hold n_spins - 1 doubles and `out_fields` n_spins
/// doubles; `out_time` receives the predicted rotation time.
///
/// # Safety
/// Output pointers must be valid for the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn spinchain_design_half_time(
    n_spins: usize,
    lambda: f64,
    out_couplings: *mut f64,
    out_fields: *mut f64,
    out_time: *mut f64,
) -> SpinchainStatus {
    if out_couplings.is_null() || out_fields.is_null() || out_time.is_null() {
        return SpinchainStatus::InvalidArgument;
    }
    match design::design_half_time_entanglement(n_spins, lambda) {
        Ok(d) => {
            std::slice::from_raw_parts_mut(out_couplings, n_spins - 1).copy_from_slice(&d.couplings);
            std::slice::from_raw_parts_mut(out_fields, n_spins).copy_from_slice(&d.compensation_fields);
            *out_time = d.predicted_time;
            SpinchainStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Verify an engineered design: the achieved end-pair amplitude at the
/// predicted time.
///
/// # Safety
/// `out_amplitude` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spinchain_design_verify(
    n_spins: usize,
    lambda: f64,
    out_amplitude: *mut f64,
) -> SpinchainStatus {
    let Some(out) = out_amplitude.as_mut() else {
        return SpinchainStatus::InvalidArgument;
    };
    let result = design::design_half_time_entanglement(n_spins, lambda)
        .and_then(|d| design::verify_design(&d));
    match result {
        Ok(a) => {
            *out = a;
            SpinchainStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}
