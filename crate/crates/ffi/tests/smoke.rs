//! Smoke test exercising the C ABI from Rust: handle lifecycle, error
//! codes, and numerical sanity of the exported entry points.

use std::ffi::CString;

use spinchain_ffi::*;

#[test]
fn spec_lifecycle_and_transfer() {
    // 3-spin homogeneous XY chain: perfect signed transfer at tau.
    let spec = spinchain_spec_new_homogeneous(3, 0, 1.0);
    assert!(!spec.is_null());
    let tau = spinchain_tau(1.0);
    assert!((tau - std::f64::consts::PI / 2f64.sqrt()).abs() < 1e-15);
    let mut f = 0.0;
    unsafe {
        assert!(spinchain_transfer_amplitude(spec, tau, &mut f) == SpinchainStatus::Ok);
    }
    assert!((f - 1.0).abs() < 1e-12);
    assert!((spinchain_average_fidelity(1.0) - 1.0).abs() < 1e-15);
    assert!((spinchain_average_fidelity(0.0) - 0.5).abs() < 1e-15);
    unsafe { spinchain_spec_free(spec) };
}

#[test]
fn invalid_inputs_are_rejected() {
    // bad model code and zero-length chain both yield null
    assert!(spinchain_spec_new_homogeneous(3, 7, 1.0).is_null());
    assert!(spinchain_spec_new_homogeneous(0, 0, 1.0).is_null());
    // null handles produce InvalidArgument, never a crash
    let mut f = 0.0;
    unsafe {
        assert!(
            spinchain_transfer_amplitude(std::ptr::null(), 1.0, &mut f)
                == SpinchainStatus::InvalidArgument
        );
        assert!(spinchain_scan(std::ptr::null(), 0.0, 1.0, 4, &mut f) == SpinchainStatus::InvalidArgument);
        spinchain_spec_free(std::ptr::null_mut()); // no-op
    }
}

#[test]
fn json_spec_and_fields_round_trip() {
    let json =
        CString::new(r#"{"n_spins": 4, "model": "xy", "couplings": [1.0, 1.0, 1.0]}"#).unwrap();
    let spec = unsafe { spinchain_spec_from_json(json.as_ptr()) };
    assert!(!spec.is_null());
    unsafe {
        // wrong length rejected, correct length accepted
        let fields = [0.1, -0.2, 0.3];
        assert!(spinchain_spec_set_fields(spec, fields.as_ptr(), 3) != SpinchainStatus::Ok);
        let fields = [0.1, -0.2, 0.3, 0.0];
        assert!(spinchain_spec_set_fields(spec, fields.as_ptr(), 4) == SpinchainStatus::Ok);
        spinchain_spec_free(spec);
    }
    let bad = CString::new("{not json").unwrap();
    assert!(unsafe { spinchain_spec_from_json(bad.as_ptr()) }.is_null());
}

#[test]
fn scan_and_peak_agree() {
    let spec = spinchain_spec_new_homogeneous(5, 0, 1.0);
    assert!(!spec.is_null());
    let samples = 401;
    let mut f = vec![0.0f64; samples];
    unsafe {
        assert!(spinchain_scan(spec, 0.0, 40.0, samples, f.as_mut_ptr()) == SpinchainStatus::Ok);
    }
    assert!(f.iter().all(|&x| (0.0..=1.0 + 1e-12).contains(&x)));
    let grid_best = f.iter().cloned().fold(0.0f64, f64::max);
    let mut peak = SpinchainPeak { t_star: 0.0, f_star: 0.0, fidelity_star: 0.0 };
    unsafe {
        assert!(spinchain_find_peak(spec, 0.0, 40.0, samples, 1e-9, &mut peak) == SpinchainStatus::Ok);
    }
    // refined peak dominates the grid and F(f*) is consistent
    assert!(peak.f_star >= grid_best - 1e-12);
    assert!((spinchain_average_fidelity(peak.f_star) - peak.fidelity_star).abs() < 1e-12);
    unsafe { spinchain_spec_free(spec) };
}

#[test]
fn network_gate_reports() {
    let mut out = SpinchainGateReport {
        leakage: 0.0,
        decomposition_residual: 0.0,
        effective_gate: [0.0; 32],
    };
    // single branch: the exact three-spin gate, no leakage
    let branches = [1.0f64];
    unsafe {
        assert!(spinchain_network_gate(branches.as_ptr(), 1, &mut out) == SpinchainStatus::Ok);
    }
    assert!(out.leakage < 1e-10);
    assert!(out.decomposition_residual < 1e-10);
    // |00> -> |00> with a global phase: unit-magnitude (0,0) entry
    let z00 = (out.effective_gate[0], out.effective_gate[1]);
    assert!((z00.0.hypot(z00.1) - 1.0).abs() < 1e-10);
    // multi-branch star: leakage in the two-excitation component is reported
    let branches = [1.0f64, 2.0, 2.0];
    unsafe {
        assert!(spinchain_network_gate(branches.as_ptr(), 3, &mut out) == SpinchainStatus::Ok);
    }
    assert!(out.leakage > 0.1);
}

#[test]
fn design_entry_points() {
    let n = 6usize;
    let mut couplings = vec![0.0f64; n - 1];
    let mut fields = vec![0.0f64; n];
    let mut time = 0.0f64;
    unsafe {
        assert!(
            spinchain_design_half_time(n, 1.0, couplings.as_mut_ptr(), fields.as_mut_ptr(), &mut time)
                == SpinchainStatus::Ok
        );
    }
    assert!(time > 0.0);
    assert!(couplings.iter().all(|&w| w > 0.0));
    let mut amp = 0.0f64;
    unsafe {
        assert!(spinchain_design_verify(n, 1.0, &mut amp) == SpinchainStatus::Ok);
    }
    assert!(amp > 1.0 - 1e-10, "amp = {amp}");
}
