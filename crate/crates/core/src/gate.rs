//! Invariant mediator-subspace detection and effective two-qubit gate
//! extraction.

use crate::{C64, CMatrix, Error, Result};

/// Threshold below which a mediator sector counts as invariant.
pub const LEAKAGE_THRESHOLD: f64 = 1e-8;

/// Result of restricting a full unitary to a mediator sector.
#[derive(Clone, Debug)]
pub struct GateReport {
    /// Operator norm of the blocks coupling the sector to its complement.
    pub leakage: f64,
    /// 4x4 restriction on the (spin 1, spin 3) basis |00>,|01>,|10>,|11>.
    pub effective_gate: CMatrix,
    /// Which mediator basis state was restricted to, e.g. "|0>_2".
    pub mediator_sector: String,
    /// Frobenius distance (global-phase-minimized) from SWAP * Diag(1,-1,-1,-1).
    pub decomposition_residual: f64,
    /// The unit phase aligning the extracted gate with the reference.
    pub global_phase: C64,
}

/// The reference gate SWAP * Diag(1,-1,-1,-1).
pub fn swap_joint_phase() -> CMatrix {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    CMatrix::from_row_slice(4, 4, &[
        one, z, z, z,
        z, z, -one, z,
        z, -one, z, z,
        z, z, z, -one,
    ])
}

fn operator_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    // largest singular value via the Hermitian product
    let g = m.adjoint() * m;
    let spectrum = crate::evolve::eigendecompose(&crate::Hermitian::new(g).expect("Gram matrix"));
    spectrum.eigenvalues()[spectrum.dim() - 1].max(0.0).sqrt()
}

/// Indices of the sector where the mediator spins sit in `mediator_state`,
/// ordered by the bits of the remaining spins.
fn sector_indices(n_spins: usize, mediator_spins: &[usize], mediator_state: &[bool]) -> Vec<usize> {
    let free: Vec<usize> = (0..n_spins).filter(|s| !mediator_spins.contains(s)).collect();
    let df = 1usize << free.len();
    let mut indices = Vec::with_capacity(df);
    for k in 0..df {
        let mut idx = 0usize;
        for (pos, &s) in free.iter().enumerate() {
            if k & (1 << (free.len() - 1 - pos)) != 0 {
                idx |= 1 << (n_spins - 1 - s);
            }
        }
        for (pos, &s) in mediator_spins.iter().enumerate() {
            if mediator_state[pos] {
                idx |= 1 << (n_spins - 1 - s);
            }
        }
        indices.push(idx);
    }
    indices
}

fn validate_args(u: &CMatrix, mediator_spins: &[usize], mediator_state: &[bool]) -> Result<usize> {
    let dim = u.nrows();
    if !u.is_square() || !dim.is_power_of_two() || dim < 2 {
        return Err(Error::InvalidArgument("unitary must act on a 2^N space".into()));
    }
    let n_spins = dim.trailing_zeros() as usize;
    if mediator_spins.is_empty()
        || mediator_spins.len() != mediator_state.len()
        || mediator_spins.iter().any(|&s| s >= n_spins)
    {
        return Err(Error::InvalidArgument("invalid mediator spin subset".into()));
    }
    Ok(n_spins)
}

/// Operator norm of the off-blocks of U coupling the mediator sector to
/// its complement.
pub fn check_invariant_subspace(
    u: &CMatrix,
    mediator_spins: &[usize],
    mediator_state: &[bool],
) -> Result<f64> {
    let n_spins = validate_args(u, mediator_spins, mediator_state)?;
    let inside = sector_indices(n_spins, mediator_spins, mediator_state);
    let outside: Vec<usize> = (0..u.nrows()).filter(|i| !inside.contains(i)).collect();
    let out_in = CMatrix::from_fn(outside.len(), inside.len(), |i, j| u[(outside[i], inside[j])]);
    let in_out = CMatrix::from_fn(inside.len(), outside.len(), |i, j| u[(inside[i], outside[j])]);
    Ok(operator_norm(&out_in).max(operator_norm(&in_out)))
}

/// Restrict U to the mediator sector and classify the result against
/// SWAP * Diag(1,-1,-1,-1). The free spins must be exactly two (the end
/// spins); errors with `LeakageTooLarge` if the sector is not invariant.
pub fn extract_effective_gate(
    u: &CMatrix,
    mediator_spins: &[usize],
    mediator_state: &[bool],
) -> Result<GateReport> {
    let n_spins = validate_args(u, mediator_spins, mediator_state)?;
    if n_spins - mediator_spins.len() != 2 {
        return Err(Error::InvalidArgument(
            "effective-gate extraction needs exactly two non-mediator spins".into(),
        ));
    }
    let leakage = check_invariant_subspace(u, mediator_spins, mediator_state)?;
    if leakage >= LEAKAGE_THRESHOLD {
        return Err(Error::LeakageTooLarge { leakage, threshold: LEAKAGE_THRESHOLD });
    }
    let inside = sector_indices(n_spins, mediator_spins, mediator_state);
    debug_assert_eq!(inside.len(), 4);
    let gate = CMatrix::from_fn(4, 4, |i, j| u[(inside[i], inside[j])]);
    let (residual, phase) = compare_gates(&gate, &swap_joint_phase());
    let sector: String = mediator_state.iter().map(|&b| if b { '1' } else { '0' }).collect();
    Ok(GateReport {
        leakage,
        effective_gate: gate,
        mediator_sector: format!("|{sector}>_med"),
        decomposition_residual: residual,
        global_phase: phase,
    })
}

/// Like `extract_effective_gate`, but never rejects on leakage: the
/// caller inspects `GateReport::leakage` itself. Useful when the sector
/// is expected (or suspected) not to be invariant.
pub fn inspect_effective_gate(
    u: &CMatrix,
    mediator_spins: &[usize],
    mediator_state: &[bool],
) -> Result<GateReport> {
    let n_spins = validate_args(u, mediator_spins, mediator_state)?;
    if n_spins - mediator_spins.len() != 2 {
        return Err(Error::InvalidArgument(
            "effective-gate extraction needs exactly two non-mediator spins".into(),
        ));
    }
    let leakage = check_invariant_subspace(u, mediator_spins, mediator_state)?;
    let inside = sector_indices(n_spins, mediator_spins, mediator_state);
    let gate = CMatrix::from_fn(4, 4, |i, j| u[(inside[i], inside[j])]);
    let (residual, phase) = compare_gates(&gate, &swap_joint_phase());
    let sector: String = mediator_state.iter().map(|&b| if b { '1' } else { '0' }).collect();
    Ok(GateReport {
        leakage,
        effective_gate: gate,
        mediator_sector: format!("|{sector}>_med"),
        decomposition_residual: residual,
        global_phase: phase,
    })
}

/// Global-phase-insensitive distance between two gates: the minimum over
/// unit scalars c of ||A - cB||_F, with the minimizing c.
pub fn compare_gates(a: &CMatrix, b: &CMatrix) -> (f64, C64) {
    let inner = (b.adjoint() * a).trace();
    let phase = if inner.norm() > 1e-300 { inner / inner.norm() } else { C64::new(1.0, 0.0) };
    let residual = (a - b * phase).norm();
    (residual, phase)
}
