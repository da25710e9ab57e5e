//! Exact time evolution via eigendecomposition, reduced states, and the
//! transfer-fidelity functionals.

use nalgebra::DVector;

use crate::chain::{build_excitation_hamiltonian, ChainSpec, Hermitian, Parity};
use crate::{C64, CMatrix, CVector, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Product basis over 2^N states, spin 1 most significant.
    Full { n_spins: usize },
    /// Single-excitation site basis, dimension N.
    Excitation { n_sites: usize },
    /// Mirror-symmetric half-chain basis |1~> .. |n~>.
    HalfChain { parity: Parity, n: usize },
}

impl Basis {
    pub fn dim(&self) -> usize {
        match *self {
            Basis::Full { n_spins } => 1 << n_spins,
            Basis::Excitation { n_sites } => n_sites,
            Basis::HalfChain { n, .. } => n,
        }
    }
}

/// Complex amplitude vector tagged with its basis; unit norm enforced.
#[derive(Clone, Debug)]
pub struct StateVector {
    amps: CVector,
    basis: Basis,
}

impl StateVector {
    pub fn new(amps: CVector, basis: Basis) -> Result<Self> {
        if amps.len() != basis.dim() {
            return Err(Error::DimensionMismatch { expected: basis.dim(), actual: amps.len() });
        }
        let dev = (amps.norm() - 1.0).abs();
        if dev > 1e-12 {
            return Err(Error::NotNormalized(dev));
        }
        Ok(StateVector { amps, basis })
    }

    pub fn basis_state(basis: Basis, index: usize) -> Self {
        let mut amps = CVector::zeros(basis.dim());
        amps[index] = C64::new(1.0, 0.0);
        StateVector { amps, basis }
    }

    /// Product state of per-spin qubit amplitudes (alpha, beta), spin 1
    /// first.
    pub fn product(qubits: &[(C64, C64)]) -> Result<Self> {
        let n = qubits.len();
        let mut amps = CVector::from_element(1, C64::new(1.0, 0.0));
        for &(a, b) in qubits {
            let mut next = CVector::zeros(amps.len() * 2);
            for (i, z) in amps.iter().enumerate() {
                next[2 * i] = z * a;
                next[2 * i + 1] = z * b;
            }
            amps = next;
        }
        StateVector::new(amps, Basis::Full { n_spins: n })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Complex overlap <other|self>.
    pub fn overlap(&self, other: &StateVector) -> C64 {
        other.amps.dotc(&self.amps)
    }

    pub fn fidelity_with(&self, other: &StateVector) -> f64 {
        self.overlap(other).norm_sqr()
    }
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues
/// and a unitary eigenvector matrix.
#[derive(Clone, Debug)]
pub struct Spectrum {
    eigenvalues: DVector<f64>,
    vectors: CMatrix,
}

pub fn eigendecompose(h: &Hermitian) -> Spectrum {
    let m = h.as_matrix();
    let n = m.nrows();
    let a = faer::Mat::from_fn(n, n, |i, j| faer::c64::new(m[(i, j)].re, m[(i, j)].im));
    let eig = a
        .self_adjoint_eigen(faer::Side::Lower)
        .expect("eigendecomposition of a finite Hermitian matrix converges");
    let s = eig.S();
    let u = eig.U();
    // faer returns eigenvalues in nondecreasing order already
    let eigenvalues = DVector::from_iterator(n, (0..n).map(|i| s[i].re));
    let vectors = CMatrix::from_fn(n, n, |i, j| C64::new(u[(i, j)].re, u[(i, j)].im));
    Spectrum { eigenvalues, vectors }
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// exp(-iHt) applied to raw amplitudes.
    pub fn evolve_amplitudes(&self, t: f64, amps: &CVector) -> CVector {
        let coeffs = self.vectors.adjoint() * amps;
        let phased = CVector::from_iterator(
            self.dim(),
            coeffs
                .iter()
                .zip(self.eigenvalues.iter())
                .map(|(c, &e)| c * C64::new(0.0, -e * t).exp()),
        );
        &self.vectors * phased
    }

    /// The unitary exp(-iHt).
    pub fn unitary_at(&self, t: f64) -> CMatrix {
        let d = self.dim();
        let mut phased = self.vectors.clone();
        for (j, &e) in self.eigenvalues.iter().enumerate() {
            let ph = C64::new(0.0, -e * t).exp();
            for i in 0..d {
                phased[(i, j)] *= ph;
            }
        }
        phased * self.vectors.adjoint()
    }
}

/// exp(-iHt) |psi>, exact via the spectrum of H.
pub fn propagate(h: &Hermitian, t: f64, psi: &StateVector) -> Result<StateVector> {
    if h.dim() != psi.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), actual: psi.dim() });
    }
    let spectrum = eigendecompose(h);
    let amps = spectrum.evolve_amplitudes(t, psi.amplitudes());
    StateVector::new(amps, psi.basis())
}

/// The full unitary exp(-iHt).
pub fn unitary_at(h: &Hermitian, t: f64) -> CMatrix {
    eigendecompose(h).unitary_at(t)
}

/// Partial trace of |psi><psi| keeping the given spins (0-based, spin 1
/// is index 0). Requires a full-basis state.
pub fn reduced_state(psi: &StateVector, keep: &[usize]) -> Result<CMatrix> {
    let n = match psi.basis() {
        Basis::Full { n_spins } => n_spins,
        _ => return Err(Error::InvalidArgument("reduced_state needs a full-basis state".into())),
    };
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() || keep.iter().any(|&s| s >= n) {
        return Err(Error::InvalidArgument(format!("invalid spin subset {keep:?} for {n} spins")));
    }
    let env: Vec<usize> = (0..n).filter(|s| !keep.contains(s)).collect();
    let dk = 1usize << keep.len();
    let de = 1usize << env.len();
    // full index from (kept bits, environment bits); spin s occupies bit n-1-s
    let compose = |k: usize, e: usize| -> usize {
        let mut idx = 0usize;
        for (pos, &s) in keep.iter().enumerate() {
            if k & (1 << (keep.len() - 1 - pos)) != 0 {
                idx |= 1 << (n - 1 - s);
            }
        }
        for (pos, &s) in env.iter().enumerate() {
            if e & (1 << (env.len() - 1 - pos)) != 0 {
                idx |= 1 << (n - 1 - s);
            }
        }
        idx
    };
    let amps = psi.amplitudes();
    let mut rho = CMatrix::zeros(dk, dk);
    for a in 0..dk {
        for b in 0..dk {
            let mut acc = C64::new(0.0, 0.0);
            for e in 0..de {
                acc += amps[compose(a, e)] * amps[compose(b, e)].conj();
            }
            rho[(a, b)] = acc;
        }
    }
    Ok(rho)
}

/// Von Neumann entropy in bits; eigenvalues below 1e-14 count as zero.
pub fn entanglement_entropy(rho: &CMatrix) -> f64 {
    let spectrum = eigendecompose(&Hermitian::new(rho.clone()).expect("density matrix"));
    spectrum
        .eigenvalues()
        .iter()
        .filter(|&&p| p > 1e-14)
        .map(|&p| -p * p.log2())
        .sum()
}

pub fn purity(rho: &CMatrix) -> f64 {
    (rho * rho).trace().re
}

/// Transfer amplitude f(t) = |<10..0| exp(-iHt) |0..01>|, computed in the
/// single-excitation subspace.
pub fn transfer_amplitude(spec: &ChainSpec, t: f64) -> Result<f64> {
    Ok(transfer_amplitude_complex(spec, t)?.norm())
}

/// The complex transfer amplitude <10..0| exp(-iHt) |0..01>.
pub fn transfer_amplitude_complex(spec: &ChainSpec, t: f64) -> Result<C64> {
    let h = build_excitation_hamiltonian(spec)?;
    let spectrum = eigendecompose(&h);
    Ok(transfer_amplitude_from_spectrum(&spectrum, t))
}

/// Same amplitude from a precomputed excitation-subspace spectrum; used
/// by scans to reuse one eigendecomposition across many times.
pub fn transfer_amplitude_from_spectrum(spectrum: &Spectrum, t: f64) -> C64 {
    let n = spectrum.dim();
    let v = spectrum.vectors();
    let mut acc = C64::new(0.0, 0.0);
    for (m, &e) in spectrum.eigenvalues().iter().enumerate() {
        acc += v[(0, m)] * v[(n - 1, m)].conj() * C64::new(0.0, -e * t).exp();
    }
    acc
}

/// Input-averaged transfer fidelity F = f/3 + f^2/6 + 1/2.
pub fn average_fidelity(f: f64) -> f64 {
    f / 3.0 + f * f / 6.0 + 0.5
}

/// One point of a sampled fidelity curve.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct FidelitySample {
    pub t: f64,
    pub f: f64,
    #[serde(rename = "F")]
    pub fidelity: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_full_hamiltonian, ChainSpec};
    use crate::{C64, CVector, Model};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn basis_state_is_unit_vector() {
        let psi = StateVector::basis_state(Basis::Full { n_spins: 3 }, 5);
        assert_eq!(psi.dim(), 8);
        assert_eq!(psi.amplitudes()[5], c(1.0, 0.0));
    }

    #[test]
    fn non_normalized_rejected() {
        let amps = CVector::from_element(4, c(1.0, 0.0));
        assert!(StateVector::new(amps, Basis::Full { n_spins: 2 }).is_err());
    }

    #[test]
    fn product_state_ordering() {
        // Spin 1 is the most significant bit: |1>|0> has index 0b10.
        let psi = StateVector::product(&[(c(0.0, 0.0), c(1.0, 0.0)), (c(1.0, 0.0), c(0.0, 0.0))])
            .unwrap();
        assert_eq!(psi.amplitudes()[0b10], c(1.0, 0.0));
    }

    #[test]
    fn overlap_convention() {
        // overlap = <other|self>.
        let plus = StateVector::product(&[(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0))]).unwrap();
        let zero = StateVector::basis_state(Basis::Full { n_spins: 1 }, 0);
        let ov = plus.overlap(&zero);
        assert!((ov - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn signed_transfer_amplitude_at_tau() {
        // exp(-iH tau)|100> = -|001> for the balanced 3-chain.
        let spec = ChainSpec::three_spin(1.0, 1.0).unwrap();
        let h = build_full_hamiltonian(&spec).unwrap();
        let tau = PI / 2f64.sqrt();
        let psi = propagate(&h, tau, &StateVector::basis_state(Basis::Full { n_spins: 3 }, 0b100))
            .unwrap();
        let target = StateVector::basis_state(Basis::Full { n_spins: 3 }, 0b001);
        assert!((target.overlap(&psi) - c(-1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn spectrum_unitary_consistency() {
        let spec = ChainSpec::homogeneous(4, Model::Heisenberg, 0.9).unwrap();
        let h = build_full_hamiltonian(&spec).unwrap();
        let s = eigendecompose(&h);
        let u = s.unitary_at(1.3);
        let id = u.adjoint() * &u;
        assert!((id - CMatrix::identity(16, 16)).camax() < 1e-12);
    }

    #[test]
    fn eigenvalues_sorted() {
        let spec = ChainSpec::homogeneous(5, Model::Xy, 1.0).unwrap();
        let s = eigendecompose(&build_full_hamiltonian(&spec).unwrap());
        let ev = s.eigenvalues();
        for i in 1..ev.len() {
            assert!(ev[i] >= ev[i - 1]);
        }
    }

    #[test]
    fn bell_pair_entropy_and_purity() {
        let mut amps = CVector::zeros(4);
        amps[0b00] = c(FRAC_1_SQRT_2, 0.0);
        amps[0b11] = c(FRAC_1_SQRT_2, 0.0);
        let psi = StateVector::new(amps, Basis::Full { n_spins: 2 }).unwrap();
        let rho = reduced_state(&psi, &[0]).unwrap();
        assert!((entanglement_entropy(&rho) - 1.0).abs() < 1e-12);
        assert!((purity(&rho) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn product_state_has_pure_marginal() {
        let psi = StateVector::product(&[
            (c(0.6, 0.0), c(0.8, 0.0)),
            (c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)),
        ])
        .unwrap();
        let rho = reduced_state(&psi, &[1]).unwrap();
        assert!((purity(&rho) - 1.0).abs() < 1e-12);
        assert!(entanglement_entropy(&rho).abs() < 1e-10);
    }

    #[test]
    fn average_fidelity_endpoints() {
        assert!((average_fidelity(1.0) - 1.0).abs() < 1e-15);
        assert!((average_fidelity(0.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn transfer_amplitude_n2_closed_form() {
        // f(t) = |sin(omega t)| for two spins.
        let spec = ChainSpec::homogeneous(2, Model::Xy, 1.0).unwrap();
        for &t in &[0.3, 1.0, 2.5] {
            assert!((transfer_amplitude(&spec, t).unwrap() - t.sin().abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn spectrum_transfer_matches_spec_transfer() {
        let spec = ChainSpec::homogeneous(6, Model::Xy, 1.0).unwrap();
        let h = crate::chain::build_excitation_hamiltonian(&spec).unwrap();
        let s = eigendecompose(&h);
        for &t in &[0.5, 3.7, 12.0] {
            let a = transfer_amplitude_from_spectrum(&s, t).norm();
            let b = transfer_amplitude(&spec, t).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}
