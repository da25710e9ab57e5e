//! Chain/network specifications and their Hamiltonians: full 2^N space,
//! single-excitation subspace, and the mirror-symmetric half-chain bases.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{C64, CMatrix, Error, Result};

/// Largest chain for which the dense 2^N Hamiltonian may be built.
pub const MAX_FULL_SPINS: usize = 16;

/// Fixed 2x2 matrix conventions: basis order |0>, |1>; |1> is the excited
/// state, sigma_z|0> = +|0>, sigma_+|0> = |1>.
pub mod pauli {
    use nalgebra::Matrix2;

    use crate::C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    pub fn sigma_x() -> Matrix2<C64> {
        Matrix2::new(c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.))
    }

    pub fn sigma_y() -> Matrix2<C64> {
        Matrix2::new(c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.))
    }

    pub fn sigma_z() -> Matrix2<C64> {
        Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.))
    }

    /// Raising operator: (sigma_x + i sigma_y)/2, takes |0> to |1>.
    pub fn sigma_plus() -> Matrix2<C64> {
        Matrix2::new(c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.))
    }

    /// Lowering operator: (sigma_x - i sigma_y)/2.
    pub fn sigma_minus() -> Matrix2<C64> {
        Matrix2::new(c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.))
    }

    pub fn identity() -> Matrix2<C64> {
        Matrix2::identity()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Nearest-neighbor hopping (omega_ij/2)(sx sx + sy sy) per bond.
    Xy,
    /// Full dot product -(J/2) sigma.sigma per bond.
    Heisenberg,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Linear,
    /// Star network: end spins 1 and 3 joined by m parallel mediator spins,
    /// branch x coupled with strength omega_x on both of its bonds.
    ParallelChains(Vec<f64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Full description of a chain or network instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub n_spins: usize,
    pub model: Model,
    /// omega_{j,j+1} for linear topology, length N-1.
    pub couplings: Vec<f64>,
    /// Per-site sigma_z field strengths B_j; the Hamiltonian carries
    /// -sum_j B_j sigma_zj.
    pub fields: Vec<f64>,
    pub topology: Topology,
}

/// Spec-file form with optional keys; omitted couplings default to a
/// homogeneous 1.0 profile, omitted fields to zero.
#[derive(Deserialize)]
struct RawChainSpec {
    n_spins: usize,
    #[serde(default = "default_model")]
    model: Model,
    #[serde(default)]
    couplings: Option<Vec<f64>>,
    #[serde(default)]
    fields: Option<Vec<f64>>,
    #[serde(default = "default_topology")]
    topology: Topology,
}

fn default_model() -> Model {
    Model::Xy
}

fn default_topology() -> Topology {
    Topology::Linear
}

impl ChainSpec {
    pub fn new(
        n_spins: usize,
        model: Model,
        couplings: Vec<f64>,
        fields: Vec<f64>,
        topology: Topology,
    ) -> Result<Self> {
        let spec = ChainSpec { n_spins, model, couplings, fields, topology };
        spec.validate()?;
        Ok(spec)
    }

    /// Homogeneous linear chain with coupling `omega` and no fields.
    pub fn homogeneous(n_spins: usize, model: Model, omega: f64) -> Result<Self> {
        Self::new(n_spins, model, vec![omega; n_spins.saturating_sub(1)], vec![0.0; n_spins], Topology::Linear)
    }

    /// The three-spin XY chain with bond couplings (omega, lambda).
    pub fn three_spin(omega: f64, lambda: f64) -> Result<Self> {
        Self::new(3, Model::Xy, vec![omega, lambda], vec![0.0; 3], Topology::Linear)
    }

    /// Star network of m parallel mediators with per-branch couplings.
    pub fn network(branch_couplings: Vec<f64>) -> Result<Self> {
        let n = branch_couplings.len() + 2;
        Self::new(n, Model::Xy, vec![], vec![0.0; n], Topology::ParallelChains(branch_couplings))
    }

    pub fn with_fields(mut self, fields: Vec<f64>) -> Result<Self> {
        self.fields = fields;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_spins < 2 {
            return Err(Error::InvalidSpec(format!("need at least 2 spins, got {}", self.n_spins)));
        }
        match &self.topology {
            Topology::Linear => {
                if self.couplings.len() != self.n_spins - 1 {
                    return Err(Error::InvalidSpec(format!(
                        "linear chain of {} spins needs {} couplings, got {}",
                        self.n_spins,
                        self.n_spins - 1,
                        self.couplings.len()
                    )));
                }
            }
            Topology::ParallelChains(branches) => {
                if branches.is_empty() {
                    return Err(Error::InvalidSpec("network needs at least one branch".into()));
                }
                if self.n_spins != branches.len() + 2 {
                    return Err(Error::InvalidSpec(format!(
                        "network with {} branches has {} spins, spec says {}",
                        branches.len(),
                        branches.len() + 2,
                        self.n_spins
                    )));
                }
                if branches.iter().any(|w| !w.is_finite() || *w <= 0.0) {
                    return Err(Error::InvalidSpec("branch couplings must be finite and positive".into()));
                }
            }
        }
        if self.couplings.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidSpec("couplings must be finite".into()));
        }
        if self.fields.len() != self.n_spins {
            return Err(Error::InvalidSpec(format!(
                "{} spins need {} field values, got {}",
                self.n_spins,
                self.n_spins,
                self.fields.len()
            )));
        }
        if self.fields.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidSpec("fields must be finite".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawChainSpec = serde_json::from_str(text)?;
        let couplings = raw.couplings.unwrap_or_else(|| match &raw.topology {
            Topology::Linear => vec![1.0; raw.n_spins.saturating_sub(1)],
            Topology::ParallelChains(_) => vec![],
        });
        let fields = raw.fields.unwrap_or_else(|| vec![0.0; raw.n_spins]);
        Self::new(raw.n_spins, raw.model, couplings, fields, raw.topology)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chain spec serializes")
    }

    /// Bonds as (site i, site j, strength), sites 0-based.
    pub fn bonds(&self) -> Vec<(usize, usize, f64)> {
        match &self.topology {
            Topology::Linear => self
                .couplings
                .iter()
                .enumerate()
                .map(|(j, &w)| (j, j + 1, w))
                .collect(),
            Topology::ParallelChains(branches) => {
                let last = self.n_spins - 1;
                let mut bonds = Vec::with_capacity(2 * branches.len());
                for (x, &w) in branches.iter().enumerate() {
                    bonds.push((0, x + 1, w));
                    bonds.push((x + 1, last, w));
                }
                bonds
            }
        }
    }

    pub fn is_mirror_symmetric(&self) -> bool {
        let m = self.couplings.len();
        let couplings_ok = (0..m).all(|j| (self.couplings[j] - self.couplings[m - 1 - j]).abs() < 1e-12);
        let n = self.n_spins;
        let fields_ok = (0..n).all(|j| (self.fields[j] - self.fields[n - 1 - j]).abs() < 1e-12);
        couplings_ok && fields_ok
    }
}

/// Dense complex matrix checked to be Hermitian at construction.
#[derive(Clone, Debug)]
pub struct Hermitian {
    mat: CMatrix,
}

impl Hermitian {
    pub fn new(mat: CMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch { expected: mat.nrows(), actual: mat.ncols() });
        }
        let mut dev: f64 = 0.0;
        for i in 0..mat.nrows() {
            for j in i..mat.ncols() {
                dev = dev.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
            }
        }
        let scale = mat.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        if dev > 1e-12 * scale {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Hermitian { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }
}

/// Action of the spec's Hamiltonian on a product basis state given as
/// per-site occupations (true = excited). Returns (image state, real
/// coefficient) pairs. This is the one place the Hamiltonian terms are
/// written down; every matrix representation is derived from it.
pub fn hamiltonian_action(spec: &ChainSpec, bits: &[bool]) -> Vec<(Vec<bool>, f64)> {
    assert_eq!(bits.len(), spec.n_spins);
    let mut out: Vec<(Vec<bool>, f64)> = Vec::new();
    let mut diagonal = 0.0;
    for (i, j, w) in spec.bonds() {
        let anti = bits[i] != bits[j];
        match spec.model {
            Model::Xy => {
                // (w/2)(sx sx + sy sy) = w (s+ s- + s- s+): hop when anti-aligned.
                if anti {
                    let mut flipped = bits.to_vec();
                    flipped[i] = !flipped[i];
                    flipped[j] = !flipped[j];
                    out.push((flipped, w));
                }
            }
            Model::Heisenberg => {
                // -(w/2)(sx sx + sy sy + sz sz)
                if anti {
                    let mut flipped = bits.to_vec();
                    flipped[i] = !flipped[i];
                    flipped[j] = !flipped[j];
                    out.push((flipped, -w));
                    diagonal += w / 2.0;
                } else {
                    diagonal -= w / 2.0;
                }
            }
        }
    }
    // Field term -sum_j B_j sigma_zj; sigma_z eigenvalue is +1 on |0>.
    for (j, &b) in spec.fields.iter().enumerate() {
        diagonal -= b * if bits[j] { -1.0 } else { 1.0 };
    }
    if diagonal != 0.0 {
        out.push((bits.to_vec(), diagonal));
    }
    out
}

fn bits_of_index(index: usize, n: usize) -> Vec<bool> {
    // Spin 1 is the most significant bit.
    (0..n).map(|j| index & (1 << (n - 1 - j)) != 0).collect()
}

fn index_of_bits(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

/// The 2^N-dimensional Hamiltonian, basis ordered by binary index with
/// spin 1 as the most significant bit.
pub fn build_full_hamiltonian(spec: &ChainSpec) -> Result<Hermitian> {
    spec.validate()?;
    let n = spec.n_spins;
    if n > MAX_FULL_SPINS {
        return Err(Error::DimensionOverflow { n, max: MAX_FULL_SPINS });
    }
    let dim = 1usize << n;
    let mut mat = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let bits = bits_of_index(col, n);
        for (image, coeff) in hamiltonian_action(spec, &bits) {
            mat[(index_of_bits(&image), col)] += C64::new(coeff, 0.0);
        }
    }
    Hermitian::new(mat)
}

/// The N x N block of H on the single-excitation basis |j> (excitation at
/// site j). Valid for any N; the entries come from the full-Hamiltonian
/// action restricted to this sector.
pub fn build_excitation_hamiltonian(spec: &ChainSpec) -> Result<Hermitian> {
    spec.validate()?;
    if !matches!(spec.topology, Topology::Linear) {
        return Err(Error::InvalidSpec("excitation subspace requires linear topology".into()));
    }
    let n = spec.n_spins;
    let mut mat = CMatrix::zeros(n, n);
    for col in 0..n {
        let mut bits = vec![false; n];
        bits[col] = true;
        for (image, coeff) in hamiltonian_action(spec, &bits) {
            let row = image.iter().position(|&b| b).expect("one excitation");
            debug_assert_eq!(image.iter().filter(|&&b| b).count(), 1);
            mat[(row, col)] += C64::new(coeff, 0.0);
        }
    }
    Hermitian::new(mat)
}

/// Mirror-symmetric half-chain basis |1~> .. |n~> of single-excitation
/// states.
#[derive(Clone, Debug)]
pub struct HalfChainBasis {
    pub parity: Parity,
    pub n_spins: usize,
    /// Number of basis states: (N+1)/2 odd, N/2 even.
    pub n: usize,
}

impl HalfChainBasis {
    pub fn new(n_spins: usize, parity: Parity) -> Result<Self> {
        match parity {
            Parity::Odd if n_spins % 2 == 0 => {
                return Err(Error::InvalidArgument(format!("odd parity needs odd N, got {n_spins}")));
            }
            Parity::Even if n_spins % 2 == 1 => {
                return Err(Error::InvalidArgument(format!("even parity needs even N, got {n_spins}")));
            }
            _ => {}
        }
        let n = match parity {
            Parity::Odd => (n_spins + 1) / 2,
            Parity::Even => n_spins / 2,
        };
        Ok(HalfChainBasis { parity, n_spins, n })
    }

    /// N x n matrix whose columns are the |j~> vectors in the
    /// single-excitation site basis.
    pub fn basis_matrix(&self) -> DMatrix<f64> {
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let mut p = DMatrix::zeros(self.n_spins, self.n);
        for j in 0..self.n {
            let mirror = self.n_spins - 1 - j;
            if j == mirror {
                // odd-N middle spin: |n~> is the bare excitation
                p[(j, j)] = 1.0;
            } else {
                // mirror pair; for even N this covers |n~> as the
                // symmetric two-middle-spin superposition
                p[(j, j)] = inv_sqrt2;
                p[(mirror, j)] = inv_sqrt2;
            }
        }
        p
    }
}

/// The n x n matrix of H on the half-chain basis. Rejects specs whose
/// couplings or fields are not mirror-symmetric (the basis is not
/// invariant otherwise).
pub fn build_half_chain_hamiltonian(spec: &ChainSpec, parity: Parity) -> Result<Hermitian> {
    spec.validate()?;
    if !matches!(spec.topology, Topology::Linear) {
        return Err(Error::InvalidSpec("half-chain basis requires linear topology".into()));
    }
    if !spec.is_mirror_symmetric() {
        return Err(Error::NotMirrorSymmetric);
    }
    let basis = HalfChainBasis::new(spec.n_spins, parity)?;
    let h_exc = build_excitation_hamiltonian(spec)?;
    let p = basis.basis_matrix().map(|x| C64::new(x, 0.0));
    let hp = h_exc.as_matrix() * &p;
    let h_half = p.adjoint() * &hp;
    // Invariance of the symmetric subspace: H P must equal P (P^H H P).
    let residual = (&hp - &p * &h_half).camax();
    if residual > 1e-10 {
        return Err(Error::NotMirrorSymmetric);
    }
    Hermitian::new(h_half)
}

/// Index permutation taking the internal binary order to the display
/// order |000>,|001>,|100>,|101>,|010>,|011>,|110>,|111> used for the
/// three-spin unitary (mediator sectors grouped last).
pub const THREE_SPIN_DISPLAY_ORDER: [usize; 8] = [0, 1, 4, 5, 2, 3, 6, 7];

/// Reorder a matrix on the 3-spin space into the display basis order.
pub fn to_display_order(u: &CMatrix) -> CMatrix {
    assert_eq!(u.nrows(), 8);
    let p = &THREE_SPIN_DISPLAY_ORDER;
    CMatrix::from_fn(8, 8, |i, j| u[(p[i], p[j])])
}
