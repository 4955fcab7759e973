//! Dense complex linear algebra over multiqubit registers.
//!
//! Qubits are labelled `1..=n`. Qubit 1 is the most significant bit of the
//! computational-basis index, so `|q1 q2 ... qn>` maps to the binary number
//! `q1 q2 ... qn`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{domain, Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Tolerance on `sum |amplitude|^2 = 1` for pure states.
pub const NORM_TOL: f64 = 1e-12;
/// Entry-wise Hermiticity and unit-trace tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-12;
/// Hermiticity tolerance accepted by the eigensolver.
pub const SPECTRUM_HERMITIAN_TOL: f64 = 1e-10;
/// Most negative eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-10;
/// Eigenvalues below this magnitude count as zero when used as probabilities.
pub const ZERO_EIGENVALUE: f64 = 1e-12;

const MAX_QUBITS: usize = 16;

/// Strictly increasing, nonempty list of 1-based qubit labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QubitSubset {
    indices: Vec<usize>,
}

impl QubitSubset {
    /// Builds a subset from labels in any order. Duplicates and label 0 are rejected.
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        if indices.is_empty() {
            return domain("qubit subset must be nonempty");
        }
        indices.sort_unstable();
        if indices[0] == 0 {
            return domain("qubit labels are 1-based; got 0");
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return domain(format!("duplicate qubit label in {indices:?}"));
        }
        Ok(Self { indices })
    }

    /// The contiguous range `lo..=hi`.
    pub fn range(lo: usize, hi: usize) -> Result<Self> {
        Self::new(lo..=hi)
    }

    pub fn single(q: usize) -> Result<Self> {
        Self::new([q])
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.indices.binary_search(&q).is_ok()
    }

    pub fn max(&self) -> usize {
        *self.indices.last().expect("nonempty by construction")
    }

    /// Fails unless every label lies in `1..=n`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        if self.max() > n {
            return domain(format!(
                "qubit {} out of range for a {n}-qubit register",
                self.max()
            ));
        }
        Ok(())
    }

    /// Labels in `1..=n` not in this subset.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|q| !self.contains(*q)).collect()
    }

    /// This subset with `q` added.
    pub fn with(&self, q: usize) -> Result<Self> {
        if self.contains(q) {
            return Ok(self.clone());
        }
        Self::new(self.indices.iter().copied().chain(std::iter::once(q)))
    }

    /// This subset with `q` removed, or `None` if nothing would remain.
    pub fn without(&self, q: usize) -> Option<Self> {
        let rest: Vec<usize> = self.indices.iter().copied().filter(|&i| i != q).collect();
        Self::new(rest).ok()
    }

    /// Position of qubit `q` inside the subset, renumbered 1-based.
    pub fn position(&self, q: usize) -> Option<usize> {
        self.indices.binary_search(&q).ok().map(|p| p + 1)
    }
}

impl fmt::Display for QubitSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Real eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Eigenvalues with magnitudes below [`ZERO_EIGENVALUE`] truncated to zero.
    pub fn probabilities(&self) -> Vec<f64> {
        self.0
            .iter()
            .map(|&l| if l.abs() < ZERO_EIGENVALUE { 0.0 } else { l })
            .collect()
    }
}

/// Normalized state vector of `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: CVector,
}

impl PureState {
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_register(num_qubits, amplitudes.len())?;
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return domain(format!("state is not normalized: sum |amp|^2 = {norm_sq}"));
        }
        Ok(Self {
            num_qubits,
            amplitudes: CVector::from_vec(amplitudes),
        })
    }

    /// Rescales `amplitudes` to unit norm. Fails on the zero vector.
    pub fn normalized(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_register(num_qubits, amplitudes.len())?;
        let mut v = CVector::from_vec(amplitudes);
        let norm = v.norm();
        if norm == 0.0 || !norm.is_finite() {
            return domain("cannot normalize a zero or non-finite vector");
        }
        v.unscale_mut(norm);
        Ok(Self {
            num_qubits,
            amplitudes: v,
        })
    }

    pub(crate) fn from_vector_unchecked(num_qubits: usize, amplitudes: CVector) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << num_qubits);
        Self {
            num_qubits,
            amplitudes,
        }
    }

    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if index >= dim {
            return domain(format!(
                "basis index {index} out of range for dimension {dim}"
            ));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(num_qubits, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// `|psi><psi|` as a density matrix.
    pub fn density(&self) -> DensityMatrix {
        let entries = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix::from_entries_unchecked(self.num_qubits, entries)
    }

    /// Reduced state on `keep`, computed directly from the amplitudes.
    pub fn reduced(&self, keep: &QubitSubset) -> Result<DensityMatrix> {
        let m = self.coefficient_matrix(keep)?;
        let entries = &m * m.adjoint();
        Ok(DensityMatrix::from_entries_unchecked(keep.len(), entries))
    }

    /// Schmidt coefficients across `keep | rest`, descending.
    ///
    /// Taken as singular values of the coefficient matrix, so small coefficients
    /// keep absolute accuracy near machine epsilon instead of the square root of it.
    pub fn schmidt_coefficients(&self, keep: &QubitSubset) -> Result<Vec<f64>> {
        let m = self.coefficient_matrix(keep)?;
        let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        Ok(s)
    }

    // Row k holds the amplitudes with the kept qubits fixed to k.
    fn coefficient_matrix(&self, keep: &QubitSubset) -> Result<CMatrix> {
        keep.check_within(self.num_qubits)?;
        let n = self.num_qubits;
        let traced = keep.complement(n);
        let kept_offsets = scatter_table(keep.indices(), n);
        let traced_offsets = scatter_table(&traced, n);
        Ok(CMatrix::from_fn(
            kept_offsets.len(),
            traced_offsets.len(),
            |k, t| self.amplitudes[kept_offsets[k] | traced_offsets[t]],
        ))
    }
}

/// Hermitian, positive semidefinite, unit-trace operator on a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    entries: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity before accepting `entries`.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() {
            return domain(format!(
                "density matrix must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            ));
        }
        let dim = entries.nrows();
        if !dim.is_power_of_two() || dim < 2 {
            return domain(format!("dimension {dim} is not a qubit register"));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        let asym = hermitian_defect(&entries);
        if asym > DENSITY_TOL {
            return domain(format!("matrix is not Hermitian (defect {asym:e})"));
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
            return domain(format!("trace is {trace}, expected 1"));
        }
        let spectrum = hermitian_spectrum(&entries)?;
        let min = *spectrum.eigenvalues().last().expect("nonempty");
        if min < -PSD_TOL {
            return domain(format!(
                "matrix is not positive semidefinite (min eigenvalue {min:e})"
            ));
        }
        Ok(Self {
            num_qubits,
            entries,
        })
    }

    pub(crate) fn from_entries_unchecked(num_qubits: usize, entries: CMatrix) -> Self {
        debug_assert_eq!(entries.nrows(), 1 << num_qubits);
        Self {
            num_qubits,
            entries,
        }
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        let entries = CMatrix::identity(dim, dim).map(|z| z / dim as f64);
        Self::from_entries_unchecked(num_qubits, entries)
    }

    /// Convex combination `sum_k w_k |psi_k><psi_k|`; weights must be nonnegative and sum to 1.
    pub fn mixture(members: &[(f64, PureState)]) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::Domain("empty mixture".into()))?;
        let n = first.1.num_qubits();
        let dim = first.1.dim();
        let mut total = 0.0;
        let mut entries = CMatrix::zeros(dim, dim);
        for (w, psi) in members {
            if psi.num_qubits() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: psi.num_qubits(),
                });
            }
            if *w < 0.0 {
                return domain(format!("negative mixture weight {w}"));
            }
            total += w;
            entries += psi.amplitudes() * psi.amplitudes().adjoint() * Complex64::from(*w);
        }
        if (total - 1.0).abs() > DENSITY_TOL {
            return domain(format!("mixture weights sum to {total}"));
        }
        Ok(Self::from_entries_unchecked(n, entries))
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// One entry of 2 per qubit.
    pub fn subsystem_dims(&self) -> Vec<usize> {
        vec![2; self.num_qubits]
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        // Tr(rho rho) = sum_ij |rho_ij|^2 for Hermitian rho.
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_spectrum(&self.entries)
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        psi.density()
    }
}

fn check_register(num_qubits: usize, len: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return domain(format!("unsupported qubit count {num_qubits}"));
    }
    let dim = 1usize << num_qubits;
    if len != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: len,
        });
    }
    Ok(())
}

/// For every sub-index `k` of the listed qubits, the full-register offset with
/// those qubits set to the bits of `k` (first listed qubit = most significant).
fn scatter_table(qubits: &[usize], n: usize) -> Vec<usize> {
    let len = qubits.len();
    (0..1usize << len)
        .map(|k| {
            qubits.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
                let bit = (k >> (len - 1 - pos)) & 1;
                acc | (bit << (n - q))
            })
        })
        .collect()
}

fn hermitian_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Reduced state on `keep`; subsystem order follows the labels in `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &QubitSubset) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    keep.check_within(n)?;
    let traced = keep.complement(n);
    let kept_offsets = scatter_table(keep.indices(), n);
    let traced_offsets = scatter_table(&traced, n);
    let dim = kept_offsets.len();
    let entries = CMatrix::from_fn(dim, dim, |r, c| {
        traced_offsets
            .iter()
            .map(|&t| rho.entries[(kept_offsets[r] | t, kept_offsets[c] | t)])
            .sum()
    });
    Ok(DensityMatrix::from_entries_unchecked(keep.len(), entries))
}

/// Transposes the indices of the qubits in `side`. The result is Hermitian but
/// generally not positive semidefinite.
pub fn partial_transpose(rho: &DensityMatrix, side: &QubitSubset) -> Result<CMatrix> {
    let n = rho.num_qubits();
    side.check_within(n)?;
    let mask = side
        .indices()
        .iter()
        .fold(0usize, |acc, &q| acc | 1 << (n - q));
    let dim = rho.dim();
    Ok(CMatrix::from_fn(dim, dim, |r, c| {
        let swap = (r ^ c) & mask;
        rho.entries[(r ^ swap, c ^ swap)]
    }))
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn hermitian_spectrum(m: &CMatrix) -> Result<Spectrum> {
    let (values, _) = eigh_inner(m, false)?;
    Ok(Spectrum(values))
}

/// Eigenvalues (descending) and the matching orthonormal eigenvectors as columns.
pub(crate) fn eigh(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let (values, vectors) = eigh_inner(m, true)?;
    Ok((values, vectors.expect("requested")))
}

fn eigh_inner(m: &CMatrix, with_vectors: bool) -> Result<(Vec<f64>, Option<CMatrix>)> {
    if !m.is_square() || m.nrows() == 0 {
        return domain(format!(
            "eigensolver needs a nonempty square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        ));
    }
    let defect = hermitian_defect(m);
    if !(defect <= SPECTRUM_HERMITIAN_TOL) {
        return domain(format!("matrix is not Hermitian (defect {defect:e})"));
    }
    let sym = (m + m.adjoint()).map(|z| z * 0.5);
    if !with_vectors {
        let mut values: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(|a, b| b.total_cmp(a));
        return Ok((values, None));
    }
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, Some(vectors)))
}

/// `sum |lambda_i|` over the spectrum of a Hermitian matrix.
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    Ok(hermitian_spectrum(m)?
        .eigenvalues()
        .iter()
        .map(|l| l.abs())
        .sum())
}

/// Haar-random `k x k` unitary: QR of a complex Ginibre matrix with the phases
/// of `R`'s diagonal pushed into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, k: usize) -> CMatrix {
    let g = CMatrix::from_fn(k, k, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..k {
        let d = r[(c, c)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for row in 0..k {
            q[(row, c)] *= phase;
        }
    }
    q
}

/// Standard complex Gaussian with unit variance split evenly over both parts.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Unitarily invariant random pure state.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, num_qubits: usize) -> PureState {
    let amps = (0..1usize << num_qubits)
        .map(|_| complex_gaussian(rng))
        .collect();
    PureState::normalized(num_qubits, amps).expect("gaussian vector is nonzero")
}

/// Random mixed state of the given rank: a uniformly weighted mixture of random pure states.
pub fn random_density<R: Rng + ?Sized>(
    rng: &mut R,
    num_qubits: usize,
    rank: usize,
) -> DensityMatrix {
    let rank = rank.max(1);
    let raw: Vec<f64> = (0..rank).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let members: Vec<(f64, PureState)> = raw
        .iter()
        .map(|w| (w / total, random_pure_state(rng, num_qubits)))
        .collect();
    DensityMatrix::mixture(&members).expect("weights are normalized")
}
