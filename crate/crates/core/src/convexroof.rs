//! Pure-state decompositions of low-rank mixed states and brute-force
//! convex-roof optimization over them.
//!
//! Every decomposition of a rank-`r` state into `K` pure states comes from a
//! `K x r` isometry applied to the scaled eigenvectors `sqrt(mu_j) |e_j>`.
//! [`optimize`] searches that space directly.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::lin::{self, CMatrix, DensityMatrix, PureState, QubitSubset};
use crate::measures::{self, Measure};

/// Column-orthonormality tolerance for mixing matrices.
pub const ISOMETRY_TOL: f64 = 1e-10;
/// Members lighter than this are dropped from an ensemble.
pub const MIN_MEMBER_WEIGHT: f64 = 1e-14;
/// Largest rank the optimizer accepts.
pub const MAX_RANK: usize = 4;
/// Ensemble sizes `r..=r + EXTRA_MEMBERS` are explored.
pub const EXTRA_MEMBERS: usize = 4;
pub const MIN_BUDGET: usize = 100;

const REFINE_START_STEP: f64 = 0.1;
const REFINE_END_STEP: f64 = 1e-6;
const REFINE_MAX_EVALS: usize = 20_000;

/// `K x r` slice of a unitary: row `h` mixes the eigen-directions into ensemble member `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingMatrix {
    u: CMatrix,
}

impl MixingMatrix {
    pub fn new(u: CMatrix) -> Result<Self> {
        let (k, r) = u.shape();
        if r == 0 || k < r {
            return domain(format!(
                "mixing matrix must be K x r with K >= r >= 1, got {k}x{r}"
            ));
        }
        let gram = u.adjoint() * &u;
        let defect = (gram - CMatrix::identity(r, r))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if defect > ISOMETRY_TOL {
            return domain(format!(
                "mixing matrix columns are not orthonormal (defect {defect:e})"
            ));
        }
        Ok(Self { u })
    }

    pub fn identity(r: usize) -> Result<Self> {
        Self::new(CMatrix::identity(r, r))
    }

    /// First `r` columns of a Haar-random `k x k` unitary.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R, k: usize, r: usize) -> Result<Self> {
        if r == 0 || k < r {
            return domain(format!("need K >= r >= 1, got K={k}, r={r}"));
        }
        Ok(Self {
            u: lin::haar_unitary(rng, k).columns(0, r).into_owned(),
        })
    }

    /// Ensemble size `K`.
    pub fn rows(&self) -> usize {
        self.u.nrows()
    }

    /// Rank `r` of the decomposed state.
    pub fn cols(&self) -> usize {
        self.u.ncols()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.u
    }
}

/// Weighted pure-state decomposition `{p_h, |psi_h>}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        let Some(first) = members.first() else {
            return domain("ensemble must have at least one member");
        };
        let n = first.1.num_qubits();
        if let Some((_, bad)) = members.iter().find(|(_, s)| s.num_qubits() != n) {
            return Err(Error::Dimension {
                expected: n,
                got: bad.num_qubits(),
            });
        }
        if members.iter().any(|(w, _)| !(*w > 0.0)) {
            return domain("ensemble weights must be positive");
        }
        let total: f64 = members.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-10 {
            return domain(format!("ensemble weights sum to {total}"));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn num_qubits(&self) -> usize {
        self.members[0].1.num_qubits()
    }

    /// `sum_h p_h |psi_h><psi_h|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::mixture(&self.members).expect("validated on construction")
    }
}

/// Scaled eigenvectors `sqrt(mu_j) |e_j>` as columns, over eigenvalues above the zero threshold.
fn scaled_eigenbasis(rho: &DensityMatrix) -> Result<CMatrix> {
    let (values, vectors) = lin::eigh(rho.entries())?;
    let rank = values.iter().filter(|&&v| v > lin::ZERO_EIGENVALUE).count();
    Ok(CMatrix::from_fn(rho.dim(), rank, |r, c| {
        vectors[(r, c)] * values[c].sqrt()
    }))
}

fn ensemble_from_basis(num_qubits: usize, basis: &CMatrix, u: &CMatrix) -> Result<Ensemble> {
    // Column h of phi is sum_j u_hj sqrt(mu_j)|e_j>.
    let phi = basis * u.transpose();
    let mut members = Vec::with_capacity(phi.ncols());
    let mut total = 0.0;
    for col in phi.column_iter() {
        let p = col.norm_squared();
        if p < MIN_MEMBER_WEIGHT {
            continue;
        }
        total += p;
        members.push((
            p,
            PureState::from_vector_unchecked(num_qubits, col.unscale(p.sqrt())),
        ));
    }
    for m in &mut members {
        m.0 /= total;
    }
    Ensemble::new(members)
}

/// Decomposition of `rho` generated by the mixing matrix `u`; `u` must have as many
/// columns as `rho` has nonzero eigenvalues.
pub fn hjw_ensemble(rho: &DensityMatrix, u: &MixingMatrix) -> Result<Ensemble> {
    let basis = scaled_eigenbasis(rho)?;
    if basis.ncols() != u.cols() {
        return domain(format!(
            "rank mismatch: state has rank {}, mixing matrix has {} columns",
            basis.ncols(),
            u.cols()
        ));
    }
    ensemble_from_basis(rho.num_qubits(), &basis, u.entries())
}

fn check_measure(measure: Measure) -> Result<()> {
    match measure {
        Measure::Concurrence | Measure::Negativity => Ok(()),
        other => domain(format!(
            "convex-roof averages support concurrence and negativity, not {other}"
        )),
    }
}

/// `sum_h p_h E(|psi_h>)` across `cut` for `E` = concurrence or negativity.
pub fn average_entanglement(ens: &Ensemble, cut: &QubitSubset, measure: Measure) -> Result<f64> {
    check_measure(measure)?;
    let n = ens.num_qubits();
    cut.check_within(n)?;
    if cut.len() >= n {
        return domain(format!(
            "cut {{{cut}}} must be a proper subset of the {n} qubits"
        ));
    }
    ens.members()
        .iter()
        .map(|(p, psi)| {
            let e = match measure {
                Measure::Concurrence => measures::concurrence_unchecked(psi, cut)?,
                _ => measures::negativity_pure_unchecked(psi, cut)?,
            };
            Ok(p * e)
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    /// Best average found: an upper bound on the true minimum or a lower bound on the true maximum.
    pub value: f64,
    pub mixing: MixingMatrix,
    pub evaluations: usize,
}

struct Objective<'a> {
    num_qubits: usize,
    basis: CMatrix,
    cut: &'a QubitSubset,
    measure: Measure,
    sign: f64,
    evaluations: usize,
}

impl Objective<'_> {
    /// Signed objective (lower is better) of the first `r` columns of `unitary`.
    fn eval(&mut self, unitary: &CMatrix) -> Result<f64> {
        self.evaluations += 1;
        let r = self.basis.ncols();
        let u = unitary.columns(0, r);
        let ens = ensemble_from_basis(self.num_qubits, &self.basis, &u.into_owned())?;
        Ok(self.sign * average_entanglement(&ens, self.cut, self.measure)?)
    }
}

/// Elementary one-parameter moves on a `K x K` unitary, applied on the right.
#[derive(Debug, Clone, Copy)]
enum Move {
    Rotate(usize, usize),
    ComplexRotate(usize, usize),
    Phase(usize),
}

impl Move {
    /// The moves that can change the first `r` columns of a `k x k` unitary.
    fn all(k: usize, r: usize) -> Vec<Move> {
        let mut moves = Vec::new();
        for a in 0..r {
            moves.push(Move::Phase(a));
            for b in a + 1..k {
                moves.push(Move::Rotate(a, b));
                moves.push(Move::ComplexRotate(a, b));
            }
        }
        moves
    }

    fn apply(self, u: &CMatrix, t: f64) -> CMatrix {
        let mut out = u.clone();
        let (c, s) = (t.cos(), t.sin());
        match self {
            Move::Phase(a) => {
                let ph = Complex64::from_polar(1.0, t);
                for row in 0..u.nrows() {
                    out[(row, a)] = u[(row, a)] * ph;
                }
            }
            Move::Rotate(a, b) => {
                for row in 0..u.nrows() {
                    out[(row, a)] = u[(row, a)] * c + u[(row, b)] * s;
                    out[(row, b)] = -u[(row, a)] * s + u[(row, b)] * c;
                }
            }
            Move::ComplexRotate(a, b) => {
                let is = Complex64::new(0.0, s);
                for row in 0..u.nrows() {
                    out[(row, a)] = u[(row, a)] * c + u[(row, b)] * is;
                    out[(row, b)] = u[(row, a)] * is + u[(row, b)] * c;
                }
            }
        }
        out
    }
}

/// Best average `measure` across `cut` over pure-state decompositions of `rho`.
///
/// The eigen-ensemble and `budget - 1` Haar-random mixing matrices (with
/// `K` cycling through `r..=r+4`) are scored; the best is then polished by a
/// compass search over elementary rotations and phases, halving the step
/// from 0.1 down to 1e-6. Deterministic in `seed`.
pub fn optimize(
    rho: &DensityMatrix,
    cut: &QubitSubset,
    measure: Measure,
    direction: Direction,
    budget: usize,
    seed: u64,
) -> Result<Optimum> {
    check_measure(measure)?;
    if budget < MIN_BUDGET {
        return domain(format!(
            "budget must be at least {MIN_BUDGET}, got {budget}"
        ));
    }
    let n = rho.num_qubits();
    cut.check_within(n)?;
    if cut.len() >= n {
        return domain(format!(
            "cut {{{cut}}} must be a proper subset of the {n} qubits"
        ));
    }
    let basis = scaled_eigenbasis(rho)?;
    let r = basis.ncols();
    if r == 0 || r > MAX_RANK {
        return domain(format!(
            "optimizer supports rank 1..={MAX_RANK}, state has rank {r}"
        ));
    }
    let mut objective = Objective {
        num_qubits: n,
        basis,
        cut,
        measure,
        sign: match direction {
            Direction::Min => 1.0,
            Direction::Max => -1.0,
        },
        evaluations: 0,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_u = CMatrix::identity(r, r);
    let mut best = objective.eval(&best_u)?;
    for i in 1..budget {
        let k = r + (i - 1) % (EXTRA_MEMBERS + 1);
        let u = lin::haar_unitary(&mut rng, k);
        let v = objective.eval(&u)?;
        if v < best {
            best = v;
            best_u = u;
        }
    }

    let moves = Move::all(best_u.nrows(), r);
    let mut step = REFINE_START_STEP;
    while step >= REFINE_END_STEP && objective.evaluations < REFINE_MAX_EVALS {
        let mut improved = false;
        for mv in &moves {
            for t in [step, -step] {
                let candidate = mv.apply(&best_u, t);
                let v = objective.eval(&candidate)?;
                if v < best {
                    best = v;
                    best_u = candidate;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    let mixing = MixingMatrix::new(best_u.columns(0, r).into_owned())?;
    Ok(Optimum {
        value: objective.sign * best,
        mixing,
        evaluations: objective.evaluations,
    })
}
