//! Entanglement measures: pure-state concurrence, negativity, the two-qubit
//! spin-flip concurrence, Rényi-α entropy and the `f_α` map from squared
//! concurrence to Rényi-α entanglement.

use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::lin::{self, CMatrix, DensityMatrix, PureState, QubitSubset};

/// `(sqrt(7) - 1) / 2`: smallest order for which `E_α = f_α(C²)` holds on two-qubit states.
pub const ALPHA_WINDOW_LO: f64 = 0.822_875_655_532_295_3;
/// `(sqrt(13) - 1) / 2`: largest order for which `E_α = f_α(C²)` holds on 2⊗d states.
pub const ALPHA_WINDOW_HI: f64 = 1.302_775_637_731_994_6;
/// Orders closer than this to 1 use the Shannon/von Neumann limit.
pub const ALPHA_LIMIT_BAND: f64 = 1e-6;

/// Rényi order `α > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RenyiOrder(f64);

impl RenyiOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return domain(format!(
                "Rényi order must be a positive finite real, got {alpha}"
            ));
        }
        Ok(Self(alpha))
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    /// `α ∈ [(√7−1)/2, (√13−1)/2]`, where the closed form holds for 2⊗d mixed states.
    pub fn in_2xd_window(self) -> bool {
        (ALPHA_WINDOW_LO..=ALPHA_WINDOW_HI).contains(&self.0)
    }

    /// `α ≥ (√7−1)/2`, where the closed form holds for two-qubit states.
    pub fn in_two_qubit_window(self) -> bool {
        self.0 >= ALPHA_WINDOW_LO
    }

    fn near_one(self) -> bool {
        (self.0 - 1.0).abs() < ALPHA_LIMIT_BAND
    }
}

/// Which quantity an [`EntanglementValue`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Concurrence,
    Negativity,
    Cren,
    Crenoa,
    Renyi,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Measure::Concurrence => "concurrence",
            Measure::Negativity => "negativity",
            Measure::Cren => "cren",
            Measure::Crenoa => "crenoa",
            Measure::Renyi => "renyi",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementValue {
    pub value: f64,
    pub measure: Measure,
}

impl EntanglementValue {
    fn new(value: f64, measure: Measure) -> Self {
        Self {
            value: value.max(0.0),
            measure,
        }
    }
}

/// Kind of bipartite system handed to [`e_alpha_pair`]; selects the validity window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSystem {
    TwoQubit,
    QubitQudit,
}

fn check_proper_cut(n: usize, cut: &QubitSubset) -> Result<()> {
    cut.check_within(n)?;
    if cut.len() >= n {
        return domain(format!(
            "cut {{{cut}}} must be a proper subset of the {n} qubits"
        ));
    }
    Ok(())
}

/// `sqrt(2 (1 - Tr rho_cut^2))` for a pure state, evaluated as
/// `2 sqrt(sum_{j<k} s_j^2 s_k^2)` over the Schmidt coefficients to avoid cancellation.
pub fn concurrence_pure(psi: &PureState, cut: &QubitSubset) -> Result<EntanglementValue> {
    check_proper_cut(psi.num_qubits(), cut)?;
    Ok(EntanglementValue::new(
        concurrence_unchecked(psi, cut)?,
        Measure::Concurrence,
    ))
}

pub(crate) fn concurrence_unchecked(psi: &PureState, cut: &QubitSubset) -> Result<f64> {
    let sq: Vec<f64> = psi
        .schmidt_coefficients(cut)?
        .iter()
        .map(|s| s * s)
        .collect();
    let mut cross = 0.0;
    let mut below = 0.0;
    for &p in sq.iter().rev() {
        cross += p * below;
        below += p;
    }
    Ok(2.0 * cross.sqrt())
}

/// `||rho^{T_cut}||_1 - 1`, clamped at zero.
pub fn negativity(rho: &DensityMatrix, cut: &QubitSubset) -> Result<EntanglementValue> {
    let pt = lin::partial_transpose(rho, cut)?;
    Ok(EntanglementValue::new(
        lin::trace_norm(&pt)? - 1.0,
        Measure::Negativity,
    ))
}

/// Negativity of a pure state from its Schmidt coefficients: `(sum_k s_k)^2 - 1`.
pub fn negativity_pure(psi: &PureState, cut: &QubitSubset) -> Result<EntanglementValue> {
    check_proper_cut(psi.num_qubits(), cut)?;
    Ok(EntanglementValue::new(
        negativity_pure_unchecked(psi, cut)?,
        Measure::Negativity,
    ))
}

pub(crate) fn negativity_pure_unchecked(psi: &PureState, cut: &QubitSubset) -> Result<f64> {
    let s = psi.schmidt_coefficients(cut)?;
    // (sum s)^2 - 1 = 2 sum_{j<k} s_j s_k, without subtracting 1.
    let mut cross = 0.0;
    let mut below = 0.0;
    for &x in s.iter().rev() {
        cross += x * below;
        below += x;
    }
    Ok(2.0 * cross)
}

/// Two-qubit concurrence `max(0, l1 - l2 - l3 - l4)` from the spin-flipped state.
///
/// The `l_k` are the singular values of `tau = V^T (σy⊗σy) V` where
/// `rho = V V^†` is the eigen-factorization; they equal the square roots of the
/// eigenvalues of `rho (σy⊗σy) rho^* (σy⊗σy)` without taking square roots of
/// near-zero eigenvalues.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<EntanglementValue> {
    if rho.num_qubits() != 2 {
        return Err(Error::Dimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    let (values, vectors) = lin::eigh(rho.entries())?;
    let kept: Vec<usize> = (0..4)
        .filter(|&k| values[k] > lin::ZERO_EIGENVALUE)
        .collect();
    if kept.is_empty() {
        return Ok(EntanglementValue::new(0.0, Measure::Concurrence));
    }
    let v = CMatrix::from_fn(4, kept.len(), |r, c| {
        vectors[(r, kept[c])] * values[kept[c]].sqrt()
    });
    let tau = v.transpose() * spin_flip() * &v;
    let mut sv: Vec<f64> = tau.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let c = sv[0] - sv[1..].iter().sum::<f64>();
    Ok(EntanglementValue::new(c, Measure::Concurrence))
}

fn spin_flip() -> CMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    CMatrix::from_row_slice(
        4,
        4,
        &[z, z, z, -one, z, z, one, z, z, one, z, z, -one, z, z, z],
    )
}

/// `S_α(rho) = log2(sum λ^α) / (1 - α)`, switching to `-sum λ log2 λ` for `|α - 1| < 1e-6`.
pub fn renyi_entropy(rho: &DensityMatrix, order: RenyiOrder) -> Result<f64> {
    let probs: Vec<f64> = rho
        .spectrum()?
        .probabilities()
        .into_iter()
        .filter(|&p| p > 0.0)
        .collect();
    Ok(renyi_of_probabilities(&probs, order))
}

/// Rényi-α entropy of a probability vector; zero entries are skipped.
pub fn renyi_of_probabilities(probs: &[f64], order: RenyiOrder) -> f64 {
    let alpha = order.alpha();
    let value = if order.near_one() {
        -probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * p.log2())
            .sum::<f64>()
    } else {
        let s: f64 = probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p.powf(alpha))
            .sum();
        s.log2() / (1.0 - alpha)
    };
    value.max(0.0)
}

/// `f_α(x) = log2[((1-√(1-x))/2)^α + ((1+√(1-x))/2)^α] / (1-α)` for `x ∈ [0, 1]`.
pub fn f_alpha(x: f64, order: RenyiOrder) -> Result<f64> {
    const SLACK: f64 = 1e-12;
    if !(-SLACK..=1.0 + SLACK).contains(&x) {
        return domain(format!("f_alpha argument must lie in [0, 1], got {x}"));
    }
    let x = x.clamp(0.0, 1.0);
    let s = (1.0 - x).sqrt();
    // p = (1 - s)/2 without cancellation.
    let p = x / (2.0 * (1.0 + s));
    if p == 0.0 {
        return Ok(0.0);
    }
    let alpha = order.alpha();
    let value = if order.near_one() {
        let q = 1.0 - p;
        -(p * p.log2() + q * q.log2())
    } else {
        // log(p^α + q^α) with q^α - 1 = expm1(α ln(1 - p)).
        let excess = p.powf(alpha) + (alpha * (-p).ln_1p()).exp_m1();
        excess.ln_1p() / std::f64::consts::LN_2 / (1.0 - alpha)
    };
    Ok(value.max(0.0))
}

/// Rényi-α entanglement `f_α(C²)` of a two-qubit or 2⊗d state with squared concurrence
/// `c_squared`. The order must lie in the window where the closed form is valid for `system`.
pub fn e_alpha_pair(
    c_squared: f64,
    order: RenyiOrder,
    system: PairSystem,
) -> Result<EntanglementValue> {
    match system {
        PairSystem::TwoQubit if !order.in_two_qubit_window() => {
            return domain(format!(
                "α = {} is below (√7−1)/2 ≈ {ALPHA_WINDOW_LO:.6}; E_α = f_α(C²) is not established there for two-qubit states",
                order.alpha()
            ))
        }
        PairSystem::QubitQudit if !order.in_2xd_window() => {
            return domain(format!(
                "α = {} is outside [(√7−1)/2, (√13−1)/2] ≈ [{ALPHA_WINDOW_LO:.6}, {ALPHA_WINDOW_HI:.6}] where E_α = f_α(C²) holds for 2⊗d states",
                order.alpha()
            ))
        }
        _ => {}
    }
    Ok(EntanglementValue::new(
        f_alpha(c_squared, order)?,
        Measure::Renyi,
    ))
}
