//! Generalized W-class states `a|0...0> + b_1|10...0> + ... + b_n|0...01>` and
//! the closed forms for their reduced states and entanglement.
//!
//! Amplitude `b_i` sits on the basis state with qubit `i` excited. Tracing out
//! any set of qubits leaves a rank-2 state `|x_S><x_S| + |y_S><y_S|`, where
//! `|x_S>` is the W-class state restricted to the kept qubits and `|y_S>` is
//! the vacuum weighted by the norm of the discarded `b_k`. Every pure-state
//! decomposition of that mixture has the same average negativity across the
//! cut separating qubit 1, which is why CREN and its dual coincide here.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{domain, Result};
use crate::lin::{CMatrix, CVector, DensityMatrix, PureState, QubitSubset};

/// Largest deviation from `|a|^2 + sum |b_i|^2 = 1` accepted on input.
pub const INPUT_NORM_TOL: f64 = 1e-9;

/// Amplitudes `(a, b_1..b_n)` of a generalized W-class state.
#[derive(Debug, Clone, PartialEq)]
pub struct WClassParams {
    a: Complex64,
    b: Vec<Complex64>,
}

impl WClassParams {
    /// Accepts amplitudes whose squared norm is within [`INPUT_NORM_TOL`] of 1 and
    /// rescales them so the normalization holds to machine precision.
    pub fn new(a: Complex64, b: Vec<Complex64>) -> Result<Self> {
        if b.len() < 2 {
            return domain(format!(
                "W-class states need n >= 2 qubits, got {}",
                b.len()
            ));
        }
        if !a.is_finite() || b.iter().any(|z| !z.is_finite()) {
            return domain("amplitudes must be finite");
        }
        let norm_sq = a.norm_sqr() + b.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if (norm_sq - 1.0).abs() > INPUT_NORM_TOL {
            return domain(format!(
                "|a|^2 + sum |b_i|^2 = {norm_sq}, expected 1 within {INPUT_NORM_TOL:e}"
            ));
        }
        let scale = norm_sq.sqrt();
        Ok(Self {
            a: a / scale,
            b: b.into_iter().map(|z| z / scale).collect(),
        })
    }

    /// Real-amplitude convenience constructor.
    pub fn from_real(a: f64, b: &[f64]) -> Result<Self> {
        Self::new(a.into(), b.iter().map(|&x| x.into()).collect())
    }

    /// The five-qubit worked example: `a = b_2 = 1/sqrt(10)`, `b_1 = 1/sqrt(15)`,
    /// `b_3 = sqrt(2/15)`, `b_4 = sqrt(3/5)`, `b_5 = 0`.
    pub fn worked_example() -> Self {
        Self::from_real(
            1.0 / 10f64.sqrt(),
            &[
                1.0 / 15f64.sqrt(),
                1.0 / 10f64.sqrt(),
                (2.0f64 / 15.0).sqrt(),
                (3.0f64 / 5.0).sqrt(),
                0.0,
            ],
        )
        .expect("example amplitudes are normalized")
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    /// `b_i` for the 1-based qubit label `i`.
    pub fn b_at(&self, i: usize) -> Complex64 {
        self.b[i - 1]
    }

    /// Short deterministic identifier derived from the amplitude bits.
    pub fn id(&self) -> String {
        // FNV-1a over the raw bit patterns.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let parts = std::iter::once(self.a).chain(self.b.iter().copied());
        for z in parts {
            for bits in [z.re.to_bits(), z.im.to_bits()] {
                for byte in bits.to_le_bytes() {
                    h ^= byte as u64;
                    h = h.wrapping_mul(0x100_0000_01b3);
                }
            }
        }
        format!("w{}-{:08x}", self.n(), h >> 32)
    }

    fn check_pair_index(&self, i: usize) -> Result<()> {
        if i < 2 || i > self.n() {
            return domain(format!(
                "pair index must satisfy 2 <= i <= {}, got {i}",
                self.n()
            ));
        }
        Ok(())
    }

    fn check_anchored(&self, s: &QubitSubset) -> Result<()> {
        s.check_within(self.n())?;
        if !s.contains(1) {
            return domain(format!("subset {{{s}}} must contain qubit 1"));
        }
        if s.len() < 2 {
            return domain("subset must contain qubit 1 and at least one partner");
        }
        Ok(())
    }
}

/// The state vector of `params`.
pub fn make_wclass(params: &WClassParams) -> PureState {
    let n = params.n();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = params.a;
    for (k, bk) in params.b.iter().enumerate() {
        amps[1 << (n - 1 - k)] = *bk;
    }
    PureState::new(n, amps).expect("W-class params are normalized")
}

/// The unnormalized vectors `|x_S>` and `|y_S>` on the qubits of `s`, with the
/// qubits renumbered by their position in `s`.
pub fn subset_vectors(params: &WClassParams, s: &QubitSubset) -> Result<(CVector, CVector)> {
    params.check_anchored(s)?;
    let m = s.len();
    let mut x = CVector::zeros(1 << m);
    x[0] = params.a;
    for (pos, &q) in s.indices().iter().enumerate() {
        x[1 << (m - 1 - pos)] = params.b_at(q);
    }
    let rest: f64 = s
        .complement(params.n())
        .iter()
        .map(|&k| params.b_at(k).norm_sqr())
        .sum();
    let mut y = CVector::zeros(1 << m);
    y[0] = Complex64::new(rest.sqrt(), 0.0);
    Ok((x, y))
}

/// Reduced state of qubits `s` (which must include qubit 1) in closed form.
pub fn reduced_subset(params: &WClassParams, s: &QubitSubset) -> Result<DensityMatrix> {
    let (x, y) = subset_vectors(params, s)?;
    let entries: CMatrix = &x * x.adjoint() + &y * y.adjoint();
    Ok(DensityMatrix::from_entries_unchecked(s.len(), entries))
}

/// Two-qubit reduced state of qubits `(1, i)` in closed form.
pub fn reduced_pair(params: &WClassParams, i: usize) -> Result<DensityMatrix> {
    params.check_pair_index(i)?;
    reduced_subset(params, &QubitSubset::new([1, i])?)
}

/// `2|b_1||b_i|`: the CREN, and equally its dual, of the pair `(1, i)`.
pub fn pair_cren(params: &WClassParams, i: usize) -> Result<f64> {
    params.check_pair_index(i)?;
    Ok(2.0 * params.b_at(1).norm() * params.b_at(i).norm())
}

/// `2|b_1| sqrt(sum_{i in s, i != 1} |b_i|^2)`: the CREN of the cut `1 | s \ {1}`
/// of the reduced state on `s`. For `s` covering every qubit this is the
/// concurrence of the pure state across `1 | rest`.
pub fn one_vs_rest_cren(params: &WClassParams, s: &QubitSubset) -> Result<f64> {
    params.check_anchored(s)?;
    let partners: f64 = s
        .indices()
        .iter()
        .filter(|&&i| i != 1)
        .map(|&i| params.b_at(i).norm_sqr())
        .sum();
    Ok(2.0 * params.b_at(1).norm() * partners.sqrt())
}

/// Random W-class amplitudes, deterministic in `seed`. Squared moduli are a
/// normalized vector of squared standard Gaussians over `(a, b_1..b_n)`;
/// phases are uniform.
pub fn sample_random(seed: u64, n: usize) -> Result<WClassParams> {
    if n < 2 {
        return domain(format!("W-class states need n >= 2 qubits, got {n}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g: Vec<f64> = (0..=n)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect();
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    let amps: Vec<Complex64> = g
        .iter()
        .map(|x| {
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(x.abs() / norm, phase)
        })
        .collect();
    WClassParams::new(amps[0], amps[1..].to_vec())
}
