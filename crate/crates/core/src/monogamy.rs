//! Monogamy inequalities for generalized W-class states.
//!
//! Every check returns a [`BoundReport`] with both sides evaluated from the
//! closed forms in [`crate::wclass`]. The CRENoA of a one-vs-rest cut is taken
//! to be the analytic CREN: each decomposition of the reduced state has the
//! same average negativity, so a numerical maximizer could only approach it
//! from below.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::lin::QubitSubset;
use crate::measures::{e_alpha_pair, f_alpha, PairSystem, RenyiOrder};
use crate::wclass::{one_vs_rest_cren, pair_cren, WClassParams};

/// Margin tolerance: non-strict relations hold for `margin >= -HOLD_TOL`, strict ones for `margin > HOLD_TOL`.
pub const HOLD_TOL: f64 = 1e-10;
/// Pair CRENs at or below this count as vanishing in the negative-power relation.
pub const NONVANISHING_CREN: f64 = 1e-9;
/// Open interval of Rényi orders excluded from figure sweeps around the `α = 1` singularity.
pub const EXCLUDED_ALPHA_BAND: (f64, f64) = (0.99, 1.001);

/// `x / (2^x - 1)`, continued by `1 / ln 2` at `x = 0`.
pub fn coeff(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0 / std::f64::consts::LN_2;
    }
    x / (x * std::f64::consts::LN_2).exp_m1()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `x >= 2`.
    AtLeastTwo,
    /// `x <= 0`.
    NonPositive,
}

/// Exponent of the power-form CRENoA relations. Values in `(0, 2)` are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerExponent {
    x: f64,
    regime: Regime,
}

impl PowerExponent {
    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return domain(format!("exponent must be finite, got {x}"));
        }
        let regime = if x >= 2.0 {
            Regime::AtLeastTwo
        } else if x <= 0.0 {
            Regime::NonPositive
        } else {
            return domain(format!("exponent {x} lies in (0, 2), outside both regimes"));
        };
        Ok(Self { x, regime })
    }

    pub fn value(self) -> f64 {
        self.x
    }

    pub fn regime(self) -> Regime {
        self.regime
    }
}

/// Direction of the inequality `lhs ? rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    AtLeast,
    AtMost,
    StrictlyLess,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
            Relation::StrictlyLess => "<",
        }
    }
}

/// What a report was computed for.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportContext {
    pub relation_name: &'static str,
    pub state_id: String,
    /// Qubits of the reduced state, always including qubit 1.
    pub subset: Vec<usize>,
    /// Exponent `x`/`y` or Rényi order `α`.
    pub parameter: f64,
}

/// One evaluated inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub coefficient: f64,
    pub relation: Relation,
    /// Signed slack: `lhs - rhs` for `>=`, `rhs - lhs` for `<=` and `<`.
    pub margin: f64,
    pub holds: bool,
    pub context: ReportContext,
}

impl BoundReport {
    pub fn new(
        lhs: f64,
        rhs: f64,
        coefficient: f64,
        relation: Relation,
        context: ReportContext,
    ) -> Self {
        let margin = match relation {
            Relation::AtLeast => lhs - rhs,
            Relation::AtMost | Relation::StrictlyLess => rhs - lhs,
        };
        let holds = match relation {
            Relation::StrictlyLess => margin > HOLD_TOL,
            _ => margin >= -HOLD_TOL,
        };
        Self {
            lhs,
            rhs,
            coefficient,
            relation,
            margin,
            holds,
            context,
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{} {}] {:.12} {} {:.12} (coefficient {:.12}, margin {:.3e}): {}",
            self.context.relation_name,
            self.context.state_id,
            cut_label(&self.context.subset),
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            self.coefficient,
            self.margin,
            if self.holds { "holds" } else { "VIOLATED" }
        )
    }
}

/// `A1|A2A3` style label for an anchored subset.
pub fn cut_label(subset: &[usize]) -> String {
    let rest: String = subset
        .iter()
        .filter(|&&q| q != 1)
        .map(|q| format!("A{q}"))
        .collect();
    format!("A1|{rest}")
}

fn anchored(params: &WClassParams, partners: &QubitSubset) -> Result<QubitSubset> {
    partners.check_within(params.n())?;
    if partners.contains(1) {
        return domain(format!(
            "partner set {{{partners}}} must not contain qubit 1"
        ));
    }
    partners.with(1)
}

fn check_anchored(params: &WClassParams, s: &QubitSubset) -> Result<()> {
    s.check_within(params.n())?;
    if !s.contains(1) || s.len() < 2 {
        return domain(format!(
            "subset {{{s}}} must contain qubit 1 and at least one partner"
        ));
    }
    Ok(())
}

fn check_window(order: RenyiOrder) -> Result<()> {
    if !order.in_2xd_window() {
        return domain(format!(
            "α = {} is outside the window [(√7−1)/2, (√13−1)/2] where these relations are established",
            order.alpha()
        ));
    }
    Ok(())
}

fn partner_crens(params: &WClassParams, s: &QubitSubset) -> Result<Vec<(usize, f64)>> {
    s.indices()
        .iter()
        .filter(|&&i| i != 1)
        .map(|&i| Ok((i, pair_cren(params, i)?)))
        .collect()
}

fn context(
    name: &'static str,
    params: &WClassParams,
    s: &QubitSubset,
    parameter: f64,
) -> ReportContext {
    ReportContext {
        relation_name: name,
        state_id: params.id(),
        subset: s.indices().to_vec(),
        parameter,
    }
}

/// Lower bound `[coeff(x) sum_i Ñ(ρ_{A1 A_i})^x]^{1/x}` on the CRENoA of `A1 | partners`
/// for `x >= 2`, with the report `Ñ_a^x >= coeff(x) sum Ñ_a^x(pairs)`.
pub fn crenoa_lower_bound(
    params: &WClassParams,
    partners: &QubitSubset,
    x: PowerExponent,
) -> Result<(f64, BoundReport)> {
    if x.regime() != Regime::AtLeastTwo {
        return domain(format!("lower bound needs x >= 2, got {}", x.value()));
    }
    let s = anchored(params, partners)?;
    let x = x.value();
    let c = coeff(x);
    let sum: f64 = partner_crens(params, &s)?
        .iter()
        .map(|(_, v)| v.powf(x))
        .sum();
    let rhs = c * sum;
    let lhs = one_vs_rest_cren(params, &s)?.powf(x);
    let bound = rhs.powf(1.0 / x);
    Ok((
        bound,
        BoundReport::new(
            lhs,
            rhs,
            c,
            Relation::AtLeast,
            context("crenoa-power-lower", params, &s, x),
        ),
    ))
}

/// Strict relation `Ñ_a^y(A1 | partners) < coeff(y) sum_i Ñ_a^y(ρ_{A1 A_i})` for `y <= 0`.
/// Every pair CREN must be nonvanishing.
pub fn crenoa_upper_check(
    params: &WClassParams,
    partners: &QubitSubset,
    y: PowerExponent,
) -> Result<BoundReport> {
    if y.regime() != Regime::NonPositive {
        return domain(format!("upper check needs y <= 0, got {}", y.value()));
    }
    let s = anchored(params, partners)?;
    let pairs = partner_crens(params, &s)?;
    if let Some((i, v)) = pairs.iter().find(|(_, v)| *v <= NONVANISHING_CREN) {
        return Err(Error::Precondition(format!(
            "pair CREN of (A1, A{i}) is {v:e}; the relation needs every pair CREN to be nonzero"
        )));
    }
    let y = y.value();
    let c = coeff(y);
    let rhs = c * pairs.iter().map(|(_, v)| v.powf(y)).sum::<f64>();
    let lhs = one_vs_rest_cren(params, &s)?.powf(y);
    Ok(BoundReport::new(
        lhs,
        rhs,
        c,
        Relation::StrictlyLess,
        context("crenoa-power-upper", params, &s, y),
    ))
}

/// `Ñ^x(A1 | rest) >= sum_i Ñ^x(ρ_{A1 A_i})` on the full state, `x >= 2`.
pub fn cren_power_monogamy_check(params: &WClassParams, x: f64) -> Result<BoundReport> {
    if !(x >= 2.0 && x.is_finite()) {
        return domain(format!("CREN power monogamy needs x >= 2, got {x}"));
    }
    let all = QubitSubset::range(1, params.n())?;
    let lhs = one_vs_rest_cren(params, &all)?.powf(x);
    let rhs: f64 = partner_crens(params, &all)?
        .iter()
        .map(|(_, v)| v.powf(x))
        .sum();
    Ok(BoundReport::new(
        lhs,
        rhs,
        1.0,
        Relation::AtLeast,
        context("cren-power", params, &all, x),
    ))
}

/// `E_α²(A1 | rest) >= sum_i E_α²(ρ_{A1 A_i})` on the full state.
pub fn sre_lower_check(params: &WClassParams, order: RenyiOrder) -> Result<BoundReport> {
    check_window(order)?;
    let all = QubitSubset::range(1, params.n())?;
    let whole = one_vs_rest_cren(params, &all)?;
    let lhs = e_alpha_pair(whole * whole, order, PairSystem::QubitQudit)?
        .value
        .powi(2);
    let rhs = partner_crens(params, &all)?
        .iter()
        .map(|(_, c)| {
            Ok(e_alpha_pair(c * c, order, PairSystem::TwoQubit)?
                .value
                .powi(2))
        })
        .sum::<Result<f64>>()?;
    Ok(BoundReport::new(
        lhs,
        rhs,
        1.0,
        Relation::AtLeast,
        context("sre-lower", params, &all, order.alpha()),
    ))
}

/// `E_α(A1 | rest) = f_α(sum_i C_i²) <= sum_i f_α(C_i²)` on the full state.
pub fn ealpha_sum_upper(params: &WClassParams, order: RenyiOrder) -> Result<BoundReport> {
    check_window(order)?;
    let all = QubitSubset::range(1, params.n())?;
    let squares: Vec<f64> = partner_crens(params, &all)?
        .iter()
        .map(|(_, c)| c * c)
        .collect();
    let lhs = f_alpha(squares.iter().sum(), order)?;
    let rhs = squares
        .iter()
        .map(|&c2| f_alpha(c2, order))
        .sum::<Result<f64>>()?;
    Ok(BoundReport::new(
        lhs,
        rhs,
        1.0,
        Relation::AtMost,
        context("ealpha-sum", params, &all, order.alpha()),
    ))
}

/// Upper bound `(m - 1) sum_{i in s, i != 1} E_α²(ρ_{A1 A_i})` on `E_α²(A1 | s \ {1})` for the
/// reduced state on `s` (`m = |s|`), with the report comparing it to the closed-form LHS.
pub fn sre_upper_bound(
    params: &WClassParams,
    s: &QubitSubset,
    order: RenyiOrder,
) -> Result<(f64, BoundReport)> {
    check_window(order)?;
    check_anchored(params, s)?;
    let m = s.len() as f64;
    let pair_sum = partner_crens(params, s)?
        .iter()
        .map(|(_, c)| {
            Ok(e_alpha_pair(c * c, order, PairSystem::TwoQubit)?
                .value
                .powi(2))
        })
        .sum::<Result<f64>>()?;
    let bound = (m - 1.0) * pair_sum;
    let cut = one_vs_rest_cren(params, s)?;
    let lhs = e_alpha_pair(cut * cut, order, PairSystem::QubitQudit)?
        .value
        .powi(2);
    Ok((
        bound,
        BoundReport::new(
            lhs,
            bound,
            m - 1.0,
            Relation::AtMost,
            context("sre-upper", params, s, order.alpha()),
        ),
    ))
}

/// Rows `(parameter, value)` with strictly increasing parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub name: String,
    pub rows: Vec<(f64, f64)>,
}

impl Curve {
    pub fn new(name: impl Into<String>, rows: Vec<(f64, f64)>) -> Result<Self> {
        if rows.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return domain("curve parameters must be strictly increasing");
        }
        Ok(Self {
            name: name.into(),
            rows,
        })
    }

    /// Row with the largest value; the first one on ties.
    pub fn argmax(&self) -> Option<(f64, f64)> {
        self.rows
            .iter()
            .copied()
            .fold(None, |best, row| match best {
                Some(b) if b.1 >= row.1 => Some(b),
                _ => Some(row),
            })
    }

    /// Row with the smallest value; the first one on ties.
    pub fn argmin(&self) -> Option<(f64, f64)> {
        self.rows
            .iter()
            .copied()
            .fold(None, |best, row| match best {
                Some(b) if b.1 <= row.1 => Some(b),
                _ => Some(row),
            })
    }

    /// Value at the grid point closest to `param`.
    pub fn value_near(&self, param: f64) -> Option<(f64, f64)> {
        self.rows
            .iter()
            .copied()
            .min_by(|a, b| (a.0 - param).abs().total_cmp(&(b.0 - param).abs()))
    }
}

pub type CustomEval = Box<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// What [`sweep`] evaluates.
pub enum SweepQuery {
    /// CRENoA lower bounds over the exponent `x` for each partner set.
    Fig1 {
        params: WClassParams,
        partners: Vec<QubitSubset>,
        grid: Vec<f64>,
    },
    /// Squared Rényi-α upper bounds over `α` for each partner set.
    Fig2 {
        params: WClassParams,
        partners: Vec<QubitSubset>,
        grid: Vec<f64>,
    },
    Custom {
        name: String,
        grid: Vec<f64>,
        eval: CustomEval,
    },
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|g| !g.is_finite()) {
        return domain("grid points must be finite");
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return domain("grid must be strictly increasing");
    }
    Ok(())
}

/// Rejects grids with points inside the open band `(0.99, 1.001)`.
pub fn check_alpha_grid(grid: &[f64]) -> Result<()> {
    let (lo, hi) = EXCLUDED_ALPHA_BAND;
    if let Some(bad) = grid.iter().find(|&&a| a > lo && a < hi) {
        return domain(format!(
            "grid point α = {bad} lies in the excluded band ({lo}, {hi}) around α = 1"
        ));
    }
    Ok(())
}

/// Evaluates a figure or custom sweep. Curves come out in partner-set order,
/// rows in grid order.
pub fn sweep(query: &SweepQuery) -> Result<Vec<Curve>> {
    match query {
        SweepQuery::Fig1 {
            params,
            partners,
            grid,
        } => {
            check_grid(grid)?;
            partners
                .iter()
                .map(|j| {
                    let rows = grid
                        .iter()
                        .map(|&x| Ok((x, crenoa_lower_bound(params, j, PowerExponent::new(x)?)?.0)))
                        .collect::<Result<Vec<_>>>()?;
                    Curve::new(
                        format!("crenoa_lower_{}", cut_label(j.with(1)?.indices())),
                        rows,
                    )
                })
                .collect()
        }
        SweepQuery::Fig2 {
            params,
            partners,
            grid,
        } => {
            check_grid(grid)?;
            check_alpha_grid(grid)?;
            partners
                .iter()
                .map(|j| {
                    let s = anchored(params, j)?;
                    let rows = grid
                        .iter()
                        .map(|&a| Ok((a, sre_upper_bound(params, &s, RenyiOrder::new(a)?)?.0)))
                        .collect::<Result<Vec<_>>>()?;
                    Curve::new(format!("sre_upper_{}", cut_label(s.indices())), rows)
                })
                .collect()
        }
        SweepQuery::Custom { name, grid, eval } => {
            check_grid(grid)?;
            let rows = grid
                .iter()
                .map(|&p| Ok((p, eval(p)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(vec![Curve::new(name.clone(), rows)?])
        }
    }
}

/// Grid `lo, lo + step, ...` up to `hi`. The first point is always `lo`; a lone point when `hi <= lo`.
pub fn linear_grid(lo: f64, step: f64, hi: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step.is_finite() && step > 0.0) {
        return domain(format!("invalid grid {lo}:{step}:{hi}"));
    }
    let count = if hi > lo {
        ((hi - lo) / step + 1e-9).floor() as usize + 1
    } else {
        1
    };
    if count > 10_000_000 {
        return domain(format!("grid {lo}:{step}:{hi} has too many points"));
    }
    // Snap to 13 significant digits so decimal grids hit their nominal points:
    // 0.823 + 167 * 0.001 must be 0.99, not a hair above it.
    Ok((0..count)
        .map(|k| {
            let v = lo + k as f64 * step;
            format!("{v:.12e}").parse().unwrap_or(v)
        })
        .collect())
}

/// Published values quoted alongside the worked example, kept for side-by-side display only.
pub mod reference {
    /// Concurrence-of-assistance lower bounds at `x = 2` for partner sets `{2,3}` and `{2,3,4}`.
    pub const COA_LOWER_AT_X2: [(&[usize], f64); 2] = [(&[2, 3], 0.249), (&[2, 3, 4], 0.471)];
    /// CRENoA lower bounds at `x = 2` for partner sets `{2,3}` and `{2,3,4}`.
    pub const CRENOA_LOWER_AT_X2: [(&[usize], f64); 2] = [(&[2, 3], 0.203), (&[2, 3, 4], 0.385)];
    /// Order at which the squared Rényi-α upper bounds are quoted.
    pub const SRE_ALPHA: f64 = 0.971;
    /// Quoted squared Rényi-α upper bounds for partner sets `{2,3}` and `{2,3,4}`.
    pub const SRE_UPPER: [(&[usize], f64); 2] = [(&[2, 3], 0.02334), (&[2, 3, 4], 0.24211)];
}

/// How one computed squared Rényi-α curve compares with its quoted value.
#[derive(Debug, Clone, PartialEq)]
pub struct SreComparison {
    pub curve: String,
    pub quoted_alpha: f64,
    pub quoted_value: f64,
    /// Computed curve value at the grid point nearest `quoted_alpha`.
    pub computed_at_quoted_alpha: f64,
    pub argmin_alpha: f64,
    pub min_value: f64,
    /// Minimum over the grid points below `α = 1`, the interval the quoted order lies in.
    pub argmin_below_one: Option<(f64, f64)>,
}

impl SreComparison {
    pub fn agrees(&self, tol: f64) -> bool {
        (self.computed_at_quoted_alpha - self.quoted_value).abs() <= tol
    }
}

/// Pairs each of `curves` (from a Fig2 sweep over partner sets `{2,3}`, `{2,3,4}`)
/// with the quoted values.
pub fn compare_sre_curves(curves: &[Curve]) -> Vec<SreComparison> {
    curves
        .iter()
        .zip(reference::SRE_UPPER.iter())
        .filter_map(|(curve, (_, quoted))| {
            let (_, at) = curve.value_near(reference::SRE_ALPHA)?;
            let (argmin_alpha, min_value) = curve.argmin()?;
            let below: Vec<(f64, f64)> = curve.rows.iter().copied().filter(|r| r.0 < 1.0).collect();
            let argmin_below_one = Curve {
                name: String::new(),
                rows: below,
            }
            .argmin();
            Some(SreComparison {
                curve: curve.name.clone(),
                quoted_alpha: reference::SRE_ALPHA,
                quoted_value: *quoted,
                computed_at_quoted_alpha: at,
                argmin_alpha,
                min_value,
                argmin_below_one,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn set(v: &[usize]) -> QubitSubset {
        QubitSubset::new(v.iter().copied()).unwrap()
    }

    fn example() -> WClassParams {
        WClassParams::worked_example()
    }

    fn order(a: f64) -> RenyiOrder {
        RenyiOrder::new(a).unwrap()
    }

    #[test]
    fn coeff_values() {
        assert_abs_diff_eq!(coeff(2.0), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(coeff(-1.0), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(coeff(0.0), 1.0 / std::f64::consts::LN_2, epsilon = 1e-15);
        assert_abs_diff_eq!(coeff(1e-9), coeff(0.0), epsilon = 1e-9);
        assert_abs_diff_eq!(coeff(-1e-9), coeff(0.0), epsilon = 1e-9);
    }

    #[test]
    fn exponent_regimes() {
        assert_eq!(
            PowerExponent::new(2.0).unwrap().regime(),
            Regime::AtLeastTwo
        );
        assert_eq!(
            PowerExponent::new(0.0).unwrap().regime(),
            Regime::NonPositive
        );
        assert!(PowerExponent::new(1.0).is_err());
        assert!(PowerExponent::new(f64::INFINITY).is_err());
    }

    #[test]
    fn lower_bound_worked_example() {
        let x2 = PowerExponent::new(2.0).unwrap();
        let (b23, r23) = crenoa_lower_bound(&example(), &set(&[2, 3]), x2).unwrap();
        assert_abs_diff_eq!(b23, 0.203, epsilon = 5e-3);
        assert!(r23.holds);
        let (b234, _) = crenoa_lower_bound(&example(), &set(&[2, 3, 4]), x2).unwrap();
        assert_abs_diff_eq!(b234, 0.385, epsilon = 5e-3);
        let (b2, _) = crenoa_lower_bound(&example(), &set(&[2]), x2).unwrap();
        assert_abs_diff_eq!(
            b2,
            (2.0f64 / 3.0).sqrt() * 2.0 / 150f64.sqrt(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(b2, 0.133333, epsilon = 1e-6);
    }

    #[test]
    fn lower_bound_rejects_bad_input() {
        let y = PowerExponent::new(-1.0).unwrap();
        assert!(crenoa_lower_bound(&example(), &set(&[2, 3]), y).is_err());
        let x = PowerExponent::new(2.0).unwrap();
        assert!(crenoa_lower_bound(&example(), &set(&[1, 2]), x).is_err());
        assert!(crenoa_lower_bound(&example(), &set(&[6]), x).is_err());
    }

    #[test]
    fn upper_check_worked_example() {
        let r = crenoa_upper_check(&example(), &set(&[2, 3]), PowerExponent::new(-1.0).unwrap())
            .unwrap();
        let cut = 2.0 / 15f64.sqrt() * (7.0f64 / 30.0).sqrt();
        assert_abs_diff_eq!(r.lhs, 1.0 / cut, epsilon = 1e-12);
        assert_abs_diff_eq!(r.lhs, 4.0089, epsilon = 1e-4);
        let c12 = 2.0 / 150f64.sqrt();
        let c13 = 2.0 * 2f64.sqrt() / 15.0;
        assert_abs_diff_eq!(r.rhs, 2.0 * (1.0 / c12 + 1.0 / c13), epsilon = 1e-12);
        assert_abs_diff_eq!(r.rhs, 22.854, epsilon = 1e-3);
        assert_eq!(r.relation, Relation::StrictlyLess);
        assert!(r.holds);
        assert_abs_diff_eq!(r.margin, 18.845, epsilon = 1e-3);
    }

    #[test]
    fn upper_check_at_zero_exponent() {
        let r = crenoa_upper_check(
            &example(),
            &set(&[2, 3, 4]),
            PowerExponent::new(0.0).unwrap(),
        )
        .unwrap();
        assert_eq!(r.lhs, 1.0);
        assert_abs_diff_eq!(r.rhs, 3.0 / std::f64::consts::LN_2, epsilon = 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn upper_check_needs_nonvanishing_pairs() {
        let p = WClassParams::from_real(0.5, &[0.5, 0.0, 0.5, 0.5]).unwrap();
        let err =
            crenoa_upper_check(&p, &set(&[2, 3]), PowerExponent::new(-1.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("A2")));
        // b_5 = 0 in the worked example.
        assert!(
            crenoa_upper_check(&example(), &set(&[5]), PowerExponent::new(-1.0).unwrap()).is_err()
        );
        assert!(
            crenoa_upper_check(&example(), &set(&[2]), PowerExponent::new(3.0).unwrap()).is_err()
        );
    }

    #[test]
    fn cren_power_relation() {
        let eq = cren_power_monogamy_check(&example(), 2.0).unwrap();
        assert!(eq.margin.abs() < 1e-10);
        let three = cren_power_monogamy_check(&example(), 3.0).unwrap();
        assert!(three.holds && three.margin > 1e-4);
        let vacuum = WClassParams::from_real(1.0, &[0.0, 0.0, 0.0]).unwrap();
        let v = cren_power_monogamy_check(&vacuum, 2.0).unwrap();
        assert_eq!((v.lhs, v.rhs), (0.0, 0.0));
        assert!(v.holds);
        assert!(cren_power_monogamy_check(&example(), 1.5).is_err());
    }

    #[test]
    fn renyi_relations_single_partner_equalities() {
        // Only b_1 and b_3 nonzero besides a.
        let p = WClassParams::from_real(0.6, &[0.6, 0.0, 0.28f64.sqrt()]).unwrap();
        let lower = sre_lower_check(&p, order(0.9)).unwrap();
        assert!(lower.margin.abs() < 1e-12 && lower.holds);
        let sum = ealpha_sum_upper(&p, order(1.2)).unwrap();
        assert!(sum.margin.abs() < 1e-12 && sum.holds);
        let (bound, rep) = sre_upper_bound(&p, &set(&[1, 3]), order(0.9)).unwrap();
        assert_abs_diff_eq!(bound, rep.lhs, epsilon = 1e-12);
    }

    #[test]
    fn renyi_relations_worked_example() {
        let p = example();
        assert!(sre_lower_check(&p, order(0.9)).unwrap().holds);
        let sum = ealpha_sum_upper(&p, order(0.9)).unwrap();
        assert!(sum.holds && sum.margin > 0.0);
        let (_, rep) = sre_upper_bound(&p, &set(&[1, 2, 3, 4]), order(0.9)).unwrap();
        assert!(rep.holds && rep.margin > 0.0);
        assert_eq!(rep.coefficient, 3.0);

        let vacuum = WClassParams::from_real(1.0, &[0.0, 0.0, 0.0]).unwrap();
        let zero = ealpha_sum_upper(&vacuum, order(0.9)).unwrap();
        assert_eq!((zero.lhs, zero.rhs), (0.0, 0.0));
    }

    #[test]
    fn renyi_relations_reject_orders_outside_window() {
        let p = example();
        assert!(sre_lower_check(&p, order(0.8)).is_err());
        assert!(ealpha_sum_upper(&p, order(1.31)).is_err());
        assert!(sre_upper_bound(&p, &set(&[1, 2]), order(2.0)).is_err());
        assert!(sre_upper_bound(&p, &set(&[2, 3]), order(0.9)).is_err());
    }

    #[test]
    fn sre_upper_bound_uses_quoted_pair_arguments() {
        let a = 0.9;
        let e = |s_sq: f64| {
            let s = s_sq.sqrt();
            ((((1.0 - s) / 2.0).powf(a) + ((1.0 + s) / 2.0).powf(a)).log2() / (1.0 - a)).powi(2)
        };
        let expect = 2.0 * (e(73.0 / 75.0) + e(217.0 / 225.0));
        let (bound, _) = sre_upper_bound(&example(), &set(&[1, 2, 3]), order(a)).unwrap();
        assert_abs_diff_eq!(bound, expect, epsilon = 1e-12);
    }

    #[test]
    fn fig1_sweep_peaks_at_two() {
        let grid = linear_grid(2.0, 0.1, 10.0).unwrap();
        assert_eq!(grid.len(), 81);
        let curves = sweep(&SweepQuery::Fig1 {
            params: example(),
            partners: vec![set(&[2, 3]), set(&[2, 3, 4])],
            grid,
        })
        .unwrap();
        assert_eq!(curves.len(), 2);
        assert_eq!(curves[0].name, "crenoa_lower_A1|A2A3");
        for c in &curves {
            assert_eq!(c.argmax().unwrap().0, 2.0);
            assert!(c.rows.windows(2).all(|w| w[1].1 < w[0].1));
        }
    }

    #[test]
    fn fig2_sweep_decreases_and_respects_band() {
        let grid = linear_grid(0.823, 0.001, 0.99).unwrap();
        let curves = sweep(&SweepQuery::Fig2 {
            params: example(),
            partners: vec![set(&[2, 3]), set(&[2, 3, 4])],
            grid,
        })
        .unwrap();
        for c in &curves {
            assert!(c.rows.windows(2).all(|w| w[1].1 < w[0].1));
        }
        let bad = sweep(&SweepQuery::Fig2 {
            params: example(),
            partners: vec![set(&[2, 3])],
            grid: vec![0.95, 0.995],
        });
        assert!(bad.is_err());
    }

    #[test]
    fn empty_partner_list_gives_no_curves() {
        let curves = sweep(&SweepQuery::Fig1 {
            params: example(),
            partners: vec![],
            grid: vec![2.0, 3.0],
        })
        .unwrap();
        assert!(curves.is_empty());
    }

    #[test]
    fn custom_sweep_and_grid_checks() {
        let curves = sweep(&SweepQuery::Custom {
            name: "coeff".into(),
            grid: vec![-1.0, 0.0, 2.0],
            eval: Box::new(|x| Ok(coeff(x))),
        })
        .unwrap();
        assert_abs_diff_eq!(curves[0].rows[0].1, 2.0, epsilon = 1e-15);
        let unsorted = sweep(&SweepQuery::Custom {
            name: "c".into(),
            grid: vec![1.0, 1.0],
            eval: Box::new(Ok),
        });
        assert!(unsorted.is_err());
    }

    #[test]
    fn linear_grid_shapes() {
        assert_eq!(linear_grid(2.0, 2.0, 1.0).unwrap(), vec![2.0]);
        assert_eq!(linear_grid(0.0, 0.5, 1.0).unwrap(), vec![0.0, 0.5, 1.0]);
        let g = linear_grid(0.823, 0.001, 0.99).unwrap();
        assert_eq!(g.len(), 168);
        assert_eq!(*g.last().unwrap(), 0.99);
        assert!(g.contains(&0.971));
        assert!(check_alpha_grid(&g).is_ok());
        assert!(linear_grid(0.0, 0.0, 1.0).is_err());
        assert!(linear_grid(0.0, -1.0, 1.0).is_err());
    }
}
