//! Seeded randomized suites that check every closed form against its oracle
//! and every monogamy relation across a corpus of random W-class states.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convexroof::{self, average_entanglement, hjw_ensemble, Direction, MixingMatrix};
use crate::error::{domain, Result};
use crate::lin::{random_pure_state, QubitSubset};
use crate::measures::{
    self, concurrence_pure, f_alpha, negativity, renyi_of_probabilities, wootters_concurrence,
    Measure, RenyiOrder, ALPHA_WINDOW_HI, ALPHA_WINDOW_LO,
};
use crate::monogamy::{self, BoundReport, PowerExponent};
use crate::wclass::{
    self, make_wclass, one_vs_rest_cren, pair_cren, reduced_pair, reduced_subset, WClassParams,
};

pub const CORPUS_SIZE: usize = 500;
pub const SUBSETS_PER_STATE: usize = 5;
pub const DECOMPOSITIONS_PER_PAIR: usize = 20;
pub const OPTIMIZER_SPOT_CHECKS: usize = 50;
pub const IDENTITY_STATES: usize = 1000;
pub const ALPHA_SAMPLES: usize = 20;
pub const FALPHA_GRID: usize = 1000;

const POWER_EXPONENTS: [f64; 5] = [2.0, 2.5, 3.0, 5.0, 10.0];
const NEGATIVE_EXPONENTS: [f64; 5] = [-5.0, -2.0, -1.0, -0.1, 0.0];
const CREN_POWER_EXPONENTS: [f64; 8] = [2.0, 2.25, 2.5, 3.0, 4.0, 5.0, 7.5, 10.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Lemma1,
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Eq1,
    Eq3,
    Identities,
    FAlpha,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Lemma1,
        Suite::Thm1,
        Suite::Thm2,
        Suite::Thm3,
        Suite::Thm4,
        Suite::Eq1,
        Suite::Eq3,
        Suite::Identities,
        Suite::FAlpha,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Thm4 => "thm4",
            Suite::Eq1 => "eq1",
            Suite::Eq3 => "eq3",
            Suite::Identities => "identities",
            Suite::FAlpha => "falpha",
        }
    }

    /// Resolves a suite name; `all` expands to every suite.
    pub fn parse(name: &str) -> Option<Vec<Suite>> {
        if name == "all" {
            return Some(Self::ALL.to_vec());
        }
        Self::ALL
            .iter()
            .find(|s| s.name() == name)
            .map(|s| vec![*s])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Named tolerances used by the suites.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Spread of average negativity across decompositions of one state.
    pub constancy: f64,
    /// Agreement between optimizer extremes and the closed form.
    pub optimizer: f64,
    /// `|C - N|` on random pure states.
    pub concurrence_negativity: f64,
    /// Spin-flip concurrence against the closed-form pair CREN.
    pub wootters: f64,
    /// `C²` additivity.
    pub additivity: f64,
    /// Allowed negative forward difference of `f_α`.
    pub monotone: f64,
    /// Allowed positive second difference of `f_α`.
    pub concave: f64,
    /// `f_α(0) = 0` and `f_α(1) = 1`.
    pub endpoint: f64,
    /// Continuity across the `α = 1` limit branch.
    pub limit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            constancy: 1e-9,
            optimizer: 1e-6,
            concurrence_negativity: 1e-10,
            wootters: 1e-9,
            additivity: 1e-10,
            monotone: 1e-10,
            concave: 1e-8,
            endpoint: 1e-12,
            limit: 1e-6,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 9] = [
        "constancy",
        "optimizer",
        "concurrence_negativity",
        "wootters",
        "additivity",
        "monotone",
        "concave",
        "endpoint",
        "limit",
    ];

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value >= 0.0 && value.is_finite()) {
            return domain(format!(
                "tolerance {name} must be a nonnegative finite real"
            ));
        }
        let slot = match name {
            "constancy" => &mut self.constancy,
            "optimizer" => &mut self.optimizer,
            "concurrence_negativity" => &mut self.concurrence_negativity,
            "wootters" => &mut self.wootters,
            "additivity" => &mut self.additivity,
            "monotone" => &mut self.monotone,
            "concave" => &mut self.concave,
            "endpoint" => &mut self.endpoint,
            "limit" => &mut self.limit,
            other => {
                return domain(format!(
                    "unknown tolerance {other:?}; expected one of {}",
                    Self::NAMES.join(", ")
                ))
            }
        };
        *slot = value;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    /// Random mixing matrices scored per optimizer call.
    pub budget: usize,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            budget: convexroof::MIN_BUDGET,
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn new(seed: u64, budget: usize) -> Result<Self> {
        if budget < convexroof::MIN_BUDGET {
            return domain(format!(
                "budget must be at least {}, got {budget}",
                convexroof::MIN_BUDGET
            ));
        }
        Ok(Self {
            seed,
            budget,
            tolerances: Tolerances::default(),
        })
    }
}

/// Whether [`SuiteReport::worst`] is a smallest margin or a largest deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorstKind {
    Margin,
    Deviation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub failures: usize,
    pub worst_kind: WorstKind,
    pub worst: f64,
    pub first_failure: Option<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.worst_kind {
            WorstKind::Margin => "worst margin",
            WorstKind::Deviation => "worst deviation",
        };
        write!(
            f,
            "{:<11} {} {}/{} passed, {kind} {:.3e}",
            self.suite.name(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks - self.failures,
            self.checks,
            self.worst
        )?;
        for note in &self.notes {
            write!(f, "\n            {note}")?;
        }
        if let Some(first) = &self.first_failure {
            write!(f, "\n            first failure: {first}")?;
        }
        Ok(())
    }
}

struct Tally {
    checks: usize,
    failures: usize,
    kind: WorstKind,
    worst: f64,
    first_failure: Option<String>,
}

impl Tally {
    fn new(kind: WorstKind) -> Self {
        Self {
            checks: 0,
            failures: 0,
            kind,
            worst: match kind {
                WorstKind::Margin => f64::INFINITY,
                WorstKind::Deviation => 0.0,
            },
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn deviation(&mut self, dev: f64, tol: f64, describe: impl FnOnce() -> String) {
        self.worst = self.worst.max(dev);
        self.record(dev <= tol, || {
            format!("{} (deviation {dev:e} > {tol:e})", describe())
        });
    }

    fn margin(&mut self, report: &BoundReport) {
        self.worst = self.worst.min(report.margin);
        self.record(report.holds, || report.to_string());
    }

    fn finish(self, suite: Suite, notes: Vec<String>) -> SuiteReport {
        SuiteReport {
            suite,
            checks: self.checks,
            failures: self.failures,
            worst_kind: self.kind,
            worst: self.worst,
            first_failure: self.first_failure,
            notes,
        }
    }
}

/// One state of the shared corpus with its random partner sets (subsets of `2..=n`).
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub params: WClassParams,
    pub partners: Vec<QubitSubset>,
}

/// Random nonempty subset of `2..=n`.
fn random_partners<R: Rng>(rng: &mut R, n: usize) -> QubitSubset {
    loop {
        let picked: Vec<usize> = (2..=n).filter(|_| rng.gen_bool(0.5)).collect();
        if let Ok(s) = QubitSubset::new(picked) {
            return s;
        }
    }
}

/// `CORPUS_SIZE` random W-class states with 3 to 7 qubits, deterministic in `seed`.
pub fn corpus(seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..CORPUS_SIZE)
        .map(|_| {
            let n = rng.gen_range(3..=7);
            let params = wclass::sample_random(rng.gen(), n).expect("n >= 3");
            let partners = (0..SUBSETS_PER_STATE)
                .map(|_| random_partners(&mut rng, n))
                .collect();
            CorpusEntry { params, partners }
        })
        .collect()
}

/// `ALPHA_SAMPLES` evenly spaced orders spanning the 2⊗d window.
pub fn window_orders() -> Vec<RenyiOrder> {
    (0..ALPHA_SAMPLES)
        .map(|k| {
            let t = k as f64 / (ALPHA_SAMPLES - 1) as f64;
            RenyiOrder::new(ALPHA_WINDOW_LO + t * (ALPHA_WINDOW_HI - ALPHA_WINDOW_LO))
                .expect("positive")
        })
        .collect()
}

fn sub_seed(seed: u64, a: u64, b: u64) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ a.wrapping_mul(0xbf58_476d_1ce4_e5b9)
        ^ b.wrapping_mul(0x94d0_49bb_1331_11eb)
}

/// Runs one suite.
pub fn run_suite(suite: Suite, config: &RunConfig) -> Result<SuiteReport> {
    match suite {
        Suite::Lemma1 => lemma1(config),
        Suite::Thm1 => thm1(config),
        Suite::Thm2 => thm2(config),
        Suite::Thm3 => thm3(config),
        Suite::Thm4 => thm4(config),
        Suite::Eq1 => eq1(config),
        Suite::Eq3 => eq3(config),
        Suite::Identities => identities(config),
        Suite::FAlpha => falpha(config),
    }
}

/// Decomposition-independence of the average negativity of `rho` across `cut`:
/// `DECOMPOSITIONS_PER_PAIR` random mixing matrices plus both optimizer extremes.
#[allow(clippy::too_many_arguments)]
fn check_constant_average(
    tally: &mut Tally,
    rho: &crate::lin::DensityMatrix,
    cut: &QubitSubset,
    target: f64,
    seed: u64,
    budget: usize,
    tol: &Tolerances,
    label: &dyn Fn() -> String,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = rho
        .spectrum()?
        .probabilities()
        .iter()
        .filter(|&&p| p > 0.0)
        .count();
    let mut worst = 0.0f64;
    for _ in 0..DECOMPOSITIONS_PER_PAIR {
        let k = rng.gen_range(rank..=rank + convexroof::EXTRA_MEMBERS);
        let u = MixingMatrix::random(&mut rng, k, rank)?;
        let ens = hjw_ensemble(rho, &u)?;
        let avg = average_entanglement(&ens, cut, Measure::Negativity)?;
        worst = worst.max((avg - target).abs());
    }
    tally.deviation(worst, tol.constancy, || {
        format!("{} decompositions", label())
    });

    let lo = convexroof::optimize(rho, cut, Measure::Negativity, Direction::Min, budget, seed)?;
    let hi = convexroof::optimize(
        rho,
        cut,
        Measure::Negativity,
        Direction::Max,
        budget,
        seed ^ 1,
    )?;
    let spread = (hi.value - lo.value)
        .abs()
        .max((hi.value - target).abs())
        .max((lo.value - target).abs());
    tally.deviation(spread, tol.optimizer, || {
        format!(
            "{} optimizer min {} max {} target {target}",
            label(),
            lo.value,
            hi.value
        )
    });
    Ok(())
}

fn lemma1(config: &RunConfig) -> Result<SuiteReport> {
    let tol = &config.tolerances;
    let mut tally = Tally::new(WorstKind::Deviation);
    let mut pairs = 0usize;
    let cut = QubitSubset::single(1)?;
    for (k, entry) in corpus(config.seed).iter().enumerate() {
        let p = &entry.params;
        for i in 2..=p.n() {
            pairs += 1;
            let rho = reduced_pair(p, i)?;
            let target = pair_cren(p, i)?;
            let label = || format!("state {k} ({}) pair (1,{i})", p.id());
            check_constant_average(
                &mut tally,
                &rho,
                &cut,
                target,
                sub_seed(config.seed, k as u64, i as u64),
                config.budget,
                tol,
                &label,
            )?;
        }
    }
    Ok(tally.finish(
        Suite::Lemma1,
        vec![format!(
            "{CORPUS_SIZE} states, {pairs} pairs, {} random decompositions, {} optimizer runs",
            pairs * DECOMPOSITIONS_PER_PAIR,
            pairs * 2
        )],
    ))
}

fn thm1(config: &RunConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(WorstKind::Margin);
    let corpus = corpus(config.seed);
    for entry in &corpus {
        for j in &entry.partners {
            for x in POWER_EXPONENTS {
                let (_, report) =
                    monogamy::crenoa_lower_bound(&entry.params, j, PowerExponent::new(x)?)?;
                tally.margin(&report);
            }
        }
    }

    // The one-vs-rest closed form on reduced mixtures, against the convex-roof oracle.
    let mut oracle = Tally::new(WorstKind::Deviation);
    let cut = QubitSubset::single(1)?;
    for (k, entry) in corpus.iter().take(OPTIMIZER_SPOT_CHECKS).enumerate() {
        let p = &entry.params;
        let partners: Vec<usize> = entry.partners[0]
            .indices()
            .iter()
            .copied()
            .take(3)
            .collect();
        let s = QubitSubset::new(partners)?.with(1)?;
        let rho = reduced_subset(p, &s)?;
        let target = one_vs_rest_cren(p, &s)?;
        let label = || format!("state {k} ({}) subset {{{s}}}", p.id());
        check_constant_average(
            &mut oracle,
            &rho,
            &cut,
            target,
            sub_seed(config.seed, k as u64, 0xA1),
            config.budget,
            &config.tolerances,
            &label,
        )?;
    }
    let note = format!(
        "{} bound checks; one-vs-rest oracle: {}/{} passed, worst deviation {:.3e}",
        tally.checks,
        oracle.checks - oracle.failures,
        oracle.checks,
        oracle.worst
    );
    let oracle_failure = oracle.first_failure.clone();
    let mut report = tally.finish(Suite::Thm1, vec![note]);
    report.checks += oracle.checks;
    report.failures += oracle.failures;
    if report.first_failure.is_none() {
        report.first_failure = oracle_failure;
    }
    Ok(report)
}

fn thm2(config: &RunConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(WorstKind::Margin);
    let mut skipped = 0usize;
    for entry in corpus(config.seed) {
        for j in &entry.partners {
            let vanishing = j.indices().iter().any(|&i| {
                pair_cren(&entry.params, i).map_or(true, |v| v <= monogamy::NONVANISHING_CREN)
            });
            if vanishing {
                skipped += 1;
                continue;
            }
            for y in NEGATIVE_EXPONENTS {
                let report =
                    monogamy::crenoa_upper_check(&entry.params, j, PowerExponent::new(y)?)?;
                tally.margin(&report);
            }
        }
    }
    Ok(tally.finish(
        Suite::Thm2,
        vec![format!(
            "{skipped} subsets skipped for a vanishing pair CREN"
        )],
    ))
}

fn thm3(config: &RunConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(WorstKind::Margin);
    let orders = window_orders();
    for entry in corpus(config.seed) {
        for &order in &orders {
            tally.margin(&monogamy::ealpha_sum_upper(&entry.params, order)?);
        }
    }
    Ok(tally.finish(Suite::Thm3, vec![]))
}

fn thm4(config: &RunConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(WorstKind::Margin);
    let orders = window_orders();
    for entry in corpus(config.seed) {
        let n = entry.params.n();
        let mut subsets: Vec<QubitSubset> = entry
            .partners
            .iter()
            .map(|j| j.with(1))
            .collect::<Result<_>>()?;
        subsets.push(QubitSubset::range(1, n)?);
        for s in &subsets {
            for &order in &orders {
                let (_, report) = monogamy::sre_upper_bound(&entry.params, s, order)?;
                tally.margin(&report);
            }
        }
    }
    Ok(tally.finish(Suite::Thm4, vec![]))
}

fn eq1(config: &RunConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(WorstKind::Margin);
    let mut worst_equality = 0.0f64;
    let mut equality_failures = 0usize;
    for entry in corpus(config.seed) {
        for x in CREN_POWER_EXPONENTS {
            let report = monogamy::cren_power_monogamy_check(&entry.params, x)?;
            tally.margin(&report);
            if x == 2.0 {
                worst_equality = worst_equality.max(report.margin.abs());
                let ok = report.margin.abs() <= config.tolerances.additivity;
                if !ok {
                    equality_failures += 1;
                }
                tally.record(ok, || format!("x = 2 is not an equality: {report}"));
            }
        }
    }
    Ok(tally.finish(
        Suite::Eq1,
        vec![format!(
            "x = 2 equality: worst |lhs - rhs| {worst_equality:.3e}, {equality_failures} failures"
        )],
    ))
}

fn eq3(config: &RunConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(WorstKind::Margin);
    let orders = window_orders();
    for entry in corpus(config.seed) {
        for &order in &orders {
            tally.margin(&monogamy::sre_lower_check(&entry.params, order)?);
        }
    }
    Ok(tally.finish(Suite::Eq3, vec![]))
}

fn identities(config: &RunConfig) -> Result<SuiteReport> {
    let tol = &config.tolerances;
    let mut tally = Tally::new(WorstKind::Deviation);
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(config.seed, 0x1D, 0));
    let cut = QubitSubset::single(1)?;

    let mut worst_cn = 0.0f64;
    for k in 0..IDENTITY_STATES {
        // 2⊗2, 2⊗4 and 2⊗8.
        let n = 2 + k % 3;
        let psi = random_pure_state(&mut rng, n);
        let c = concurrence_pure(&psi, &cut)?.value;
        let neg = negativity(&psi.density(), &cut)?.value;
        worst_cn = worst_cn.max((c - neg).abs());
        tally.deviation((c - neg).abs(), tol.concurrence_negativity, || {
            format!(
                "random 2x{} pure state #{k}: C = {c}, N = {neg}",
                1 << (n - 1)
            )
        });
    }

    let mut worst_w = 0.0f64;
    let mut worst_add = 0.0f64;
    for (k, entry) in corpus(config.seed).iter().enumerate() {
        let p = &entry.params;
        let mut sum_sq = 0.0;
        for i in 2..=p.n() {
            let analytic = pair_cren(p, i)?;
            sum_sq += analytic * analytic;
            let w = wootters_concurrence(&reduced_pair(p, i)?)?.value;
            worst_w = worst_w.max((w - analytic).abs());
            tally.deviation((w - analytic).abs(), tol.wootters, || {
                format!("state {k} pair (1,{i}): spin-flip {w} vs closed form {analytic}")
            });
        }
        let all = QubitSubset::range(1, p.n())?;
        let whole = one_vs_rest_cren(p, &all)?;
        let lin_c = measures::concurrence_pure(&make_wclass(p), &cut)?.value;
        let dev = (whole * whole - sum_sq)
            .abs()
            .max((lin_c * lin_c - whole * whole).abs());
        worst_add = worst_add.max(dev);
        tally.deviation(dev, tol.additivity, || format!("state {k}: C² additivity"));
    }
    Ok(tally.finish(
        Suite::Identities,
        vec![
            format!("|C - N| on {IDENTITY_STATES} pure states: worst {worst_cn:.3e}"),
            format!("spin-flip vs closed form: worst {worst_w:.3e}"),
            format!("C² additivity: worst {worst_add:.3e}"),
        ],
    ))
}

fn falpha(config: &RunConfig) -> Result<SuiteReport> {
    let tol = &config.tolerances;
    let mut tally = Tally::new(WorstKind::Deviation);
    let xs: Vec<f64> = (0..FALPHA_GRID)
        .map(|k| k as f64 / (FALPHA_GRID - 1) as f64)
        .collect();
    for order in window_orders() {
        let a = order.alpha();
        let f: Vec<f64> = xs
            .iter()
            .map(|&x| f_alpha(x, order))
            .collect::<Result<_>>()?;
        let worst_drop = f.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
        tally.deviation(worst_drop, tol.monotone, || {
            format!("f_α not monotone at α = {a}")
        });
        let worst_convex = f
            .windows(3)
            .map(|w| w[0] - 2.0 * w[1] + w[2])
            .fold(0.0, f64::max);
        tally.deviation(worst_convex, tol.concave, || {
            format!("f_α not concave at α = {a}")
        });
        let ends = f[0].abs().max((f[FALPHA_GRID - 1] - 1.0).abs());
        tally.deviation(ends, tol.endpoint, || format!("f_α endpoints at α = {a}"));
    }

    // Continuity across the α = 1 limit branch, on both sides of the band.
    let one = RenyiOrder::new(1.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(config.seed, 0xFA, 0));
    for &delta in &[1e-7, -1e-7, 2e-6, -2e-6] {
        let near = RenyiOrder::new(1.0 + delta)?;
        let worst = xs
            .iter()
            .map(|&x| Ok((f_alpha(x, near)? - f_alpha(x, one)?).abs()))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        tally.deviation(worst, tol.limit, || {
            format!("f_α limit continuity at α = 1{delta:+e}")
        });
        for _ in 0..50 {
            let probs = random_probabilities(&mut rng, 4);
            let dev =
                (renyi_of_probabilities(&probs, near) - renyi_of_probabilities(&probs, one)).abs();
            tally.deviation(dev, tol.limit, || {
                format!("S_α limit continuity at α = 1{delta:+e}")
            });
        }
    }

    // Rényi entropy is nonincreasing in α.
    let alphas: Vec<RenyiOrder> = (0..26)
        .map(|k| RenyiOrder::new(0.5 + 0.1 * k as f64))
        .collect::<Result<_>>()?;
    for _ in 0..200 {
        let len = rng.gen_range(2..9);
        let probs = random_probabilities(&mut rng, len);
        let s: Vec<f64> = alphas
            .iter()
            .map(|&a| renyi_of_probabilities(&probs, a))
            .collect();
        let rise = s.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        tally.deviation(rise, tol.monotone, || {
            format!("S_α increases in α for {probs:?}")
        });
    }
    Ok(tally.finish(Suite::FAlpha, vec![]))
}

fn random_probabilities<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|r| r / total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(vec![s]));
        }
        assert_eq!(Suite::parse("all").unwrap().len(), Suite::ALL.len());
        assert_eq!(Suite::parse("bogus"), None);
    }

    #[test]
    fn tolerance_overrides() {
        let mut t = Tolerances::default();
        t.set("wootters", 1e-6).unwrap();
        assert_eq!(t.wootters, 1e-6);
        assert!(t.set("nope", 1.0).is_err());
        assert!(t.set("limit", -1.0).is_err());
        assert!(RunConfig::new(0, 99).is_err());
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = corpus(3);
        let b = corpus(3);
        assert_eq!(a.len(), CORPUS_SIZE);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.params, y.params);
            assert_eq!(x.partners, y.partners);
            assert!(x
                .partners
                .iter()
                .all(|j| !j.contains(1) && j.max() <= x.params.n()));
        }
    }

    #[test]
    fn window_orders_span_window() {
        let o = window_orders();
        assert_eq!(o.len(), ALPHA_SAMPLES);
        assert!(o.iter().all(|a| a.in_2xd_window()));
    }

    #[test]
    fn a_failing_check_is_reported() {
        let mut t = Tally::new(WorstKind::Deviation);
        t.deviation(1.0, 0.5, || "too big".into());
        let r = t.finish(Suite::Eq1, vec![]);
        assert!(!r.passed());
        assert!(r.first_failure.unwrap().contains("too big"));
    }
}
