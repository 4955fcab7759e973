//! `wmono`: figure data, verification suites and single bound reports for
//! generalized W-class states.

pub mod figure;
pub mod spec;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use wmono_core::lin::QubitSubset;
use wmono_core::measures::RenyiOrder;
use wmono_core::monogamy::{self, cut_label, BoundReport, PowerExponent};
use wmono_core::verify::{self, RunConfig, Suite};

use figure::Figure;

/// Exit code when every checked relation holds.
pub const EXIT_PASS: i32 = 0;
/// Exit code when a relation is violated.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit code for usage and domain errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wmono",
    version,
    about = "Monogamy bounds for generalized W-class states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write figure data as CSV (`param,curve_name,value`).
    Figure {
        #[arg(value_enum)]
        fig: Figure,
        /// State-spec JSON file; the five-qubit worked example when omitted.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Grid `lo:step:hi`.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot next to `--out` (or `<fig>.svg`).
        #[arg(long)]
        svg: bool,
    },
    /// Run a randomized verification suite: lemma1, thm1..thm4, eq1, eq3, identities, falpha or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random mixing matrices per optimizer call (at least 100).
        #[arg(long, default_value_t = 100)]
        budget: usize,
        /// Tolerance override `name=value`; repeatable.
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tolerances: Vec<String>,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one monogamy relation on a state: 1 CRENoA power lower bound (x >= 2),
    /// 2 strict negative-power upper relation (y <= 0), 3 Rényi-α sum upper bound on
    /// the full state, 4 squared Rényi-α upper bound on a reduced state.
    Bound {
        relation: u8,
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Partner qubits, e.g. `2,3` (qubit 1 is implied).
        #[arg(long)]
        subset: Option<String>,
        /// Exponent for relation 1 (x >= 2).
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        /// Exponent for relation 2 (y <= 0).
        #[arg(long, allow_hyphen_values = true)]
        y: Option<f64>,
        /// Rényi order for relations 3 and 4.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_ERROR;
            }
            let _ = write!(out, "{e}");
            return EXIT_PASS;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Figure {
            fig,
            spec,
            grid,
            out: path,
            svg,
        } => cmd_figure(
            fig,
            spec.as_deref(),
            grid.as_deref(),
            path.as_deref(),
            svg,
            out,
            err,
        ),
        Command::Verify {
            suite,
            seed,
            budget,
            tolerances,
            out: path,
        } => cmd_verify(&suite, seed, budget, &tolerances, path.as_deref(), out),
        Command::Bound {
            relation,
            spec,
            subset,
            x,
            y,
            alpha,
        } => cmd_bound(
            relation,
            spec.as_deref(),
            subset.as_deref(),
            x,
            y,
            alpha,
            out,
        ),
    }
}

fn cmd_figure(
    fig: Figure,
    spec: Option<&Path>,
    grid: Option<&str>,
    path: Option<&Path>,
    svg: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let params = spec::load_params(spec)?;
    let grid = match grid {
        Some(g) => figure::parse_grid(g)?,
        None => figure::default_grid(fig),
    };
    let data = figure::compute(fig, &params, grid)?;
    let csv = figure::to_csv(&data);
    match path {
        Some(p) => {
            std::fs::write(p, &csv).with_context(|| format!("cannot write {}", p.display()))?
        }
        None => out.write_all(csv.as_bytes())?,
    }
    if svg {
        let svg_path = match path {
            Some(p) => p.with_extension("svg"),
            None => PathBuf::from(format!("{}.svg", fig.name())),
        };
        std::fs::write(&svg_path, figure::to_svg(fig, &data))
            .with_context(|| format!("cannot write {}", svg_path.display()))?;
    }
    if !data.comparisons.is_empty() {
        write!(err, "{}", figure::comparison_report(&data.comparisons))?;
    }
    Ok(EXIT_PASS)
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    budget: usize,
    tolerances: &[String],
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let Some(suites) = Suite::parse(suite) else {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        bail!(
            "unknown suite {suite:?}; expected one of {}, all",
            names.join(", ")
        );
    };
    let mut config = RunConfig::new(seed, budget)?;
    for t in tolerances {
        let Some((name, value)) = t.split_once('=') else {
            bail!("tolerance override {t:?} must look like name=value");
        };
        let value: f64 = value
            .parse()
            .with_context(|| format!("tolerance {name}: {value:?} is not a number"))?;
        config.tolerances.set(name, value)?;
    }

    let mut text = String::new();
    let mut failed = 0;
    let (mut checks, mut failures) = (0, 0);
    for s in suites {
        let start = Instant::now();
        let report = verify::run_suite(s, &config)?;
        checks += report.checks;
        failures += report.failures;
        if !report.passed() {
            failed += 1;
        }
        let line = format!(
            "{report}\n            ({:.2} s)\n",
            start.elapsed().as_secs_f64()
        );
        out.write_all(line.as_bytes())?;
        text.push_str(&line);
    }
    let summary = format!(
        "seed {seed}: {} checks, {failures} failures, {failed} suite(s) failed\n",
        checks
    );
    out.write_all(summary.as_bytes())?;
    text.push_str(&summary);
    if let Some(p) = path {
        std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(if failed == 0 {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    })
}

fn parse_subset(text: &str) -> Result<QubitSubset> {
    let indices = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .with_context(|| format!("subset {text:?}: {t:?} is not a qubit index"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QubitSubset::new(indices)?)
}

fn cmd_bound(
    relation: u8,
    spec: Option<&Path>,
    subset: Option<&str>,
    x: Option<f64>,
    y: Option<f64>,
    alpha: Option<f64>,
    out: &mut dyn Write,
) -> Result<i32> {
    let params = spec::load_params(spec)?;
    let want = |flag: &str, v: Option<f64>| -> Result<f64> {
        v.with_context(|| format!("relation {relation} needs --{flag}"))
    };
    let partners = || -> Result<QubitSubset> {
        parse_subset(subset.with_context(|| format!("relation {relation} needs --subset"))?)
    };
    let mut extra = Vec::new();
    let report: BoundReport = match relation {
        1 => {
            let (bound, report) = monogamy::crenoa_lower_bound(
                &params,
                &partners()?,
                PowerExponent::new(want("x", x)?)?,
            )?;
            extra.push(("bound", bound));
            report
        }
        2 => {
            monogamy::crenoa_upper_check(&params, &partners()?, PowerExponent::new(want("y", y)?)?)?
        }
        3 => {
            if subset.is_some() {
                bail!("relation 3 concerns the full state; --subset is not accepted");
            }
            monogamy::ealpha_sum_upper(&params, RenyiOrder::new(want("alpha", alpha)?)?)?
        }
        4 => {
            let s = partners()?;
            if s.contains(1) {
                bail!("--subset lists partner qubits; qubit 1 is implied");
            }
            let (bound, report) = monogamy::sre_upper_bound(
                &params,
                &s.with(1)?,
                RenyiOrder::new(want("alpha", alpha)?)?,
            )?;
            extra.push(("bound", bound));
            report
        }
        other => bail!("relation must be 1, 2, 3 or 4, got {other}"),
    };
    write_report(out, relation, &report, &extra)?;
    Ok(if report.holds {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    })
}

fn write_report(
    out: &mut dyn Write,
    relation: u8,
    r: &BoundReport,
    extra: &[(&str, f64)],
) -> Result<()> {
    let fmt = |v: f64| figure::format_sig(v, figure::SIGNIFICANT_DIGITS);
    let cut = cut_label(&r.context.subset);
    let verdict = if r.holds { "holds" } else { "VIOLATED" };
    let mut rows: Vec<(&str, String)> = vec![
        ("id", relation.to_string()),
        ("relation", r.context.relation_name.to_string()),
        ("state", r.context.state_id.clone()),
        ("cut", cut.clone()),
        ("parameter", fmt(r.context.parameter)),
        ("lhs", fmt(r.lhs)),
        ("op", r.relation.symbol().to_string()),
        ("rhs", fmt(r.rhs)),
        ("coefficient", fmt(r.coefficient)),
        ("margin", fmt(r.margin)),
    ];
    for (k, v) in extra {
        rows.push((k, fmt(*v)));
    }
    rows.push(("verdict", verdict.to_string()));
    for (k, v) in &rows {
        writeln!(out, "{k:<12} {v}")?;
    }
    let mut line = format!(
        "REPORT id={relation} relation={} state={} cut={cut} param={} lhs={} op={} rhs={} coefficient={} margin={}",
        r.context.relation_name,
        r.context.state_id,
        fmt(r.context.parameter),
        fmt(r.lhs),
        r.relation.symbol(),
        fmt(r.rhs),
        fmt(r.coefficient),
        fmt(r.margin),
    );
    for (k, v) in extra {
        line.push_str(&format!(" {k}={}", fmt(*v)));
    }
    line.push_str(&format!(" holds={}", r.holds));
    writeln!(out, "{line}")?;
    Ok(())
}
