//! Figure data: CSV rows and an optional SVG line plot.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use wmono_core::lin::QubitSubset;
use wmono_core::monogamy::{self, reference, Curve, SreComparison, SweepQuery};
use wmono_core::wclass::WClassParams;

pub const CSV_HEADER: &str = "param,curve_name,value";
pub const SIGNIFICANT_DIGITS: usize = 12;

pub const FIG1_DEFAULT_GRID: (f64, f64, f64) = (2.0, 0.1, 10.0);
pub const FIG2_DEFAULT_GRIDS: [(f64, f64, f64); 2] = [(0.823, 0.001, 0.99), (1.001, 0.001, 1.302)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
        }
    }
}

/// Parses `lo:step:hi`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, step, hi] = parts.as_slice() else {
        bail!("grid {text:?} must have the form lo:step:hi");
    };
    let num = |s: &str, what: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .with_context(|| format!("grid {text:?}: {what} {s:?} is not a number"))
    };
    Ok(monogamy::linear_grid(
        num(lo, "lo")?,
        num(step, "step")?,
        num(hi, "hi")?,
    )?)
}

pub fn default_grid(fig: Figure) -> Vec<f64> {
    let grids: &[(f64, f64, f64)] = match fig {
        Figure::Fig1 => std::slice::from_ref(&FIG1_DEFAULT_GRID),
        Figure::Fig2 => &FIG2_DEFAULT_GRIDS,
    };
    grids
        .iter()
        .flat_map(|&(lo, step, hi)| {
            monogamy::linear_grid(lo, step, hi).expect("valid default grid")
        })
        .collect()
}

/// Partner sets `{2,3}` and `{2,3,4}` used by both figures.
pub fn figure_partners() -> Vec<QubitSubset> {
    reference::CRENOA_LOWER_AT_X2
        .iter()
        .map(|(s, _)| QubitSubset::new(s.iter().copied()).expect("static subset"))
        .collect()
}

pub struct FigureData {
    pub curves: Vec<Curve>,
    /// Flat comparison rows `(param, name, value)`.
    pub constants: Vec<(f64, String, f64)>,
    pub comparisons: Vec<SreComparison>,
}

pub fn compute(fig: Figure, params: &WClassParams, grid: Vec<f64>) -> Result<FigureData> {
    let partners = figure_partners();
    for j in &partners {
        j.check_within(params.n())
            .with_context(|| format!("{} needs at least {} qubits", fig.name(), j.max()))?;
    }
    match fig {
        Figure::Fig1 => {
            let curves = monogamy::sweep(&SweepQuery::Fig1 {
                params: params.clone(),
                partners,
                grid,
            })?;
            let constants = reference::COA_LOWER_AT_X2
                .iter()
                .map(|(s, v)| {
                    let mut anchored = vec![1];
                    anchored.extend_from_slice(s);
                    (
                        2.0,
                        format!("coa_ref_{}", monogamy::cut_label(&anchored)),
                        *v,
                    )
                })
                .collect();
            Ok(FigureData {
                curves,
                constants,
                comparisons: vec![],
            })
        }
        Figure::Fig2 => {
            let curves = monogamy::sweep(&SweepQuery::Fig2 {
                params: params.clone(),
                partners,
                grid,
            })?;
            let comparisons = monogamy::compare_sre_curves(&curves);
            Ok(FigureData {
                curves,
                constants: vec![],
                comparisons,
            })
        }
    }
}

/// Locale-independent decimal with `digits` significant digits, trailing zeros
/// trimmed; scientific notation outside `[1e-5, 1e12)`.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn to_csv(data: &FigureData) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for curve in &data.curves {
        for &(p, v) in &curve.rows {
            let _ = writeln!(out, "{},{},{}", fmt(p), curve.name, fmt(v));
        }
    }
    for (p, name, v) in &data.constants {
        let _ = writeln!(out, "{},{name},{}", fmt(*p), fmt(*v));
    }
    out
}

fn fmt(v: f64) -> String {
    format_sig(v, SIGNIFICANT_DIGITS)
}

pub fn comparison_report(comparisons: &[SreComparison]) -> String {
    let mut out = String::new();
    for c in comparisons {
        let below = c
            .argmin_below_one
            .map(|(a, v)| format!("; minimum below α = 1 is {} at α = {}", fmt(v), fmt(a)))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{}: computed {} at α = {} vs quoted {} ({}); curve minimum {} at α = {}{below}",
            c.curve,
            fmt(c.computed_at_quoted_alpha),
            fmt(c.quoted_alpha),
            fmt(c.quoted_value),
            if c.agrees(5e-4) { "agrees" } else { "DIFFERS" },
            fmt(c.min_value),
            fmt(c.argmin_alpha),
        );
    }
    out
}

/// One polyline per curve on linear axes; constants are drawn as markers.
pub fn to_svg(fig: Figure, data: &FigureData) -> String {
    const W: f64 = 640.0;
    const H: f64 = 420.0;
    const M: f64 = 60.0;
    const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

    let points = data
        .curves
        .iter()
        .flat_map(|c| c.rows.iter().copied())
        .chain(data.constants.iter().map(|(p, _, v)| (*p, *v)));
    let (mut x0, mut x1, mut y0, mut y1) =
        (f64::INFINITY, f64::NEG_INFINITY, 0.0f64, f64::NEG_INFINITY);
    for (x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
    let xlabel = match fig {
        Figure::Fig1 => "x",
        Figure::Fig2 => "α",
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{M} {} V{} H{}" fill="none" stroke="black"/>"#,
        M,
        H - M,
        W - M
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{xlabel}</text>"#,
        W / 2.0,
        H - 15.0
    );
    for (x, anchor) in [(x0, "start"), (x1, "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{}" text-anchor="{anchor}">{}</text>"#,
            sx(x),
            H - M + 16.0,
            fmt(x)
        );
    }
    for y in [y0, y1] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#,
            M - 6.0,
            sy(y) + 4.0,
            format_sig(y, 4)
        );
    }
    for (k, curve) in data.curves.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = curve
            .rows
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            W - M - 150.0,
            M + 16.0 * k as f64,
            curve.name
        );
    }
    for (k, (p, name, v)) in data.constants.iter().enumerate() {
        let color = COLORS[(data.curves.len() + k) % COLORS.len()];
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
            sx(*p),
            sy(*v)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{color}">{name}</text>"#,
            W - M - 150.0,
            M + 16.0 * (data.curves.len() + k) as f64
        );
    }
    s.push_str("</svg>\n");
    s
}
