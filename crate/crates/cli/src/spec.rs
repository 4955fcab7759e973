//! State-spec files: `{"n": 5, "a": [re, im], "b": [[re, im], ...]}`.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde::Deserialize;
use wmono_core::wclass::WClassParams;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub n: usize,
    pub a: [f64; 2],
    pub b: Vec<[f64; 2]>,
}

impl StateSpec {
    /// Parses JSON text; `origin` names the source in diagnostics.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| anyhow!("{origin}: line {}, column {}: {}", e.line(), e.column(), e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read state spec {}", path.display()))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn to_params(&self, origin: &str) -> Result<WClassParams> {
        if self.n < 2 {
            bail!("{origin}: field n: need at least 2 qubits, got {}", self.n);
        }
        if self.b.len() != self.n {
            bail!(
                "{origin}: field b: expected {} amplitudes (one per qubit), got {}",
                self.n,
                self.b.len()
            );
        }
        if let Some(bad) = std::iter::once(&self.a)
            .chain(&self.b)
            .position(|z| !(z[0].is_finite() && z[1].is_finite()))
        {
            let field = if bad == 0 {
                "a".to_string()
            } else {
                format!("b[{}]", bad - 1)
            };
            bail!("{origin}: field {field}: amplitude must be finite");
        }
        let c = |z: &[f64; 2]| Complex64::new(z[0], z[1]);
        let norm = c(&self.a).norm_sqr() + self.b.iter().map(|z| c(z).norm_sqr()).sum::<f64>();
        WClassParams::new(c(&self.a), self.b.iter().map(c).collect())
            .map_err(|e| anyhow!("{origin}: fields a, b: {e} (|a|² + Σ|b_i|² = {norm})"))
    }
}

/// Parameters from `--spec`, or the five-qubit worked example.
pub fn load_params(path: Option<&Path>) -> Result<WClassParams> {
    match path {
        None => Ok(WClassParams::worked_example()),
        Some(p) => StateSpec::load(p)?.to_params(&p.display().to_string()),
    }
}
