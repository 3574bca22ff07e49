//! Experiment configuration: defaults, JSON config file, flag overrides.
//!
//! Precedence, lowest to highest: built-in defaults, `--config` file values,
//! command-line flags. The fully resolved config is echoed into the run
//! manifest.

use circlaw_core::ensembles::EnsembleKind;
use circlaw_core::{Complex64, Error, Result};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Parse `a`, `a+bi`, `a-bi`, or `bi` with `.`-decimal components.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim();
    let bad = || Error::Precondition(format!("cannot parse complex number '{s}'"));
    if let Some(im) = t.strip_suffix('i') {
        // split at the last +/- that is not a leading sign or exponent sign
        let bytes = im.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-')
                && bytes[k - 1] != b'e'
                && bytes[k - 1] != b'E'
            {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re: f64 = im[..k].parse().map_err(|_| bad())?;
                let sign = if bytes[k] == b'-' { -1.0 } else { 1.0 };
                let mag = &im[k + 1..];
                let imag: f64 = if mag.is_empty() { 1.0 } else { mag.parse().map_err(|_| bad())? };
                Ok(Complex64::new(re, sign * imag))
            }
            None => Ok(Complex64::new(0.0, im.parse().map_err(|_| bad())?)),
        }
    } else {
        Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0))
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}{}i", z.re, z.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Raw (partially specified) configuration as read from a JSON file; every
/// field optional so files can override any subset of the defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub ensemble: Option<String>,
    pub dimension: Option<usize>,
    pub dimensions: Option<Vec<usize>>,
    pub seed0: Option<u64>,
    pub seeds: Option<usize>,
    pub z: Option<String>,
    pub z0: Option<String>,
    pub a: Option<f64>,
    pub eta: Option<f64>,
    pub w: Option<String>,
    pub xmin: Option<f64>,
    pub xmax: Option<f64>,
    pub points: Option<usize>,
    pub grid_ne: Option<usize>,
    pub grid_neta: Option<usize>,
    pub alpha_exponent: Option<f64>,
    pub radius: Option<f64>,
    pub grid_h: Option<f64>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub threads: Option<usize>,
}

/// Fully resolved configuration; serialized verbatim into the manifest.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub command: String,
    pub ensemble: String,
    pub dimension: usize,
    pub dimensions: Vec<usize>,
    pub seed0: u64,
    pub seeds: usize,
    pub z: String,
    pub z0: String,
    pub a: f64,
    pub eta: f64,
    pub w: String,
    pub xmin: f64,
    pub xmax: f64,
    pub points: usize,
    pub grid_ne: usize,
    pub grid_neta: usize,
    pub alpha_exponent: f64,
    pub radius: f64,
    pub grid_h: f64,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
    pub threads: usize,
}

impl ResolvedConfig {
    pub fn defaults(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ensemble: "ginibre-complex".into(),
            dimension: 512,
            dimensions: vec![256, 512, 1024],
            seed0: 0,
            seeds: 20,
            z: "0.5".into(),
            z0: "0.3+0.2i".into(),
            a: 0.25,
            eta: 0.01,
            w: "1+0.1i".into(),
            xmin: 0.0,
            xmax: 4.0,
            points: 400,
            grid_ne: 40,
            grid_neta: 40,
            alpha_exponent: 1.0,
            radius: 0.4,
            grid_h: 0.02,
            output_dir: PathBuf::from("runs"),
            format: OutputFormat::Csv,
            threads: 0, // 0 = hardware parallelism
        }
    }

    pub fn apply(&mut self, p: &PartialConfig) {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if let Some(v) = &p.$field { self.$field = v.clone(); })*
            };
        }
        take!(
            ensemble, dimension, dimensions, seed0, seeds, z, z0, a, eta, w, xmin, xmax,
            points, grid_ne, grid_neta, alpha_exponent, radius, grid_h, output_dir, format,
            threads
        );
    }

    pub fn kind(&self) -> Result<EnsembleKind> {
        EnsembleKind::parse(&self.ensemble)
    }

    pub fn z_value(&self) -> Result<Complex64> {
        parse_complex(&self.z)
    }

    pub fn z0_value(&self) -> Result<Complex64> {
        parse_complex(&self.z0)
    }

    pub fn w_value(&self) -> Result<Complex64> {
        parse_complex(&self.w)
    }

    /// `seed0 + k` for `k < seeds`.
    pub fn seed_list(&self) -> Vec<u64> {
        (0..self.seeds as u64).map(|k| self.seed0 + k).collect()
    }
}
