//! Jamming detection over blanked resource elements.
//!
//! GLRT: mean energy per sample, Gamma-distributed under H0.
//! RLRT: largest eigenvalue of the sample covariance normalised by the per-RE
//! noise variance, thresholded with the Tracy-Widom (beta = 2) edge law.

pub mod gamma;
mod observation;
pub mod tw2;
mod tw2_table;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use observation::{BlankedObservation, Gram, JammedPrb, ObservationDraw};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectorKind {
    Glrt,
    Rlrt,
}

impl fmt::Display for DetectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetectorKind::Glrt => "glrt",
            DetectorKind::Rlrt => "rlrt",
        })
    }
}

impl FromStr for DetectorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "glrt" => Ok(DetectorKind::Glrt),
            "rlrt" => Ok(DetectorKind::Rlrt),
            _ => Err(Error::Config(format!("unknown detector `{s}`"))),
        }
    }
}

/// Detectors evaluated in a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectorSelection {
    Glrt,
    Rlrt,
    #[default]
    Both,
}

impl DetectorSelection {
    pub fn kinds(self) -> &'static [DetectorKind] {
        match self {
            DetectorSelection::Glrt => &[DetectorKind::Glrt],
            DetectorSelection::Rlrt => &[DetectorKind::Rlrt],
            DetectorSelection::Both => &[DetectorKind::Glrt, DetectorKind::Rlrt],
        }
    }
}

impl fmt::Display for DetectorSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetectorSelection::Glrt => "glrt",
            DetectorSelection::Rlrt => "rlrt",
            DetectorSelection::Both => "both",
        })
    }
}

impl FromStr for DetectorSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "glrt" => Ok(DetectorSelection::Glrt),
            "rlrt" => Ok(DetectorSelection::Rlrt),
            "both" => Ok(DetectorSelection::Both),
            _ => Err(Error::Config(format!("unknown detector `{s}` (glrt, rlrt, both)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorVerdict {
    pub statistic: f64,
    pub threshold: f64,
    pub decided_jamming: bool,
    pub target_pfa: f64,
}

impl DetectorVerdict {
    pub fn new(statistic: f64, threshold: f64, target_pfa: f64) -> Self {
        Self {
            statistic,
            threshold,
            decided_jamming: statistic > threshold,
            target_pfa,
        }
    }
}

fn check_pfa(pfa: f64) -> Result<()> {
    if pfa > 0.0 && pfa < 1.0 {
        Ok(())
    } else {
        Err(Error::out_of_range("target_pfa", pfa, "(0, 1)"))
    }
}

/// `|r|^2 / (N_RE N_ant)`.
pub fn glrt_statistic(obs: &BlankedObservation) -> f64 {
    obs.energy() / (obs.n_re() * obs.n_ant()) as f64
}

/// Upper `pfa` quantile of Gamma(N_RE N_ant, sigma^2 / (N_RE N_ant)).
pub fn glrt_threshold(pfa: f64, n_re: usize, n_ant: usize, noise_var_per_re: f64) -> Result<f64> {
    check_pfa(pfa)?;
    if n_re == 0 || n_ant == 0 {
        return Err(Error::Degenerate("GLRT needs at least one RE and antenna"));
    }
    let k = (n_re * n_ant) as f64;
    Ok(gamma::gamma_upper_quantile(k, pfa)? * noise_var_per_re / k)
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn largest_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    m.symmetric_eigenvalues().max()
}

/// `lambda_max(R R^H / N_RE) / sigma_RE^2`.
pub fn rlrt_statistic(obs: &BlankedObservation) -> f64 {
    obs.gram().rlrt_statistic()
}

/// Wishart edge centering and scaling for `n_ant` antennas and `n_re` REs,
/// in units of the per-RE noise variance.
pub fn rlrt_edge_constants(n_re: usize, n_ant: usize) -> (f64, f64) {
    let (n, m) = (n_re as f64, n_ant as f64);
    let (sn, sm) = (n.sqrt(), m.sqrt());
    let mu = (sn + sm).powi(2) / n;
    let xi = (sn + sm) / n * (1.0 / sn + 1.0 / sm).cbrt();
    (mu, xi)
}

/// `mu + xi F2^{-1}(1 - pfa)`.
pub fn rlrt_threshold(pfa: f64, n_re: usize, n_ant: usize) -> Result<f64> {
    check_pfa(pfa)?;
    if n_re < 2 || n_ant < 2 {
        return Err(Error::Degenerate("RLRT needs at least two REs and two antennas"));
    }
    let (mu, xi) = rlrt_edge_constants(n_re, n_ant);
    Ok(mu + xi * tw2::tw2_quantile(1.0 - pfa)?.value)
}

impl Gram {
    pub fn glrt_statistic(&self) -> f64 {
        self.trace() / (self.n_re * self.n_ant()) as f64
    }

    pub fn rlrt_statistic(&self) -> f64 {
        largest_eigenvalue(&self.matrix) / self.n_re as f64 / self.noise_var_per_re
    }

    pub fn statistic(&self, kind: DetectorKind) -> f64 {
        match kind {
            DetectorKind::Glrt => self.glrt_statistic(),
            DetectorKind::Rlrt => self.rlrt_statistic(),
        }
    }
}

/// Threshold of `kind` for an observation of the given size.
pub fn threshold(
    kind: DetectorKind,
    pfa: f64,
    n_re: usize,
    n_ant: usize,
    noise_var_per_re: f64,
) -> Result<f64> {
    match kind {
        DetectorKind::Glrt => glrt_threshold(pfa, n_re, n_ant, noise_var_per_re),
        DetectorKind::Rlrt => rlrt_threshold(pfa, n_re, n_ant),
    }
}

pub fn run_detector(obs: &BlankedObservation, kind: DetectorKind, pfa: f64) -> Result<DetectorVerdict> {
    let statistic = match kind {
        DetectorKind::Glrt => glrt_statistic(obs),
        DetectorKind::Rlrt => rlrt_statistic(obs),
    };
    let delta = threshold(kind, pfa, obs.n_re(), obs.n_ant(), obs.noise_var_per_re())?;
    Ok(DetectorVerdict::new(statistic, delta, pfa))
}

pub fn run_detector_on_gram(gram: &Gram, kind: DetectorKind, pfa: f64) -> Result<DetectorVerdict> {
    let delta = threshold(kind, pfa, gram.n_re, gram.n_ant(), gram.noise_var_per_re)?;
    Ok(DetectorVerdict::new(gram.statistic(kind), delta, pfa))
}
