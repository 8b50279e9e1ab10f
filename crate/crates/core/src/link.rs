//! Per-UE KPI chain: pilot-based MMSE channel estimate under jamming, MRC
//! combining over all AP antennas, per-PRB SINR, EESM compression and the
//! normal-approximation block error rate of a short packet.

use std::f64::consts::{LOG2_E, SQRT_2};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use libm::erfc;

use crate::channel::standard_complex_normal;
use crate::error::{Error, Result};

/// How the pilot estimation error is drawn across receive antennas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PilotNoise {
    /// Independent error per antenna.
    #[default]
    PerAntenna,
    /// One error sample per UE and PRB shared by every antenna.
    Common,
}

/// Pilot conditions of one UE on one PRB.
#[derive(Debug, Clone, Copy)]
pub struct PilotContext<'a> {
    /// Large-scale gain `sigma_h^2` of the UE towards each AP.
    pub ue_gain: &'a [f64],
    /// Large-scale gain of the jammer towards each AP.
    pub jammer_gain: &'a [f64],
    pub p_ue_prb: f64,
    /// Jammer power on this PRB; zero when the PRB is not attacked.
    pub p_j_prb: f64,
    pub sigma_w2: f64,
    pub pilot_length: usize,
}

impl PilotContext<'_> {
    /// Per-AP pilot SNR `gamma = P_UE sigma_h^2 / sigma_w^2`.
    pub fn snr(&self, ap: usize) -> f64 {
        self.p_ue_prb * self.ue_gain[ap] / self.sigma_w2
    }

    pub fn shrinkage(&self, ap: usize) -> f64 {
        let gt = self.snr(ap) * self.pilot_length as f64;
        if gt.is_infinite() {
            1.0
        } else {
            gt / (1.0 + gt)
        }
    }

    /// Variance of the estimation error term before shrinkage.
    pub fn error_variance(&self, ap: usize) -> f64 {
        (self.sigma_w2 + self.p_j_prb * self.jammer_gain[ap])
            / (self.p_ue_prb * self.pilot_length as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatedChannel {
    pub h_hat: Vec<Complex64>,
    pub pilot_length: usize,
}

/// Unit-variance draws for the estimation error, one per antenna (or one
/// repeated value in [`PilotNoise::Common`] mode).
pub fn draw_pilot_noise<R: Rng + ?Sized>(mode: PilotNoise, n_ant: usize, rng: &mut R) -> Vec<Complex64> {
    match mode {
        PilotNoise::PerAntenna => (0..n_ant).map(|_| standard_complex_normal(rng)).collect(),
        PilotNoise::Common => vec![standard_complex_normal(rng); n_ant],
    }
}

/// MMSE estimate `h_hat = gamma T / (1 + gamma T) (h + z)` per AP and antenna.
///
/// `h_true` is AP-major; `unit_noise` holds standard complex normal draws that
/// are scaled by each AP's error standard deviation.
pub fn estimate_channel(
    h_true: &[Complex64],
    ctx: &PilotContext<'_>,
    unit_noise: &[Complex64],
) -> EstimatedChannel {
    let n_ap = ctx.ue_gain.len();
    let per_ap = h_true.len() / n_ap;
    let mut h_hat = Vec::with_capacity(h_true.len());
    for ap in 0..n_ap {
        let shrink = ctx.shrinkage(ap);
        let std = ctx.error_variance(ap).sqrt();
        let range = ap * per_ap..(ap + 1) * per_ap;
        for (h, u) in h_true[range.clone()].iter().zip(&unit_noise[range]) {
            h_hat.push((h + u * std) * shrink);
        }
    }
    EstimatedChannel {
        h_hat,
        pilot_length: ctx.pilot_length,
    }
}

/// Normalised MRC combiner `g = h_hat^H / |h_hat|` as a column vector.
pub fn mrc_combiner(h_hat: &[Complex64]) -> Result<Vec<Complex64>> {
    let norm = h_hat.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::Degenerate("MRC combiner of a zero or non-finite channel"));
    }
    Ok(h_hat.iter().map(|h| h.conj() / norm).collect())
}

/// `h g` for a row vector `h` and column vector `g`.
pub fn project(h: &[Complex64], g: &[Complex64]) -> Complex64 {
    h.iter().zip(g).map(|(a, b)| a * b).sum()
}

/// SINR of one PRB. `h_jam` is `None` on PRBs the jammer does not attack.
pub fn sinr_per_prb(
    h_true: &[Complex64],
    h_jam: Option<&[Complex64]>,
    g: &[Complex64],
    p_ue_prb: f64,
    p_j_prb: f64,
    sigma_w2: f64,
) -> f64 {
    let signal = project(h_true, g).norm_sqr() * p_ue_prb;
    let interference = h_jam.map_or(0.0, |hj| project(hj, g).norm_sqr() * p_j_prb);
    signal / (sigma_w2 + interference)
}

/// Exponential effective SINR mapping: `-beta ln(mean(exp(-sinr / beta)))`.
pub fn eesm(sinr: &[f64], beta: f64) -> Result<f64> {
    if sinr.is_empty() {
        return Err(Error::Degenerate("EESM of an empty SINR list"));
    }
    if !(beta > 0.0) {
        return Err(Error::out_of_range("eesm beta", beta, "> 0"));
    }
    // shift by the minimum so the largest exponent is exp(0)
    let min = sinr.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = sinr.iter().map(|s| (-(s - min) / beta).exp()).sum::<f64>() / sinr.len() as f64;
    Ok(min - beta * mean.ln())
}

/// Gaussian tail probability `Q(x) = P(N(0,1) > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / SQRT_2)
}

/// Dispersion of the complex AWGN channel in bits^2.
pub fn channel_dispersion(sinr: f64) -> f64 {
    (1.0 - (1.0 + sinr).powi(-2)) * LOG2_E * LOG2_E
}

/// Normal-approximation block error probability of `packet_bits` over
/// `n_effective_re` channel uses at SINR `sinr_eff`.
pub fn bler(sinr_eff: f64, n_effective_re: usize, packet_bits: usize) -> f64 {
    let n = n_effective_re as f64;
    let rate = packet_bits as f64 / n;
    let margin = (1.0 + sinr_eff).log2() - rate + n.log2() / (2.0 * n);
    let v = channel_dispersion(sinr_eff);
    if v <= 0.0 {
        return match margin.partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Greater) => 0.0,
            Some(std::cmp::Ordering::Equal) => 0.5,
            _ => 1.0,
        };
    }
    q_function(margin * (n / v).sqrt())
}

/// Result of the KPI chain for one packet.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkBudget {
    pub sinr_per_prb: Vec<f64>,
    pub sinr_eff: f64,
    pub n_coded_re: usize,
    pub n_effective_re: usize,
    pub spectral_efficiency: f64,
    pub bler: f64,
}

impl LinkBudget {
    pub fn evaluate(
        sinr_per_prb: Vec<f64>,
        n_re_per_prb: usize,
        overhead: f64,
        packet_bits: usize,
        eesm_beta: f64,
    ) -> Result<Self> {
        let sinr_eff = eesm(&sinr_per_prb, eesm_beta)?;
        let n_coded_re = sinr_per_prb.len() * n_re_per_prb;
        let n_effective_re = ((n_coded_re as f64) * (1.0 - overhead)).round().max(1.0) as usize;
        Ok(Self {
            bler: bler(sinr_eff, n_effective_re, packet_bits),
            spectral_efficiency: packet_bits as f64 / n_effective_re as f64,
            sinr_per_prb,
            sinr_eff,
            n_coded_re,
            n_effective_re,
        })
    }
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn db_to_linear(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}
