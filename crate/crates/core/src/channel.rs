//! Large-scale gains and spatially correlated small-scale fading.
//!
//! Path loss follows the InF log-distance form `A + B log10(d_3D) + C log10(f_GHz)`
//! with exponential LOS probability and log-normal shadowing. Small-scale fading
//! per PRB is a Rician mixture of a planar-array steering vector (LOS links only)
//! and an exponentially correlated complex Gaussian vector. The jammer goes
//! through the same pipeline with an extra wall penetration loss.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scenario::{Deployment, DropRealization, Point3, SPEED_OF_LIGHT};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LargeScaleParams {
    /// `(A, B, C)` of the LOS path loss in dB.
    pub pl_los: [f64; 3],
    pub pl_nlos: [f64; 3],
    pub sigma_sf_los_db: f64,
    pub sigma_sf_nlos_db: f64,
    /// `k` in `P_LOS = exp(-d_2D / k)`.
    pub los_decay_distance: f64,
    pub rician_k_los_db: f64,
    pub spatial_corr_coeff: f64,
    pub carrier_hz: f64,
}

impl Default for LargeScaleParams {
    fn default() -> Self {
        Self {
            pl_los: [31.84, 21.5, 19.0],
            pl_nlos: [33.63, 21.9, 20.0],
            sigma_sf_los_db: 4.3,
            sigma_sf_nlos_db: 4.0,
            los_decay_distance: 10.0,
            rician_k_los_db: 7.0,
            spatial_corr_coeff: 0.5,
            carrier_hz: 3.75e9,
        }
    }
}

impl LargeScaleParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_sf_los_db >= 0.0 && self.sigma_sf_nlos_db >= 0.0) {
            return Err(Error::Config("shadowing standard deviations must be >= 0".into()));
        }
        if !(0.0..1.0).contains(&self.spatial_corr_coeff) {
            return Err(Error::out_of_range(
                "channel.spatial_corr",
                self.spatial_corr_coeff,
                "[0, 1)",
            ));
        }
        if !(self.los_decay_distance > 0.0) {
            return Err(Error::out_of_range("channel.los_decay_m", self.los_decay_distance, "> 0"));
        }
        if !(self.carrier_hz > 0.0) {
            return Err(Error::out_of_range("channel.carrier_ghz", self.carrier_hz / 1e9, "> 0"));
        }
        if self.rician_k_los_db.is_nan() {
            return Err(Error::Config("channel.rician_k_db is NaN".into()));
        }
        Ok(())
    }

    pub fn carrier_ghz(&self) -> f64 {
        self.carrier_hz / 1e9
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_hz
    }

    fn sigma_sf_db(&self, los: bool) -> f64 {
        if los {
            self.sigma_sf_los_db
        } else {
            self.sigma_sf_nlos_db
        }
    }

    /// Linear Rician K of LOS links; `+inf` dB yields a pure steering vector.
    pub fn rician_k(&self) -> f64 {
        10f64.powf(self.rician_k_los_db / 10.0)
    }
}

pub fn los_probability(d_2d: f64, params: &LargeScaleParams) -> f64 {
    (-d_2d.max(0.0) / params.los_decay_distance).exp().clamp(0.0, 1.0)
}

pub fn draw_los_state<R: Rng + ?Sized>(d_2d: f64, params: &LargeScaleParams, rng: &mut R) -> bool {
    rng.random::<f64>() < los_probability(d_2d, params)
}

pub fn draw_shadowing_db<R: Rng + ?Sized>(los: bool, params: &LargeScaleParams, rng: &mut R) -> f64 {
    let sigma = params.sigma_sf_db(los);
    if sigma == 0.0 {
        return 0.0;
    }
    sigma * rng.sample::<f64, _>(StandardNormal)
}

/// Path loss in dB. NLOS loss is floored by the LOS loss at the same distance.
pub fn path_loss_db(d_3d: f64, los: bool, params: &LargeScaleParams) -> f64 {
    let eval = |[a, b, c]: [f64; 3]| a + b * d_3d.log10() + c * params.carrier_ghz().log10();
    let pl_los = eval(params.pl_los);
    if los {
        pl_los
    } else {
        eval(params.pl_nlos).max(pl_los)
    }
}

/// Linear large-scale power gain `10^(-(PL + SF + WL)/10)`.
pub fn path_gain(
    d_3d: f64,
    los: bool,
    shadowing_db: f64,
    wall_loss_db: f64,
    params: &LargeScaleParams,
) -> Result<f64> {
    if !(d_3d > 0.0) {
        return Err(Error::out_of_range("d_3d", d_3d, "> 0"));
    }
    let loss = path_loss_db(d_3d, los, params) + shadowing_db + wall_loss_db;
    Ok(10f64.powf(-loss / 10.0))
}

/// Unit-modulus response of the array elements `offsets` to a plane wave
/// arriving from `direction` (unit vector from the AP towards the source).
pub fn steering_vector(offsets: &[Point3], direction: &Point3, wavelength: f64) -> Vec<Complex64> {
    let k = 2.0 * std::f64::consts::PI / wavelength;
    offsets
        .iter()
        .map(|e| {
            let phase = k * (e.x * direction.x + e.y * direction.y + e.z * direction.z);
            Complex64::from_polar(1.0, phase)
        })
        .collect()
}

/// `R[m][n] = coeff^(|e_m - e_n| / spacing)`.
pub fn exponential_correlation(offsets: &[Point3], spacing: f64, coeff: f64) -> DMatrix<f64> {
    let n = offsets.len();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0
        } else {
            coeff.powf(offsets[i].distance(&offsets[j]) / spacing)
        }
    })
}

pub(crate) fn standard_complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Array geometry shared by every AP: element offsets and the Cholesky factor
/// of the spatial correlation matrix.
#[derive(Debug, Clone)]
pub struct ArrayModel {
    pub offsets: Vec<Point3>,
    pub wavelength: f64,
    corr_factor: DMatrix<f64>,
}

impl ArrayModel {
    /// Half-wavelength spaced square array for `deployment`.
    pub fn new(deployment: &Deployment, params: &LargeScaleParams) -> Result<Self> {
        let wavelength = params.wavelength();
        let spacing = wavelength / 2.0;
        let offsets = deployment.element_offsets(spacing);
        let corr = exponential_correlation(&offsets, spacing, params.spatial_corr_coeff);
        let corr_factor = nalgebra::Cholesky::new(corr)
            .ok_or(Error::Degenerate("spatial correlation matrix is not positive definite"))?
            .l();
        Ok(Self {
            offsets,
            wavelength,
            corr_factor,
        })
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn correlation(&self) -> DMatrix<f64> {
        &self.corr_factor * self.corr_factor.transpose()
    }

    /// Zero-mean complex Gaussian vector with covariance `R_corr`, written into `out`.
    pub fn correlated_gaussian<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [Complex64]) {
        let n = self.len();
        let white: Vec<Complex64> = (0..n).map(|_| standard_complex_normal(rng)).collect();
        for (i, o) in out.iter_mut().enumerate().take(n) {
            let row = self.corr_factor.row(i);
            *o = (0..=i).map(|j| white[j] * row[j]).sum();
        }
    }
}

/// Everything needed to draw small-scale fading on one terminal -> AP link.
#[derive(Debug, Clone)]
pub struct LinkState {
    pub gain: f64,
    pub los: bool,
    pub steering: Vec<Complex64>,
}

/// Draws one PRB's fading vector of a link: entries satisfy `E|h_n|^2 = gain`.
pub fn small_scale<R: Rng + ?Sized>(
    link: &LinkState,
    array: &ArrayModel,
    rician_k: f64,
    rng: &mut R,
    out: &mut [Complex64],
) {
    let amp = link.gain.sqrt();
    let (los_w, nlos_w) = if !link.los {
        (0.0, 1.0)
    } else if rician_k.is_infinite() {
        (1.0, 0.0)
    } else {
        ((rician_k / (rician_k + 1.0)).sqrt(), (1.0 / (rician_k + 1.0)).sqrt())
    };
    if nlos_w > 0.0 {
        array.correlated_gaussian(rng, out);
    } else {
        out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
    }
    let los_phase = if los_w > 0.0 {
        Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
    } else {
        Complex64::new(0.0, 0.0)
    };
    for (o, a) in out.iter_mut().zip(&link.steering) {
        *o = (*o * nlos_w + a * los_phase * los_w) * amp;
    }
}

/// Large-scale state of every terminal -> AP link of a drop. Terminals are
/// indexed UEs first, jammer last.
#[derive(Debug, Clone)]
pub struct DropChannel {
    pub array: ArrayModel,
    links: Vec<Vec<LinkState>>,
    rician_k: f64,
    n_ant_total: usize,
}

impl DropChannel {
    pub fn new(
        drop: &DropRealization,
        deployment: &Deployment,
        array: ArrayModel,
        params: &LargeScaleParams,
    ) -> Result<Self> {
        let n_terminals = drop.n_ue() + 1;
        let mut links = Vec::with_capacity(n_terminals);
        for t in 0..n_terminals {
            let pos = drop.terminal_position(t);
            let wall = if t == drop.jammer_index() {
                drop.wall_loss_db
            } else {
                0.0
            };
            let mut row = Vec::with_capacity(deployment.n_ap);
            for (j, ap) in deployment.ap_positions.iter().enumerate() {
                let los = drop.los_state[t][j];
                let d = pos.distance(ap);
                let gain = path_gain(d, los, drop.shadowing_db[t][j], wall, params)?;
                let dir = Point3::new((pos.x - ap.x) / d, (pos.y - ap.y) / d, (pos.z - ap.z) / d);
                row.push(LinkState {
                    gain,
                    los,
                    steering: steering_vector(&array.offsets, &dir, array.wavelength),
                });
            }
            links.push(row);
        }
        Ok(Self {
            array,
            links,
            rician_k: params.rician_k(),
            n_ant_total: deployment.n_ant_total,
        })
    }

    pub fn n_ant(&self) -> usize {
        self.n_ant_total
    }

    pub fn n_ap(&self) -> usize {
        self.links.first().map_or(0, Vec::len)
    }

    pub fn n_terminals(&self) -> usize {
        self.links.len()
    }

    pub fn large_scale_gain(&self, terminal: usize, ap: usize) -> f64 {
        self.links[terminal][ap].gain
    }

    pub fn large_scale_gains(&self, terminal: usize) -> Vec<f64> {
        self.links[terminal].iter().map(|l| l.gain).collect()
    }

    /// Full `N_ant` channel of a terminal on one PRB, AP-major.
    pub fn draw<R: Rng + ?Sized>(&self, terminal: usize, rng: &mut R) -> Vec<Complex64> {
        let per_ap = self.array.len();
        let mut h = vec![Complex64::new(0.0, 0.0); self.n_ant_total];
        for (link, chunk) in self.links[terminal].iter().zip(h.chunks_exact_mut(per_ap)) {
            small_scale(link, &self.array, self.rician_k, rng, chunk);
        }
        h
    }
}

/// Per-PRB channels of one slot. PRBs not carrying a terminal's signal are `None`.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    pub ue_channels: Vec<Vec<Option<Vec<Complex64>>>>,
    pub jammer_channel: Vec<Option<Vec<Complex64>>>,
    pub large_scale_gain: Vec<Vec<f64>>,
}

impl ChannelRealization {
    /// Draws UE channels on their allocated PRBs and the jammer channel on
    /// `jammer_prbs`. UE and jammer fading come from separate streams.
    pub fn draw<R: Rng + ?Sized>(
        channel: &DropChannel,
        allocation: &[Option<usize>],
        jammer_prbs: &[usize],
        ue_rng: &mut R,
        jammer_rng: &mut R,
    ) -> Self {
        let n_prb = allocation.len();
        let n_ue = channel.n_terminals() - 1;
        let mut ue_channels = vec![vec![None; n_prb]; n_ue];
        for (prb, ue) in allocation.iter().enumerate() {
            if let Some(ue) = *ue {
                ue_channels[ue][prb] = Some(channel.draw(ue, ue_rng));
            }
        }
        let mut jammer_channel = vec![None; n_prb];
        for &prb in jammer_prbs {
            jammer_channel[prb] = Some(channel.draw(n_ue, jammer_rng));
        }
        Self {
            ue_channels,
            jammer_channel,
            large_scale_gain: (0..=n_ue).map(|t| channel.large_scale_gains(t)).collect(),
        }
    }
}
