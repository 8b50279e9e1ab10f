//! Factory geometry, AP deployments, OFDM numerology and power bookkeeping.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::channel;
use crate::config::ScenarioConfig;
use crate::error::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Height of every UE and of the jammer antenna.
pub const TERMINAL_HEIGHT_M: f64 = 1.5;

/// Thermal noise density at room temperature.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn distance_2d(&self, other: &Point3) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Hall extent: `length` along x (the longest side), `width` along y, ceiling at `height`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HallDims {
    pub length: f64,
    pub width: f64,
    pub height: f64,
}

impl HallDims {
    pub const FACTORY: HallDims = HallDims {
        length: 100.0,
        width: 50.0,
        height: 6.0,
    };

    pub fn contains_footprint(&self, p: &Point3) -> bool {
        (0.0..=self.length).contains(&p.x) && (0.0..=self.width).contains(&p.y)
    }

    /// How far outside the footprint a point lies, measured against
    /// rectangular perimeters parallel to the walls (0 inside).
    pub fn offset_outside(&self, p: &Point3) -> f64 {
        let dx = (-p.x).max(p.x - self.length).max(0.0);
        let dy = (-p.y).max(p.y - self.width).max(0.0);
        dx.max(dy)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Numerology {
    pub subcarrier_spacing: f64,
    pub n_sc_per_prb: usize,
    pub n_symb_per_slot: usize,
    pub n_re_per_prb: usize,
    pub prb_bandwidth: f64,
    pub total_bandwidth: f64,
    pub n_prb: usize,
    pub guard_fraction: f64,
    pub overhead: f64,
    pub packet_size_bits: usize,
}

impl Numerology {
    /// Derives the PRB grid that fits in `(1 - guard_fraction) * total_bandwidth`.
    pub fn new(
        subcarrier_spacing: f64,
        n_sc_per_prb: usize,
        n_symb_per_slot: usize,
        total_bandwidth: f64,
        guard_fraction: f64,
        overhead: f64,
        packet_size_bits: usize,
    ) -> Result<Self> {
        if !(subcarrier_spacing > 0.0 && total_bandwidth > 0.0) {
            return Err(Error::Config("bandwidths must be positive".into()));
        }
        if n_sc_per_prb == 0 || n_symb_per_slot == 0 || packet_size_bits == 0 {
            return Err(Error::Config("PRB dimensions and packet size must be non-zero".into()));
        }
        if !(0.0..1.0).contains(&guard_fraction) {
            return Err(Error::out_of_range("guard_fraction", guard_fraction, "[0, 1)"));
        }
        if !(0.0..1.0).contains(&overhead) {
            return Err(Error::out_of_range("overhead", overhead, "[0, 1)"));
        }
        let prb_bandwidth = n_sc_per_prb as f64 * subcarrier_spacing;
        let usable = (1.0 - guard_fraction) * total_bandwidth;
        // tolerate representation error in e.g. 0.9 * 20e6 / 720e3
        let n_prb = (usable / prb_bandwidth + 1e-9).floor() as usize;
        if n_prb == 0 {
            return Err(Error::Config("bandwidth too small for a single PRB".into()));
        }
        Ok(Self {
            subcarrier_spacing,
            n_sc_per_prb,
            n_symb_per_slot,
            n_re_per_prb: n_sc_per_prb * n_symb_per_slot,
            prb_bandwidth,
            total_bandwidth,
            n_prb,
            guard_fraction,
            overhead,
            packet_size_bits,
        })
    }

    /// 60 kHz NR numerology, 12 x 14 REs per PRB, 20-byte packets, 25 % overhead.
    pub fn nr_60khz(total_bandwidth: f64) -> Self {
        Self::new(60e3, 12, 14, total_bandwidth, 0.10, 0.25, 160)
            .expect("preset numerology is valid")
    }
}

/// Named bandwidth scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Preset {
    B20,
    B100,
}

impl Preset {
    pub fn numerology(self) -> Numerology {
        match self {
            Preset::B20 => Numerology::nr_60khz(20e6),
            Preset::B100 => Numerology::nr_60khz(100e6),
        }
    }

    pub fn n_ue(self) -> usize {
        match self {
            Preset::B20 => 4,
            Preset::B100 => 20,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::B20 => "B20",
            Preset::B100 => "B100",
        })
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B20" | "b20" => Ok(Preset::B20),
            "B100" | "b100" => Ok(Preset::B100),
            other => Err(Error::Config(format!("unknown preset `{other}` (expected B20 or B100)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeploymentKind {
    Centralized,
    PartiallyDistributed,
    FullyDistributed,
    Custom,
}

impl DeploymentKind {
    /// AP count fixed by the named layouts.
    pub fn required_aps(self) -> Option<usize> {
        match self {
            DeploymentKind::Centralized => Some(1),
            DeploymentKind::PartiallyDistributed => Some(4),
            DeploymentKind::FullyDistributed => Some(16),
            DeploymentKind::Custom => None,
        }
    }

    pub fn for_ap_count(n_ap: usize) -> Option<Self> {
        match n_ap {
            1 => Some(DeploymentKind::Centralized),
            4 => Some(DeploymentKind::PartiallyDistributed),
            16 => Some(DeploymentKind::FullyDistributed),
            _ => None,
        }
    }
}

impl fmt::Display for DeploymentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeploymentKind::Centralized => "centralized",
            DeploymentKind::PartiallyDistributed => "partially_distributed",
            DeploymentKind::FullyDistributed => "fully_distributed",
            DeploymentKind::Custom => "custom",
        })
    }
}

impl FromStr for DeploymentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "centralized" => Ok(DeploymentKind::Centralized),
            "partially_distributed" => Ok(DeploymentKind::PartiallyDistributed),
            "fully_distributed" => Ok(DeploymentKind::FullyDistributed),
            "custom" => Ok(DeploymentKind::Custom),
            other => Err(Error::Config(format!("unknown deployment kind `{other}`"))),
        }
    }
}

/// Ceiling-mounted AP positions for a named layout.
///
/// Distributed layouts are a `g x g` grid centred in the hall with spacing
/// `length / g` along x and `width / g` along y, which gives 50 m / 25 m for
/// four APs and 25 m / 12.5 m for sixteen in the 100 x 50 m hall.
pub fn ap_layout(kind: DeploymentKind, hall: HallDims, n_ap: usize) -> Result<Vec<Point3>> {
    let required = kind.required_aps().ok_or_else(|| {
        Error::Config("custom deployments take explicit AP positions".into())
    })?;
    if n_ap != required {
        return Err(Error::Config(format!(
            "{kind} deployment needs {required} APs, got {n_ap}"
        )));
    }
    let side = (n_ap as f64).sqrt().round() as usize;
    let (dx, dy) = (hall.length / side as f64, hall.width / side as f64);
    let mut out = Vec::with_capacity(n_ap);
    for ix in 0..side {
        for iy in 0..side {
            out.push(Point3::new(
                (ix as f64 + 0.5) * dx,
                (iy as f64 + 0.5) * dy,
                hall.height,
            ));
        }
    }
    Ok(out)
}

fn perfect_square_root(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deployment {
    pub kind: DeploymentKind,
    pub n_ap: usize,
    pub n_ant_total: usize,
    pub n_ant_per_ap: usize,
    pub ap_positions: Vec<Point3>,
    pub hall: HallDims,
}

impl Deployment {
    pub fn named(kind: DeploymentKind, n_ant_total: usize, hall: HallDims) -> Result<Self> {
        let n_ap = kind.required_aps().ok_or_else(|| {
            Error::Config("custom deployments take explicit AP positions".into())
        })?;
        let positions = ap_layout(kind, hall, n_ap)?;
        Self::build(kind, positions, n_ant_total, hall)
    }

    pub fn custom(ap_positions: Vec<Point3>, n_ant_total: usize, hall: HallDims) -> Result<Self> {
        if ap_positions.is_empty() {
            return Err(Error::Config("custom deployment needs at least one AP".into()));
        }
        Self::build(DeploymentKind::Custom, ap_positions, n_ant_total, hall)
    }

    fn build(
        kind: DeploymentKind,
        ap_positions: Vec<Point3>,
        n_ant_total: usize,
        hall: HallDims,
    ) -> Result<Self> {
        let n_ap = ap_positions.len();
        if n_ant_total == 0 || n_ant_total % n_ap != 0 {
            return Err(Error::Config(format!(
                "{n_ant_total} antennas cannot be split evenly over {n_ap} APs"
            )));
        }
        let n_ant_per_ap = n_ant_total / n_ap;
        if perfect_square_root(n_ant_per_ap).is_none() {
            return Err(Error::Config(format!(
                "{n_ant_per_ap} antennas per AP do not form a square array"
            )));
        }
        for p in &ap_positions {
            if !hall.contains_footprint(p) || (p.z - hall.height).abs() > 1e-9 {
                return Err(Error::Config(format!(
                    "AP at ({}, {}, {}) is not on the hall ceiling",
                    p.x, p.y, p.z
                )));
            }
        }
        Ok(Self {
            kind,
            n_ap,
            n_ant_total,
            n_ant_per_ap,
            ap_positions,
            hall,
        })
    }

    /// Elements per side of each AP's square array.
    pub fn array_side(&self) -> usize {
        perfect_square_root(self.n_ant_per_ap).expect("validated at construction")
    }

    /// Element offsets (m) of a downward-facing square array with the given spacing,
    /// centred on the AP, lying in the horizontal plane.
    pub fn element_offsets(&self, spacing: f64) -> Vec<Point3> {
        let side = self.array_side();
        let centre = (side as f64 - 1.0) / 2.0;
        let mut out = Vec::with_capacity(self.n_ant_per_ap);
        for row in 0..side {
            for col in 0..side {
                out.push(Point3::new(
                    (col as f64 - centre) * spacing,
                    (row as f64 - centre) * spacing,
                    0.0,
                ));
            }
        }
        out
    }
}

/// One random placement of UEs and jammer with its large-scale link state,
/// held fixed over the slots of a drop. Link matrices are indexed
/// `[terminal][ap]`, UEs first and the jammer last.
#[derive(Debug, Clone, PartialEq)]
pub struct DropRealization {
    pub ue_positions: Vec<Point3>,
    pub jammer_position: Point3,
    pub ue_tx_power: f64,
    pub jammer_tx_power: f64,
    pub wall_loss_db: f64,
    pub shadowing_db: Vec<Vec<f64>>,
    pub los_state: Vec<Vec<bool>>,
}

impl DropRealization {
    pub fn n_ue(&self) -> usize {
        self.ue_positions.len()
    }

    pub fn jammer_index(&self) -> usize {
        self.ue_positions.len()
    }

    pub fn terminal_position(&self, terminal: usize) -> Point3 {
        if terminal == self.jammer_index() {
            self.jammer_position
        } else {
            self.ue_positions[terminal]
        }
    }
}

fn uniform_ring_point<R: Rng + ?Sized>(hall: &HallDims, perimeter: f64, rng: &mut R) -> Point3 {
    loop {
        let x = rng.random_range(-perimeter..=hall.length + perimeter);
        let y = rng.random_range(-perimeter..=hall.width + perimeter);
        let p = Point3::new(x, y, TERMINAL_HEIGHT_M);
        if !hall.contains_footprint(&p) {
            return p;
        }
    }
}

/// Draws UE and jammer positions, the wall loss, and per-link LOS and shadowing.
///
/// Positions and wall loss are drawn before any per-link quantity, so two
/// configurations that differ only in deployment see the same terminals.
pub fn sample_drop<R: Rng + ?Sized>(config: &ScenarioConfig, rng: &mut R) -> DropRealization {
    let hall = config.deployment.hall;
    let ue_positions: Vec<Point3> = (0..config.n_ue)
        .map(|_| {
            Point3::new(
                rng.random_range(0.0..=hall.length),
                rng.random_range(0.0..=hall.width),
                TERMINAL_HEIGHT_M,
            )
        })
        .collect();
    let jammer_position = uniform_ring_point(&hall, config.jammer.perimeter_m, rng);
    let wall_loss_db = if config.jammer.wall_loss_std_db > 0.0 {
        Normal::new(config.jammer.wall_loss_mean_db, config.jammer.wall_loss_std_db)
            .expect("validated std")
            .sample(rng)
    } else {
        config.jammer.wall_loss_mean_db
    };

    let terminals = ue_positions.iter().chain(std::iter::once(&jammer_position));
    let mut los_state = Vec::with_capacity(config.n_ue + 1);
    let mut shadowing_db = Vec::with_capacity(config.n_ue + 1);
    for t in terminals {
        let (mut los_row, mut sf_row) = (Vec::new(), Vec::new());
        for ap in &config.deployment.ap_positions {
            let los = channel::draw_los_state(t.distance_2d(ap), &config.channel, rng);
            sf_row.push(channel::draw_shadowing_db(los, &config.channel, rng));
            los_row.push(los);
        }
        los_state.push(los_row);
        shadowing_db.push(sf_row);
    }

    DropRealization {
        ue_positions,
        jammer_position,
        ue_tx_power: dbm_to_watt(config.ue_power_dbm),
        jammer_tx_power: config.jammer.power_dbm.map_or(0.0, dbm_to_watt),
        wall_loss_db,
        shadowing_db,
        los_state,
    }
}

pub fn dbm_to_watt(p_dbm: f64) -> f64 {
    10f64.powf((p_dbm - 30.0) / 10.0)
}

pub fn watt_to_dbm(p_watt: f64) -> f64 {
    10.0 * p_watt.log10() + 30.0
}

/// Thermal noise over one PRB plus receiver noise figure, in watts.
pub fn noise_power_per_prb(numerology: &Numerology, noise_figure_db: f64) -> f64 {
    dbm_to_watt(noise_power_dbm(numerology.prb_bandwidth, noise_figure_db))
}

pub fn noise_power_dbm(bandwidth_hz: f64, noise_figure_db: f64) -> f64 {
    THERMAL_NOISE_DBM_PER_HZ + 10.0 * bandwidth_hz.log10() + noise_figure_db
}

/// Equal split of a terminal's power over the PRBs it occupies.
pub fn power_per_prb(total_watt: f64, n_prb: usize) -> f64 {
    if n_prb == 0 {
        0.0
    } else {
        total_watt / n_prb as f64
    }
}
