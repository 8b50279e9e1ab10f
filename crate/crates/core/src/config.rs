//! Run configuration.
//!
//! Config files are TOML. Nested tables are flattened to dotted keys
//! (`jammer.power_dbm`), command-line overrides use the same keys, and any
//! key not listed in [`KEYS`] is rejected. The resolved configuration can be
//! written back as TOML and reloaded to reproduce a run.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use toml::Value;

use crate::channel::LargeScaleParams;
use crate::defense::Scheduling;
use crate::detect::DetectorSelection;
use crate::error::{Error, Result};
use crate::link::PilotNoise;
use crate::scenario::{Deployment, DeploymentKind, HallDims, Numerology, Point3, Preset};

pub type FlatConfig = BTreeMap<String, Value>;

/// Every accepted key.
pub const KEYS: &[&str] = &[
    "preset",
    "scenario.n_ue",
    "scenario.ue_power_dbm",
    "scenario.noise_figure_db",
    "scenario.pilot_length",
    "deployment.kind",
    "deployment.n_ant_total",
    "deployment.ap_positions",
    "jammer.power_dbm",
    "jammer.l_p",
    "jammer.perimeter_m",
    "jammer.wall_loss_mean_db",
    "jammer.wall_loss_std_db",
    "jammer.freeze_prbs",
    "channel.los_decay_m",
    "channel.rician_k_db",
    "channel.spatial_corr",
    "channel.carrier_ghz",
    "channel.sigma_sf_los_db",
    "channel.sigma_sf_nlos_db",
    "link.eesm_beta",
    "link.pilot_noise",
    "defense.m_p",
    "defense.scheduling",
    "defense.key",
    "detector.kind",
    "detector.pfa_grid",
    "detector.observation",
    "detector.accumulate_slots",
    "mc.n_drops",
    "mc.n_slots_per_drop",
    "mc.seed",
    "sweep.p_j_dbm",
    "sweep.l_p",
    "sweep.m_p",
    "sweep.deployment",
    "sweep.n_ant",
    "sweep.scheduling",
];

/// How blanked-RE observations are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservationMode {
    /// Gram matrix drawn directly (exact in distribution, cheaper).
    #[default]
    Sufficient,
    /// Every blanked RE sample drawn explicitly.
    Samples,
}

impl fmt::Display for ObservationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObservationMode::Sufficient => "sufficient",
            ObservationMode::Samples => "samples",
        })
    }
}

impl FromStr for ObservationMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sufficient" => Ok(ObservationMode::Sufficient),
            "samples" => Ok(ObservationMode::Samples),
            _ => Err(Error::Config(format!("unknown observation mode `{s}` (sufficient, samples)"))),
        }
    }
}

impl fmt::Display for PilotNoise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PilotNoise::PerAntenna => "per_antenna",
            PilotNoise::Common => "common",
        })
    }
}

impl FromStr for PilotNoise {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per_antenna" => Ok(PilotNoise::PerAntenna),
            "common" => Ok(PilotNoise::Common),
            _ => Err(Error::Config(format!("unknown pilot noise mode `{s}` (per_antenna, common)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JammerConfig {
    /// `None` disables the jammer.
    pub power_dbm: Option<f64>,
    pub l_p: usize,
    pub perimeter_m: f64,
    pub wall_loss_mean_db: f64,
    pub wall_loss_std_db: f64,
    /// Keep the attacked PRBs fixed for a whole drop instead of redrawing per slot.
    pub freeze_prbs: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkConfig {
    pub eesm_beta: f64,
    pub pilot_noise: PilotNoise,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefenseConfig {
    pub m_p: usize,
    pub scheduling: Scheduling,
    pub key: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectorConfig {
    pub selection: DetectorSelection,
    pub pfa_grid: Vec<f64>,
    pub observation: ObservationMode,
    /// Slots whose blanked REs are pooled into one decision.
    pub accumulate_slots: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    pub n_drops: usize,
    pub n_slots: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub preset: Preset,
    pub numerology: Numerology,
    pub n_ue: usize,
    pub deployment: Deployment,
    pub ue_power_dbm: f64,
    pub noise_figure_db: f64,
    pub pilot_length: usize,
    pub jammer: JammerConfig,
    pub channel: LargeScaleParams,
    pub link: LinkConfig,
    pub defense: DefenseConfig,
    pub detector: DetectorConfig,
    pub mc: McConfig,
}

pub const DEFAULT_N_ANT: usize = 64;
pub const DEFAULT_BLANKING_KEY: u64 = 0x5eed_b1a2_c0de_0001;

/// Log-spaced false-alarm grid from 1e-4 to 0.5 plus a few upper points.
pub fn default_pfa_grid() -> Vec<f64> {
    let mut grid = Vec::new();
    for decade in -4..0 {
        for m in [1.0, 2.0, 5.0] {
            grid.push(m * 10f64.powi(decade));
        }
    }
    grid.extend([0.3, 0.5, 0.7, 0.9]);
    grid
}

impl ScenarioConfig {
    /// Defaults of a bandwidth preset: partially distributed deployment with
    /// 64 antennas, 60 dBm wide-band jammer, five blanked PRBs, random
    /// scheduling.
    pub fn preset(preset: Preset) -> Self {
        let numerology = preset.numerology();
        let deployment =
            Deployment::named(DeploymentKind::PartiallyDistributed, DEFAULT_N_ANT, HallDims::FACTORY)
                .expect("preset deployment is valid");
        Self {
            preset,
            n_ue: preset.n_ue(),
            jammer: JammerConfig {
                power_dbm: Some(60.0),
                l_p: numerology.n_prb,
                perimeter_m: 10.0,
                wall_loss_mean_db: 27.5,
                wall_loss_std_db: 6.5,
                freeze_prbs: false,
            },
            numerology,
            deployment,
            ue_power_dbm: 10.0,
            noise_figure_db: 7.0,
            pilot_length: 16,
            channel: LargeScaleParams::default(),
            link: LinkConfig {
                eesm_beta: 1.0,
                pilot_noise: PilotNoise::PerAntenna,
            },
            defense: DefenseConfig {
                m_p: 5,
                scheduling: Scheduling::Random,
                key: DEFAULT_BLANKING_KEY,
            },
            detector: DetectorConfig {
                selection: DetectorSelection::Both,
                pfa_grid: default_pfa_grid(),
                observation: ObservationMode::Sufficient,
                accumulate_slots: 1,
            },
            mc: McConfig {
                n_drops: 200,
                n_slots: 50,
                seed: 1,
            },
        }
    }

    /// Rebuilds the deployment for a named layout and antenna count.
    pub fn set_deployment(&mut self, kind: DeploymentKind, n_ant_total: usize) -> Result<()> {
        self.deployment = if kind == DeploymentKind::Custom {
            Deployment::custom(self.deployment.ap_positions.clone(), n_ant_total, self.deployment.hall)?
        } else {
            Deployment::named(kind, n_ant_total, self.deployment.hall)?
        };
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.channel.validate()?;
        let n_prb = self.numerology.n_prb;
        if self.n_ue == 0 {
            return Err(Error::out_of_range("scenario.n_ue", self.n_ue, ">= 1"));
        }
        if self.pilot_length == 0 {
            return Err(Error::out_of_range("scenario.pilot_length", 0, ">= 1"));
        }
        if !(self.noise_figure_db >= 0.0) {
            return Err(Error::out_of_range("scenario.noise_figure_db", self.noise_figure_db, ">= 0"));
        }
        if !self.ue_power_dbm.is_finite() {
            return Err(Error::out_of_range("scenario.ue_power_dbm", self.ue_power_dbm, "finite"));
        }
        if self.jammer.l_p == 0 || self.jammer.l_p > n_prb {
            return Err(Error::out_of_range("jammer.l_p", self.jammer.l_p, "1 <= l_p <= n_prb"));
        }
        if let Some(p) = self.jammer.power_dbm {
            if !p.is_finite() {
                return Err(Error::out_of_range("jammer.power_dbm", p, "finite"));
            }
        }
        if !(self.jammer.perimeter_m > 0.0) {
            return Err(Error::out_of_range("jammer.perimeter_m", self.jammer.perimeter_m, "> 0"));
        }
        if !(self.jammer.wall_loss_std_db >= 0.0) {
            return Err(Error::out_of_range("jammer.wall_loss_std_db", self.jammer.wall_loss_std_db, ">= 0"));
        }
        if self.defense.m_p == 0 || self.defense.m_p >= n_prb {
            return Err(Error::out_of_range("defense.m_p", self.defense.m_p, "0 < m_p < n_prb"));
        }
        if n_prb - self.defense.m_p < self.n_ue {
            return Err(Error::Config(format!(
                "defense.m_p = {} leaves {} data PRBs for {} UEs",
                self.defense.m_p,
                n_prb - self.defense.m_p,
                self.n_ue
            )));
        }
        if !(self.link.eesm_beta > 0.0) {
            return Err(Error::out_of_range("link.eesm_beta", self.link.eesm_beta, "> 0"));
        }
        if self.detector.pfa_grid.is_empty() {
            return Err(Error::Config("detector.pfa_grid is empty".into()));
        }
        if let Some(p) = self.detector.pfa_grid.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
            return Err(Error::out_of_range("detector.pfa_grid", p, "(0, 1)"));
        }
        if self.detector.accumulate_slots == 0 || self.mc.n_slots % self.detector.accumulate_slots != 0 {
            return Err(Error::out_of_range(
                "detector.accumulate_slots",
                self.detector.accumulate_slots,
                ">= 1 and dividing mc.n_slots_per_drop",
            ));
        }
        if self.mc.n_drops == 0 {
            return Err(Error::out_of_range("mc.n_drops", 0, ">= 1"));
        }
        if self.mc.n_slots == 0 {
            return Err(Error::out_of_range("mc.n_slots_per_drop", 0, ">= 1"));
        }
        Ok(())
    }
}

/// Optional sweep grids; an empty grid means "use the scenario value".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Sweeps {
    /// `None` entries are jamming-free reference points.
    pub p_j_dbm: Vec<Option<f64>>,
    pub l_p: Vec<usize>,
    pub m_p: Vec<usize>,
    pub deployment: Vec<DeploymentKind>,
    pub n_ant: Vec<usize>,
    pub scheduling: Vec<Scheduling>,
}

/// Nested TOML table to dotted keys. A bare `detector = "x"` becomes
/// `detector.kind`.
pub fn flatten(table: &toml::Table) -> FlatConfig {
    fn walk(prefix: &str, table: &toml::Table, out: &mut FlatConfig) {
        for (k, v) in table {
            let key = if prefix.is_empty() {
                k.clone()
            } else {
                format!("{prefix}.{k}")
            };
            match v {
                Value::Table(t) => walk(&key, t, out),
                _ => {
                    out.insert(canonical_key(&key), v.clone());
                }
            }
        }
    }
    let mut out = FlatConfig::new();
    walk("", table, &mut out);
    out
}

fn canonical_key(key: &str) -> String {
    if key == "detector" {
        "detector.kind".into()
    } else {
        key.to_string()
    }
}

pub fn unflatten(flat: &FlatConfig) -> toml::Table {
    let mut root = toml::Table::new();
    for (key, value) in flat {
        let mut parts: Vec<&str> = key.split('.').collect();
        let leaf = parts.pop().expect("non-empty key");
        let mut table = &mut root;
        for p in parts {
            table = table
                .entry(p)
                .or_insert_with(|| Value::Table(toml::Table::new()))
                .as_table_mut()
                .expect("dotted keys do not collide with leaves");
        }
        table.insert(leaf.to_string(), value.clone());
    }
    root
}

pub fn parse_toml(text: &str) -> Result<FlatConfig> {
    let table: toml::Table = text.parse()?;
    Ok(flatten(&table))
}

pub fn load_file(path: &Path) -> Result<FlatConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_toml(&text)
}

/// Parses `key=value`. The value is read as a TOML value when possible
/// (`40`, `[1, 2]`, `true`) and as a bare string otherwise.
pub fn parse_override(s: &str) -> Result<(String, Value)> {
    let (key, raw) = s
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override `{s}` is not of the form key=value")))?;
    let key = canonical_key(key.trim());
    let raw = raw.trim();
    let value = match format!("v = {raw}").parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").expect("parsed key"),
        Err(_) => Value::String(raw.to_string()),
    };
    Ok((key, value))
}

fn type_error(key: &str, expected: &str, value: &Value) -> Error {
    Error::Config(format!("`{key}` expects {expected}, got {value}"))
}

fn as_f64(key: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(x) => Ok(*x),
        Value::Integer(i) => Ok(*i as f64),
        _ => Err(type_error(key, "a number", v)),
    }
}

fn as_usize(key: &str, v: &Value) -> Result<usize> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as usize),
        _ => Err(type_error(key, "a non-negative integer", v)),
    }
}

fn as_u64(key: &str, v: &Value) -> Result<u64> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as u64),
        // seeds above i64::MAX can be given as strings
        Value::String(s) => s.parse().map_err(|_| type_error(key, "an unsigned integer", v)),
        _ => Err(type_error(key, "an unsigned integer", v)),
    }
}

fn as_str<'a>(key: &str, v: &'a Value) -> Result<&'a str> {
    v.as_str().ok_or_else(|| type_error(key, "a string", v))
}

fn as_bool(key: &str, v: &Value) -> Result<bool> {
    v.as_bool().ok_or_else(|| type_error(key, "a boolean", v))
}

fn as_array<'a>(key: &str, v: &'a Value) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| type_error(key, "an array", v))
}

fn parse_list<T>(key: &str, v: &Value, f: impl Fn(&str, &Value) -> Result<T>) -> Result<Vec<T>> {
    as_array(key, v)?.iter().map(|x| f(key, x)).collect()
}

fn parse_enum<T: FromStr<Err = Error>>(key: &str, v: &Value) -> Result<T> {
    as_str(key, v)?.parse()
}

fn optional_power(key: &str, v: &Value) -> Result<Option<f64>> {
    match v {
        Value::String(s) if s == "none" => Ok(None),
        _ => as_f64(key, v).map(Some),
    }
}

fn point(key: &str, v: &Value) -> Result<Point3> {
    let xs = parse_list(key, v, as_f64)?;
    match xs.as_slice() {
        [x, y, z] => Ok(Point3::new(*x, *y, *z)),
        _ => Err(type_error(key, "[x, y, z] points", v)),
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: ScenarioConfig,
    pub sweeps: Sweeps,
}

impl RunConfig {
    pub fn from_flat(flat: &FlatConfig) -> Result<Self> {
        if let Some(key) = flat.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Error::UnknownKey(key.clone()));
        }
        let get = |k: &str| flat.get(k);

        let preset = match get("preset") {
            Some(v) => parse_enum("preset", v)?,
            None => Preset::B20,
        };
        let mut c = ScenarioConfig::preset(preset);

        macro_rules! set {
            ($key:literal, $conv:expr, $field:expr) => {
                if let Some(v) = get($key) {
                    $field = $conv($key, v)?;
                }
            };
        }
        set!("scenario.n_ue", as_usize, c.n_ue);
        set!("scenario.ue_power_dbm", as_f64, c.ue_power_dbm);
        set!("scenario.noise_figure_db", as_f64, c.noise_figure_db);
        set!("scenario.pilot_length", as_usize, c.pilot_length);
        set!("jammer.power_dbm", optional_power, c.jammer.power_dbm);
        set!("jammer.l_p", as_usize, c.jammer.l_p);
        set!("jammer.perimeter_m", as_f64, c.jammer.perimeter_m);
        set!("jammer.wall_loss_mean_db", as_f64, c.jammer.wall_loss_mean_db);
        set!("jammer.wall_loss_std_db", as_f64, c.jammer.wall_loss_std_db);
        set!("jammer.freeze_prbs", as_bool, c.jammer.freeze_prbs);
        set!("channel.los_decay_m", as_f64, c.channel.los_decay_distance);
        set!("channel.rician_k_db", as_f64, c.channel.rician_k_los_db);
        set!("channel.spatial_corr", as_f64, c.channel.spatial_corr_coeff);
        set!("channel.sigma_sf_los_db", as_f64, c.channel.sigma_sf_los_db);
        set!("channel.sigma_sf_nlos_db", as_f64, c.channel.sigma_sf_nlos_db);
        if let Some(v) = get("channel.carrier_ghz") {
            c.channel.carrier_hz = as_f64("channel.carrier_ghz", v)? * 1e9;
        }
        set!("link.eesm_beta", as_f64, c.link.eesm_beta);
        set!("link.pilot_noise", parse_enum, c.link.pilot_noise);
        set!("defense.m_p", as_usize, c.defense.m_p);
        set!("defense.scheduling", parse_enum, c.defense.scheduling);
        set!("defense.key", as_u64, c.defense.key);
        set!("detector.kind", parse_enum, c.detector.selection);
        set!("detector.observation", parse_enum, c.detector.observation);
        set!("detector.accumulate_slots", as_usize, c.detector.accumulate_slots);
        if let Some(v) = get("detector.pfa_grid") {
            c.detector.pfa_grid = parse_list("detector.pfa_grid", v, as_f64)?;
        }
        set!("mc.n_drops", as_usize, c.mc.n_drops);
        set!("mc.n_slots_per_drop", as_usize, c.mc.n_slots);
        set!("mc.seed", as_u64, c.mc.seed);

        let kind = match get("deployment.kind") {
            Some(v) => parse_enum("deployment.kind", v)?,
            None => c.deployment.kind,
        };
        let n_ant = match get("deployment.n_ant_total") {
            Some(v) => as_usize("deployment.n_ant_total", v)?,
            None => c.deployment.n_ant_total,
        };
        match (kind, get("deployment.ap_positions")) {
            (DeploymentKind::Custom, Some(v)) => {
                let points = parse_list("deployment.ap_positions", v, point)?;
                c.deployment = Deployment::custom(points, n_ant, c.deployment.hall)?;
            }
            (DeploymentKind::Custom, None) => {
                return Err(Error::Config("custom deployment needs deployment.ap_positions".into()))
            }
            (_, Some(_)) => {
                return Err(Error::Config(
                    "deployment.ap_positions is only valid with deployment.kind = \"custom\"".into(),
                ))
            }
            (_, None) => c.set_deployment(kind, n_ant)?,
        }

        let mut sweeps = Sweeps::default();
        set!("sweep.p_j_dbm", |k, v| parse_list(k, v, optional_power), sweeps.p_j_dbm);
        set!("sweep.l_p", |k, v| parse_list(k, v, as_usize), sweeps.l_p);
        set!("sweep.m_p", |k, v| parse_list(k, v, as_usize), sweeps.m_p);
        set!("sweep.deployment", |k, v| parse_list(k, v, parse_enum), sweeps.deployment);
        set!("sweep.n_ant", |k, v| parse_list(k, v, as_usize), sweeps.n_ant);
        set!("sweep.scheduling", |k, v| parse_list(k, v, parse_enum), sweeps.scheduling);

        c.validate()?;
        Ok(Self { scenario: c, sweeps })
    }

    /// Every key with its resolved value.
    pub fn to_flat(&self) -> FlatConfig {
        let c = &self.scenario;
        let s = |x: &dyn fmt::Display| Value::String(x.to_string());
        let f = Value::Float;
        let i = |x: usize| Value::Integer(x as i64);
        let u = |x: u64| {
            i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::Integer)
        };
        let power = |p: Option<f64>| p.map_or_else(|| Value::String("none".into()), Value::Float);
        let arr = |v: Vec<Value>| Value::Array(v);

        let mut m = FlatConfig::new();
        m.insert("preset".into(), s(&c.preset));
        m.insert("scenario.n_ue".into(), i(c.n_ue));
        m.insert("scenario.ue_power_dbm".into(), f(c.ue_power_dbm));
        m.insert("scenario.noise_figure_db".into(), f(c.noise_figure_db));
        m.insert("scenario.pilot_length".into(), i(c.pilot_length));
        m.insert("deployment.kind".into(), s(&c.deployment.kind));
        m.insert("deployment.n_ant_total".into(), i(c.deployment.n_ant_total));
        if c.deployment.kind == DeploymentKind::Custom {
            let pts = c
                .deployment
                .ap_positions
                .iter()
                .map(|p| arr(vec![f(p.x), f(p.y), f(p.z)]))
                .collect();
            m.insert("deployment.ap_positions".into(), arr(pts));
        }
        m.insert("jammer.power_dbm".into(), power(c.jammer.power_dbm));
        m.insert("jammer.l_p".into(), i(c.jammer.l_p));
        m.insert("jammer.perimeter_m".into(), f(c.jammer.perimeter_m));
        m.insert("jammer.wall_loss_mean_db".into(), f(c.jammer.wall_loss_mean_db));
        m.insert("jammer.wall_loss_std_db".into(), f(c.jammer.wall_loss_std_db));
        m.insert("jammer.freeze_prbs".into(), Value::Boolean(c.jammer.freeze_prbs));
        m.insert("channel.los_decay_m".into(), f(c.channel.los_decay_distance));
        m.insert("channel.rician_k_db".into(), f(c.channel.rician_k_los_db));
        m.insert("channel.spatial_corr".into(), f(c.channel.spatial_corr_coeff));
        m.insert("channel.carrier_ghz".into(), f(c.channel.carrier_ghz()));
        m.insert("channel.sigma_sf_los_db".into(), f(c.channel.sigma_sf_los_db));
        m.insert("channel.sigma_sf_nlos_db".into(), f(c.channel.sigma_sf_nlos_db));
        m.insert("link.eesm_beta".into(), f(c.link.eesm_beta));
        m.insert("link.pilot_noise".into(), s(&c.link.pilot_noise));
        m.insert("defense.m_p".into(), i(c.defense.m_p));
        m.insert("defense.scheduling".into(), s(&c.defense.scheduling));
        m.insert("defense.key".into(), u(c.defense.key));
        m.insert("detector.kind".into(), s(&c.detector.selection));
        m.insert(
            "detector.pfa_grid".into(),
            arr(c.detector.pfa_grid.iter().map(|&p| f(p)).collect()),
        );
        m.insert("detector.observation".into(), s(&c.detector.observation));
        m.insert("detector.accumulate_slots".into(), i(c.detector.accumulate_slots));
        m.insert("mc.n_drops".into(), i(c.mc.n_drops));
        m.insert("mc.n_slots_per_drop".into(), i(c.mc.n_slots));
        m.insert("mc.seed".into(), u(c.mc.seed));

        let sw = &self.sweeps;
        if !sw.p_j_dbm.is_empty() {
            m.insert("sweep.p_j_dbm".into(), arr(sw.p_j_dbm.iter().map(|&p| power(p)).collect()));
        }
        if !sw.l_p.is_empty() {
            m.insert("sweep.l_p".into(), arr(sw.l_p.iter().map(|&x| i(x)).collect()));
        }
        if !sw.m_p.is_empty() {
            m.insert("sweep.m_p".into(), arr(sw.m_p.iter().map(|&x| i(x)).collect()));
        }
        if !sw.deployment.is_empty() {
            m.insert("sweep.deployment".into(), arr(sw.deployment.iter().map(|d| s(d)).collect()));
        }
        if !sw.n_ant.is_empty() {
            m.insert("sweep.n_ant".into(), arr(sw.n_ant.iter().map(|&x| i(x)).collect()));
        }
        if !sw.scheduling.is_empty() {
            m.insert("sweep.scheduling".into(), arr(sw.scheduling.iter().map(|x| s(x)).collect()));
        }
        m
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&unflatten(&self.to_flat())).expect("config tables serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_defaults() {
        let c = ScenarioConfig::preset(Preset::B100);
        assert_eq!(c.numerology.n_prb, 125);
        assert_eq!(c.n_ue, 20);
        assert_eq!(c.jammer.l_p, 125);
        assert_eq!(c.deployment.n_ant_total, 64);
        c.validate().unwrap();
    }

    #[test]
    fn nested_and_dotted_forms_agree() {
        let a = parse_toml("preset = \"B20\"\n[jammer]\npower_dbm = 40\nl_p = 5\n").unwrap();
        let b = parse_toml("preset = \"B20\"\njammer.power_dbm = 40.0\njammer.l_p = 5\n").unwrap();
        assert_eq!(RunConfig::from_flat(&a).unwrap(), RunConfig::from_flat(&b).unwrap());
        let r = RunConfig::from_flat(&a).unwrap();
        assert_eq!(r.scenario.jammer.power_dbm, Some(40.0));
        assert_eq!(r.scenario.jammer.l_p, 5);
    }

    #[test]
    fn detector_string_or_table() {
        let a = RunConfig::from_flat(&parse_toml("detector = \"rlrt\"").unwrap()).unwrap();
        let b = RunConfig::from_flat(&parse_toml("[detector]\nkind = \"rlrt\"\naccumulate_slots = 2").unwrap())
            .unwrap();
        assert_eq!(a.scenario.detector.selection, DetectorSelection::Rlrt);
        assert_eq!(b.scenario.detector.selection, DetectorSelection::Rlrt);
        assert_eq!(b.scenario.detector.accumulate_slots, 2);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = RunConfig::from_flat(&parse_toml("[jammer]\npowr_dbm = 3").unwrap()).unwrap_err();
        assert!(matches!(err, Error::UnknownKey(k) if k == "jammer.powr_dbm"));
    }

    #[test]
    fn overrides_parse_values() {
        assert_eq!(parse_override("jammer.power_dbm=40").unwrap().1, Value::Integer(40));
        assert_eq!(
            parse_override("defense.scheduling=sequential").unwrap().1,
            Value::String("sequential".into())
        );
        assert_eq!(parse_override("detector=glrt").unwrap().0, "detector.kind");
        let (_, v) = parse_override("sweep.p_j_dbm=[20, 40.5, \"none\"]").unwrap();
        assert_eq!(v.as_array().unwrap().len(), 3);
        assert!(parse_override("no_equals_sign").is_err());
    }

    #[test]
    fn invalid_values_are_rejected() {
        for text in [
            "[defense]\nm_p = 25",
            "[defense]\nm_p = 0",
            "[jammer]\nl_p = 26",
            "[deployment]\nn_ant_total = 20",
            "[deployment]\nkind = \"ring\"",
            "[detector]\npfa_grid = [0.1, 1.0]",
            "[mc]\nn_drops = 0",
            "[jammer]\nl_p = \"five\"",
        ] {
            assert!(RunConfig::from_flat(&parse_toml(text).unwrap()).is_err(), "{text}");
        }
    }

    #[test]
    fn resolved_config_round_trips() {
        let text = "preset = \"B100\"\n[deployment]\nkind = \"fully_distributed\"\nn_ant_total = 16\n\
                    [jammer]\npower_dbm = \"none\"\n[sweep]\np_j_dbm = [\"none\", 20, 60]\nm_p = [25, 85]\n\
                    [mc]\nseed = 18446744073709551615\n";
        // integers above i64::MAX are not TOML integers; use the string form
        let text = text.replace("18446744073709551615", "\"18446744073709551615\"");
        let a = RunConfig::from_flat(&parse_toml(&text).unwrap()).unwrap();
        assert_eq!(a.scenario.mc.seed, u64::MAX);
        let b = RunConfig::from_flat(&parse_toml(&a.to_toml()).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.sweeps.p_j_dbm, vec![None, Some(20.0), Some(60.0)]);
    }

    #[test]
    fn custom_deployment_from_positions() {
        let text = "[deployment]\nkind = \"custom\"\nn_ant_total = 8\nap_positions = [[10, 10, 6], [90, 40, 6]]\n";
        let r = RunConfig::from_flat(&parse_toml(text).unwrap()).unwrap();
        assert_eq!(r.scenario.deployment.n_ap, 2);
        let again = RunConfig::from_flat(&parse_toml(&r.to_toml()).unwrap()).unwrap();
        assert_eq!(r, again);
        assert!(RunConfig::from_flat(&parse_toml("[deployment]\nkind = \"custom\"").unwrap()).is_err());
    }
}
