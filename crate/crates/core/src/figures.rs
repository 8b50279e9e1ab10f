//! Named figure presets: a parameter grid plus the tables it produces.

use std::fmt;
use std::str::FromStr;

use crate::config::{parse_toml, FlatConfig, RunConfig};
use crate::error::{Error, Result};
use crate::sim::{FaCalibrationSpec, RunSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Table {
    FaCalibration,
    SinrCdf,
    BlerVsPj,
    Roc,
}

impl Table {
    pub fn file_name(self) -> &'static str {
        match self {
            Table::FaCalibration => "fa_calibration.csv",
            Table::SinrCdf => "sinr_cdf.csv",
            Table::BlerVsPj => "bler_vs_pj.csv",
            Table::Roc => "roc.csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigurePreset {
    FaCalibration,
    SinrCdf,
    BlerVsPj,
    RocDetectors,
    RocAntennas,
    RocBlanking,
    BlerMitigation,
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 7] = [
        FigurePreset::FaCalibration,
        FigurePreset::SinrCdf,
        FigurePreset::BlerVsPj,
        FigurePreset::RocDetectors,
        FigurePreset::RocAntennas,
        FigurePreset::RocBlanking,
        FigurePreset::BlerMitigation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigurePreset::FaCalibration => "fig2_fa_calibration",
            FigurePreset::SinrCdf => "fig3_sinr_cdf",
            FigurePreset::BlerVsPj => "fig4_bler_vs_pj",
            FigurePreset::RocDetectors => "fig5_roc_detectors",
            FigurePreset::RocAntennas => "fig6_roc_antennas",
            FigurePreset::RocBlanking => "fig7_roc_blanking",
            FigurePreset::BlerMitigation => "fig8_bler_mitigation",
        }
    }

    pub fn tables(self) -> &'static [Table] {
        match self {
            FigurePreset::FaCalibration => &[Table::FaCalibration],
            FigurePreset::SinrCdf => &[Table::SinrCdf],
            FigurePreset::BlerVsPj | FigurePreset::BlerMitigation => &[Table::BlerVsPj],
            FigurePreset::RocDetectors | FigurePreset::RocAntennas | FigurePreset::RocBlanking => &[Table::Roc],
        }
    }

    /// Parameter grid of the preset as config text.
    pub fn config_text(self) -> &'static str {
        match self {
            // trials = drops x slots; N_RE = 168 m_p
            FigurePreset::FaCalibration => {
                r#"
preset = "B20"
deployment.n_ant_total = 16
detector.kind = "both"
detector.pfa_grid = [1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 0.1, 0.2, 0.3]
mc.n_drops = 2000
mc.n_slots_per_drop = 50
sweep.m_p = [1, 5]
"#
            }
            FigurePreset::SinrCdf => {
                r#"
preset = "B20"
jammer.l_p = 25
sweep.deployment = ["centralized", "partially_distributed", "fully_distributed"]
sweep.p_j_dbm = ["none", 20.0, 60.0]
"#
            }
            FigurePreset::BlerVsPj => {
                r#"
preset = "B20"
sweep.deployment = ["centralized", "partially_distributed", "fully_distributed"]
sweep.l_p = [5, 25]
sweep.p_j_dbm = [20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0, 55.0, 60.0]
"#
            }
            FigurePreset::RocDetectors => {
                r#"
preset = "B20"
jammer.l_p = 25
detector.kind = "both"
sweep.deployment = ["centralized", "partially_distributed", "fully_distributed"]
"#
            }
            FigurePreset::RocAntennas => {
                r#"
preset = "B20"
deployment.kind = "fully_distributed"
detector.kind = "rlrt"
sweep.n_ant = [16, 64]
sweep.l_p = [5, 25]
"#
            }
            FigurePreset::RocBlanking => {
                r#"
preset = "B100"
deployment.kind = "fully_distributed"
detector.kind = "rlrt"
sweep.m_p = [5, 85]
sweep.l_p = [5, 25, 125]
"#
            }
            FigurePreset::BlerMitigation => {
                r#"
preset = "B100"
deployment.kind = "centralized"
jammer.l_p = 25
sweep.m_p = [25, 85, 105]
sweep.scheduling = ["random", "sequential"]
sweep.p_j_dbm = [20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0, 55.0, 60.0]
"#
            }
        }
    }

    pub fn base_config(self) -> FlatConfig {
        parse_toml(self.config_text()).expect("preset config parses")
    }

    pub fn resolve(self) -> RunConfig {
        RunConfig::from_flat(&self.base_config()).expect("preset config is valid")
    }
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigurePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|p| p.name()).collect();
                Error::Config(format!("unknown preset `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

/// Tables produced for a plain config run without a figure preset.
pub const CUSTOM_TABLES: [Table; 3] = [Table::SinrCdf, Table::BlerVsPj, Table::Roc];

impl Table {
    /// Whether the table's key columns tell every sweep point of `config` apart.
    pub fn resolves(self, config: &RunConfig) -> bool {
        let s = &config.sweeps;
        let single = |n: usize| n <= 1;
        match self {
            Table::FaCalibration => true,
            Table::SinrCdf => single(s.n_ant.len()) && single(s.m_p.len()) && single(s.scheduling.len()),
            Table::BlerVsPj => single(s.n_ant.len()),
            Table::Roc => single(s.p_j_dbm.len()) && single(s.scheduling.len()),
        }
    }
}

/// Tables of a config run without a preset, dropping those whose columns
/// cannot represent the sweep.
pub fn custom_tables(config: &RunConfig) -> Vec<Table> {
    CUSTOM_TABLES.into_iter().filter(|t| t.resolves(config)).collect()
}

/// What a run computes.
#[derive(Debug, Clone)]
pub enum Job {
    FaCalibration(FaCalibrationSpec),
    Simulation(RunSpec),
}

/// Builds the job producing `tables` from a resolved config.
pub fn plan(config: &RunConfig, tables: &[Table], threads: usize, verbose: bool) -> Result<Job> {
    let c = &config.scenario;
    if let Some(t) = tables.iter().find(|t| !t.resolves(config)) {
        return Err(Error::Config(format!(
            "{} has no column for one of the swept parameters",
            t.file_name()
        )));
    }
    if tables.is_empty() {
        return Err(Error::Config("nothing to compute for this sweep".into()));
    }
    if tables.contains(&Table::FaCalibration) {
        if tables.len() > 1 {
            return Err(Error::Config("false-alarm calibration runs on its own".into()));
        }
        let m_p = if config.sweeps.m_p.is_empty() {
            vec![c.defense.m_p]
        } else {
            config.sweeps.m_p.clone()
        };
        return Ok(Job::FaCalibration(FaCalibrationSpec {
            n_ant: c.deployment.n_ant_total,
            n_re: m_p.iter().map(|m| m * c.numerology.n_re_per_prb).collect(),
            kinds: c.detector.selection.kinds().to_vec(),
            pfa_grid: c.detector.pfa_grid.clone(),
            trials: c.mc.n_drops * c.mc.n_slots,
            mode: c.detector.observation,
            seed: c.mc.seed,
            threads,
        }));
    }
    let mut spec = RunSpec::new(c.clone(), config.sweeps.clone());
    spec.kpis = tables.iter().any(|t| matches!(t, Table::SinrCdf | Table::BlerVsPj));
    spec.detection = tables.contains(&Table::Roc);
    spec.verbose = verbose;
    spec.threads = threads;
    spec.validate()?;
    Ok(Job::Simulation(spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::DetectorSelection;
    use crate::scenario::{DeploymentKind, Preset};

    #[test]
    fn every_preset_resolves_and_round_trips() {
        for p in FigurePreset::ALL {
            let cfg = p.resolve();
            assert_eq!(p.name().parse::<FigurePreset>().unwrap(), p);
            let again = RunConfig::from_flat(&parse_toml(&cfg.to_toml()).unwrap()).unwrap();
            assert_eq!(again, cfg, "{p}");
            assert!(plan(&cfg, p.tables(), 0, false).is_ok(), "{p}");
        }
        assert!("fig9".parse::<FigurePreset>().is_err());
    }

    #[test]
    fn grids_follow_the_figure_captions() {
        let fa = FigurePreset::FaCalibration.resolve();
        match plan(&fa, &[Table::FaCalibration], 0, false).unwrap() {
            Job::FaCalibration(s) => {
                assert_eq!(s.n_ant, 16);
                assert_eq!(s.n_re, vec![168, 840]);
                assert_eq!(s.trials, 100_000);
                assert_eq!(s.pfa_grid.first(), Some(&1e-3));
                assert_eq!(s.pfa_grid.last(), Some(&0.3));
            }
            Job::Simulation(_) => panic!("expected calibration job"),
        }

        let roc = FigurePreset::RocDetectors.resolve();
        assert_eq!(roc.scenario.preset, Preset::B20);
        assert_eq!(roc.scenario.jammer.l_p, 25);
        assert_eq!(roc.scenario.detector.selection, DetectorSelection::Both);
        assert_eq!(roc.sweeps.deployment.len(), 3);

        let mit = FigurePreset::BlerMitigation.resolve();
        assert_eq!(mit.scenario.preset, Preset::B100);
        assert_eq!(mit.scenario.deployment.kind, DeploymentKind::Centralized);
        assert_eq!(mit.scenario.jammer.l_p, 25);
        assert_eq!(mit.sweeps.m_p, vec![25, 85, 105]);
        assert_eq!(mit.sweeps.scheduling.len(), 2);

        let blank = FigurePreset::RocBlanking.resolve();
        assert_eq!(blank.scenario.deployment.kind, DeploymentKind::FullyDistributed);
        assert_eq!(blank.scenario.detector.selection, DetectorSelection::Rlrt);
        assert_eq!(blank.sweeps.l_p, vec![5, 25, 125]);
    }

    #[test]
    fn tables_select_the_work() {
        let cfg = FigurePreset::SinrCdf.resolve();
        match plan(&cfg, &[Table::SinrCdf], 0, false).unwrap() {
            Job::Simulation(s) => assert!(s.kpis && !s.detection),
            Job::FaCalibration(_) => panic!("expected simulation"),
        }
        let single = FigurePreset::RocDetectors.resolve();
        match plan(&single, &CUSTOM_TABLES, 0, false).unwrap() {
            Job::Simulation(s) => assert!(s.kpis && s.detection),
            Job::FaCalibration(_) => panic!("expected simulation"),
        }
        assert!(plan(&cfg, &[Table::FaCalibration, Table::Roc], 0, false).is_err());
        // a power sweep has no column in roc.csv
        assert_eq!(custom_tables(&cfg), vec![Table::SinrCdf, Table::BlerVsPj]);
        assert!(plan(&cfg, &[Table::Roc], 0, false).is_err());
        assert!(plan(&cfg, &[], 0, false).is_err());
    }
}
