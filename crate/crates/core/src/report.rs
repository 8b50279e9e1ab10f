//! CSV tables and the run manifest.
//!
//! Rows are sorted on typed sweep keys (jamming-free points first, then
//! increasing power) and floats are written with fixed significant digits,
//! so identical runs give byte-identical files.

use std::cmp::Ordering;
use std::path::Path;

use toml::Value;

use crate::config::{flatten, unflatten, FlatConfig, RunConfig};
use crate::error::{Error, Result};
use crate::figures::{Job, Table};
use crate::sim::{aggregate_cdf, fa_calibration, roc_table, run, FaCalibrationRow, RunOutput};

/// SINR grid of the CDF table in dB.
pub fn sinr_grid_db() -> Vec<f64> {
    (0..=280).map(|i| -60.0 + 0.5 * i as f64).collect()
}

fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

fn power(p: Option<f64>) -> String {
    p.map_or_else(|| "none".into(), |p| format!("{p:.1}"))
}

fn cmp_power(a: &Option<f64>, b: &Option<f64>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => x.total_cmp(y),
    }
}

fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV fields are UTF-8"))
}

pub fn fa_calibration_csv(rows: &[FaCalibrationRow]) -> Result<String> {
    let mut rows = rows.to_vec();
    rows.sort_by(|a, b| {
        (a.kind, a.n_re)
            .cmp(&(b.kind, b.n_re))
            .then(a.target_pfa.total_cmp(&b.target_pfa))
    });
    to_csv(
        &["detector", "n_re", "target_pfa", "empirical_pfa", "trials"],
        rows.iter().map(|r| {
            vec![
                r.kind.to_string(),
                r.n_re.to_string(),
                sci(r.target_pfa),
                sci(r.empirical_pfa),
                r.trials.to_string(),
            ]
        }),
    )
}

pub fn sinr_cdf_csv(out: &RunOutput) -> Result<String> {
    let grid = sinr_grid_db();
    let mut points: Vec<_> = out.points.iter().collect();
    points.sort_by(|a, b| {
        a.key
            .deployment
            .cmp(&b.key.deployment)
            .then(cmp_power(&a.p_j_dbm, &b.p_j_dbm))
            .then(a.key.l_p.cmp(&b.key.l_p))
    });
    let mut rows = Vec::new();
    for p in points {
        for (x, cdf) in aggregate_cdf(&p.sinr_eff_db(), &grid)? {
            rows.push(vec![
                p.key.deployment.to_string(),
                power(p.p_j_dbm),
                p.key.l_p.to_string(),
                format!("{x:.1}"),
                sci(cdf),
            ]);
        }
    }
    to_csv(&["deployment", "p_j_dbm", "l_p", "sinr_db", "cdf"], rows)
}

pub fn bler_csv(out: &RunOutput) -> Result<String> {
    let mut points: Vec<_> = out.points.iter().collect();
    points.sort_by(|a, b| {
        (a.key.deployment, a.key.l_p, a.key.m_p, a.key.scheduling)
            .cmp(&(b.key.deployment, b.key.l_p, b.key.m_p, b.key.scheduling))
            .then(cmp_power(&a.p_j_dbm, &b.p_j_dbm))
    });
    let mut rows = Vec::new();
    for p in points {
        let Some(bler) = p.mean_bler() else { continue };
        rows.push(vec![
            p.key.deployment.to_string(),
            p.key.l_p.to_string(),
            p.key.m_p.to_string(),
            p.key.scheduling.to_string(),
            power(p.p_j_dbm),
            sci(bler),
        ]);
    }
    to_csv(&["deployment", "l_p", "m_p", "scheduling", "p_j_dbm", "mean_bler"], rows)
}

pub fn roc_csv(out: &RunOutput, pfa_grid: &[f64]) -> Result<String> {
    let mut rows = Vec::new();
    for p in &out.points {
        for r in roc_table(&p.detections, &out.kinds, pfa_grid, p.noise_var_per_re)? {
            rows.push((r.kind, p.key.deployment, p.key.n_ant, p.key.m_p, p.key.l_p, r));
        }
    }
    rows.sort_by(|a, b| {
        (a.0, a.1, a.2, a.3, a.4)
            .cmp(&(b.0, b.1, b.2, b.3, b.4))
            .then(a.5.target_pfa.total_cmp(&b.5.target_pfa))
    });
    to_csv(
        &["detector", "deployment", "n_ant", "m_p", "l_p", "target_pfa", "empirical_pfa", "p_md"],
        rows.into_iter().map(|(kind, dep, n_ant, m_p, l_p, r)| {
            vec![
                kind.to_string(),
                dep.to_string(),
                n_ant.to_string(),
                m_p.to_string(),
                l_p.to_string(),
                sci(r.target_pfa),
                sci(r.empirical_pfa),
                sci(r.p_md),
            ]
        }),
    )
}

const KEY_COLUMNS: [&str; 6] = ["deployment", "n_ant", "l_p", "m_p", "scheduling", "p_j_dbm"];

/// Per-UE slot records, in simulation order.
pub fn slot_records_csv(out: &RunOutput) -> Result<String> {
    let mut header = KEY_COLUMNS.to_vec();
    header.extend(["drop", "slot", "ue", "sinr_eff_db", "bler", "prb_sinr_db"]);
    let mut rows = Vec::new();
    for p in &out.points {
        let k = &p.key;
        for s in &p.slots {
            for ue in 0..s.bler.len() {
                let prb = s.prb_sinr_db.as_ref().map_or_else(String::new, |v| {
                    v[ue].iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(";")
                });
                rows.push(vec![
                    k.deployment.to_string(),
                    k.n_ant.to_string(),
                    k.l_p.to_string(),
                    k.m_p.to_string(),
                    k.scheduling.to_string(),
                    power(p.p_j_dbm),
                    s.drop.to_string(),
                    s.slot.to_string(),
                    ue.to_string(),
                    format!("{:.4}", s.sinr_eff_db[ue]),
                    sci(s.bler[ue]),
                    prb,
                ]);
            }
        }
    }
    to_csv(&header, rows)
}

/// Detector statistics under both hypotheses, in simulation order.
pub fn detection_records_csv(out: &RunOutput) -> Result<String> {
    let mut header: Vec<String> = KEY_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend(["drop", "slot", "n_re", "intersect"].map(String::from));
    for k in &out.kinds {
        header.push(format!("{k}_h1"));
        header.push(format!("{k}_h0"));
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut rows = Vec::new();
    for p in &out.points {
        let k = &p.key;
        for r in &p.detections {
            let mut row = vec![
                k.deployment.to_string(),
                k.n_ant.to_string(),
                k.l_p.to_string(),
                k.m_p.to_string(),
                k.scheduling.to_string(),
                power(p.p_j_dbm),
                r.drop.to_string(),
                r.slot.to_string(),
                r.n_re.to_string(),
                r.intersect.to_string(),
            ];
            for (h1, h0) in r.h1.iter().zip(&r.h0) {
                row.push(format!("{h1:.10e}"));
                row.push(format!("{h0:.10e}"));
            }
            rows.push(row);
        }
    }
    to_csv(&header, rows)
}

/// Rendered output files of one run, by file name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outputs {
    pub files: Vec<(String, String)>,
}

impl Outputs {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, c)| c.as_str())
    }
}

/// Runs `job` and renders `tables` (plus the record dumps when verbose).
pub fn execute(job: &Job, tables: &[Table], pfa_grid: &[f64]) -> Result<Outputs> {
    let mut files = Vec::new();
    match job {
        Job::FaCalibration(spec) => {
            let rows = fa_calibration(spec)?;
            files.push((Table::FaCalibration.file_name().to_string(), fa_calibration_csv(&rows)?));
        }
        Job::Simulation(spec) => {
            let out = run(spec)?;
            for &t in tables {
                let body = match t {
                    Table::SinrCdf => sinr_cdf_csv(&out)?,
                    Table::BlerVsPj => bler_csv(&out)?,
                    Table::Roc => roc_csv(&out, pfa_grid)?,
                    Table::FaCalibration => continue,
                };
                files.push((t.file_name().to_string(), body));
            }
            if spec.verbose {
                if spec.kpis {
                    files.push(("slot_records.csv".into(), slot_records_csv(&out)?));
                }
                if spec.detection {
                    files.push(("detection_records.csv".into(), detection_records_csv(&out)?));
                }
            }
        }
    }
    Ok(Outputs { files })
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    /// Figure preset name, or `custom`.
    pub preset: String,
    pub config: RunConfig,
    pub overrides: Vec<String>,
    pub threads: usize,
    pub git_describe: String,
    pub wall_time_s: f64,
}

/// Top-level table of the manifest holding the run metadata; the rest of
/// the file is the resolved config.
pub const MANIFEST_TABLE: &str = "manifest";

impl Manifest {
    pub fn to_toml(&self) -> String {
        let mut root = unflatten(&self.config.to_flat());
        let mut meta = toml::Table::new();
        meta.insert("preset".into(), Value::String(self.preset.clone()));
        let seed = self.config.scenario.mc.seed;
        meta.insert(
            "seed".into(),
            i64::try_from(seed).map_or_else(|_| Value::String(seed.to_string()), Value::Integer),
        );
        meta.insert(
            "overrides".into(),
            Value::Array(self.overrides.iter().cloned().map(Value::String).collect()),
        );
        meta.insert("threads".into(), Value::Integer(self.threads as i64));
        meta.insert("git_describe".into(), Value::String(self.git_describe.clone()));
        meta.insert("wall_time_s".into(), Value::Float((self.wall_time_s * 1e3).round() / 1e3));
        meta.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
        root.insert(MANIFEST_TABLE.into(), Value::Table(meta));
        toml::to_string(&root).expect("manifest serializes")
    }
}

/// Reads a config file; a manifest's run table is stripped and its preset
/// name returned.
pub fn read_config_file(path: &Path) -> Result<(FlatConfig, Option<String>)> {
    let mut table: toml::Table = std::fs::read_to_string(path)?.parse()?;
    let preset = match table.remove(MANIFEST_TABLE) {
        Some(Value::Table(meta)) => meta.get("preset").and_then(Value::as_str).map(String::from),
        Some(_) => return Err(Error::Config(format!("`{MANIFEST_TABLE}` must be a table"))),
        None => None,
    };
    Ok((flatten(&table), preset))
}

/// `git describe` of the source tree, or `unknown` outside a checkout.
pub fn git_describe() -> String {
    std::process::Command::new("git")
        .args(["describe", "--always", "--dirty", "--tags"])
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .ok()
        .filter(|o| o.status.success())
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ScenarioConfig, Sweeps};
    use crate::detect::DetectorKind;
    use crate::scenario::{DeploymentKind, Preset};
    use crate::sim::RunSpec;

    fn small_output() -> RunOutput {
        let mut c = ScenarioConfig::preset(Preset::B20);
        c.mc.n_drops = 3;
        c.mc.n_slots = 2;
        c.set_deployment(DeploymentKind::Centralized, 16).unwrap();
        let sweeps = Sweeps {
            p_j_dbm: vec![Some(60.0), None],
            l_p: vec![25, 5],
            ..Sweeps::default()
        };
        run(&RunSpec::new(c, sweeps)).unwrap()
    }

    #[test]
    fn fa_rows_are_sorted_and_formatted() {
        let row = |kind, n_re, p| FaCalibrationRow {
            kind,
            n_re,
            target_pfa: p,
            empirical_pfa: p,
            trials: 10,
        };
        let rows = [
            row(DetectorKind::Rlrt, 168, 0.1),
            row(DetectorKind::Glrt, 840, 0.01),
            row(DetectorKind::Glrt, 168, 0.1),
            row(DetectorKind::Glrt, 168, 0.01),
        ];
        let csv = fa_calibration_csv(&rows).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "detector,n_re,target_pfa,empirical_pfa,trials");
        assert_eq!(lines[1], "glrt,168,1.000000e-2,1.000000e-2,10");
        assert_eq!(lines[2], "glrt,168,1.000000e-1,1.000000e-1,10");
        assert_eq!(lines[3], "glrt,840,1.000000e-2,1.000000e-2,10");
        assert!(lines[4].starts_with("rlrt,168"));
    }

    #[test]
    fn tables_have_headers_and_sorted_keys() {
        let out = small_output();
        let cdf = sinr_cdf_csv(&out).unwrap();
        let mut lines = cdf.lines();
        assert_eq!(lines.next(), Some("deployment,p_j_dbm,l_p,sinr_db,cdf"));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&first[..4], &["centralized", "none", "5", "-60.0"]);
        assert_eq!(cdf.lines().count(), 1 + 4 * sinr_grid_db().len());
        // each curve is non-decreasing and ends at 1
        let rows: Vec<Vec<String>> = cdf.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect();
        for curve in rows.chunks(sinr_grid_db().len()) {
            let v: Vec<f64> = curve.iter().map(|r| r[4].parse().unwrap()).collect();
            assert!(v.windows(2).all(|w| w[1] >= w[0]));
            assert_eq!(*v.last().unwrap(), 1.0);
        }

        let bler = bler_csv(&out).unwrap();
        let lines: Vec<&str> = bler.lines().collect();
        assert_eq!(lines[0], "deployment,l_p,m_p,scheduling,p_j_dbm,mean_bler");
        assert!(lines[1].starts_with("centralized,5,5,random,none,"));
        assert!(lines[2].starts_with("centralized,5,5,random,60.0,"));
        assert!(lines[3].starts_with("centralized,25,5,random,none,"));

        let roc = roc_csv(&out, &[0.01, 0.1]).unwrap();
        let lines: Vec<&str> = roc.lines().collect();
        assert_eq!(lines[0], "detector,deployment,n_ant,m_p,l_p,target_pfa,empirical_pfa,p_md");
        assert!(lines[1].starts_with("glrt,centralized,16,5,5,1.000000e-2,"));
    }

    #[test]
    fn record_dumps_cover_every_sample() {
        let mut c = ScenarioConfig::preset(Preset::B20);
        c.mc.n_drops = 2;
        c.mc.n_slots = 3;
        c.set_deployment(DeploymentKind::Centralized, 16).unwrap();
        let mut spec = RunSpec::new(c, Sweeps::default());
        spec.verbose = true;
        let out = run(&spec).unwrap();
        let slots = slot_records_csv(&out).unwrap();
        assert_eq!(slots.lines().count(), 1 + 2 * 3 * 4);
        let first = slots.lines().nth(1).unwrap();
        // five data PRBs per UE in B20 with five blanked
        assert_eq!(first.split(',').last().unwrap().split(';').count(), 5);
        let det = detection_records_csv(&out).unwrap();
        assert!(det.lines().next().unwrap().ends_with("glrt_h1,glrt_h0,rlrt_h1,rlrt_h0"));
        assert_eq!(det.lines().count(), 1 + 2 * 3);
    }

    #[test]
    fn manifest_reloads_to_the_same_config() {
        let config = crate::figures::FigurePreset::RocBlanking.resolve();
        let m = Manifest {
            preset: "fig7_roc_blanking".into(),
            config: config.clone(),
            overrides: vec!["jammer.power_dbm=40".into()],
            threads: 2,
            git_describe: "abc123".into(),
            wall_time_s: 1.23456,
        };
        let text = m.to_toml();
        let table: toml::Table = text.parse().unwrap();
        let meta = &table[MANIFEST_TABLE];
        assert_eq!(meta["overrides"][0].as_str(), Some("jammer.power_dbm=40"));
        assert_eq!(meta["wall_time_s"].as_float(), Some(1.235));

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.toml");
        std::fs::write(&path, &text).unwrap();
        let (flat, preset) = read_config_file(&path).unwrap();
        assert_eq!(preset.as_deref(), Some("fig7_roc_blanking"));
        assert_eq!(RunConfig::from_flat(&flat).unwrap(), config);

        std::fs::write(&path, "manifest = 3\n").unwrap();
        assert!(read_config_file(&path).is_err());
    }
}
