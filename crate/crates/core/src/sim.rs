//! Monte Carlo engine.
//!
//! Structural sweep points (deployment, antennas, L_P, M_P, scheduling) are
//! simulated one after another. Within a point, drops run in parallel and
//! each drop walks its slots in order. The jammer power grid is evaluated
//! inside every slot on the same fading, estimation-noise and observation
//! draws, so curves over P_J are smooth and comparisons across P_J are
//! paired.

use rayon::prelude::*;

use crate::channel::{ArrayModel, ChannelRealization, DropChannel};
use crate::config::{ObservationMode, ScenarioConfig, Sweeps};
use crate::defense::{jammer_prbs, Scheduling, SlotPlan};
use crate::detect::{self, DetectorKind, Gram, JammedPrb, ObservationDraw};
use crate::error::{Error, Result};
use crate::link::{
    draw_pilot_noise, estimate_channel, linear_to_db, mrc_combiner, sinr_per_prb, LinkBudget,
    PilotContext,
};
use crate::rng::{substream, Purpose};
use crate::scenario::{dbm_to_watt, noise_power_per_prb, power_per_prb, sample_drop, DeploymentKind};

#[derive(Debug, Clone)]
pub struct RunSpec {
    pub scenario: ScenarioConfig,
    pub sweeps: Sweeps,
    /// Compute SINR and BLER.
    pub kpis: bool,
    /// Run the detectors on blanked REs.
    pub detection: bool,
    /// Keep per-PRB SINR in the slot records.
    pub verbose: bool,
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
}

impl RunSpec {
    pub fn new(scenario: ScenarioConfig, sweeps: Sweeps) -> Self {
        Self {
            scenario,
            sweeps,
            kpis: true,
            detection: true,
            verbose: false,
            threads: 0,
        }
    }

    fn grid<T: Clone>(sweep: &[T], default: T) -> Vec<T> {
        if sweep.is_empty() {
            vec![default]
        } else {
            sweep.to_vec()
        }
    }

    pub fn p_j_grid(&self) -> Vec<Option<f64>> {
        Self::grid(&self.sweeps.p_j_dbm, self.scenario.jammer.power_dbm)
    }

    /// Structural points in sweep order.
    pub fn points(&self) -> Vec<PointKey> {
        let c = &self.scenario;
        let mut out = Vec::new();
        for deployment in Self::grid(&self.sweeps.deployment, c.deployment.kind) {
            for n_ant in Self::grid(&self.sweeps.n_ant, c.deployment.n_ant_total) {
                for l_p in Self::grid(&self.sweeps.l_p, c.jammer.l_p) {
                    for m_p in Self::grid(&self.sweeps.m_p, c.defense.m_p) {
                        for scheduling in Self::grid(&self.sweeps.scheduling, c.defense.scheduling) {
                            out.push(PointKey {
                                deployment,
                                n_ant,
                                l_p,
                                m_p,
                                scheduling,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Scenario with the structural values of `key` substituted.
    pub fn scenario_at(&self, key: &PointKey) -> Result<ScenarioConfig> {
        let mut c = self.scenario.clone();
        if key.deployment != c.deployment.kind || key.n_ant != c.deployment.n_ant_total {
            c.set_deployment(key.deployment, key.n_ant)?;
        }
        c.jammer.l_p = key.l_p;
        c.defense.m_p = key.m_p;
        c.defense.scheduling = key.scheduling;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        for key in self.points() {
            self.scenario_at(&key)?;
        }
        if let Some(p) = self.sweeps.p_j_dbm.iter().flatten().find(|p| !p.is_finite()) {
            return Err(Error::out_of_range("sweep.p_j_dbm", p, "finite or \"none\""));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointKey {
    pub deployment: DeploymentKind,
    pub n_ant: usize,
    pub l_p: usize,
    pub m_p: usize,
    pub scheduling: Scheduling,
}

/// KPIs of one slot at one jammer power.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotRecord {
    pub drop: usize,
    pub slot: usize,
    /// Effective SINR per UE in dB.
    pub sinr_eff_db: Vec<f64>,
    pub bler: Vec<f64>,
    /// Per UE, SINR of each allocated PRB in dB (verbose mode only).
    pub prb_sinr_db: Option<Vec<Vec<f64>>>,
}

/// Detector statistics of one decision interval (one slot unless slots are
/// accumulated) under jamming and on the noise-only replica.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionRecord {
    pub drop: usize,
    /// First slot of the interval.
    pub slot: usize,
    pub n_re: usize,
    pub n_ant: usize,
    /// Blanked PRBs carrying jamming, summed over the interval.
    pub intersect: usize,
    /// Statistic per detector kind (in `RunOutput::kinds` order).
    pub h1: Vec<f64>,
    pub h0: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct PointResult {
    pub key: PointKey,
    pub p_j_dbm: Option<f64>,
    pub noise_var_per_re: f64,
    pub slots: Vec<SlotRecord>,
    pub detections: Vec<DetectionRecord>,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub kinds: Vec<DetectorKind>,
    pub points: Vec<PointResult>,
}

struct DropOutput {
    slots: Vec<Vec<SlotRecord>>,
    detections: Vec<Vec<DetectionRecord>>,
}

struct PointContext<'a> {
    spec: &'a RunSpec,
    cfg: ScenarioConfig,
    kinds: Vec<DetectorKind>,
    p_j: Vec<Option<f64>>,
    sigma_w2: f64,
}

fn numerical(drop: usize, slot: usize, e: impl std::fmt::Display) -> Error {
    let err = Error::Numerical {
        drop,
        slot,
        detail: e.to_string(),
    };
    log::error!("{err}");
    err
}

impl PointContext<'_> {
    fn simulate_drop(&self, d: usize) -> Result<DropOutput> {
        let cfg = &self.cfg;
        let seed = cfg.mc.seed;
        let n_prb = cfg.numerology.n_prb;
        let n_re_prb = cfg.numerology.n_re_per_prb;
        let n_ue = cfg.n_ue;
        let n_ant = cfg.deployment.n_ant_total;
        let n_pj = self.p_j.len();
        let accumulate = cfg.detector.accumulate_slots;
        let sigma_re = self.sigma_w2 / n_re_prb as f64;
        let du = d as u64;

        let drop = sample_drop(cfg, &mut substream(seed, Purpose::Positions, du, 0));
        let array = ArrayModel::new(&cfg.deployment, &cfg.channel)?;
        let channel = DropChannel::new(&drop, &cfg.deployment, array, &cfg.channel)
            .map_err(|e| numerical(d, 0, e))?;
        let p_ue = dbm_to_watt(cfg.ue_power_dbm);

        let mut out = DropOutput {
            slots: vec![Vec::with_capacity(cfg.mc.n_slots); n_pj],
            detections: vec![Vec::new(); n_pj],
        };
        let mut acc_h1: Vec<Option<Gram>> = vec![None; n_pj];
        let mut acc_h0: Option<Gram> = None;
        let mut acc_intersect = 0;

        for s in 0..cfg.mc.n_slots {
            let su = s as u64;
            let slot_index = (d * cfg.mc.n_slots + s) as u64;
            let jam_slot = if cfg.jammer.freeze_prbs { 0 } else { su + 1 };
            let jammed = jammer_prbs(
                cfg.jammer.l_p,
                n_prb,
                &mut substream(seed, Purpose::JammerSet, du, jam_slot),
            )?;
            let plan = SlotPlan::new(
                slot_index,
                cfg.defense.key,
                n_prb,
                cfg.defense.m_p,
                n_ue,
                cfg.defense.scheduling,
                jammed,
            )?;
            let real = ChannelRealization::draw(
                &channel,
                &plan.allocation,
                &plan.jammed,
                &mut substream(seed, Purpose::UeFading, du, su),
                &mut substream(seed, Purpose::JammerFading, du, su),
            );
            let jammer_gain = &real.large_scale_gain[n_ue];

            if self.spec.kpis {
                let mut est_rng = substream(seed, Purpose::Estimation, du, su);
                let unit_noise: Vec<Option<Vec<_>>> = plan
                    .allocation
                    .iter()
                    .map(|a| a.map(|_| draw_pilot_noise(cfg.link.pilot_noise, n_ant, &mut est_rng)))
                    .collect();
                for (k, p_j_dbm) in self.p_j.iter().enumerate() {
                    let p_j_prb = p_j_dbm.map_or(0.0, |p| dbm_to_watt(p) / cfg.jammer.l_p as f64);
                    let mut rec = SlotRecord {
                        drop: d,
                        slot: s,
                        sinr_eff_db: Vec::with_capacity(n_ue),
                        bler: Vec::with_capacity(n_ue),
                        prb_sinr_db: self.spec.verbose.then(|| Vec::with_capacity(n_ue)),
                    };
                    for ue in 0..n_ue {
                        let prbs = plan.prbs_of(ue);
                        let p_ue_prb = power_per_prb(p_ue, prbs.len());
                        let mut sinrs = Vec::with_capacity(prbs.len());
                        for &prb in &prbs {
                            let attacked = plan.is_jammed(prb);
                            let ctx = PilotContext {
                                ue_gain: &real.large_scale_gain[ue],
                                jammer_gain,
                                p_ue_prb,
                                p_j_prb: if attacked { p_j_prb } else { 0.0 },
                                sigma_w2: self.sigma_w2,
                                pilot_length: cfg.pilot_length,
                            };
                            let h = real.ue_channels[ue][prb].as_deref().expect("allocated PRB has a channel");
                            let unit = unit_noise[prb].as_deref().expect("allocated PRB has pilot noise");
                            let est = estimate_channel(h, &ctx, unit);
                            let g = mrc_combiner(&est.h_hat).map_err(|e| numerical(d, s, e))?;
                            let h_jam = if attacked { real.jammer_channel[prb].as_deref() } else { None };
                            sinrs.push(sinr_per_prb(h, h_jam, &g, p_ue_prb, ctx.p_j_prb, self.sigma_w2));
                        }
                        if let Some(v) = rec.prb_sinr_db.as_mut() {
                            v.push(sinrs.iter().map(|&x| linear_to_db(x)).collect());
                        }
                        let budget = LinkBudget::evaluate(
                            sinrs,
                            n_re_prb,
                            cfg.numerology.overhead,
                            cfg.numerology.packet_size_bits,
                            cfg.link.eesm_beta,
                        )
                        .map_err(|e| numerical(d, s, e))?;
                        if !budget.sinr_eff.is_finite() || !budget.bler.is_finite() {
                            return Err(numerical(d, s, format!("non-finite KPI for UE {ue}")));
                        }
                        rec.sinr_eff_db.push(linear_to_db(budget.sinr_eff));
                        rec.bler.push(budget.bler);
                    }
                    out.slots[k].push(rec);
                }
            }

            if self.spec.detection {
                let jb = plan.jammed_blanked();
                let n_re = cfg.defense.m_p * n_re_prb;
                let draw_fn = match cfg.detector.observation {
                    ObservationMode::Sufficient => ObservationDraw::sufficient,
                    ObservationMode::Samples => ObservationDraw::samples,
                };
                let mut rng1 = substream(seed, Purpose::ObservationH1, du, su);
                let mut rng0 = substream(seed, Purpose::ObservationH0, du, su);
                let h1 = draw_fn(n_ant, n_re, jb.len(), n_re_prb, &mut rng1)?;
                let h0 = draw_fn(n_ant, n_re, 0, n_re_prb, &mut rng0)?.gram(sigma_re, &[])?;
                match acc_h0.as_mut() {
                    Some(g) => g.accumulate(&h0)?,
                    None => acc_h0 = Some(h0),
                }
                acc_intersect += jb.len();
                for (k, p_j_dbm) in self.p_j.iter().enumerate() {
                    let p_re = p_j_dbm.map_or(0.0, |p| dbm_to_watt(p) / cfg.jammer.l_p as f64) / n_re_prb as f64;
                    let jam: Vec<JammedPrb> = jb
                        .iter()
                        .map(|&prb| JammedPrb {
                            channel: real.jammer_channel[prb].as_deref().expect("jammed PRB has a channel"),
                            power_per_re: p_re,
                        })
                        .collect();
                    let g = h1.gram(sigma_re, &jam)?;
                    match acc_h1[k].as_mut() {
                        Some(a) => a.accumulate(&g)?,
                        None => acc_h1[k] = Some(g),
                    }
                }
                if (s + 1) % accumulate == 0 {
                    let g0 = acc_h0.take().expect("accumulated H0");
                    let h0_stats = self.statistics(&g0, d, s)?;
                    for (k, slot_acc) in acc_h1.iter_mut().enumerate() {
                        let g1 = slot_acc.take().expect("accumulated H1");
                        out.detections[k].push(DetectionRecord {
                            drop: d,
                            slot: s + 1 - accumulate,
                            n_re: g1.n_re,
                            n_ant,
                            intersect: acc_intersect,
                            h1: self.statistics(&g1, d, s)?,
                            h0: h0_stats.clone(),
                        });
                    }
                    acc_intersect = 0;
                }
            }
        }
        Ok(out)
    }

    fn statistics(&self, g: &Gram, d: usize, s: usize) -> Result<Vec<f64>> {
        let stats: Vec<f64> = self.kinds.iter().map(|&k| g.statistic(k)).collect();
        if stats.iter().any(|x| !x.is_finite()) {
            return Err(numerical(d, s, "non-finite detector statistic"));
        }
        Ok(stats)
    }
}

fn run_point(spec: &RunSpec, key: PointKey) -> Result<Vec<PointResult>> {
    let cfg = spec.scenario_at(&key)?;
    let sigma_w2 = noise_power_per_prb(&cfg.numerology, cfg.noise_figure_db);
    let ctx = PointContext {
        spec,
        kinds: cfg.detector.selection.kinds().to_vec(),
        p_j: spec.p_j_grid(),
        sigma_w2,
        cfg,
    };
    let drops: Vec<DropOutput> = (0..ctx.cfg.mc.n_drops)
        .into_par_iter()
        .map(|d| ctx.simulate_drop(d))
        .collect::<Result<_>>()?;
    let n_re_prb = ctx.cfg.numerology.n_re_per_prb;
    let mut results: Vec<PointResult> = ctx
        .p_j
        .iter()
        .map(|&p_j_dbm| PointResult {
            key,
            p_j_dbm,
            noise_var_per_re: sigma_w2 / n_re_prb as f64,
            slots: Vec::new(),
            detections: Vec::new(),
        })
        .collect();
    for drop in drops {
        for (r, (slots, dets)) in results.iter_mut().zip(drop.slots.into_iter().zip(drop.detections)) {
            r.slots.extend(slots);
            r.detections.extend(dets);
        }
    }
    Ok(results)
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    if threads == 0 {
        return f();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {threads} worker threads: {e}")))?;
    pool.install(f)
}

/// Runs every sweep point. Output is a pure function of the spec.
pub fn run(spec: &RunSpec) -> Result<RunOutput> {
    spec.validate()?;
    let kinds = spec.scenario.detector.selection.kinds().to_vec();
    with_threads(spec.threads, || {
        let mut points = Vec::new();
        for key in spec.points() {
            log::info!("simulating {key:?}");
            points.extend(run_point(spec, key)?);
        }
        Ok(RunOutput { kinds, points })
    })
}

/// Empirical CDF of `values` on `grid`.
pub fn aggregate_cdf(values: &[f64], grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if values.is_empty() {
        return Err(Error::Degenerate("CDF of an empty sample"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(grid
        .iter()
        .map(|&x| (x, sorted.partition_point(|&v| v <= x) as f64 / n))
        .collect())
}

/// Value below which a fraction `p` of the sample lies (lower empirical quantile).
pub fn empirical_quantile(values: &[f64], p: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Degenerate("quantile of an empty sample"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let idx = ((p * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len()) - 1;
    Ok(sorted[idx])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub kind: DetectorKind,
    pub target_pfa: f64,
    pub empirical_pfa: f64,
    pub p_md: f64,
}

/// Re-thresholds stored statistics at each target false-alarm probability.
pub fn roc_table(
    records: &[DetectionRecord],
    kinds: &[DetectorKind],
    pfa_grid: &[f64],
    noise_var_per_re: f64,
) -> Result<Vec<RocPoint>> {
    if records.is_empty() {
        return Err(Error::Degenerate("ROC of an empty record set"));
    }
    let mut out = Vec::with_capacity(kinds.len() * pfa_grid.len());
    for (i, &kind) in kinds.iter().enumerate() {
        for &pfa in pfa_grid {
            let (mut fa, mut md) = (0usize, 0usize);
            let mut cached: Option<((usize, usize), f64)> = None;
            for r in records {
                let dims = (r.n_re, r.n_ant);
                let delta = match cached {
                    Some((k, t)) if k == dims => t,
                    _ => {
                        let t = detect::threshold(kind, pfa, r.n_re, r.n_ant, noise_var_per_re)?;
                        cached = Some((dims, t));
                        t
                    }
                };
                fa += usize::from(r.h0[i] > delta);
                md += usize::from(r.h1[i] <= delta);
            }
            let n = records.len() as f64;
            out.push(RocPoint {
                kind,
                target_pfa: pfa,
                empirical_pfa: fa as f64 / n,
                p_md: md as f64 / n,
            });
        }
    }
    Ok(out)
}

impl PointResult {
    pub fn mean_bler(&self) -> Option<f64> {
        let n: usize = self.slots.iter().map(|s| s.bler.len()).sum();
        (n > 0).then(|| self.slots.iter().flat_map(|s| &s.bler).sum::<f64>() / n as f64)
    }

    pub fn sinr_eff_db(&self) -> Vec<f64> {
        self.slots.iter().flat_map(|s| s.sinr_eff_db.iter().copied()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaCalibrationRow {
    pub kind: DetectorKind,
    pub n_re: usize,
    pub target_pfa: f64,
    pub empirical_pfa: f64,
    pub trials: usize,
}

#[derive(Debug, Clone)]
pub struct FaCalibrationSpec {
    pub n_ant: usize,
    pub n_re: Vec<usize>,
    pub kinds: Vec<DetectorKind>,
    pub pfa_grid: Vec<f64>,
    pub trials: usize,
    pub mode: ObservationMode,
    pub seed: u64,
    pub threads: usize,
}

/// Empirical false-alarm rate of each detector on white noise.
pub fn fa_calibration(spec: &FaCalibrationSpec) -> Result<Vec<FaCalibrationRow>> {
    let FaCalibrationSpec {
        n_ant,
        ref n_re,
        ref kinds,
        ref pfa_grid,
        trials,
        mode,
        seed,
        threads,
    } = *spec;
    if let Some(p) = pfa_grid.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
        return Err(Error::out_of_range("target_pfa", p, "(0, 1)"));
    }
    if trials == 0 {
        return Err(Error::out_of_range("trials", 0, ">= 1"));
    }
    // unit noise variance: both statistics are scale-free under H0 relative to their thresholds
    let sigma = 1.0;
    const CHUNK: usize = 1000;
    with_threads(threads, || {
        let mut rows = Vec::new();
        for &n_re in n_re {
            let stats: Vec<Vec<f64>> = (0..trials.div_ceil(CHUNK))
                .into_par_iter()
                .map(|c| -> Result<Vec<Vec<f64>>> {
                    let mut rng = substream(seed, Purpose::ObservationH0, n_re as u64, c as u64);
                    let end = ((c + 1) * CHUNK).min(trials);
                    (c * CHUNK..end)
                        .map(|_| {
                            let draw = match mode {
                                ObservationMode::Sufficient => ObservationDraw::sufficient(n_ant, n_re, 0, 1, &mut rng)?,
                                ObservationMode::Samples => ObservationDraw::samples(n_ant, n_re, 0, 1, &mut rng)?,
                            };
                            let g = draw.gram(sigma, &[])?;
                            Ok(kinds.iter().map(|&k| g.statistic(k)).collect())
                        })
                        .collect()
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            for (i, &kind) in kinds.iter().enumerate() {
                for &pfa in pfa_grid {
                    let delta = detect::threshold(kind, pfa, n_re, n_ant, sigma)?;
                    let fa = stats.iter().filter(|s| s[i] > delta).count();
                    rows.push(FaCalibrationRow {
                        kind,
                        n_re,
                        target_pfa: pfa,
                        empirical_pfa: fa as f64 / trials as f64,
                        trials,
                    });
                }
            }
        }
        Ok(rows)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Preset;

    fn small_spec() -> RunSpec {
        let mut c = ScenarioConfig::preset(Preset::B20);
        c.mc.n_drops = 6;
        c.mc.n_slots = 4;
        c.deployment = crate::scenario::Deployment::named(
            DeploymentKind::PartiallyDistributed,
            16,
            c.deployment.hall,
        )
        .unwrap();
        let sweeps = Sweeps {
            p_j_dbm: vec![None, Some(20.0), Some(60.0)],
            ..Sweeps::default()
        };
        RunSpec::new(c, sweeps)
    }

    #[test]
    fn cdf_examples() {
        let grid = [-1.0, 0.0, 2.0, 3.0, 10.0];
        let cdf = aggregate_cdf(&[3.0; 5], &grid).unwrap();
        assert_eq!(cdf.iter().map(|p| p.1).collect::<Vec<_>>(), vec![0.0, 0.0, 0.0, 1.0, 1.0]);
        let cdf = aggregate_cdf(&[1.0, 5.0, -2.0], &[f64::NEG_INFINITY, f64::INFINITY]).unwrap();
        assert_eq!((cdf[0].1, cdf[1].1), (0.0, 1.0));
        assert!(aggregate_cdf(&[], &grid).is_err());
        let values: Vec<f64> = (1..=1000).map(|i| i as f64).collect();
        assert_eq!(empirical_quantile(&values, 0.01).unwrap(), 10.0);
    }

    #[test]
    fn zero_jammer_power_gives_snr() {
        let mut spec = small_spec();
        spec.detection = false;
        spec.sweeps.p_j_dbm = vec![None, Some(f64::NEG_INFINITY)];
        // -inf dBm is rejected; use the "none" point and a vanishing power instead
        assert!(run(&spec).is_err());
        spec.sweeps.p_j_dbm = vec![None, Some(-400.0)];
        let out = run(&spec).unwrap();
        let (a, b) = (out.points[0].sinr_eff_db(), out.points[1].sinr_eff_db());
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            let (x, y) = (10f64.powf(x / 10.0), 10f64.powf(y / 10.0));
            assert!((x / y - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn jamming_degrades_kpis() {
        let mut spec = small_spec();
        spec.detection = false;
        let out = run(&spec).unwrap();
        let b: Vec<f64> = out.points.iter().map(|p| p.mean_bler().unwrap()).collect();
        assert!(b[0] <= b[1] && b[1] < b[2], "{b:?}");
        let med: Vec<f64> = out
            .points
            .iter()
            .map(|p| empirical_quantile(&p.sinr_eff_db(), 0.5).unwrap())
            .collect();
        assert!(med[0] > med[2]);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let mut spec = small_spec();
        spec.threads = 1;
        let a = run(&spec).unwrap();
        spec.threads = 3;
        let b = run(&spec).unwrap();
        for (x, y) in a.points.iter().zip(&b.points) {
            assert_eq!(x.slots, y.slots);
            assert_eq!(x.detections, y.detections);
        }
    }

    #[test]
    fn records_have_expected_shape() {
        let mut spec = small_spec();
        spec.verbose = true;
        let out = run(&spec).unwrap();
        assert_eq!(out.points.len(), 3);
        for p in &out.points {
            assert_eq!(p.slots.len(), 24);
            assert_eq!(p.detections.len(), 24);
            for s in &p.slots {
                assert_eq!(s.sinr_eff_db.len(), 4);
                let per_prb = s.prb_sinr_db.as_ref().unwrap();
                // 25 PRBs, 5 blanked, 20 data PRBs split over 4 UEs
                assert_eq!(per_prb.iter().map(Vec::len).sum::<usize>(), 20);
            }
            for d in &p.detections {
                assert_eq!(d.n_re, 5 * 168);
                assert!(d.intersect <= 5);
                assert_eq!(d.h1.len(), 2);
            }
        }
        // H0 replica does not depend on the jammer power
        assert_eq!(out.points[0].detections[3].h0, out.points[2].detections[3].h0);
    }

    #[test]
    fn no_intersection_means_noise_only() {
        // a wide-band jammer always intersects; a jammer-free point never does
        let mut spec = small_spec();
        spec.kpis = false;
        spec.scenario.mc.n_drops = 40;
        spec.scenario.mc.n_slots = 25;
        spec.sweeps.p_j_dbm = vec![None];
        let out = run(&spec).unwrap();
        let roc = roc_table(&out.points[0].detections, &out.kinds, &[0.05, 0.2], out.points[0].noise_var_per_re).unwrap();
        let n = out.points[0].detections.len() as f64;
        for r in roc {
            // P_MD = 1 - P_FA up to binomial noise of the two independent replicas
            let band = 4.0 * (r.target_pfa * (1.0 - r.target_pfa) / n).sqrt() * 2f64.sqrt();
            assert!((r.p_md - (1.0 - r.empirical_pfa)).abs() < band + 0.02, "{r:?}");
        }
    }

    #[test]
    fn roc_extremes() {
        let mut spec = small_spec();
        spec.kpis = false;
        spec.sweeps.p_j_dbm = vec![Some(60.0)];
        let out = run(&spec).unwrap();
        let p = &out.points[0];
        let roc = roc_table(&p.detections, &out.kinds, &[1e-9, 1.0 - 1e-9], p.noise_var_per_re).unwrap();
        for r in roc.iter().filter(|r| r.target_pfa > 0.5) {
            assert_eq!(r.p_md, 0.0);
            assert_eq!(r.empirical_pfa, 1.0);
        }
        assert!(roc_table(&p.detections, &out.kinds, &[1.0], p.noise_var_per_re).is_err());
    }

    #[test]
    fn accumulation_pools_slots() {
        let mut spec = small_spec();
        spec.kpis = false;
        spec.scenario.detector.accumulate_slots = 2;
        let out = run(&spec).unwrap();
        let d = &out.points[0].detections;
        assert_eq!(d.len(), 12);
        assert!(d.iter().all(|r| r.n_re == 2 * 5 * 168 && r.slot % 2 == 0));
    }

    #[test]
    fn ue_power_is_conserved() {
        let p_ue = dbm_to_watt(10.0);
        for m_p in [5, 12, 20] {
            let plan = SlotPlan::new(3, 9, 25, m_p, 4, Scheduling::Random, vec![0]).unwrap();
            let total: f64 = (0..4)
                .map(|ue| {
                    let f = plan.prbs_of(ue).len();
                    f as f64 * power_per_prb(p_ue, f)
                })
                .sum();
            assert!((total / (4.0 * p_ue) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fa_calibration_glrt_is_exact() {
        let rows = fa_calibration(&FaCalibrationSpec {
            n_ant: 4,
            n_re: vec![24],
            kinds: vec![DetectorKind::Glrt],
            pfa_grid: vec![0.1],
            trials: 20_000,
            mode: ObservationMode::Sufficient,
            seed: 3,
            threads: 0,
        })
        .unwrap();
        let band = 3.0 * (0.1f64 * 0.9 / 20_000.0).sqrt();
        assert!((rows[0].empirical_pfa - 0.1).abs() < band, "{rows:?}");
    }
}
