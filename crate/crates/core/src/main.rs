use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;

use jamsim::config::{parse_override, FlatConfig, RunConfig};
use jamsim::figures::{custom_tables, plan, FigurePreset};
use jamsim::report::{execute, git_describe, read_config_file, Manifest};

/// Monte Carlo simulator of an indoor-factory uplink under jamming.
///
/// Runs a figure preset or a config file and writes one CSV per table plus
/// `manifest.toml` into `<out-dir>/<preset>/`.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Figure preset (fig2_fa_calibration, fig3_sinr_cdf, fig4_bler_vs_pj,
    /// fig5_roc_detectors, fig6_roc_antennas, fig7_roc_blanking,
    /// fig8_bler_mitigation).
    #[arg(long)]
    preset: Option<FigurePreset>,

    /// TOML config layered over the preset. A manifest from an earlier run
    /// is accepted and reproduces that run.
    #[arg(long)]
    config: Option<PathBuf>,

    /// `key=value` applied after the config file; repeatable.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    #[arg(long)]
    seed: Option<u64>,

    #[arg(long)]
    drops: Option<usize>,

    /// Slots per drop.
    #[arg(long)]
    slots: Option<usize>,

    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    threads: usize,

    #[arg(long, env = "JAMSIM_OUT_DIR", default_value = "out")]
    out_dir: PathBuf,

    /// Also write per-slot SINR/BLER and detector statistics.
    #[arg(long)]
    verbose_records: bool,
}

fn resolve(args: &Args) -> Result<(Option<FigurePreset>, RunConfig, Vec<String>)> {
    let (file, file_preset) = match &args.config {
        Some(path) => {
            let (flat, preset) = read_config_file(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            (flat, preset)
        }
        None => (FlatConfig::new(), None),
    };
    let preset = match (args.preset, file_preset) {
        (Some(p), _) => Some(p),
        (None, Some(name)) if name != "custom" => Some(name.parse()?),
        _ => None,
    };
    let mut flat = preset.map(FigurePreset::base_config).unwrap_or_default();
    flat.extend(file);

    let mut overrides = args.overrides.clone();
    if let Some(seed) = args.seed {
        overrides.push(format!("mc.seed={seed}"));
    }
    if let Some(d) = args.drops {
        overrides.push(format!("mc.n_drops={d}"));
    }
    if let Some(s) = args.slots {
        overrides.push(format!("mc.n_slots_per_drop={s}"));
    }
    for o in &overrides {
        let (k, v) = parse_override(o)?;
        flat.insert(k, v);
    }
    Ok((preset, RunConfig::from_flat(&flat)?, overrides))
}

fn write(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn run(args: &Args) -> Result<()> {
    let started = Instant::now();
    let (preset, config, overrides) = resolve(args)?;
    let tables = match preset {
        Some(p) => p.tables().to_vec(),
        None => custom_tables(&config),
    };
    let job = plan(&config, &tables, args.threads, args.verbose_records)?;
    let outputs = execute(&job, &tables, &config.scenario.detector.pfa_grid)?;

    let name = preset.map_or("custom", FigurePreset::name);
    let dir = args.out_dir.join(name);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    for (file, body) in &outputs.files {
        write(&dir.join(file), body)?;
    }
    let manifest = Manifest {
        preset: name.to_string(),
        config,
        overrides,
        threads: args.threads,
        git_describe: git_describe(),
        wall_time_s: started.elapsed().as_secs_f64(),
    };
    write(&dir.join("manifest.toml"), &manifest.to_toml())?;
    log::info!("wrote {} in {:.1} s", dir.display(), manifest.wall_time_s);
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
