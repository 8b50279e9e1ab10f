use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn jamsim(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jamsim"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .env_remove("JAMSIM_OUT_DIR")
        .output()
        .unwrap()
}

fn ok(args: &[&str], out: &Path) {
    let o = jamsim(args, out);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
}

const SMALL_FA: [&str; 6] = ["--preset", "fig2_fa_calibration", "--drops", "10", "--slots", "20"];

#[test]
fn preset_run_writes_table_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = SMALL_FA.to_vec();
    args.extend(["--seed", "7"]);
    ok(&args, dir.path());
    let folder = dir.path().join("fig2_fa_calibration");
    let csv = fs::read_to_string(folder.join("fa_calibration.csv")).unwrap();
    assert!(csv.starts_with("detector,n_re,target_pfa,empirical_pfa,trials\n"), "{csv}");
    let manifest = fs::read_to_string(folder.join("manifest.toml")).unwrap();
    assert!(manifest.contains("[manifest]"));
    assert!(manifest.contains("preset = \"fig2_fa_calibration\""));
    assert!(manifest.contains("seed = 7"));
}

#[test]
fn same_seed_same_bytes() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    ok(&SMALL_FA, a.path());
    ok(&SMALL_FA, b.path());
    let read = |d: &Path| fs::read(d.join("fig2_fa_calibration/fa_calibration.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
}

#[test]
fn config_and_overrides_are_recorded_and_replayable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("custom.toml");
    fs::write(
        &cfg,
        "preset = \"B20\"\ndeployment.n_ant_total = 16\njammer.l_p = 5\nmc.n_drops = 4\nmc.n_slots_per_drop = 2\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    ok(&["--config", cfg.to_str().unwrap(), "--override", "jammer.power_dbm=40"], &out);
    let folder = out.join("custom");
    let manifest = fs::read_to_string(folder.join("manifest.toml")).unwrap();
    assert!(manifest.contains("jammer.power_dbm=40"), "{manifest}");
    for table in ["sinr_cdf.csv", "bler_vs_pj.csv", "roc.csv"] {
        assert!(folder.join(table).exists(), "{table}");
    }

    // the manifest alone reproduces the run
    let replay = dir.path().join("replay");
    ok(&["--config", folder.join("manifest.toml").to_str().unwrap()], &replay);
    for table in ["sinr_cdf.csv", "bler_vs_pj.csv", "roc.csv"] {
        assert_eq!(
            fs::read(folder.join(table)).unwrap(),
            fs::read(replay.join("custom").join(table)).unwrap(),
            "{table}"
        );
    }
}

#[test]
fn bad_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    assert!(!jamsim(&["--preset", "fig9"], dir.path()).status.success());
    let o = jamsim(&["--preset", "fig3_sinr_cdf", "--override", "jammer.nope=1"], dir.path());
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("jammer.nope"));
    assert!(!jamsim(&["--preset", "fig3_sinr_cdf", "--override", "no_equals_sign"], dir.path()).status.success());
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    for t in ["1", "8"] {
        ok(
            &["--preset", "fig3_sinr_cdf", "--drops", "6", "--slots", "2", "--threads", t],
            &dir.path().join(t),
        );
    }
    let read = |t: &str| fs::read(dir.path().join(t).join("fig3_sinr_cdf/sinr_cdf.csv")).unwrap();
    assert_eq!(read("1"), read("8"));
}
