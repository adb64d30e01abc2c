//! CLI-side acceptance: byte-identical CSV output on reruns (including the
//! stochastic ensemble under different thread counts), frozen CSV headers,
//! and the run/list/check command-line contract.

use std::path::Path;
use std::process::Command;

use focksim_cli::config::parse_config;
use focksim_cli::run_to_file;
use focksim_cli::scenario::{default_config, find, registry};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_focksim"))
}

fn run_csv_bytes(overrides: &[&str], dir: &Path) -> Vec<u8> {
    let overrides: Vec<String> = overrides.iter().map(|s| s.to_string()).collect();
    let cfg = parse_config(None, &overrides).unwrap();
    let (path, checks) = run_to_file(&cfg, dir).unwrap();
    assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    std::fs::read(&path).unwrap()
}

#[test]
fn criterion_10_deterministic_csv_for_every_scenario() {
    // Every scenario, rerun with identical config, must emit identical
    // bytes. The expensive stochastic one runs on a scaled grid here; its
    // full-size behavior is the same code path.
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for scenario in registry() {
        let overrides: Vec<String> = if scenario.name() == "mcwf" {
            vec![
                "--scenario=mcwf".into(),
                "--dim=10".into(),
                "--g=0.1".into(),
                "--kappa=0.05".into(),
                "--dt=0.01".into(),
                "--t_max=20".into(),
                "--n_traj=40".into(),
                "--master_seed=31337".into(),
            ]
        } else {
            let mut v = vec![format!("--scenario={}", scenario.name())];
            v.extend(scenario.defaults().iter().map(|(k, val)| format!("--{k}={val}")));
            v
        };
        let refs: Vec<&str> = overrides.iter().map(|s| s.as_str()).collect();
        let first = run_csv_bytes(&refs, dir_a.path());
        let second = run_csv_bytes(&refs, dir_b.path());
        assert_eq!(first, second, "scenario {} not byte-stable", scenario.name());
        println!("ACCEPTANCE C10[{}]: PASS — byte-identical rerun", scenario.name());
    }
}

#[test]
fn criterion_10_mcwf_csv_identical_across_thread_counts() {
    let overrides = [
        "--scenario=mcwf",
        "--dim=10",
        "--g=0.1",
        "--kappa=0.05",
        "--dt=0.01",
        "--t_max=20",
        "--n_traj=40",
        "--master_seed=777",
    ];
    let run_with = |threads: usize| {
        let dir = tempfile::tempdir().unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| run_csv_bytes(&overrides, dir.path()))
    };
    let single = run_with(1);
    let multi = run_with(4);
    assert_eq!(single, multi, "mcwf CSV differs across thread counts");
    println!("ACCEPTANCE C10[mcwf-threads]: PASS — identical at 1 and 4 threads");
}

#[test]
fn csv_headers_are_frozen() {
    let expected: &[(&str, &[&str])] = &[
        ("coherent-dist", &["n", "p"]),
        ("thermal-dist", &["n", "p"]),
        ("g2-table", &["state", "mean_n", "g2"]),
        ("jc-rabi", &["t", "p_e", "p_g"]),
        ("collapse-revival", &["t", "w"]),
        ("coupled-cavities", &["t", "p10", "p01"]),
        ("beamsplitter", &["n", "p"]),
        ("mzi-sweep", &["phi", "p10", "p01", "i_a", "i_b"]),
        ("lindblad", &["t", "p_e", "p_e_reduced"]),
        ("mcwf", &["t", "p_e_mean", "p_e_stderr"]),
        ("truncation-report", &["d", "norm", "deficit", "adequate"]),
    ];
    let catalog = registry();
    assert_eq!(catalog.len(), expected.len());
    for (name, columns) in expected {
        let scenario = find(name).unwrap();
        assert_eq!(&scenario.csv_columns(), columns, "header drifted for {name}");
    }
}

#[test]
fn every_scenario_declares_requirements_and_defaults_cover_them() {
    for scenario in registry() {
        let cfg = default_config(scenario.as_ref()).unwrap();
        for key in scenario.required_keys() {
            assert!(
                cfg.has(key),
                "scenario {} default config misses required `{key}`",
                scenario.name()
            );
        }
    }
}

#[test]
fn missing_required_key_fails_before_computation() {
    let cfg = parse_config(None, &["--scenario=mzi-sweep".to_string()]).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let err = run_to_file(&cfg, dir.path()).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("dim"), "error must name the missing key: {msg}");
}

#[test]
fn binary_runs_a_config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("rabi.cfg");
    let out_path = dir.path().join("rabi.csv");
    std::fs::write(
        &config_path,
        "# resonant Rabi oscillation\nscenario=jc-rabi\ng=0.1\ndim=10\ndt=0.1\nt_max=30\n",
    )
    .unwrap();

    let output = bin()
        .arg("run")
        .arg("--config")
        .arg(&config_path)
        .arg(format!("--out_path={}", out_path.display()))
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("[PASS]"), "{stdout}");

    let csv = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,p_e,p_g"));
    assert_eq!(csv.lines().count(), 302); // header + 301 samples
    assert!(!csv.contains('\r'), "LF line endings only");

    // A flag override beats the file: shrink the grid and re-run.
    let output = bin()
        .arg("run")
        .arg("--config")
        .arg(&config_path)
        .arg("--t_max=10")
        .arg(format!("--out_path={}", out_path.display()))
        .output()
        .unwrap();
    assert!(output.status.success());
    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(csv.lines().count(), 102);
}

#[test]
fn binary_rejects_bad_configs_with_exit_2() {
    let output = bin().args(["run", "--scenario=no-such"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("no-such"), "{stderr}");

    let output = bin().args(["run", "--scenario=jc-rabi"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("dim"), "{stderr}");

    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("bad.cfg");
    std::fs::write(&config_path, "scenario=g2-table\nbogus=1\n").unwrap();
    let output = bin()
        .arg("run")
        .arg("--config")
        .arg(&config_path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("line 2") && stderr.contains("bogus"), "{stderr}");
}

#[test]
fn binary_lists_the_full_catalog() {
    let output = bin().arg("list").output().unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    for scenario in registry() {
        assert!(stdout.contains(scenario.name()), "missing {}", scenario.name());
    }
}
