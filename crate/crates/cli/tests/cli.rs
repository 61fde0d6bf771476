use std::path::Path;
use std::process::{Command, Output};

use qfdiv::states::random_density;
use qfdiv_cli::statefile::{parse_state_file, write_state_file};

fn qfdiv(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfdiv"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("QFDIV_OUT")
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn verify_with_one_sample_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = qfdiv(&["verify", "--samples", "1"], dir.path());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    let csv = std::fs::read_to_string(dir.path().join("verify.csv")).unwrap();
    assert!(csv.starts_with("suite,samples,violations,errors,max_residual,tol,passed\n"));
}

#[test]
fn witness_on_state_files() {
    let dir = tempfile::tempdir().unwrap();
    let rho = write(dir.path(), "plus", "2\n0.5,0 0.5,0\n0.5,0 0.5,0\n");
    let sigma = write(dir.path(), "mixed", "# I/2\n2\n0.5,0 0,0\n0,0 0.5,0\n");
    let out = qfdiv(&["witness", &rho, &sigma, "--f", "chi2"], dir.path());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    let d: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("D_max = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((d - 1.0).abs() < 1e-10, "{stdout}");

    let out = qfdiv(&["compare-bounds", &rho, &sigma], dir.path());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn corrupted_state_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad", "2\n0.5,0 0,0\n0,0 oops\n");
    let good = write(dir.path(), "good", "2\n0.5,0 0,0\n0,0 0.5,0\n");
    let out = qfdiv(&["witness", &bad, &good], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains(":3:"), "{stderr}");

    let trace = write(dir.path(), "trace", "2\n0.45,0 0,0\n0,0 0.45,0\n");
    let out = qfdiv(&["witness", &trace, &good], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trace"));
}

#[test]
fn unknown_flag_and_bad_config_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(qfdiv(&["fig1", "--bogus"], dir.path()).status.code(), Some(2));
    assert_eq!(qfdiv(&["fig2", "--samples", "0"], dir.path()).status.code(), Some(2));
    assert_eq!(qfdiv(&["witness", "--f", "kl"], dir.path()).status.code(), Some(2));
}

#[test]
fn fig1_respects_chi0_flags_and_env_out() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_qfdiv"))
        .args(["fig1", "--chi0", "2", "--chi0", "8"])
        .env("QFDIV_OUT", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(dir.path().join("fig1.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 500);
    assert!(dir.path().join("fig1.svg").exists());
}

#[test]
fn commuting_condition_rate_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = qfdiv(&["condition-rate", "--commuting", "--samples", "200"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("condition_rate.csv")).unwrap();
    assert_eq!(csv, format!("dim,mode,samples,satisfied,rate\n4,commuting,200,200,{:.16e}\n", 1.0));
}

#[test]
fn state_file_round_trip_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    let rho = random_density(3, 2, 9).unwrap();
    let path = dir.path().join("rho.txt");
    write_state_file(&path, &rho).unwrap();
    assert_eq!(parse_state_file(&path).unwrap(), rho);
    assert_eq!(
        parse_state_file(&dir.path().join("missing")).unwrap_err().exit_code(),
        1
    );
}
