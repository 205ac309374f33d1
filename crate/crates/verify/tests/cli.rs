use std::path::Path;
use std::process::{Command, Output};

use sov_verify::report::{is_known_anchor, strip_wall_time, Report};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sov-verify"))
}

fn write_config(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn verify(config: &Path, extra: &[&str]) -> Output {
    bin().arg("verify").arg("--config").arg(config).args(extra).env_remove("SOV_DEGREE_CAP").output().unwrap()
}

fn stdout_report(o: &Output) -> Report {
    Report::parse(&String::from_utf8(o.stdout.clone()).unwrap()).unwrap()
}

#[test]
fn smoke_sl2_two_sites() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.toml",
        "algebra = \"sl2\"\nn = 2\nsuites = [\"rtt\", \"minors\", \"gauss\", \"eigen-sl2\", \"separation\"]\n",
    );
    let out = verify(&cfg, &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = stdout_report(&out);
    assert_eq!(r.header.algebra, "sl2");
    assert_eq!(r.header.n, 2);
    assert!(r.passed());
    assert!(!r.records.is_empty());
    let suites: Vec<&str> = r.records.iter().map(|x| x.suite.as_str()).collect();
    let mut firsts = suites.clone();
    firsts.dedup();
    assert_eq!(firsts, ["rtt", "minors", "gauss", "eigen-sl2", "separation"]);
    for rec in &r.records {
        assert!(is_known_anchor(&rec.anchor), "{}", rec.anchor);
    }
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 failed"));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.toml",
        "algebra = \"sl2\"\nn = 2\nsuites = [\"qdet-central\", \"intertwiners\", \"momentum\"]\n[oracle]\nseed = 5\n",
    );
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    assert!(verify(&cfg, &["--report", a.to_str().unwrap(), "--jobs", "1"]).status.success());
    assert!(verify(&cfg, &["--report", b.to_str().unwrap(), "--jobs", "4"]).status.success());
    let (a, b) = (std::fs::read_to_string(a).unwrap(), std::fs::read_to_string(b).unwrap());
    assert_eq!(strip_wall_time(&a), strip_wall_time(&b));
}

#[test]
fn report_path_from_config_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("from-config.jsonl");
    let cfg = write_config(
        dir.path(),
        "c.toml",
        &format!("algebra = \"sl3\"\nsuites = [\"rtt\", \"gauss\"]\nreport-path = {:?}\n", target.to_str().unwrap()),
    );
    let out = verify(&cfg, &["--suite", "gauss", "--seed", "7"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r = Report::parse(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(r.header.suites, ["gauss"]);
    assert_eq!(r.header.seed, 7);
    assert!(r.records.iter().all(|x| x.suite == "gauss"));
}

#[test]
fn empty_suite_list_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.toml", "algebra = \"sl2\"\n");
    let out = verify(&cfg, &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_report(&out);
    assert!(r.records.is_empty());
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for (i, text) in ["algebra = \"sl5\"", "algebra = \"sl2\"\nsuites = [\"nope\"]", "algebra = \"sl2\"\nn = 0"]
        .into_iter()
        .enumerate()
    {
        let cfg = write_config(dir.path(), &format!("{i}.toml"), text);
        assert_eq!(verify(&cfg, &[]).status.code(), Some(2), "{text}");
    }
    assert_eq!(verify(&dir.path().join("missing.toml"), &[]).status.code(), Some(2));
    let ok = write_config(dir.path(), "ok.toml", "algebra = \"sl2\"\n");
    assert_eq!(verify(&ok, &["--suite", "bogus"]).status.code(), Some(2));
    let bad_env = bin()
        .arg("verify")
        .arg("--config")
        .arg(&ok)
        .env("SOV_DEGREE_CAP", "many")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn degree_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.toml", "algebra = \"sl2\"\nn = 2\nsuites = [\"rtt\"]\n");
    let out = bin().arg("verify").arg("--config").arg(&cfg).env("SOV_DEGREE_CAP", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r = stdout_report(&out);
    assert!(r.records.iter().any(|x| x.kind.as_deref() == Some("degree-cap")));
}

#[test]
fn off_lattice_override_is_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.toml", "algebra = \"sl2\"\nn = 2\nsuites = [\"eigen-sl2\"]\n[lattice]\n0 = -1\n");
    let out = verify(&cfg, &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = stdout_report(&out);
    let skipped: Vec<_> = r.records.iter().filter(|x| x.status == "skipped").collect();
    assert!(!skipped.is_empty());
    assert!(skipped.iter().all(|x| x.residual.is_some()));
}

#[test]
fn print_op() {
    let out = bin().args(["print-op", "--algebra", "sl2", "--op", "B"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "-dx1");
    let out = bin().args(["print-op", "--algebra", "sl3", "--n", "1", "--op", "qdet"]).output().unwrap();
    assert!(out.status.success());
    assert!(!out.stdout.is_empty());
    let out = bin().args(["print-op", "--algebra", "sl2", "--op", "t2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
