use std::path::Path;
use std::process::{Command, Output};

use prop_homology::Report;

fn bin(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_prop-homology"));
    cmd.args(args).env_remove("PROP_HOMOLOGY_CACHE");
    if let Some(dir) = cache {
        cmd.env("PROP_HOMOLOGY_CACHE", dir);
    }
    cmd.output().expect("binary runs")
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn lemma34_z3_passes() {
    let out = bin(&["lemma34", "--z", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r.verdict.is_pass());
    assert!(r.degrees.iter().all(|d| d.betti == 0 && d.complete));
}

#[test]
fn elementary_unit_in_degree_zero() {
    let out = bin(&["elementary", "--eps", "0", "--epsp", "0", "--pmax", "6"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.degrees[0].betti, 1);
    assert!(r.degrees[1..].iter().all(|d| d.betti == 0));
}

#[test]
fn koszul_n2_passes() {
    assert_eq!(bin(&["koszul", "--n", "2"], None).status.code(), Some(0));
}

#[test]
fn invalid_invocations_exit_2() {
    for args in [
        &["lemma34"][..],
        &["lemma34", "--z", "2", "--pmax", "3"],
        &["a-acyclic", "--z", "4", "--N", "2", "--pmax", "4"],
        &["elementary", "--eps", "2", "--epsp", "0", "--pmax", "3"],
        &["a-e-factorization", "--z", "1", "--N", "1", "--pmax", "2", "--sigma", "(1 5)"],
        &["no-such-claim"],
    ] {
        let out = bin(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = bin(&["a-acyclic", "--z", "4", "--N", "2", "--pmax", "4"], None);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("cap 10"), "{msg}");
}

#[test]
fn incomplete_window_exits_1() {
    let out = bin(&["elementary", "--eps", "0", "--epsp", "1", "--pmin", "3", "--pmax", "3"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out).verdict.word(), "incomplete");
}

#[test]
fn sigma_flag_selects_one_block() {
    let out = bin(&["a-e-factorization", "--z", "2", "--N", "1", "--pmax", "3", "--sigma", "(1 2)"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.params.sigma.as_deref(), Some("(1 2)"));
    assert_eq!(r.checks.iter().filter(|c| c.name.starts_with("factorization")).count(), 1);
    assert_eq!(r.degrees.iter().map(|d| d.dim).collect::<Vec<_>>(), vec![1, 3, 6, 10]);
}

#[test]
fn reports_are_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sigma-split", "--z", "2", "--N", "1", "--pmax", "3"];
    let cold = report(&bin(&args, Some(dir.path())));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() == 1);
    let warm = report(&bin(&args, Some(dir.path())));
    let none = report(&bin(&args, None));
    let render = |r: &Report| serde_json::to_string(&r.deterministic()).unwrap();
    assert_eq!(render(&cold), render(&warm));
    assert_eq!(render(&cold), render(&none));
    assert_eq!(cold.input_hash.len(), 64);
}

#[test]
fn out_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dims.csv");
    let out = bin(&["dims", "--z", "4", "--N", "1", "--pmax", "2", "--format", "csv", "--out", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("claim,kind,params,predicted,constructed,agree"));
    assert!(text.contains("dims,lie_multilinear,4,6,6,true"));
    assert!(lines.all(|l| l.ends_with(",true")));
}

#[test]
fn smoke_suite_passes() {
    let start = std::time::Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("smoke.json");
    let out = bin(&["suite", "smoke", "--jobs", "4", "--out", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(start.elapsed().as_secs() < 120);
    let reports: Vec<Report> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(reports.iter().all(|r| r.verdict.is_pass()));
}
