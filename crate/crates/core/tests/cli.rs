//! End-to-end runs of the `nilmult` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use nilmult::abelian::FgAbelianGroup;
use nilmult::engine::{CorollaryReport, FreeProductReport};
use nilmult::simplicial::KunnethReport;

fn nilmult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilmult"))
        .args(args)
        .env_remove("NILMULT_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn group_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data/groups")
        .join(format!("{name}.json"))
        .to_string_lossy()
        .into_owned()
}

fn json(args: &[&str]) -> (serde_json::Value, i32) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = nilmult(&a);
    (serde_json::from_slice(&o.stdout).unwrap(), o.status.code().unwrap())
}

#[test]
fn witt_prints_a_number() {
    let o = nilmult(&["witt", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn multiplier_matches_bar_complex() {
    let (m, code) = json(&["multiplier", "--invariants", "2,2", "--class", "1"]);
    assert_eq!(code, 0);
    let (b, _) = json(&["h2-bar", "--table", "builtin:Z2xZ2"]);
    let z2 = serde_json::to_value(FgAbelianGroup::cyclic(2u8)).unwrap();
    assert_eq!(m["multiplier"], z2);
    assert_eq!(b["h2"], z2);
}

#[test]
fn failing_hypotheses_exit_three() {
    let z2 = group_file("z2");
    let (v, code) = json(&["free-product", "--g", &z2, "--h", &z2, "--class", "2"]);
    assert_eq!(code, 3);
    let r: FreeProductReport = serde_json::from_value(v).unwrap();
    assert!(r.conclusion.is_none());
    assert!(r
        .hypotheses
        .unwrap()
        .witnesses
        .iter()
        .any(|w| w == "Tor(G^ab, H^ab) = Z_2"));
}

#[test]
fn passing_free_product() {
    let (v, code) = json(&[
        "free-product",
        "--g",
        &group_file("z9"),
        "--h",
        &group_file("z4xz2"),
        "--class",
        "1",
    ]);
    assert_eq!(code, 0);
    let r: FreeProductReport = serde_json::from_value(v).unwrap();
    assert_eq!(r.conclusion, Some(FgAbelianGroup::cyclic(2u8)));
}

#[test]
fn parse_errors_exit_two() {
    let o = nilmult(&["collect", "x1^", "--class", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 3"));
    assert_eq!(nilmult(&["witt"]).status.code(), Some(2));
    assert_eq!(
        nilmult(&["corollary", "--g", "{\"label\": 1}", "--h", "builtin:Z2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn caps_exit_four() {
    assert_eq!(nilmult(&["h2-bar", "--table", "builtin:A5"]).status.code(), Some(4));
    assert_eq!(nilmult(&["hall", "4", "8", "--basis-cap", "10"]).status.code(), Some(4));
    let o = nilmult(&["simplicial", "colimit", "--fixture", "builtin:doubling"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn missing_data_exits_five() {
    let o = nilmult(&["formula-i", "--g", "builtin:S3", "--h", "builtin:Z5"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("multiplier.2"));
}

#[test]
fn corollary_report_round_trips() {
    let (v, code) = json(&["corollary", "--g", &group_file("a5"), "--h", "builtin:A5"]);
    assert_eq!(code, 0);
    let r: CorollaryReport = serde_json::from_value(v.clone()).unwrap();
    assert!(r.satisfied.contains(&"(iv)".to_string()));
    assert_eq!(serde_json::to_value(&r).unwrap(), v);
}

#[test]
fn simplicial_commands() {
    let (v, code) = json(&["simplicial", "kan", "--fixture", "builtin:circle"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["abelianized_homotopy"][0],
        serde_json::to_value(FgAbelianGroup::free(1)).unwrap()
    );
    let (v, code) = json(&[
        "simplicial",
        "kunneth",
        "--fixture",
        "builtin:mult-2",
        "--other",
        "builtin:mult-3",
    ]);
    assert_eq!(code, 0);
    assert!(serde_json::from_value::<KunnethReport>(v).unwrap().passes);
    let (v, code) = json(&["simplicial", "colimit", "--fixture", "builtin:stabilizing"]);
    assert_eq!(code, 0);
    assert_eq!(v["limit"]["commutes"], true);
    let (v, _) = json(&[
        "simplicial",
        "validate",
        "--fixture",
        "builtin:nerve-S3",
        "--truncation",
        "3",
    ]);
    assert_eq!(v["passes"], true);
    assert_eq!(
        nilmult(&["simplicial", "kan", "--fixture", "builtin:point", "--truncation", "20"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "formula-i",
        "--g",
        "builtin:Z2xZ2",
        "--h",
        "builtin:Z3",
        "--format",
        "json",
    ];
    assert_eq!(nilmult(&args).stdout, nilmult(&args).stdout);
}

#[test]
fn cache_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let plain = nilmult(&["hall", "3", "5", "--format", "json"]).stdout;
    let first = nilmult(&["hall", "3", "5", "--format", "json", "--cache-dir", d]).stdout;
    let second = Command::new(env!("CARGO_BIN_EXE_nilmult"))
        .args(["hall", "3", "5", "--format", "json"])
        .env("NILMULT_CACHE_DIR", d)
        .output()
        .unwrap()
        .stdout;
    assert!(dir.path().join("hall-n3-w5.json").exists());
    assert_eq!(plain, first);
    assert_eq!(plain, second);
}

#[test]
fn job_file_runs_a_command() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    std::fs::write(&job, r#"{"command": ["bidegree", "1", "1", "3"], "format": "json"}"#).unwrap();
    let o = nilmult(&["--config", job.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 2);
    std::fs::write(&job, r#"{"command": ["witt", "2", "2"], "colour": "red"}"#).unwrap();
    assert_eq!(nilmult(&["--config", job.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&job, r#"{"command": ["witt", "2", "2"], "caps": {"basis": 0}}"#).unwrap();
    assert_eq!(nilmult(&["--config", job.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn abelianize_builtin_presentation() {
    let (v, code) = json(&["abelianize", "--presentation", "builtin:A5"]);
    assert_eq!(code, 0);
    assert_eq!(v["perfect"], true);
    let (v, _) = json(&[
        "abelianize",
        "--presentation",
        r#"{"generators": ["x", "y"], "relators": ["[x,y]", "x^4"]}"#,
    ]);
    assert_eq!(
        v["abelianization"],
        serde_json::to_value(FgAbelianGroup::from_cyclic_factors([4u8, 0]).unwrap()).unwrap()
    );
}
