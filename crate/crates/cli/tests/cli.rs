use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .display()
        .to_string()
}

fn chartab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chartab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chartab-cli-{}-{}", name, std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn validate_accepts_the_shipped_table() {
    let o = chartab(&["validate", &data("h_table.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("table is valid"));
}

#[test]
fn validate_rejects_a_perturbed_table_with_exit_2() {
    let text = std::fs::read_to_string(data("h_table.txt")).unwrap();
    let dir = scratch_dir("bad");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, text.replace("char psi4    3 -1 -1", "char psi4    3 -1  0")).unwrap();
    let o = chartab(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(psi1, psi4)"));
}

#[test]
fn missing_input_is_exit_2() {
    let o = chartab(&["suzuki", "--config", "/nonexistent/case.cfg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn permgroup_brute_force_structure_constant() {
    let o = chartab(&["permgroup", "--config", &data("h_generators.txt"), "structconst", "C6", "C7", "C7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "6");
    let o = chartab(&["structconst", "--config", &data("h_table.txt"), "C6", "C7", "C7"]);
    assert!(stdout(&o).contains("a(C6, C7, C7) = 6"));
}

#[test]
fn permgroup_classes_and_trivial_group() {
    let o = chartab(&["--summary-only", "permgroup", "--config", &data("h_generators.txt"), "classes"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 648);
    assert_eq!(v["class_list"].as_array().unwrap().len(), 14);

    let dir = scratch_dir("trivial");
    std::fs::create_dir_all(&dir).unwrap();
    let id = dir.join("id.txt");
    std::fs::write(&id, "()\n").unwrap();
    let o = chartab(&["--summary-only", "permgroup", "--config", id.to_str().unwrap(), "classes"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 1);
}

#[test]
fn permgroup_chartable_feeds_validate() {
    let dir = scratch_dir("dixon");
    let o = chartab(&["--out", dir.to_str().unwrap(), "permgroup", "--config", &data("h_generators.txt"), "chartable"]);
    assert_eq!(o.status.code(), Some(0));
    let o = chartab(&["validate", dir.join("chartable.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn suzuki_scenario_eliminates_everything() {
    let o = chartab(&["suzuki", "--config", &data("case1.cfg")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("all candidates eliminated ⇒ G = H"));
    assert_eq!(text.matches("verdict: eliminated").count(), 5);
}

#[test]
fn weakened_bound_is_an_honest_exit_1() {
    let o = chartab(&["suzuki", "--config", &data("case1.cfg"), "--order-ratio-bound", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no contradiction"));
}

#[test]
fn blocksearch_reports_the_count_mismatch_and_writes_candidates() {
    let dir = scratch_dir("blocks");
    let o = chartab(&["--out", dir.to_str().unwrap(), "blocksearch", "--config", &data("case2.inst")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("13 expected, 16 found"));
    assert!(text.contains("3 candidates match no reference matrix"));
    assert!(text.contains("29² + 80² = 7241 > 6480"));
    let files = std::fs::read_dir(&dir)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with("candidate_"))
        .count();
    assert_eq!(files, 16);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["candidate_count"], 16);
    assert_eq!(summary["verdict"], "contradiction");
    assert_eq!(summary["extras"].as_array().unwrap().len(), 3);
}

#[test]
fn blocksearch_without_filters_keeps_all_pending() {
    let o = chartab(&["--summary-only", "blocksearch", "--config", &data("case2.inst"), "--no-filters"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let c = v["candidates"].as_array().unwrap();
    assert_eq!(c.len(), 16);
    assert!(c.iter().all(|x| x["status"] == "pending"));
}

#[test]
fn summaries_are_identical_across_worker_counts() {
    let one = chartab(&["--jobs", "1", "--summary-only", "blocksearch", "--config", &data("case2.inst")]);
    let many = chartab(&["--jobs", "4", "--summary-only", "blocksearch", "--config", &data("case2.inst")]);
    assert_eq!(one.stdout, many.stdout);
    let a = chartab(&["--jobs", "1", "--summary-only", "suzuki", "--config", &data("case1.cfg")]);
    let b = chartab(&["--jobs", "3", "--summary-only", "suzuki", "--config", &data("case1.cfg")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parse_errors_write_nothing() {
    let dir = scratch_dir("failfast");
    let src = scratch_dir("failfast-src");
    std::fs::create_dir_all(&src).unwrap();
    let cfg = src.join("broken.inst");
    std::fs::write(&cfg, "table h_table.txt\ncolumns C4 C99\n").unwrap();
    let o = chartab(&["--out", dir.to_str().unwrap(), "blocksearch", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.exists());
}

#[test]
fn frobenius_counts_agree() {
    let a = chartab(&["--summary-only", "frobenius", "--config", &data("h_table.txt"), "3"]);
    let b = chartab(&["--summary-only", "frobenius", "--generators", "--config", &data("h_generators.txt"), "3"]);
    let va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(va["count"], vb["count"]);
    assert_eq!(va["divisible"], true);
}
