use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lcdcodes"));
    cmd.env_remove("LCDCODES_ENUM_CAP");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/table5")
}

/// Writes G and Ḡ for the ternary [16,8,6] build into `dir`.
fn ternary_pair(dir: &Path) -> (PathBuf, PathBuf) {
    let (g, gbar) = (dir.join("g.mat"), dir.join("gbar.mat"));
    let o = run(&[
        "build", "--variant", "skew-hadamard", "--pi", "7", "--identity", "--alpha", "2", "--q", "3",
        "--out-g", path(&g), "--out-gbar", path(&gbar),
    ]);
    assert!(o.status.success(), "{o:?}");
    (g, gbar)
}

fn first_row(g: &Path) -> Vec<u8> {
    let text = std::fs::read_to_string(g).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .nth(1)
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect()
}

fn join(w: &[u8]) -> String {
    w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

#[test]
fn paley_writes_a_hadamard_matrix() {
    let o = run(&["paley", "--pi", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("4 4 Z"));
}

#[test]
fn bad_prime_is_a_usage_error() {
    assert_eq!(run(&["paley", "--pi", "5"]).status.code(), Some(3));
    assert_eq!(run(&["conference", "--pi", "7"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn build_trace_and_golden_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["build", "--variant", "skew-hadamard", "--pi", "11", "--identity", "--alpha", "4", "--q", "5"]);
    assert!(stdout(&o).starts_with("12+(4+1)^2=37≡2≠0 LCD"), "{}", stdout(&o));

    let (g, _) = ternary_pair(dir.path());
    let o = run(&["report", path(&g), "--distance"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "16 8 6[EXACT] 3 0 lcd=yes fsd=yes[EXACT]");
}

#[test]
fn alpha_sweep_lists_every_element() {
    let o = run(&["build", "--variant", "skew-hadamard", "--pi", "3", "--identity", "--alpha", "all", "--q", "3"]);
    assert!(o.status.success());
    let lines: Vec<_> = stdout(&o).lines().filter(|l| l.starts_with("alpha=")).map(String::from).collect();
    assert_eq!(lines.len(), 3, "{lines:?}");
}

#[test]
fn require_exact_fails_on_lower_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let (g, _) = ternary_pair(dir.path());
    let ok = run(&["report", path(&g), "--distance", "--require-exact"]);
    assert!(ok.status.success());
    let capped = run(&["report", path(&g), "--distance", "--require-exact", "--enum-cap", "10"]);
    assert_eq!(capped.status.code(), Some(2), "{}", stdout(&capped));
    assert!(stdout(&capped).contains("LOWER_BOUND"));
}

#[test]
fn enum_cap_is_read_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let (g, _) = ternary_pair(dir.path());
    let o = bin()
        .args(["report", path(&g), "--distance", "--require-exact"])
        .env("LCDCODES_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_supplies_flags_and_explicit_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let (g, _) = ternary_pair(dir.path());
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# budget\nenum-cap 10\nrequire-exact true\n").unwrap();
    let capped = run(&["--config", path(&cfg), "report", path(&g), "--distance"]);
    assert_eq!(capped.status.code(), Some(2));
    let lifted = run(&["--config", path(&cfg), "report", path(&g), "--distance", "--enum-cap", "100000"]);
    assert!(lifted.status.success(), "{}", String::from_utf8_lossy(&lifted.stderr));
}

#[test]
fn validate_rejects_a_non_weighing_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mat");
    std::fs::write(&bad, "2 2 Z\n1 1\n1 1\n").unwrap();
    assert_eq!(run(&["validate", path(&bad)]).status.code(), Some(2));
    let good = dir.path().join("good.mat");
    std::fs::write(&good, stdout(&run(&["paley", "--pi", "7"]))).unwrap();
    assert!(run(&["validate", path(&good), "--m", "8"]).status.success());
    assert_eq!(run(&["validate", path(&dir.path().join("missing.mat"))]).status.code(), Some(3));
}

#[test]
fn decode_right_block_error_strictly() {
    let dir = tempfile::tempdir().unwrap();
    let (g, gbar) = ternary_pair(dir.path());
    let c = first_row(&g);
    let mut w = c.clone();
    w[12] = (w[12] + 1) % 3;
    let o = run(&["decode", "--g", path(&g), "--gbar", path(&gbar), "--d", "6", "--word", &join(&w)]);
    assert!(o.status.success(), "{o:?}");
    assert_eq!(stdout(&o).trim(), join(&c));
}

#[test]
fn decode_left_block_error_needs_complete_mode() {
    let dir = tempfile::tempdir().unwrap();
    let (g, gbar) = ternary_pair(dir.path());
    let c = first_row(&g);
    let mut w = c.clone();
    w[0] = (w[0] + 1) % 3;
    w[3] = (w[3] + 2) % 3;
    let base = ["decode", "--g", path(&g), "--gbar", path(&gbar), "--d", "6", "--word"];
    let strict = run(&[&base[..], &[join(&w).as_str()]].concat());
    assert_eq!(strict.status.code(), Some(2));
    assert!(stdout(&strict).contains("FAIL beyond-radius"));
    let complete = run(&[&base[..], &[join(&w).as_str(), "--complete"]].concat());
    assert!(complete.status.success());
    assert_eq!(stdout(&complete).trim(), join(&c));
}

#[test]
fn sampled_decoding_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let (g, gbar) = ternary_pair(dir.path());
    let args = ["decode", "--g", path(&g), "--gbar", path(&gbar), "--d", "6", "--sample", "40", "--seed", "7", "--complete"];
    let a = run(&args);
    assert!(a.status.success());
    assert!(stdout(&a).contains("40 correct"), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&run(&args)));
}

#[test]
fn paut_and_orbit_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.mat");
    let grp = dir.path().join("h.grp");
    std::fs::write(&h, stdout(&run(&["paley", "--pi", "3"]))).unwrap();
    assert!(run(&["paut", "--w", path(&h), "--out", path(&grp)]).status.success());
    assert!(std::fs::read_to_string(&grp).unwrap().starts_with('#'));
    let o = run(&["orbit", "--w", path(&h), "--group", path(&grp)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn reproduce_external_table_skips_without_data() {
    let o = run(&["reproduce", "--table", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("SKIPPED").count(), 4, "{}", stdout(&o));
    assert_eq!(run(&["reproduce", "--table", "5", "--strict"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "--table", "6"]).status.code(), Some(3));
}

#[test]
fn reproduce_supplied_fixtures_pass() {
    let dir = fixtures();
    let o = run(&["reproduce", "--table", "5", "--data-dir", path(&dir), "--workers", "2", "--strict"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.ends_with("PASS")).count(), 3, "{out}");
    assert!(out.contains("[12,6,4]_4[EXACT]"));
}
