use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn finscheme(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finscheme")).args(args).current_dir(root()).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_accepts_catalog_entries() {
    let o = finscheme(&["check", "catalog/B.sr"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("valid, 2 elements"));

    let o = finscheme(&["--format", "structured", "check", "catalog/Z6.sr"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["elements"], 6);
}

#[test]
fn parse_and_io_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.sr");
    std::fs::write(&junk, "junk\n").unwrap();
    assert_eq!(code(&finscheme(&["check", junk.to_str().unwrap()])), 2);
    assert_eq!(code(&finscheme(&["check", "no/such/file.sr"])), 2);
    assert_eq!(code(&finscheme(&["verify", "no/such/dir"])), 2);
}

#[test]
fn axiom_failure_names_the_axiom() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sr");
    let text = std::fs::read_to_string(root().join("catalog/B.sr")).unwrap();
    // 1 · 1 = 0 breaks the multiplicative identity
    let cut = text.rfind("0 1\n").unwrap();
    std::fs::write(&bad, format!("{}0 0\n", &text[..cut])).unwrap();
    let o = finscheme(&["check", bad.to_str().unwrap()]);
    assert_ne!(code(&o), 0);
    let all = stdout(&o) + &String::from_utf8_lossy(&o.stderr);
    assert!(all.contains("multiplicative identity"), "{all}");
}

#[test]
fn spectra_and_simplices() {
    let o = finscheme(&["spectrum", "catalog/Z6.sr"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("2 points, discrete"));

    let o = finscheme(&["simplex", "--n", "1"]);
    assert!(stdout(&o).starts_with("3 points"));
    let o = finscheme(&["simplex", "data/complexes/hollow_triangle.asc"]);
    assert!(stdout(&o).starts_with("6 points"));
}

#[test]
fn glue_accepts_doubled_point_and_refuses_wedge() {
    let o = finscheme(&["glue", "data/presentations/doubled_point.pres"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("3 points, discrete"));

    let o = finscheme(&["glue", "data/presentations/wedge.pres"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("V <-a0- U -a1-> V"));

    let o = finscheme(&["glue", "--budget", "1", "data/presentations/wedge.pres"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn sheaf_check_exit_status() {
    assert_eq!(code(&finscheme(&["sheaf-check", "data/covers/boolean_pair.cover"])), 0);
    let o = finscheme(&["sheaf-check", "data/covers/empty_extent.cover"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_structured_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = finscheme(&["--format", "structured", "-o", out.to_str().unwrap(), "verify", "catalog"]);
        assert_eq!(code(&o), 0);
    }
    let first = std::fs::read(&a).unwrap();
    assert_eq!(first, std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["status"] != "fail"));
}

#[test]
fn verify_reports_a_broken_entry() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(root().join("catalog")).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    std::fs::write(dir.path().join("Broken.sr"), "elements: 0 1\nzero: 0\none: 0\n").unwrap();
    let o = finscheme(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.contains("Broken") && l.contains("fail")), "{text}");
    assert!(!text.lines().any(|l| l.contains("Z6") && l.contains("fail")));
}

#[test]
fn verify_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = finscheme(&["verify", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0 rows, 0 failed"));
}
