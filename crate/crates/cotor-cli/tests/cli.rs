//! End-to-end runs of the `cotor` binary.

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cotor"))
}

fn write_golden_workspace(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("golden.txt");
    fs::write(
        &path,
        "prime 5\nwindow 0 12\nbialgebra G\nbuilder truncated_polynomial deg=1 height=5\n",
    )
    .unwrap();
    path
}

#[test]
fn check_passes_on_builder_workspace() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_golden_workspace(dir.path());
    let out = bin().arg("check").arg(&ws).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("coassociative: Pass"));
}

#[test]
fn check_fails_on_broken_coproduct() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    fs::write(
        &path,
        "prime 2\nwindow 0 4\nbialgebra H\nbasis 0 one\nbasis 1 xi\ncomul xi = 1 one (x) xi\n",
    )
    .unwrap();
    let out = bin().arg("check").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Fail"));
}

#[test]
fn parse_error_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "prime 5\nwindow 0 4\nfrobnicate\n").unwrap();
    let out = bin().arg("check").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn kss_emits_five_pages_and_origin_survivor() {
    // `kss --max-page 6` on the §-example workspace: five page charts, the
    // last one a single cell at (0,0).
    let dir = tempfile::tempdir().unwrap();
    let ws = write_golden_workspace(dir.path());
    let out = bin()
        .args(["kss"])
        .arg(&ws)
        .args(["--max-s", "5", "--max-page", "6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("pages 1..=5"));
    assert!(stdout.contains("collapse page: 5"));
    assert!(stdout.contains("E_inf: (s=0,deg=0):1"));
    for r in 1..=5 {
        assert!(stdout.contains(&format!("E_{r} page")), "missing page {r}");
    }
}

#[test]
fn chart_svg_files_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_golden_workspace(dir.path());
    let out_dir_1 = dir.path().join("run1");
    let out_dir_2 = dir.path().join("run2");
    for out_dir in [&out_dir_1, &out_dir_2] {
        let out = bin()
            .args(["chart"])
            .arg(&ws)
            .args(["--max-s", "4", "--format", "svg", "--out"])
            .arg(out_dir)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    for r in 1..=5 {
        let a = fs::read(out_dir_1.join(format!("page_{r}.svg"))).unwrap();
        let b = fs::read(out_dir_2.join(format!("page_{r}.svg"))).unwrap();
        assert_eq!(a, b, "page {r} differs between runs");
    }
    // Page 1 carries red d_1 arrows.
    let page1 = fs::read_to_string(out_dir_1.join("page_1.svg")).unwrap();
    assert!(page1.contains("stroke=\"red\""));
}

#[test]
fn kss_tsv_tables_have_schema_and_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_golden_workspace(dir.path());
    let out_dir = dir.path().join("tsv");
    for _ in 0..2 {
        let out = bin()
            .args(["kss"])
            .arg(&ws)
            .args(["--max-s", "4", "--format", "tsv", "--out"])
            .arg(&out_dir)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let pages = fs::read_to_string(out_dir.join("pages.tsv")).unwrap();
    assert!(pages.starts_with("page\ts\tt\tdegree\tdim\n"));
    assert!(pages.lines().count() > 10);
    let diffs = fs::read_to_string(out_dir.join("differentials.tsv")).unwrap();
    assert!(diffs.starts_with("r\ts\tt\tdegree\trank\n"));
    // d_4 rows present with rank 1.
    assert!(diffs.lines().any(|l| l.starts_with("4\t1\t4\t5\t1")));
}

#[test]
fn cotensor_and_primitives_tables() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_golden_workspace(dir.path());
    let out = bin()
        .args(["primitives"])
        .arg(&ws)
        .args(["--coef", "G"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.trim(), "degree\tdim\n0\t1");

    // The Künneth counterexample dims through the cotensor command:
    // A □ (M⊗M) for M = span{1, x} ⊆ k[x] has dims (1, 1).
    let path = dir.path().join("remark.txt");
    fs::write(
        &path,
        "prime 2\nwindow 0 6\nbialgebra P\nbuilder polynomial deg=1\n",
    )
    .unwrap();
    let out = bin()
        .args(["cotensor"])
        .arg(&path)
        .args(["--coef", "span:1+x(x)span:1+x"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.trim(), "degree\tdim\n0\t1\n1\t1");
}

#[test]
fn kunneth_check_on_remark_workspace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("remark.txt");
    fs::write(
        &path,
        "prime 2\nwindow 0 6\nbialgebra P\nbuilder polynomial deg=1\n",
    )
    .unwrap();
    let out = bin()
        .args(["kunneth-check"])
        .arg(&path)
        .args(["--sub", "span:1+x", "--coef", "span:1+x"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("verdict: FAIL"));
    assert!(stdout.contains("domain 1, codomain 2"));
    assert!(stdout.contains("witness: x"));

    // Graded mode at suspension 0 agrees.
    let out = bin()
        .args(["kunneth-check"])
        .arg(&path)
        .args(["--sub", "span:1+x", "--coef", "span:1+x", "--graded"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: FAIL"));
}

#[test]
fn primfilt_tower_output() {
    let dir = tempfile::tempdir().unwrap();
    let ws = write_golden_workspace(dir.path());
    let out = bin()
        .args(["primfilt"])
        .arg(&ws)
        .args(["--coef", "G"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("finite at stage 5"));
    for t in 0..5 {
        assert!(stdout.contains(&format!("N^{t}: {t}:1")), "piece {t}");
    }
}

#[test]
fn adams_zero_line_default_window() {
    let out = bin()
        .args(["adams-zero-line", "tmf", "--prime", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    // Default window shows two generators (degrees ≤ 12) and the 0-line is
    // the unit line.
    assert!(stdout.contains("degrees ≤ 12"));
    assert!(stdout.contains("0\t1"));
}

#[test]
fn unsupported_pair_is_a_clean_error() {
    let out = bin()
        .args(["adams-zero-line", "ko", "--prime", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not supported"));
}
