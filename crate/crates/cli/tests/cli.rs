use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use evalg_cli::{cmd_tables, default_grid, table_text};
use evalg_core::Field;
use tempfile::TempDir;

fn evalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evalg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn value<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{report}"))
}

const N46: &str = "field: Q\ndim: 4\nrow: 0 1 1 0\nrow: 0 0 0 1\nrow: 0 0 0 -1\nrow: 0 0 0 0\n";

#[test]
fn check_n46() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "n46.alg", N46);
    let o = evalg(&["check", f.to_str().unwrap(), "--which", "assoc,pa,jordan,nil,chain"]);
    assert!(o.status.success());
    let r = stdout(&o);
    assert_eq!(value(&r, "assoc"), "false");
    assert!(value(&r, "assoc.witness").starts_with("assoc (1,2)"));
    assert_eq!(value(&r, "pa"), "true");
    assert_eq!(value(&r, "jordan"), "true");
    assert_eq!(value(&r, "nil"), "true");
    assert_eq!(value(&r, "type"), "[1, 2, 1]");
    assert_eq!(value(&r, "nil.index"), "4");
}

#[test]
fn check_zero_algebra_and_scaled_idempotent() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "zero.alg", "field: Fp:7\ndim: 3\nrow: 0 0 0\nrow: 0 0 0\nrow: 0 0 0\n");
    let r = stdout(&evalg(&["check", f.to_str().unwrap()]));
    for key in ["assoc", "pa4", "pa", "jordan", "nil"] {
        assert_eq!(value(&r, key), "true");
    }
    assert_eq!(value(&r, "type"), "[3]");
    let f = write(dir.path(), "two.alg", "field: Q\ndim: 1\nrow: 2\n");
    let r = stdout(&evalg(&["check", f.to_str().unwrap(), "--which", "pa,assoc"]));
    assert_eq!(value(&r, "pa"), "true");
    assert_eq!(value(&r, "assoc"), "true");
}

#[test]
fn non_pa_verdict_is_not_an_error_but_classify_is() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "swap.alg", "field: Q\ndim: 2\nrow: 0 1\nrow: 1 0\n");
    let o = evalg(&["check", f.to_str().unwrap(), "--which", "pa"]);
    assert!(o.status.success());
    assert!(value(&stdout(&o), "pa.witness").starts_with("pa4.1 (1)"));
    let o = evalg(&["classify", f.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not power-associative"));
}

#[test]
fn classify_canonical_and_disguised() {
    let dir = TempDir::new().unwrap();
    let f = write(
        dir.path(),
        "n512.alg",
        "field: Q\ndim: 5\nrow: 0 1 1 0 0\nrow: 0 0 0 0 1\nrow: 0 0 0 0 -1\nrow: 0 1 1 0 2\nrow: 0 0 0 0 0\n",
    );
    let r = stdout(&evalg(&["classify", f.to_str().unwrap()]));
    assert_eq!(value(&r, "label"), "N_{5,12}(1, 2)");
    assert_eq!(value(&r, "params"), "[1, 2]");
    assert_eq!(value(&r, "verified"), "true");

    // f1 = e1, f2 = 2e2, f3 = e3, f4 = e4 applied to N_{4,6}.
    let g = write(dir.path(), "g.alg", "field: Q\ndim: 4\nrow: 0 1/2 1 0\nrow: 0 0 0 4\nrow: 0 0 0 -1\nrow: 0 0 0 0\n");
    let iso = dir.path().join("iso.mat");
    let o = evalg(&["classify", g.to_str().unwrap(), "--out", iso.to_str().unwrap()]);
    let r = stdout(&o);
    assert_eq!(value(&r, "label"), "N_{4,6}");
    assert_ne!(value(&r, "iso"), "[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]");
    let c = write(dir.path(), "c.alg", N46);
    let o = evalg(&["verify", g.to_str().unwrap(), c.to_str().unwrap(), iso.to_str().unwrap()]);
    assert_eq!(value(&stdout(&o), "isomorphism"), "true");
}

#[test]
fn mixed_entry_reports_wedderburn_summary() {
    let dir = TempDir::new().unwrap();
    let f = write(
        dir.path(),
        "e521.alg",
        "field: Q\ndim: 5\nrow: 1 0 0 0 0\nrow: 0 1 0 0 0\nrow: 0 0 0 0 1\nrow: 0 0 0 0 3\nrow: 0 0 0 0 0\n",
    );
    let r = stdout(&evalg(&["classify", f.to_str().unwrap()]));
    assert_eq!(value(&r, "label"), "E_{5,21}(3)");
    assert_eq!(value(&r, "wedderburn.s"), "2");
    assert_eq!(value(&r, "wedderburn.radical"), "N_{3,3}(3)");
    let r = stdout(&evalg(&["decompose", f.to_str().unwrap()]));
    assert_eq!(value(&r, "components"), "3");
    assert_eq!(value(&r, "wedderburn.radical_indices"), "[3, 4, 5]");
    assert_eq!(value(&r, "wedderburn.radical"), "N_{3,3}(3)");
}

#[test]
fn verify_reports_first_failing_pair() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "n22.alg", "field: Q\ndim: 2\nrow: 0 1\nrow: 0 0\n");
    let b = write(dir.path(), "n21.alg", "field: Q\ndim: 2\nrow: 0 0\nrow: 0 0\n");
    let m = write(dir.path(), "id.mat", "field: Q\ndim: 2\nrow: 1 0\nrow: 0 1\n");
    let o = evalg(&["verify", a.to_str().unwrap(), b.to_str().unwrap(), m.to_str().unwrap()]);
    assert!(o.status.success());
    let r = stdout(&o);
    assert_eq!(value(&r, "isomorphism"), "false");
    assert_eq!(value(&r, "isomorphism.pair"), "(1, 1)");
    let o = evalg(&["verify", a.to_str().unwrap(), a.to_str().unwrap(), m.to_str().unwrap()]);
    assert_eq!(value(&stdout(&o), "isomorphism"), "true");
}

#[test]
fn random_is_deterministic() {
    let a = evalg(&["random", "--field", "Fp:7", "--dim", "4", "--seed", "1", "--mode", "nil_pa"]);
    let b = evalg(&["random", "--field", "Fp:7", "--dim", "4", "--seed", "1", "--mode", "nil_pa"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "r.alg", &stdout(&a));
    let r = stdout(&evalg(&["classify", f.to_str().unwrap()]));
    assert_eq!(value(&r, "kind"), "nil");
    assert_eq!(value(&r, "dim"), "4");
    let one = evalg(&["random", "--dim", "1", "--seed", "9", "--mode", "nil_pa"]);
    assert_eq!(stdout(&one), "field: Q\ndim: 1\nrow: 0\n");
}

#[test]
fn bad_files_exit_nonzero() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "p5.alg", "field: Fp:5\ndim: 1\nrow: 0\n");
    let o = evalg(&["check", f.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("characteristic 5"));
    let f = write(dir.path(), "short.alg", "field: Q\ndim: 3\nrow: 0 0 0\nrow: 0 0\nrow: 0 0 0\n");
    assert!(!evalg(&["check", f.to_str().unwrap()]).status.success());
    let f = write(dir.path(), "seven.alg", &format!("field: Q\ndim: 7\n{}", "row: 0 0 0 0 0 0 0\n".repeat(7)));
    let o = evalg(&["classify", f.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("dimension 7"));
}

#[test]
fn tables_match_golden_transcriptions() {
    let golden1 = include_str!("golden/table1.txt");
    let golden2 = include_str!("golden/table2.txt");
    let grid = default_grid(Field::Rationals);
    assert_eq!(table_text(Field::Rationals, 1..=4, &grid).unwrap(), golden1);
    assert_eq!(table_text(Field::Rationals, 5..=5, &grid).unwrap(), golden2);
}

#[test]
fn tables_command_writes_every_dimension() {
    let dir = TempDir::new().unwrap();
    let f7 = Field::prime(7).unwrap();
    let written = cmd_tables(f7, 6, &default_grid(f7), dir.path()).unwrap();
    assert_eq!(written.len(), 12);
    let six = fs::read_to_string(dir.path().join("table-dim6.txt")).unwrap();
    assert_eq!(six.lines().count(), 52);
    let n625 = six.lines().find(|l| l.starts_with("N_{6,25}(α) |")).unwrap();
    assert!(n625.ends_with("| [2, 2, 2] | No"), "{n625}");
    let n623 = six.lines().find(|l| l.starts_with("N_{6,23}")).unwrap();
    assert!(n623.contains("αδ - βγ ≠ 0"));
    let o = evalg(&["tables", "--field", "Q", "--dim", "2", "--out", dir.path().join("q").to_str().unwrap()]);
    assert!(o.status.success());
    let t = fs::read_to_string(dir.path().join("q").join("table-dim2.txt")).unwrap();
    assert_eq!(t.lines().count(), 4);
}
