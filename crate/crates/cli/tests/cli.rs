use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwcodes"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run cwcodes")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bound_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "bound", "--n", "63", "--q", "2", "--log2M", "63", "--w", "7",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("theorem,n,q,w,d_prime,value\naverage,63,2,7,-,553270671\n"));

    let o = run(
        dir.path(),
        &[
            "bound", "--n", "61", "--log2M", "45", "--d", "7", "--w", "7", "--expect", "ineq",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("average,61,2,7,8,6657"));

    let o = run(
        dir.path(),
        &[
            "bound",
            "--n",
            "63",
            "--M",
            "140737488355328",
            "--w",
            "7..8",
            "--mode",
            "extend",
        ],
    );
    assert!(stdout(&o).contains("extended-average,64,2,7,-,9480\nextended-average,64,2,8,-,67538"));
}

#[test]
fn bound_expect_reports_mismatch() {
    // A(64,6,10): the exact ceiling is one above the published value.
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "bound", "--n", "63", "--log2M", "52", "--w", "10", "--mode", "extend", "--expect",
            "III",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("expected 73961530 computed 73961531 MISMATCH")
    );
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["bound", "--n", "63", "--w", "7"][..],
        &["bound", "--n", "63", "--log2M", "47", "--w", "63"],
        &["sweep", "--bch", "5", "--w", "9"],
        &["sweep", "--bch", "5,11", "--rm1", "5", "--w", "9"],
        &["sweep", "--rm1", "5", "--w", "0"],
        &["table", "ex9"],
        &[
            "verify",
            "missing.code",
            "--n",
            "4",
            "--d",
            "4",
            "--w",
            "2",
            "--size",
            "2",
        ],
    ] {
        assert_eq!(run(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn infeasible_exhaustive_sweep_suggests_sampling() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &["--max-work", "1000", "sweep", "--rm1", "4", "--w", "5"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--sample"));

    let o = run(
        dir.path(),
        &[
            "--max-work",
            "1000",
            "--budget",
            "64",
            "--seed",
            "3",
            "sweep",
            "--rm1",
            "4",
            "--w",
            "5",
            "--sample",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# strategy: sample budget=64 seed=3"));
    assert!(text.contains(",false,64\n"));
}

#[test]
fn sweep_extract_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "--out",
            "out",
            "sweep",
            "--rm1",
            "5",
            "--puncture",
            "1",
            "--w",
            "15",
            "--mode",
            "fixed",
            "--extract",
        ],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o)
        .contains("rm1-5-puncture1,fixed,15,31,0000000000000000000000000000000,true,33554432"));
    let file = dir.path().join("out/rm1-5-puncture1_fixed_w15.code");
    assert!(file.is_file());
    assert!(dir.path().join("out/rm1-5-puncture1_sweep.csv").is_file());

    let f = file.to_str().unwrap();
    let verified = run(
        dir.path(),
        &[
            "verify", f, "--n", "31", "--d", "16", "--w", "15", "--size", "31",
        ],
    );
    assert_eq!(verified.status.code(), Some(0));
    assert!(stdout(&verified).ends_with(",verified\n"));
    let refuted = run(
        dir.path(),
        &[
            "verify", f, "--n", "31", "--d", "18", "--w", "15", "--size", "31",
        ],
    );
    assert_eq!(refuted.status.code(), Some(1));
    assert!(stdout(&refuted).contains("refuted(distance 16 < 18)"));
}

#[test]
fn extract_one_translate() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("rep.code");
    std::fs::write(&code, "3 2 2 3\n000\n111\n").unwrap();
    let o = run(
        dir.path(),
        &[
            "extract",
            "--explicit",
            "rep.code",
            "--u",
            "100",
            "--w",
            "2",
            "--mode",
            "extend",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4 2 2 4\n0110\n1001\n");
}

#[test]
fn verify_empty_code_is_vacuous() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("empty.code"), "31 0 2 12\n").unwrap();
    let o = run(
        dir.path(),
        &[
            "verify",
            "empty.code",
            "--n",
            "31",
            "--d",
            "12",
            "--w",
            "12",
            "--size",
            "0",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with(",vacuous-empty\n"));
    std::fs::write(dir.path().join("bad.code"), "31 1 2 12\n0101\n").unwrap();
    let o = run(
        dir.path(),
        &[
            "verify", "bad.code", "--n", "31", "--d", "12", "--w", "12", "--size", "1",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_without_matrices_skips() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["--out", "art", "table", "ex5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("SKIPPED-conditional").count(), 2);
    assert!(!text.contains(" PASS ["));

    let o = run(dir.path(), &["--out", "art", "table", "ex1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary ex1: 19 pass, 0 mismatch, 0 skipped, 7 out-of-scope"));
    assert!(dir.path().join("art/ex1_bounds.csv").is_file());
}
