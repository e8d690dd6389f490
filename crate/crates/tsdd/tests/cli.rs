mod common;

use std::process::Command;

use common::*;

fn example_file(dir: &tempfile::TempDir) -> String {
    let p = dir.path().join("example.cnf");
    std::fs::write(&p, cnf_of_set(&example_vtree(), &example_set()).to_dimacs()).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn compile_reports_stats_and_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let input = example_file(&dir);
    let stats = dir.path().join("s.json");
    let dot = dir.path().join("d.dot");
    let (code, out, err) = run_cli(&[
        "compile",
        "--input",
        &input,
        "--kind",
        "nstsdd",
        "--stats",
        stats.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
        "--check-rewrites",
        "--no-timing",
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(std::fs::read_to_string(&stats).unwrap(), out);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["size"], 5);
    assert_eq!(v["bytes"], 449);
    assert_eq!(v["model_count"], 4);
    assert!(std::fs::read_to_string(&dot)
        .unwrap()
        .starts_with("digraph"));
    assert!(err.contains("0 violations"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let input = example_file(&dir);
    let bad_cnf = dir.path().join("bad.cnf");
    std::fs::write(&bad_cnf, "p cnf 2 1\n1 zz 0\n").unwrap();
    let vt_file = dir.path().join("v.vtree");
    std::fs::write(&vt_file, "((x1 x2) (x3 x9))").unwrap();
    let vt_ok = dir.path().join("ok.vtree");
    std::fs::write(
        &vt_ok,
        tsdd::Vtree::right_linear_numbered(4).unwrap().serialize(),
    )
    .unwrap();
    let big = dir.path().join("big.cnf");
    std::fs::write(&big, "p cnf 6 1\n1 6 0\n").unwrap();
    let vt_arg = format!("file:{}", vt_file.display());
    let vt_ok_arg = format!("file:{}", vt_ok.display());
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["compile", "--input", &input, "--kind", "unknown"], 1),
        (
            vec![
                "compile", "--input", &input, "--kind", "sdd", "--vtree", "sideways",
            ],
            1,
        ),
        (vec!["frobnicate"], 1),
        (
            vec!["compile", "--input", "/nonexistent/x.cnf", "--kind", "sdd"],
            2,
        ),
        (
            vec![
                "compile",
                "--input",
                bad_cnf.to_str().unwrap(),
                "--kind",
                "sdd",
            ],
            2,
        ),
        (
            vec![
                "compile", "--input", &input, "--kind", "sdd", "--vtree", &vt_arg,
            ],
            3,
        ),
        (
            vec![
                "compile", "--input", &input, "--kind", "zsdd", "--vtree", &vt_ok_arg,
            ],
            0,
        ),
        (
            vec![
                "compile",
                "--input",
                big.to_str().unwrap(),
                "--kind",
                "sdd",
                "--check-rewrites",
            ],
            1,
        ),
        (vec!["queens", "-n", "3", "--kind", "sdd"], 2),
        (
            vec![
                "queens",
                "-n",
                "4",
                "--encoding",
                "binary",
                "--kind",
                "eztsdd",
            ],
            0,
        ),
        (vec!["fuzz", "--trials", "0"], 0),
        (vec!["fuzz", "--vars", "6"], 1),
        (vec!["fuzz", "--disable-rule", "compress"], 1),
        (
            vec![
                "fuzz",
                "--vars",
                "3",
                "--trials",
                "10",
                "--kinds",
                "sdd,nztsdd",
            ],
            0,
        ),
        (vec!["--help"], 0),
    ];
    for (args, want) in cases {
        let (code, _, err) = run_cli(&args);
        assert_eq!(code, want, "{args:?}: {err}");
        assert!(!err.contains("panicked"), "{args:?}");
    }
}

#[test]
fn fuzz_reports_failing_seeds_under_fault_injection() {
    let (code, out, _) = run_cli(&[
        "fuzz",
        "--vars",
        "3",
        "--trials",
        "20",
        "--seed",
        "7",
        "--kinds",
        "nstsdd",
        "--disable-rule",
        "a1",
    ]);
    assert_eq!(code, 4);
    assert!(out.lines().any(|l| l.starts_with("FAIL seed=7 trial=")));
    assert!(out.contains("rule=ST:"));
}

#[test]
fn binary_uses_documented_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_tsdd");
    let status = Command::new(exe)
        .args(["compile", "--input", "x", "--kind", "nope"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    let out = Command::new(exe)
        .args(["queens", "-n", "3", "--kind", "sdd"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).contains("RUST_BACKTRACE"));
    let out = Command::new(exe)
        .args(["queens", "-n", "5", "--kind", "estsdd", "--no-timing"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["model_count"], 10);
    assert_eq!(v["wall_ms"], 0);
}
