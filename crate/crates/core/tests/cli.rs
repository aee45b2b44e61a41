use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&dyn AsRef<std::ffi::OsStr>]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_readonce"))
        .args(args.iter().map(|a| a.as_ref()))
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn pair(dir: &TempDir, cnf: &str, dnf: &str) -> (PathBuf, PathBuf) {
    (write(dir, "c.cnf", cnf), write(dir, "d.dnf", dnf))
}

#[test]
fn check_reports_witness_and_step() {
    let dir = TempDir::new().unwrap();
    let (c, d) = pair(&dir, "x1 x2\nx3\n", "x1 y1\nx2 y2\nx3 y3\n");
    let (code, out, _) = run(&[&"check", &c, &d]);
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "NOT_READ_ONCE\nstep: 2\nminterm: {x1, x3}\nmaxterm: {x1, x2, x3}\n"
    );

    let (code, out, _) = run(&[&"check", &c, &d, &"--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"verdict": "NOT_READ_ONCE", "step": "2", "minterm": ["x1", "x3"], "maxterm": ["x1", "x2", "x3"]})
    );
}

#[test]
fn check_read_once_and_errors() {
    let dir = TempDir::new().unwrap();
    let (c, d) = pair(&dir, "# one clause\nx1 x2\n", "x1 y1\nx2 y2\n");
    let (code, out, _) = run(&[&"check", &c, &d]);
    assert_eq!(code, 0);
    assert!(out.starts_with("READ_ONCE\n"));

    let (c, d) = pair(&dir, "x1 | x2\n", "x1 y1\nx2 y2\n");
    let (code, _, err) = run(&[&"check", &c, &d]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"));

    let (c, d) = pair(&dir, "z\n", "x1 y1\n");
    let (code, _, err) = run(&[&"check", &c, &d]);
    assert_eq!(code, 2);
    assert!(err.contains("variable of C missing from D"));

    let (code, _, _) = run(&[&"check", &dir.path().join("missing.cnf"), &d]);
    assert_eq!(code, 2);
}

#[test]
fn oracle_reproduces_gadget_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "g.txt",
        "w2 & w3 & w4 | w1 & w3 & w4 | w1 & w2 & w4 | w1 & w2 & w3\n",
    );
    let (code, out, _) = run(&[&"oracle", &f]);
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "NOT_READ_ONCE\nminterm: {w1, w2, w3}\nmaxterm: {w1, w2}\n"
    );
    let (_, out, _) = run(&[&"oracle", &f, &"--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["step"], serde_json::Value::Null);
    assert_eq!(v["minterm"], serde_json::json!(["w1", "w2", "w3"]));
}

#[test]
fn oracle_read_once_and_limits() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "x1 & y1 | x2 & y2\n");
    assert_eq!(run(&[&"oracle", &f]).0, 0);

    let wide: Vec<String> = (0..30).map(|i| format!("v{i}")).collect();
    let f = write(&dir, "wide.txt", &wide.join(" | "));
    let (code, _, err) = run(&[&"oracle", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("30"));
    let f = write(&dir, "w25.txt", &wide[..25].join(" | "));
    assert_eq!(run(&[&"oracle", &f]).0, 2);
    assert_eq!(run(&[&"oracle", &f, &"--max-vars", &"25"]).0, 0);

    let f = write(&dir, "neg.txt", "a & !b");
    let (code, _, err) = run(&[&"oracle", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("negation"));
}

#[test]
fn taut_examples() {
    let dir = TempDir::new().unwrap();
    let (c, d) = pair(&dir, "x1\ny1\n", "x1 y1\n");
    assert_eq!(
        run(&[&"taut", &c, &d]),
        (0, "TAUTOLOGY\n".into(), String::new())
    );

    let (c, d) = pair(&dir, "x1 x2\ny1 y2\n", "x1 y1\nx2 y2\n");
    let (code, out, _) = run(&[&"taut", &c, &d]);
    assert_eq!(
        (code, out.as_str()),
        (1, "NOT_TAUTOLOGY\ncounterexample: {x1, y2}\n")
    );

    let (c, d) = pair(&dir, "x1 x2\nx3\n", "x1 y1\nx2 y2\nx3 y3\n");
    let (code, out, _) = run(&[&"taut", &c, &d, &"--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"verdict": "NOT_TAUTOLOGY", "counterexample": ["x1", "x3"]})
    );
}

fn manifest(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

#[test]
fn reduce_writes_instance_files() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.txt", "3 3\n1 2\n2 3\n1 3\n");
    let out = dir.path().join("k3");
    let (code, _, _) = run(&[&"reduce", &g, &"-k", &"2", &"--out", &out, &"--corollary"]);
    assert_eq!(code, 0);
    let m = manifest(&out);
    assert_eq!(
        (m["n_vars"].as_u64(), m["conf_size"].as_u64()),
        (Some(6), Some(3))
    );
    let dn = std::fs::read_to_string(out.join("dn.txt")).unwrap();
    assert_eq!(
        dn,
        "x_1_1_2_1 x_2_1_1_1\nx_1_2_2_2 x_2_2_1_2\nx_1_3_2_3 x_2_3_1_3\n"
    );
    let wrapper = std::fs::read_to_string(out.join("wrapper.txt")).unwrap();
    assert!(wrapper.contains("w1") && wrapper.contains("w4"));

    // The emitted files feed back into the other subcommands.
    let (code, _, _) = run(&[&"oracle", &out.join("wrapper.txt")]);
    assert_eq!(code, 1);

    let g = write(&dir, "e2.txt", "2 0\n");
    let out = dir.path().join("e2");
    assert_eq!(run(&[&"reduce", &g, &"-k", &"2", &"--out", &out]).0, 0);
    assert_eq!(manifest(&out)["n_vars"].as_u64(), Some(8));
    assert!(!out.join("wrapper.txt").exists());
}

#[test]
fn reduce_errors_and_random_graphs() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.txt", "3 3\n1 2\n2 3\n1 3\n");
    let (code, _, err) = run(&[&"reduce", &g, &"-k", &"1", &"--out", &dir.path().join("x")]);
    assert_eq!(code, 2);
    assert!(err.contains("k < 2"));
    let bad = write(&dir, "bad.txt", "2 1\n1 1\n");
    assert_eq!(
        run(&[
            &"reduce",
            &bad,
            &"-k",
            &"2",
            &"--out",
            &dir.path().join("y")
        ])
        .0,
        2
    );

    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out in [&a, &b] {
        let (code, _, _) = run(&[
            &"reduce",
            &"--random",
            &"4",
            &"--seed",
            &"9",
            &"-k",
            &"2",
            &"--out",
            out,
        ]);
        assert_eq!(code, 0);
    }
    let read = |p: &Path, f: &str| std::fs::read_to_string(p.join(f)).unwrap();
    assert_eq!(read(&a, "graph.txt"), read(&b, "graph.txt"));
    assert_eq!(read(&a, "psi.txt"), read(&b, "psi.txt"));
}

#[test]
fn cli_matches_library() {
    let dir = TempDir::new().unwrap();
    let (c, d) = pair(&dir, "x1 x2\ny1 y2\n", "x1 y2\nx2 y1\n");
    let inst = readonce::io::load_instance(&c, &d).unwrap();
    let lib = inst.recognize().unwrap();
    let (code, out, _) = run(&[&"check", &c, &d, &"--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], lib.verdict.to_string());
    assert_eq!(v["step"], lib.step.to_string());
    assert_eq!(code, if lib.witness.is_some() { 1 } else { 0 });
    if let Some(w) = &lib.witness {
        assert_eq!(
            v["minterm"],
            serde_json::json!(inst.registry().sorted_names(&w.minterm))
        );
        assert_eq!(
            v["maxterm"],
            serde_json::json!(inst.registry().sorted_names(&w.maxterm))
        );
    }
}
