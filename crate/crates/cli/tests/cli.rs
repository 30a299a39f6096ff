use std::process::{Command, Output};

use serde_json::Value;

fn ncpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncpoly")).args(args).output().unwrap()
}

fn json_run(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = ncpoly(&all);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn verify(v: &Value) -> i32 {
    let dir = std::env::temp_dir().join(format!("ncpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{}.json", v["command"].as_str().unwrap()));
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    ncpoly(&["verify", path.to_str().unwrap()]).status.code().unwrap()
}

#[test]
fn stable_association_certificate() {
    let (code, v) = json_run(&["stable-assoc", "x*y*x*y+x*y+x", "x*y^2*x+x*y+x"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["a"], "y*x + 1");
    assert_eq!(v["certificate"]["b"], "x*y + 1");
    assert_eq!(verify(&v), 0);
}

#[test]
fn isospectral_intertwiner() {
    let (code, v) = json_run(&["isospectral", "x*y", "y*x"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["kind"], "intertwiner");
    assert_eq!(v["certificate"]["a"], "x");
    assert_eq!(verify(&v), 0);
}

#[test]
fn similarity_witness_is_the_displayed_pair() {
    let (code, v) = json_run(&["similar", "x*y+1", "y*x+1"]);
    assert_eq!(code, 1);
    let w = &v["witness"];
    assert_eq!(w["size"], 2);
    assert_eq!(w["matrices"], serde_json::json!([[["1", "0"], ["0", "0"]], [["0", "1"], ["0", "0"]]]));
    assert_eq!(verify(&v), 0);
}

#[test]
fn tampered_certificates_fail_verification() {
    let (_, mut v) = json_run(&["stable-assoc", "x*y*x*y+x*y+x", "x*y^2*x+x*y+x"]);
    v["certificate"]["a"] = "y*x + 2".into();
    assert_eq!(verify(&v), 1);
    let (_, mut v) = json_run(&["similar", "x*y+1", "y*x+1"]);
    v["witness"]["matrices"][1] = serde_json::json!([["0", "0"], ["0", "0"]]);
    assert_eq!(verify(&v), 1);
}

#[test]
fn every_certificate_reverifies() {
    let q = r#"{"matrices":[[[1,0],[0,0]],[[0,1],[0,0]]]}"#;
    let runs: Vec<Vec<&str>> = vec![
        vec!["eval", "x*y+1", q],
        vec!["intertwiner", "x*y+1", "y*x+1"],
        vec!["chain", "(x-1)*(x-2)*y+x", "y*(x-1)*(x-2)+x"],
        vec!["isospectral", "(x*y+y)^2+1", "(y*x+y)^2+1"],
        vec!["norm-equiv", "x*y+x*", "i*x*y+i*x*", "--field", "Q(i)"],
        vec!["decompose", "(x*y+y)^2+3*(x*y+y)"],
        vec!["factor-homog", "x*y*x*y"],
        vec!["gcrd", "(y*x+1)*x", "x*x"],
        vec!["comax", "x*y+1", "x"],
        vec!["comax", "y*x+1", "x", "--side", "left"],
        vec!["pencil-sim", r#"{"matrices":[[[1,2],[0,3]]]}"#, r#"{"matrices":[[[3,0],[1,1]]]}"#],
        vec!["pad-pencil", r#"{"homogeneous":true,"matrices":[[[1]]]}"#, r#"{"matrices":[[[1],[0]]]}"#],
        vec!["nc-witness", "x", "x^2+1"],
        vec!["similar", "x*y", "x*y"],
    ];
    for args in runs {
        let (code, v) = json_run(&args);
        assert_eq!(code, 0, "{args:?}: {v}");
        assert_eq!(verify(&v), 0, "{args:?}: {v}");
    }
}

#[test]
fn refutations() {
    let (code, v) = json_run(&["stable-assoc", "x*y", "y*x"]);
    assert_eq!((code, v["witness"]["size"].as_u64()), (1, Some(2)));
    assert_eq!(verify(&v), 0);
    let (code, v) = json_run(&["nc-witness", "x", "y"]);
    assert_eq!(code, 1);
    assert_eq!(verify(&v), 0);
    let (code, v) = json_run(&["isospectral", "x*y*x*y+x*y+x", "x*y^2*x+x*y+x"]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["kind"], "charpoly");
    assert_eq!(verify(&v), 0);
    let (code, _) = json_run(&["comax", "x", "x"]);
    assert_eq!(code, 1);
    let (code, _) = json_run(&["pencil-sim", r#"{"matrices":[[[0,1],[0,0]]]}"#, r#"{"matrices":[[[0,0],[0,0]]]}"#]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors() {
    let out = ncpoly(&["isospectral", "x*y+", "y"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("argument f") && err.contains("column 5"), "{err}");
    assert_eq!(ncpoly(&["bogus"]).status.code(), Some(3));
    assert_eq!(ncpoly(&["isospectral", "x"]).status.code(), Some(3));
    assert_eq!(ncpoly(&["isospectral", "x", "y", "--samples", "0"]).status.code(), Some(3));
    assert_eq!(ncpoly(&["isospectral", "x", "y", "--field", "R"]).status.code(), Some(3));
    assert_eq!(ncpoly(&["eval", "x", "{not json"]).status.code(), Some(3));
    assert_eq!(ncpoly(&["eval", "x", "/nonexistent/tuple.json"]).status.code(), Some(3));
    assert_eq!(ncpoly(&["eval", "z", r#"{"matrices":[[[1]]]}"#]).status.code(), Some(3));
    assert_eq!(ncpoly(&["factor-homog", "x+1"]).status.code(), Some(3));
    assert_eq!(ncpoly(&["--help"]).status.code(), Some(0));
}

#[test]
fn undecided_within_budget() {
    let (code, v) = json_run(&["intertwiner", "x*y+1", "y*x+2", "--max-deg", "2"]);
    assert_eq!(code, 2);
    assert!(v["reason"].is_string());
}

#[test]
fn reports_are_reproducible() {
    let args = ["stable-assoc", "x*y*x*y*x*y*x+x*y+x", "x*y^2*x+x*y+x*y", "--json", "--seed", "5"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_ncpoly")).args(args).env("RAYON_NUM_THREADS", threads).output().unwrap()
    };
    let a = run("1");
    assert_eq!(a.stdout, run("4").stdout);
    assert_eq!(a.stdout, run("1").stdout);
    let b = ncpoly(&["similar", "x*y+1", "y*x+1", "--seed", "9"]);
    assert_eq!(b.stdout, ncpoly(&["similar", "x*y+1", "y*x+1", "--seed", "9"]).stdout);
}

#[test]
fn golden_corpus() {
    let (code, v) = json_run(&["verify-paper"]);
    assert_eq!(code, 0, "{v}");
    assert!(v["items"].as_array().unwrap().iter().all(|i| i["passed"] == true));
}

#[test]
fn variables_and_fields() {
    let (code, v) = json_run(&["isospectral", "a*b", "b*a", "--vars", "a,b"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["a"], "a");
    assert_eq!(verify(&v), 0);
    let field = "Q(sqrt5)(xi: xi^2 = 29 + 13*sqrt5)";
    let (code, v) = json_run(&["eval", "xi*x + y", r#"{"field":"Q(sqrt5)","matrices":[[["sqrt5"]],[["1/2"]]]}"#, "--field", field]);
    assert_eq!(code, 0);
    assert_eq!(verify(&v), 0);
}
