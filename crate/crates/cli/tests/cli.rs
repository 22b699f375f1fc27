use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn hopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopf")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_string_lossy().into_owned()
}

fn laurent(pairs: &[(i32, &str)]) -> Value {
    let coeffs: serde_json::Map<String, Value> = pairs.iter().map(|(e, c)| (e.to_string(), json!(c))).collect();
    json!({ "truncation": null, "coeffs": coeffs })
}

#[test]
fn antipode_of_t2() {
    let out = hopf(&["antipode", "--expr", "t2", "--output", "text"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-t2 + t1^2");
    let left = hopf(&["antipode", "--left", "--expr", "t2", "--output", "text"]);
    assert_eq!(stdout(&left).trim(), "-t2 + t1^2");
    let j = json_of(&hopf(&["antipode", "--expr", "t2"]));
    assert_eq!(
        j,
        json!({ "terms": [
            { "coeff": "-1", "monomial": [["t2", 1]] },
            { "coeff": "1", "monomial": [["t1", 2]] },
        ] })
    );
}

#[test]
fn coproduct_of_the_cherry() {
    let out = hopf(&[
        "coproduct",
        "--schema",
        "trees:4",
        "--expr",
        "[[][]]",
        "--reduced",
        "--output",
        "text",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2*[] ⊗ [[]] + []^2 ⊗ []");
    let j = json_of(&hopf(&["coproduct", "--schema", "trees:4", "--expr", "[[][]]"]));
    assert_eq!(j["rank"], 2);
    assert_eq!(j["terms"].as_array().unwrap().len(), 4);
}

#[test]
fn element_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let h = json!({ "terms": [{ "coeff": "-3/2", "monomial": [["t1", 2], ["t3", 1]] }] });
    let f = write(dir.path(), "h.json", &h);
    let out = hopf(&["antipode", &f]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let back = hopf(&["antipode", "-"]);
    assert_eq!(back.status.code(), Some(2), "empty stdin is not an element");
}

#[test]
fn exp_log_and_convolve() {
    let dir = tempfile::tempdir().unwrap();
    let z = write(
        dir.path(),
        "z.json",
        &json!({ "kind": "infinitesimal", "values": { "t1": "3/2" } }),
    );
    let e = hopf(&["exp", &z, "--max-degree", "3"]);
    assert!(e.status.success());
    let ej = json_of(&e);
    assert_eq!(ej["kind"], "character");
    assert_eq!(ej["values"]["t2"], "9/8");
    let ef = write(dir.path(), "e.json", &ej);
    let l = json_of(&hopf(&["log", &ef]));
    assert_eq!(l["kind"], "infinitesimal");
    assert_eq!(l["values"], json!({ "t1": "3/2" }));

    let chi = write(dir.path(), "chi.json", &json!({ "values": { "t1": "2", "t2": "-1" } }));
    let c = json_of(&hopf(&["convolve", &chi, &ef, "--max-degree", "3"]));
    assert_eq!(c["kind"], "character");
    assert_eq!(c["values"]["t1"], "7/2");
    let t = json_of(&hopf(&["convolve", &z, &z, "--max-degree", "2"]));
    assert_eq!(t["kind"], "table");
    assert_eq!(t["values"]["t2"], "9/4");
}

#[test]
fn birkhoff_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let phi = json!({ "ring": "laurent", "values": { "t1": laurent(&[(-1, "1")]), "t2": laurent(&[(-2, "1")]) } });
    let f = write(dir.path(), "phi.json", &phi);
    let out = hopf(&["birkhoff", &f, "--max-degree", "2"]);
    assert!(out.status.success());
    let j = json_of(&out);
    assert_eq!(j["passed"], true);
    assert_eq!(j["certifiedOrder"], Value::Null);
    assert_eq!(j["minus"]["values"]["t1"]["coeffs"], json!({ "-1": "-1" }));
    assert!(j["minus"]["values"].get("t2").is_none());
}

#[test]
fn under_resolved_truncation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let phi = json!({ "ring": "laurent", "values": { "t1": { "truncation": 1, "coeffs": { "-2": "1" } } } });
    let f = write(dir.path(), "phi.json", &phi);
    let out = hopf(&["birkhoff", &f, "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("order 4 required"), "{err}");
}

#[test]
fn build_loop_then_rg_check_recovers_beta() {
    let dir = tempfile::tempdir().unwrap();
    let beta = json!({ "kind": "infinitesimal", "values": { "t1": "2", "t2": "-1/3", "t4": "5" } });
    let bf = write(dir.path(), "beta.json", &beta);
    let out = hopf(&["build-loop", &bf, "--max-degree", "4"]);
    assert!(out.status.success());
    let lf = write(dir.path(), "loop.json", &json_of(&out));
    let rg = hopf(&["rg-check", &lf]);
    assert!(rg.status.success());
    let r = json_of(&rg);
    assert_eq!(r["special"], true);
    assert_eq!(r["beta"]["values"], beta["values"]);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let text = stdout(&hopf(&["rg-check", &lf, "--output", "text"]));
    assert!(
        text.starts_with("special: true, F_t = exp(*beta t) certified to degree 4"),
        "{text}"
    );

    let b = json_of(&hopf(&["beta", &lf, "--counterterm", "--max-order", "3"]));
    assert_eq!(b["beta"]["values"], beta["values"]);
    assert_eq!(b["recursionHolds"], true);
    assert_eq!(b["dn"].as_array().unwrap().len(), 3);
}

#[test]
fn beta_of_a_simple_pole() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "phi.json",
        &json!({ "ring": "laurent", "values": { "t1": laurent(&[(-1, "1")]) } }),
    );
    let b = json_of(&hopf(&["beta", &f, "--max-degree", "3"]));
    assert_eq!(b["residue"]["values"], json!({ "t1": "-1" }));
    assert_eq!(b["beta"]["values"], json!({ "t1": "-1" }));
    let bad = hopf(&["beta", &f, "--counterterm", "--max-degree", "3"]);
    assert_eq!(bad.status.code(), Some(0), "a pure pole is a valid counterterm");
    let g = write(
        dir.path(),
        "reg.json",
        &json!({ "ring": "laurent", "values": { "t1": laurent(&[(0, "1")]) } }),
    );
    assert_eq!(hopf(&["beta", &g, "--counterterm"]).status.code(), Some(2));
}

#[test]
fn non_special_loop_exits_1_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "phi.json",
        &json!({ "ring": "laurent", "values": { "t1": laurent(&[(-2, "1")]) } }),
    );
    let out = hopf(&["rg-check", &f, "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&out);
    assert_eq!(r["special"], false);
    assert_eq!(r["witness"]["monomial"], "t1");
    assert_eq!(r["witness"]["exponent"], -1);
    let text = stdout(&hopf(&["rg-check", &f, "--max-degree", "3", "--output", "text"]));
    assert!(text.starts_with("special: false, witness t1"), "{text}");
}

#[test]
fn scattering_limits() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "beta.json",
        &json!({ "kind": "infinitesimal", "values": { "t1": "3" } }),
    );
    let out = hopf(&["scattering", &f, "--max-degree", "2", "--max-order", "2"]);
    assert!(out.status.success());
    let r = json_of(&out);
    let t2 = r["terms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["order"] == 2 && t["monomial"] == "t2")
        .unwrap();
    assert_eq!(t2["limit"], "9/2");
    assert_eq!(
        t2["finite"],
        json!([{ "rate": 0, "coeff": "9/2" }, { "rate": 1, "coeff": "-9" }, { "rate": 2, "coeff": "9/2" }])
    );
}

#[test]
fn enumerate_trees() {
    let j = json_of(&hopf(&["enumerate-trees", "5"]));
    assert_eq!(j["count"], 9);
    assert_eq!(hopf(&["enumerate-trees", "0"]).status.code(), Some(2));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["antipode", "--expr", "t1 +"],
        vec!["antipode", "--expr", "x1"],
        vec!["antipode", "--schema", "bogus", "--expr", "t1"],
        vec!["antipode", "--schema", "trees:3", "--expr", "[[[[]]]]"],
        vec!["exp", "/nonexistent/z.json"],
        vec!["verify", "--schema", "custom:/nonexistent.json"],
    ] {
        let out = hopf(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn custom_schema_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let schema = json!({
        "generators": [{ "name": "a", "degree": 1 }, { "name": "b", "degree": 2 }],
        "reducedCoproduct": { "b": [{ "left": [["a", 1]], "right": "a", "coeff": "1" }] },
    });
    let path = write(dir.path(), "schema.json", &schema);
    let out = Command::new(env!("CARGO_BIN_EXE_hopf"))
        .args(["antipode", "--schema", "custom", "--expr", "b", "--output", "text"])
        .env("HOPF_SCHEMA_PATH", &path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).trim(), "-b + a^2");
    let missing = Command::new(env!("CARGO_BIN_EXE_hopf"))
        .args(["antipode", "--schema", "custom", "--expr", "b"])
        .env_remove("HOPF_SCHEMA_PATH")
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_small_schema_passes_and_is_reproducible() {
    let a = hopf(&["verify", "--schema", "trees:3", "--seed", "11"]);
    let b = hopf(&["verify", "--schema", "trees:3", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let j = json_of(&a);
    assert_eq!(j["passed"], true);
    assert_eq!(j["schema"], "trees:3");
}
