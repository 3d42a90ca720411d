use std::process::{Command, Output};

use serde_json::Value;

fn llg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_llg")).args(args).output().expect("llg runs")
}

fn json(args: &[&str]) -> Value {
    let out = llg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn write_temp(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("llg-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn analyze_heisenberg() {
    let r = json(&["analyze", "heisenberg-3"]);
    assert_eq!(r["local_lie_group"], true);
    assert_eq!(r["structure_constants"], serde_json::json!([[[3, 1, 2], "1"]]));
    assert!(r["identities"]["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn analyze_abelian_is_all_zero() {
    let r = json(&["analyze", "--example", "abelian-2"]);
    for key in ["gamma", "torsion", "curvature_tilde", "curvature_hat", "structure_constants"] {
        assert_eq!(r[key], serde_json::json!([]), "{key}");
    }
    assert_eq!(r["local_lie_group"], true);
}

#[test]
fn analyze_lists_offending_hat_curvature() {
    let r = json(&["analyze", "perturbed-3"]);
    assert_eq!(r["local_lie_group"], false);
    assert_eq!(r["verdict"]["hat_curvature_nonzero"], serde_json::json!([[[3, 1, 2, 1], "2"]]));
}

#[test]
fn cohomology_examples() {
    let bettis = |name: &str| -> Vec<u64> {
        json(&["cohomology", name])["degrees"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect()
    };
    assert_eq!(bettis("heisenberg-3")[..2], [1, 4]);
    assert_eq!(bettis("abelian-2"), [2, 4, 2]);
    assert_eq!(bettis("sl2-3")[..2], [0, 0]);
    let r = json(&["cohomology", "heisenberg-3", "--max-degree", "1"]);
    assert_eq!(r["degrees"].as_array().unwrap().len(), 2);
}

#[test]
fn cohomology_of_a_localized_frame_file() {
    let path = write_temp("engel.json", r#"{"n": 4, "frame": [["1","0","0","0"],["0","1","0","0"],["0","x1","1","0"],["0","1/2*x1^2","x1","1"]]}"#);
    let r = json(&["cohomology", &path, "--point", "1,-2,1/2,0"]);
    let b: Vec<u64> = r["degrees"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
    assert_eq!(b, [1, 4, 6, 5, 2]);
}

#[test]
fn classes_examples() {
    let r = json(&["classes", "aff1-2"]);
    assert_eq!(r["entries"][0]["trace"], serde_json::json!([[[1], "1"]]));
    let r = json(&["classes", "heisenberg-3"]);
    assert_eq!(r["entries"][0]["field_closed"], true);
    let r = json(&["classes", "abelian-3"]);
    assert_eq!(r["entries"][0]["cochain"], serde_json::json!([]));
}

#[test]
fn deform_examples() {
    let r = json(&["deform", "--example", "abelian-const-jet"]);
    assert_eq!(r["constancy_order"], 4);
    assert_eq!(r["ks"]["class"]["coordinates"], serde_json::json!(["1", "2", "0", "-1"]));
    let r = json(&["deform", "--example", "heisenberg-bad-column-jet"]);
    assert_eq!(r["validity"]["constraint_field"][0], false);
    assert_eq!(r["validity"]["derived_annihilated"][0], false);
    // A 3×3 jet cannot act on a 4-dimensional base.
    assert_eq!(llg(&["deform", "engel-4", "heisenberg-identity-jet"]).status.code(), Some(3));
}

#[test]
fn deform_with_order_and_files() {
    let base = write_temp("heis.json", &String::from_utf8(llg(&["examples", "heisenberg-3"]).stdout).unwrap());
    let jet = write_temp("jet.json", &String::from_utf8(llg(&["examples", "heisenberg-identity-jet"]).stdout).unwrap());
    let r = json(&["deform", &base, &jet, "--order", "2"]);
    assert_eq!(r["order"], 2);
    assert_eq!(r["ks"]["class"]["zero"], true);
}

#[test]
fn exit_codes() {
    let bad_json = write_temp("broken.json", "{\"n\": 3,");
    assert_eq!(llg(&["cohomology", &bad_json]).status.code(), Some(2));
    assert_eq!(llg(&["analyze", "no-such-example"]).status.code(), Some(2));
    let jacobi = write_temp("jacobi.json", r#"{"n": 3, "c": [{"i": 1, "j": 1, "k": 2, "val": "1"}, {"i": 2, "j": 2, "k": 3, "val": "1"}]}"#);
    let out = llg(&["cohomology", &jacobi]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(1,2,3)"));
    assert_eq!(llg(&["classes", "perturbed-3"]).status.code(), Some(5));
    assert_eq!(llg(&["deform", "perturbed-3", "heisenberg-identity-jet"]).status.code(), Some(5));
    let singular = write_temp("singular.json", r#"{"n": 2, "frame": [["x1", "0"], ["0", "1"]]}"#);
    assert_eq!(llg(&["analyze", &singular]).status.code(), Some(3));
    assert_eq!(llg(&["analyze", "heisenberg-3", "--point", "1,2"]).status.code(), Some(2));
}

#[test]
fn examples_listing_and_files() {
    let list = json(&["examples"]);
    let names: Vec<&str> = list.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for n in ["abelian-2", "heisenberg-3", "engel-4", "aff1-2", "sl2-3", "abelian-const-jet", "abelian-nonconst-jet"] {
        assert!(names.contains(&n), "{n}");
    }
    let out = llg(&["examples", "sl2-3"]);
    assert!(out.status.success());
    let text = String::from_utf8(llg(&["--format", "text", "examples"]).stdout).unwrap();
    assert!(text.contains("heisenberg-3"));
}

#[test]
fn verify_text_summary() {
    let out = llg(&["--format", "text", "verify", "--suite", "complexes", "--seed", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS cohomology") && text.contains("all checks passed"));
    let r = json(&["verify", "--suite", "identities", "--seed", "3"]);
    assert_eq!(r["passed"], true);
    assert_eq!(r["seed"], 3);
}
