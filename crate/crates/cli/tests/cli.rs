use std::process::{Command, Output};

fn polaris(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polaris"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn check_reports_first_deficit() {
    let out = polaris(&["check", "A1: R1+R1", "--k", "2", "--format", "json", "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"]["status"], "fails_at");
    assert_eq!(v["verdict"]["multidegree"], serde_json::json!([1, 1]));
    assert_eq!(v["verdict"]["dim_invariants"], 4);
    assert_eq!(v["verdict"]["pol_dim"], 1);
    assert_eq!(v["timing_ms"], 0);
}

#[test]
fn binary_quartic_bound() {
    let out = polaris(&["check", "A1: R4", "--backend", "bound", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["backend"], "bound");
    assert_eq!(v["verdict"]["multidegree"], serde_json::json!([2, 2]));
}

#[test]
fn deterministic_reruns_are_identical() {
    let args = ["check", "B2: phi1", "--k", "3", "--max-degree", "4", "--format", "json", "--deterministic"];
    let a = polaris(&args);
    let b = polaris(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn inconclusive_exits_two() {
    // Explicit generators without a sampler cannot be verified.
    let dir = std::env::temp_dir().join(format!("polaris-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("gens.txt");
    std::fs::write(&file, "x[1][2]^2 - 4 * x[1][1] * x[1][3]\n").unwrap();
    let out = polaris(&["check", "A1: R2", "--generators", file.to_str().unwrap(), "--backend", "exact", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["verdict"]["status"], "inconclusive");
}

#[test]
fn bad_input_exits_one() {
    let out = polaris(&["check", "Q7: phi1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let out = polaris(&["check", "A2: phi1", "--backend", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn catalog_show_entries() {
    for id in ["theorem-4", "case-c", "case-d"] {
        let out = polaris(&["catalog", "show", id, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{id}");
        let v = json(&out);
        assert_eq!(v["id"], id);
        assert!(!v["citation"].as_str().unwrap().is_empty());
    }
    let v = json(&polaris(&["catalog", "show", "case-c", "--format", "json"]));
    assert_eq!(v["slice_chain"][0]["rep"], "A1: R4");
    assert_eq!(polaris(&["catalog", "show", "missing"]).status.code(), Some(1));
}

#[test]
fn catalog_list_nonempty() {
    let out = polaris(&["catalog", "list", "--format", "json"]);
    assert!(json(&out).as_array().unwrap().len() > 10);
}

#[test]
fn molien_of_b2_weyl_group() {
    let v = json(&polaris(&["molien", "weyl(B,2)", "--max-degree", "6", "--format", "json"]));
    assert_eq!(v["order"], 8);
    assert_eq!(v["coefficients"], serde_json::json!([1, 0, 1, 0, 2, 0, 2]));
}

#[test]
fn polarize_sum_of_squares() {
    let dir = std::env::temp_dir().join(format!("polaris-pol-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("f.txt");
    std::fs::write(&file, "x[1][1]^2 + x[1][2]^2").unwrap();
    let out = polaris(&["polarize", file.to_str().unwrap(), "--k", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[1, 1]\t2 * x[1][1] * x[2][1] + 2 * x[1][2] * x[2][2]"), "{text}");
}

#[test]
fn fault_injection_is_caught() {
    let out = polaris(&["verify-paper", "--instances", "10", "--inject-fault", "sym-power-sign"]);
    assert_eq!(out.status.code(), Some(1));
}
