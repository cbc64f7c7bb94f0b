use std::path::PathBuf;
use std::process::{Command, Output};

use rht_core::report::{Report, Status};
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn rht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rht"))
        .args(args)
        .env_remove("RHT_CAP")
        .output()
        .expect("binary runs")
}

fn machine(args: &[&str]) -> (Report, i32) {
    let mut all = vec!["--machine"];
    all.extend_from_slice(args);
    let out = rht(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let report = Report::from_json(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (report, out.status.code().unwrap())
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn sphere_ranks() {
    let (r, code) = machine(&["cohomology", &data("s2.cdga"), "--through", "7"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["ranks"], serde_json::json!([1, 0, 1, 0, 0, 0, 0, 0]));
}

#[test]
fn wedge_degree_six() {
    let (r, _) = machine(&["cohomology", &data("wedge_seed.cdga"), "--degree", "6"]);
    let d = &r.data["degrees"][0];
    assert_eq!(d["degree"], 6);
    assert_eq!(d["rank"], 1);
    assert_eq!(d["representatives"][0], "a*b");
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_rht"))
        .args(["--machine", "cohomology", &data("s2.cdga")])
        .env("RHT_CAP", "3")
        .output()
        .unwrap();
    let r = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(r.data["cap"], 3);
    assert_eq!(r.data["ranks"].as_array().unwrap().len(), 4);
}

#[test]
fn degree_mismatch_names_line() {
    let f = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/bad_degree.cdga");
    let out = rht(&["cohomology", f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_file_is_usage_error() {
    let out = rht(&["cohomology", "/nonexistent/x.cdga"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rht(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bigraded_projective_plane() {
    let (r, code) = machine(&["model", &data("cp2.ring"), "--bigraded", "--through", "12"]);
    assert_eq!(code, 0);
    let gens = r.data["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 2);
    assert_eq!(gens[0]["name"], "x");
    assert_eq!(
        (gens[0]["degree"].as_u64(), gens[0]["stage"].as_u64()),
        (Some(2), Some(0))
    );
    assert_eq!(
        (gens[1]["degree"].as_u64(), gens[1]["stage"].as_u64()),
        (Some(5), Some(1))
    );
    assert_eq!(gens[1]["differential"], "x^3");
}

#[test]
fn low_cap_gives_empty_model_with_warning() {
    let (r, code) = machine(&["model", &data("s2.cdga"), "--through", "1"]);
    assert_eq!(code, 0);
    assert!(r.data["generators"].as_array().unwrap().is_empty());
    assert_eq!(r.warnings.len(), 1);
}

#[test]
fn wedge_model_table_shape() {
    let (r, _) = machine(&["model", &data("wedge.cdga"), "--through", "13"]);
    let gens = r.data["generators"].as_array().unwrap();
    let at = |deg: u64, depth: u64| {
        gens.iter()
            .filter(|g| g["degree"].as_u64() == Some(deg) && g["depth"].as_u64() == Some(depth))
            .count()
    };
    // a, b | c | u_b | u_c | v_b | w_b, v_c | w_c | z
    assert_eq!(at(3, 0), 2);
    assert_eq!(at(5, 0), 1);
    assert!(at(5, 1) >= 1);
    assert!(at(7, 1) >= 1);
    assert!(at(7, 2) >= 1);
    assert!(at(9, 2) >= 1 && at(9, 3) >= 1);
    assert!(at(11, 3) >= 1);
    assert!(gens.iter().any(|g| g["degree"] == 13));
    let first = gens.iter().find(|g| g["degree"] == 5 && g["depth"] == 1).unwrap();
    assert_eq!(first["differential"], "a*b");
}

#[test]
fn distortion_exponents() {
    let (r, _) = machine(&["distortion", &data("s2.cdga"), "--class", "b"]);
    assert_eq!(r.data["exponent"], 4);
    let (r, _) = machine(&["distortion", &data("cp2.cdga"), "--class", "y"]);
    assert_eq!(r.data["exponent"], 6);
    assert_eq!(r.data["sharpness"], "sharp-if-scalable");
    let out = rht(&["distortion", &data("s2.cdga"), "--class", "q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown generator"));
}

#[test]
fn scalability_verdicts() {
    let (r, code) = machine(&["scalable", "csum(4*CP2)"]);
    assert_eq!((r.status, code), (Status::Refuted, 1));
    assert_eq!(r.data["verdict"], "NotScalable");
    assert_eq!(r.data["certificate"]["kind"], "inertia");

    let (r, code) = machine(&["scalable", "csum(3*(S2xS2))"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["verdict"], "Scalable");
    assert_eq!(r.data["check"]["passed"], true);
    assert_eq!(r.data["witness"].as_array().unwrap().len(), 6);

    let (r, code) = machine(&["scalable", "csum(1*(S2xS2),1*CP2)"]);
    assert_eq!(code, 0);
    assert_eq!(r.data["verdict"], "Unknown");

    let out = rht(&["scalable", "csum(3*XY2)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pairing_scales_with_degree() {
    let (r, _) = machine(&[
        "pair",
        &data("wedge_table.cdga"),
        "--class",
        "z",
        "--bracket",
        "[[a,c],[a,[a,b]]]",
        "--scale",
        "N=2",
    ]);
    assert_ne!(r.data["value"], "0");
    assert_eq!(r.data["scale"]["ratio"], "131072");
    assert_eq!(r.data["scale"]["exponent"], 17);

    let (r, _) = machine(&[
        "pair",
        &data("wedge_table.cdga"),
        "--class",
        "u_b",
        "--bracket",
        "[a,b]",
    ]);
    let v = r.data["value"].as_str().unwrap();
    assert!(v == "1" || v == "-1", "{v}");

    let out = rht(&[
        "pair",
        &data("wedge_table.cdga"),
        "--class",
        "u_b",
        "--bracket",
        "[a,c]",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pairing_on_non_free_file_uses_model() {
    let (r, code) = machine(&["pair", &data("wedge.ring"), "--class", "v5_1", "--bracket", "[a,b]"]);
    assert_eq!(code, 0);
    let v = r.data["value"].as_str().unwrap();
    assert!(v == "1" || v == "-1", "{v}");
}

#[test]
fn verify_battery() {
    let (r, code) = machine(&["verify-paper"]);
    assert_eq!(code, 0, "{:?}", r.warnings);
    assert_eq!(r.data["groups"].as_array().unwrap().len(), 10);

    let (r, _) = machine(&["verify-paper", "--only", "signatures"]);
    let groups = r.data["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0]["group"], "signatures");

    let out = rht(&["verify-paper", "--only", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn injected_sign_fault_is_reported() {
    let (r, code) = machine(&["verify-paper", "--only", "algebra", "--inject-fault", "koszul-sign"]);
    assert_eq!((code, r.status), (1, Status::Refuted));
    assert!(r.warnings.iter().all(|w| w.contains("koszul/")), "{:?}", r.warnings);
    assert!(!r.warnings.is_empty());
}

#[test]
fn machine_output_is_deterministic_and_round_trips() {
    let cases: Vec<Vec<String>> = vec![
        vec!["cohomology".into(), data("wedge.cdga"), "--through".into(), "9".into()],
        vec!["model".into(), data("wedge.cdga"), "--through".into(), "11".into()],
        vec!["scalable".into(), "csum(2*(S2xS2), 1*rev(CP2))".into()],
        vec!["verify-paper".into(), "--only".into(), "sphere,hopf".into()],
    ];
    for case in cases {
        let mut args = vec!["--machine"];
        args.extend(case.iter().map(String::as_str));
        let a = rht(&args).stdout;
        let b = rht(&args).stdout;
        assert_eq!(a, b, "{case:?}");
        let text = String::from_utf8(a).unwrap();
        assert_eq!(Report::from_json(&text).unwrap().to_json(), text);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], rht_core::report::SCHEMA);
    }
}
