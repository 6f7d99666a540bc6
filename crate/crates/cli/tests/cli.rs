use std::process::{Command, Output};

use serde_json::Value;

fn perikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perikit"))
        .args(args)
        .env_remove("PERIKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = perikit(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn census_g2() {
    let v = json(&["census", "G2"]);
    assert_eq!(v["weyl_order"], 12);
    assert_eq!(v["periodic_count"], 5);
    assert_eq!(v["coxeter_count"], 2);
    assert_eq!(v["solomon_coefficients"], serde_json::json!([1, 6, 5]));
    assert_eq!(v["source"], "enumerated");
}

#[test]
fn census_family_and_rank_separately() {
    let v = json(&["census", "B", "3"]);
    assert_eq!(v["type"], "B3");
    assert_eq!(v["periodic_count"], 15);
}

#[test]
fn census_text_row() {
    let out = perikit(&["census", "G2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(&row[2..5], ["12", "5", "2"]);
}

#[test]
fn table_f4_and_e_rows() {
    let out = perikit(&["table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row = |name: &str| -> Vec<String> {
        text.lines()
            .find(|l| l.starts_with(name))
            .unwrap_or_else(|| panic!("no row {name}"))
            .split_whitespace()
            .map(String::from)
            .collect()
    };
    assert_eq!(&row("F4")[2..5], ["1152", "385", "96"]);
    assert_eq!(&row("E6")[2..5], ["51840", "12320", "4320"]);
    assert_eq!(&row("E8")[2..5], ["696729600", "215656441", "23224320"]);
}

#[test]
fn golden_json_is_byte_identical() {
    let a = perikit(&["census", "F4", "--json"]);
    let b = perikit(&["census", "F4", "--json", "--sequential"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    // keys sorted
    let first_keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = first_keys.clone();
    sorted.sort();
    assert_eq!(first_keys, sorted);
}

#[test]
fn ext_order_fixture() {
    let out = perikit(&["ext-order", &fixture("sl2_coxeter.json"), "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "4");
}

#[test]
fn ext_order_inline() {
    let raw = std::fs::read_to_string(fixture("sl2_coxeter.json")).unwrap();
    let v = json(&["ext-order", "--matrix-inline", &raw, "1"]);
    assert_eq!(v["order"], 4);
}

#[test]
fn ext_analyze_g2() {
    let v = json(&["ext-analyze", &fixture("g2_coxeter.json")]);
    assert_eq!(v["auto_order"], 6);
    assert_eq!(v["order_bound_prop7"], 6);
    assert_eq!(v["component_orders"]["1"], 6);
    assert_eq!(v["component_orders"]["3"], 2);
}

#[test]
fn resolve_f4() {
    let v = json(&["resolve", "F4"]);
    assert_eq!(v["status"], "resolved");
    let orders: Vec<u64> = serde_json::from_value(v["orders"].clone()).unwrap();
    assert_eq!(orders[..6], [12, 6, 4, 3, 12, 2]);
}

#[test]
fn lift_c2() {
    let v = json(&["lift", "C", "2", "(1 2)", "+-"]);
    assert_eq!(v["order"], 8);
    assert_eq!(v["order_rule"], 8);
    assert_eq!(v["weyl_image"], v["element"]);
}

#[test]
fn lift_a1() {
    let v = json(&["lift", "A", "1", "(1 2)"]);
    assert_eq!(v["matrix"]["rows"], serde_json::json!([[0, -1], [1, 0]]));
    assert_eq!(v["order"], 4);
}

#[test]
fn non_periodic_on_identity_automorphism() {
    let out = perikit(&["ext-order", &fixture("identity.json"), "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("not periodic"), "{}", stderr(&out));
}

#[test]
fn too_large_e8_without_closed_form() {
    let out = perikit(&["census", "E8"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("696729600"));
    let v = json(&["census", "E8", "--closed-form"]);
    assert_eq!(v["periodic_count"], 215656441);
    assert_eq!(v["source"], "closed_form");
}

#[test]
fn too_large_e7_without_flag() {
    let out = perikit(&["census", "E7"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unsupported_family_lift() {
    let out = perikit(&["lift", "F4", "4", "(1 2)"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("unsupported family F4"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["census", "X9"][..],
        &["frobnicate"],
        &["census"],
        &["ext-order", "only-one-arg"],
        &["lift", "C", "2", "(1 2", "+-"],
        &["ext-analyze", "/nonexistent/file.json"],
    ] {
        let out = perikit(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn invalid_extension_is_domain_error() {
    let out = perikit(&[
        "ext-analyze",
        "--matrix-inline",
        r#"{"rank":1,"degree":2,"matrix":{"n":1,"rows":[[2]]},"tau0":["0"]}"#,
    ]);
    assert_eq!(out.status.code(), Some(3));
}
