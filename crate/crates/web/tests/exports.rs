use serde_json::Value;

use cyclosum_web::{cp_spectrum, liu_spectrum, sun_identities, MAX_N};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("exports return JSON")
}

#[test]
fn sun_even_and_odd() {
    let v = parse(sun_identities(4));
    assert_eq!(v["permanent"], "9/16");
    assert_eq!(v["permanent_matches"], true);
    let v = parse(sun_identities(9));
    assert_eq!(v["determinant"], "64");
    assert_eq!(v["determinant_matches"], true);
    assert_eq!(v["permanent_matches"], true);
}

#[test]
fn cp_values() {
    let v = parse(cp_spectrum(5));
    assert_eq!(v["closed_form"], serde_json::json!([-4, -2, 0, 2, 4]));
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-8);
    assert!(v["eei_max_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["interpolation_matches"], true);
    assert_eq!(v["printed_normalisation_factor"], "32");
}

#[test]
fn liu_values() {
    let v = parse(liu_spectrum(7));
    assert_eq!(v["expected"], serde_json::json!([-3, -2, -1, 1, 2, 3]));
    assert_eq!(v["determinant"], "-36");
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-7);
}

#[test]
fn out_of_range_inputs_report_errors() {
    assert!(parse(sun_identities(1))["error"].is_string());
    assert!(parse(sun_identities(MAX_N + 1))["error"].is_string());
    assert!(parse(liu_spectrum(6))["error"].is_string());
    assert!(parse(cp_spectrum(0))["error"].is_string());
}
