use serde_json::Value;
use uplocal_web::{optimize_json, profile_json, sweep_json};

#[test]
fn profile_of_anisotropic_gaussian() {
    let v: Value = serde_json::from_str(&profile_json("gaussian_diag:1,4", 8).unwrap()).unwrap();
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 8);
    assert!((points[0]["up"].as_f64().unwrap() - 0.25).abs() < 1e-6);
    assert!((points[2]["up"].as_f64().unwrap() - 25.0 / 64.0).abs() < 1e-6);
}

#[test]
fn optimum_of_example1() {
    let v: Value = serde_json::from_str(&optimize_json("example1").unwrap()).unwrap();
    assert_eq!(v["isotropic"], Value::Bool(true));
    assert!((v["sum_min"]["value"].as_f64().unwrap() - 3.6).abs() < 1e-4);
    assert!(v["candidates"].as_array().is_some());
}

#[test]
fn sweep_rows() {
    let v: Value = serde_json::from_str(&sweep_json("gaussian_diag:1", "1", "2,4,8").unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let e: Vec<f64> = rows.iter().map(|r| r["error"].as_f64().unwrap()).collect();
    assert!(e[2] < e[1] && e[1] < e[0]);
}

#[test]
fn errors_are_messages() {
    assert!(profile_json("gaussian_diag:1", 8).unwrap_err().contains("2-D"));
    assert!(optimize_json("nope").is_err());
    assert!(sweep_json("gaussian_diag:1,4", "1", "2").is_err());
    assert!(sweep_json("gaussian_diag:1", "1", "2,x").is_err());
    assert!(profile_json("custom_grid:/x", 8).is_err());
}
