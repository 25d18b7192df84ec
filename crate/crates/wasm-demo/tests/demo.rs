use serde_json::{json, Value};
use wickrot_wasm::{cartan_search, flow_demo, heis3_explore};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn flow_returns_to_reference_norm() {
    let v = parse(flow_demo(3, 1.0));
    assert_eq!(v["status"], "cartan_found");
    let d = v["final_norm"].as_f64().unwrap() - v["reference_norm"].as_f64().unwrap();
    assert!(d.abs() < 1e-6);
    let norms = v["norms"].as_array().unwrap();
    assert!(norms.windows(2).all(|w| w[1].as_f64() <= w[0].as_f64()));
}

#[test]
fn search_reports_both_outcomes() {
    assert_eq!(parse(cartan_search("heis3_lorentz", false, 0, 8))["certified"], true);
    assert_eq!(parse(cartan_search("sl2r2_mixed", false, 0, 8))["certified"], false);
    assert!(parse(cartan_search("nope", false, 0, 8))["error"].is_string());
}

#[test]
fn explorer_distinguishes_signatures() {
    let riem = parse(heis3_explore(-1.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0));
    assert_eq!(riem["lambda"], "-3/2");
    assert_eq!(riem["certified"], true);
    let lor = parse(heis3_explore(1.0, 0.0, 0.0, 1.0, 0.0, -1.0, 0));
    assert_eq!(lor["signature"], json!([2, 1]));
    assert_eq!(lor["certified"], false);
    assert!(parse(heis3_explore(1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0))["error"].is_string());
}
