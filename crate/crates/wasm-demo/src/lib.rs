//! Browser bindings for three operations of `wickrot`. Every export returns a
//! JSON string; errors come back as `{"error": "..."}`.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use wickrot::minvec::{self, BracketSpace, FlowConfig, SearchBudget};
use wickrot::{catalog, soliton, Matrix, Metric, Scalar};

fn finish(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Catalog entry names, as a JSON array.
#[wasm_bindgen]
pub fn catalog_names() -> String {
    json!(catalog::names()).to_string()
}

/// Moves the Lorentzian Heisenberg bracket by a random element of
/// `O(1,2)_0` of size `radius`, then runs the norm-minimizing flow back.
#[wasm_bindgen]
pub fn flow_demo(seed: u32, radius: f64) -> String {
    finish(flow_inner(seed as u64, radius))
}

fn flow_inner(seed: u64, radius: f64) -> Result<Value, String> {
    if !(radius.is_finite() && radius >= 0.0) {
        return Err(format!("radius must be a nonnegative number, got {radius}"));
    }
    let (h, g) = catalog::entry("heis3_lorentz").map_err(|e| e.to_string())?;
    let space = BracketSpace::new(&g, None, 1e-9).map_err(|e| e.to_string())?;
    let v0 = space.vector(&h).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = minvec::random_identity_component(&space, &mut rng, radius);
    let moved = minvec::act(&t, &v0).map_err(|e| e.to_string())?;
    let alg = space.algebra(&moved, h.labels().to_vec()).map_err(|e| e.to_string())?;
    let r = minvec::minimal_vector_flow(&alg, &g, &space, &FlowConfig::default()).map_err(|e| e.to_string())?;
    let norms: Vec<f64> = r.log.iter().map(|x| x.norm).collect();
    let moments: Vec<f64> = r.log.iter().map(|x| x.moment_norm).collect();
    Ok(json!({
        "status": r.status,
        "reason": r.reason,
        "reference_norm": minvec::theta_norm(&v0),
        "initial_norm": r.initial_norm,
        "final_norm": r.final_norm,
        "iterations": r.iterations,
        "norms": norms,
        "moments": moments,
        "theta": r.theta.map(|i| i.map),
    }))
}

/// Multi-start Lie-Cartan search on a catalog entry.
#[wasm_bindgen]
pub fn cartan_search(name: &str, negate: bool, seed: u32, starts: u32) -> String {
    finish(search_inner(name, negate, seed as u64, starts as usize))
}

fn search_inner(name: &str, negate: bool, seed: u64, starts: usize) -> Result<Value, String> {
    let (alg, m) = catalog::entry(name).map_err(|e| e.to_string())?;
    let m = if negate { m.negated() } else { m };
    let budget = SearchBudget { starts: starts.clamp(1, 64), ..SearchBudget::default() };
    let r = minvec::find_lie_cartan(&alg, &m, budget, seed, 1e-9).map_err(|e| e.to_string())?;
    let (p, q) = m.signature();
    Ok(json!({
        "name": name,
        "signature": [p, q],
        "certified": r.best.is_some(),
        "theta": r.best.as_ref().map(|i| &i.map),
        "residual": r.best.as_ref().map(|i| i.max_residual()),
        "best_residual": r.best_residual,
        "starts": r.starts_run,
        "residuals": r.outcomes.iter().map(|o| o.residual).collect::<Vec<_>>(),
    }))
}

/// Heisenberg algebra `[e1,e2] = e3` with the symmetric metric whose upper
/// triangle is `(g11, g12, g13, g22, g23, g33)`: signature, curvature,
/// soliton decomposition and a Lie-Cartan search.
#[wasm_bindgen]
pub fn heis3_explore(g11: f64, g12: f64, g13: f64, g22: f64, g23: f64, g33: f64, seed: u32) -> String {
    finish(explore_inner([g11, g12, g13, g22, g23, g33], seed as u64))
}

fn literal(x: f64) -> Scalar {
    Scalar::snap(x, 1000, 1e-12).unwrap_or(Scalar::float(x))
}

fn explore_inner(u: [f64; 6], seed: u64) -> Result<Value, String> {
    if u.iter().any(|x| !x.is_finite()) {
        return Err("metric entries must be finite numbers".into());
    }
    let rows = vec![
        vec![literal(u[0]), literal(u[1]), literal(u[2])],
        vec![literal(u[1]), literal(u[3]), literal(u[4])],
        vec![literal(u[2]), literal(u[4]), literal(u[5])],
    ];
    let form = Matrix::from_rows(rows).map_err(|e| e.to_string())?;
    let m = Metric::new(form, 1e-9).map_err(|e| e.to_string())?;
    let h = catalog::heisenberg();
    let s = soliton::soliton_decompose(&h, &m, 1e-9).map_err(|e| e.to_string())?;
    let curv = wickrot::metric::curvature(&h, &m, 1e-9).map_err(|e| e.to_string())?;
    let search = minvec::find_lie_cartan(&h, &m, SearchBudget { starts: 16, iterations: 1000 }, seed, 1e-9)
        .map_err(|e| e.to_string())?;
    let center = DMatrix::from_column_slice(3, 1, &[0.0, 0.0, 1.0]);
    let g = m.form().to_dmatrix();
    let center_norm = (center.transpose() * &g * &center)[(0, 0)];
    let (p, q) = m.signature();
    Ok(json!({
        "signature": [p, q],
        "center_norm": center_norm,
        "scalar_curvature": curv.scalar,
        "ricci_operator": curv.ricci_operator,
        "lambda": s.lambda,
        "classification": s.classification,
        "d_eigenvalues": s.d_eigenvalues,
        "certified": search.best.is_some(),
        "theta": search.best.as_ref().map(|i| &i.map),
        "best_residual": search.best_residual,
    }))
}
