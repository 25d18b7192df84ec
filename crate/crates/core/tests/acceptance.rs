//! End-to-end acceptance suite. Runs every criterion, prints one PASS/FAIL
//! line each, and exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wickrot::cartan::{self, involutivity_double_wick, wick_rotate};
use wickrot::catalog;
use wickrot::linalg::expm;
use wickrot::metric::{self, curvature, isometric_derivations, Metric};
use wickrot::minvec::{
    self, act, find_lie_cartan, infinitesimal_action, minimal_vector_flow, moment, BracketSpace, FlowConfig,
    FlowStatus, SearchBudget,
};
use wickrot::soliton::{check_theta_commutes, equivariance_report, soliton_decompose, SolitonClass};
use wickrot::{LieAlgebra, Matrix, Scalar};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fro(a: &DMatrix<f64>) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn c01_heisenberg_soliton() -> Outcome {
    let (h, g) = catalog::entry("heis3_lorentz").unwrap();
    let s = soliton_decompose(&h, &g, 1e-10).map_err(|e| e.to_string())?;
    ensure((s.lambda.to_f64() + 1.5).abs() < 1e-10, format!("lambda = {}", s.lambda))?;
    let want = [1.0, 1.0, 2.0];
    ensure(
        s.d_eigenvalues.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-10),
        format!("D eigenvalues {:?}", s.d_eigenvalues),
    )?;
    let ric = curvature(&h, &g, 1e-12).unwrap().ricci_operator;
    let expected = Matrix::diagonal(&[Scalar::ratio(-1, 2), Scalar::ratio(-1, 2), Scalar::ratio(1, 2)]);
    ensure(ric.max_abs_diff(&expected) < 1e-10, format!("Ric = {ric:?}"))?;
    Ok(format!("lambda = {}, D eigenvalues {:?}", s.lambda, s.d_eigenvalues))
}

fn c02_derivation_dimensions() -> Outcome {
    let (h, g) = catalog::entry("heis3_lorentz").unwrap();
    let der = h.derivation_algebra(0.0);
    ensure(der.len() == 6, format!("dim Der = {}", der.len()))?;
    let both = isometric_derivations(&h, &g, 0.0).map_err(|e| e.to_string())?;
    ensure(both.len() == 1, format!("dim Der ∩ o(1,2) = {}", both.len()))?;
    let x = &both[0].matrix;
    ensure(x.is_exact(), "kernel computed in floating point")?;
    let rows: Vec<String> = x.rows_vec().iter().map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))).collect();
    Ok(format!("dim Der = 6, dim Der ∩ o(1,2) = 1, generator [{}]", rows.join(",")))
}

fn c03_heisenberg_uniqueness() -> Outcome {
    let (h, g) = catalog::entry("heis3_lorentz").unwrap();
    let expected = catalog::heis3_cartan();
    let r = find_lie_cartan(&h, &g, SearchBudget { starts: 100, iterations: 2000 }, 2024, 1e-9)
        .map_err(|e| e.to_string())?;
    for o in &r.outcomes {
        ensure(o.residual < 1e-8, format!("start {} stalled at residual {:e}", o.start, o.residual))?;
        let theta = o.certified.as_ref().ok_or(format!("start {} produced no certificate", o.start))?;
        ensure(theta.max_abs_diff(&expected) < 1e-8, format!("start {} found {theta:?}", o.start))?;
    }
    ensure(r.certified.len() == 1, format!("{} distinct certificates", r.certified.len()))?;
    ensure(r.certified[0].map == expected, "certificate is not exactly diag(-1,-1,1)")?;
    Ok(format!("100/100 starts reach diag(-1,-1,1), worst residual {:e}", r.outcomes.last().unwrap().residual))
}

fn c04_signatures() -> Outcome {
    let sig = |f: Matrix| metric::signature(&f, 1e-9).map_err(|e| e.to_string());
    let sl = sig(catalog::sl2r().killing_form())?;
    let su = sig(catalog::su2().killing_form())?;
    let he = sig(Matrix::diag_ints(&[-1, -1, 1]))?;
    ensure(sl == (2, 1), format!("sl2r: {sl:?}"))?;
    ensure(su == (0, 3), format!("su2: {su:?}"))?;
    ensure(he == (1, 2), format!("heis3: {he:?}"))?;
    Ok("sl2r (2,1), su2 (0,3), heis3 (1,2)".into())
}

fn c05_wick_round_trip() -> Outcome {
    let (h, g) = catalog::entry("heis3_lorentz").unwrap();
    let theta = catalog::heis3_cartan();
    let w = wick_rotate(&h, &g, &theta, 1e-12).map_err(|e| e.to_string())?;
    ensure(w.metric.form() == &Matrix::identity(3), format!("rotated metric {:?}", w.metric.form()))?;
    let q12 = w.algebra.bracket_basis(1, 2);
    ensure(q12 == vec![Scalar::int(-1), Scalar::zero(), Scalar::zero()], format!("[q1,q2] = {q12:?}"))?;
    let s = soliton_decompose(&w.algebra, &w.metric, 1e-10).unwrap();
    ensure(s.lambda == Scalar::ratio(-3, 2), format!("rotated lambda {}", s.lambda))?;
    ensure(
        s.d_eigenvalues.iter().zip([1.0, 1.0, 2.0]).all(|(a, b)| (a - b).abs() < 1e-10),
        format!("rotated D eigenvalues {:?}", s.d_eigenvalues),
    )?;
    let dw = involutivity_double_wick(&h, &g, &theta, 1e-12).unwrap();
    ensure(dw.identical && dw.constants_residual == 0.0, format!("double Wick {dw:?}"))?;
    Ok("metric = I, [q1,q2] = -t1, lambda = -3/2, double Wick exact".into())
}

fn c06_negative_certificate() -> Outcome {
    let budget = SearchBudget::default();
    let (alg, g) = catalog::entry("sl2r2_mixed").unwrap();
    let mut best = Vec::new();
    for (label, m) in [("g", g.clone()), ("-g", g.negated())] {
        let r = find_lie_cartan(&alg, &m, budget, 7, 1e-9).map_err(|e| e.to_string())?;
        ensure(r.best.is_none(), format!("sl2r2_mixed with {label} produced a certificate"))?;
        best.push(r.best_residual);
    }
    let (alg, m) = catalog::entry("sl2r2_minusk").unwrap();
    let r = find_lie_cartan(&alg, &m, budget, 7, 1e-9).map_err(|e| e.to_string())?;
    let inv = r.best.ok_or("sl2r2_minusk: no certificate")?;
    let theta = &inv.map;
    ensure(inv.max_residual() < 1e-8, format!("residual {:e}", inv.max_residual()))?;
    let off_block = (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).filter(|&(i, j)| (i < 3) != (j < 3));
    let mut off = 0.0f64;
    for (i, j) in off_block {
        off = off.max(theta[(i, j)].abs_f64());
    }
    ensure(off < 1e-8, format!("off-block entries up to {off:e}"))?;
    let sl = catalog::sl2r();
    for b in 0..2 {
        let block = Matrix::from_fn(3, 3, |i, j| theta[(3 * b + i, 3 * b + j)].clone());
        ensure(cartan::is_killing_cartan(&sl, &block, 1e-8).unwrap(), format!("block {b} is not a Cartan involution"))?;
    }
    Ok(format!(
        "sl2r2_mixed: no certificate (best residuals {:.3e}, {:.3e}); sl2r2_minusk: block Cartan, residual {:.1e}",
        best[0],
        best[1],
        inv.max_residual()
    ))
}

/// Catalog entries with a known Lie-Cartan involution, by metric sign.
fn wick_sources() -> Vec<(&'static str, LieAlgebra, Metric, Matrix)> {
    let diag = |v: &[i64]| Matrix::diag_ints(v);
    let mut out = Vec::new();
    let (h, g) = catalog::entry("heis3_lorentz").unwrap();
    out.push(("heis3_lorentz", h, g, catalog::heis3_cartan()));
    let (a, g) = catalog::entry("abelian3").unwrap();
    out.push(("abelian3", a, g, diag(&[1, 1, -1])));
    let (sl, g) = catalog::entry("sl2r_minusk").unwrap();
    out.push(("sl2r_minusk", sl, g, catalog::sl2r_cartan()));
    let (su, g) = catalog::entry("su2_killing").unwrap();
    out.push(("su2_killing (-g)", su, g.negated(), Matrix::identity(3)));
    let (s2, g) = catalog::entry("sl2r2_minusk").unwrap();
    out.push(("sl2r2_minusk", s2, g, catalog::block_involution(&catalog::sl2r_cartan())));
    let (o, g) = catalog::entry("o13_killing").unwrap();
    out.push(("o13_killing (-g)", o, g.negated(), diag(&[1, 1, 1, -1, -1, -1])));
    let (sr, g) = catalog::entry("sl2r_plus_r").unwrap();
    let t = catalog::sl2r_cartan();
    let theta = Matrix::from_fn(4, 4, |i, j| if i < 3 && j < 3 { t[(i, j)].clone() } else if i == j { Scalar::one() } else { Scalar::zero() });
    out.push(("sl2r_plus_r", sr, g, theta));
    out
}

fn c07_main_theorem() -> Outcome {
    let mut lines = Vec::new();
    for (name, alg, m, theta) in wick_sources() {
        ensure(cartan::is_lie_cartan(&alg, &m, &theta, 0.0).is_lie_cartan(), format!("{name}: reference involution"))?;
        let w = wick_rotate(&alg, &m, &theta, 1e-12).map_err(|e| format!("{name}: {e}"))?;
        ensure(w.metric.is_riemannian(), format!("{name}: rotated metric is not Riemannian"))?;
        for (side, a, g) in [("source", &alg, &m), ("rotated", &w.algebra, &w.metric)] {
            let r = find_lie_cartan(a, g, SearchBudget::default(), 11, 1e-9).map_err(|e| e.to_string())?;
            let inv = r.best.ok_or(format!("{name} {side}: no certificate (best residual {:e})", r.best_residual))?;
            let space = BracketSpace::new(g, Some(&inv.map), 1e-9).map_err(|e| format!("{name} {side}: {e}"))?;
            let v = space.vector(a).unwrap();
            let mn = fro(&moment(&space, &v));
            ensure(mn < 1e-10, format!("{name} {side}: moment {mn:e} at a fixed bracket"))?;
        }
        lines.push(name);
    }
    Ok(format!("certified on both sides and minimal: {}", lines.join(", ")))
}

fn c08_equivariance() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_comm = 0.0f64;
    for (name, alg, m, _) in wick_sources() {
        let r = find_lie_cartan(&alg, &m, SearchBudget::default(), 3, 1e-9).unwrap();
        for inv in &r.certified {
            let e = equivariance_report(&alg, &m, &inv.map, 1e-9).map_err(|e| format!("{name}: {e}"))?;
            ensure(e.max() < 1e-9, format!("{name}: {e:?}"))?;
            worst = worst.max(e.max());
            let s = soliton_decompose(&alg, &m, 1e-8).unwrap();
            if s.accepted() {
                let c = inv.map.commutator(&s.d).max_abs();
                ensure(check_theta_commutes(&inv.map, &s.d, 1e-10), format!("{name}: [θ, D] = {c:e}"))?;
                worst_comm = worst_comm.max(c);
            }
        }
    }
    Ok(format!("max equivariance residual {worst:e}, max [θ,D] {worst_comm:e}"))
}

fn random_lorentzian(rng: &mut ChaCha8Rng) -> Metric {
    loop {
        let p = DMatrix::<f64>::from_fn(3, 3, |_, _| rng.gen_range(-1.0..1.0));
        if p.determinant().abs() < 0.1 {
            continue;
        }
        let eta = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, -1.0]));
        let g = p.transpose() * eta * &p;
        let g = (&g + g.transpose()) * 0.5;
        if let Ok(m) = Metric::new(Matrix::from_dmatrix(&g), 1e-9) {
            return m;
        }
    }
}

fn c09_lorentzian_sampling() -> Outcome {
    let h = catalog::heisenberg();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut closest = f64::INFINITY;
    for trial in 0..50 {
        let m = random_lorentzian(&mut rng);
        ensure(m.signature() == (2, 1), "sampled metric is not Lorentzian")?;
        let r = find_lie_cartan(&h, &m, SearchBudget::default(), trial, 1e-9).unwrap();
        if let Some(inv) = r.best {
            let again = cartan::is_lie_cartan(&h, &m, &inv.map, 1e-9);
            return Err(format!("trial {trial}: certificate found (re-verified: {})", again.is_lie_cartan()));
        }
        closest = closest.min(r.best_residual);
    }
    Ok(format!("50/50 metrics without certificate, smallest residual {closest:.3e}"))
}

fn c10_flow_recovery() -> Outcome {
    let (h, g) = catalog::entry("heis3_lorentz").unwrap();
    let space = BracketSpace::new(&g, None, 1e-9).unwrap();
    let reference = minvec::theta_norm(&space.vector(&h).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    let mut iters = 0;
    for k in 0..25 {
        let t = minvec::random_identity_component(&space, &mut rng, 1.0);
        let moved = act(&t, &space.vector(&h).unwrap()).unwrap();
        let alg = space.algebra(&moved, h.labels().to_vec()).unwrap();
        let r = minimal_vector_flow(&alg, &g, &space, &FlowConfig::default()).map_err(|e| e.to_string())?;
        ensure(r.status != FlowStatus::NoCertificate, format!("transport {k}: {:?}", r.reason))?;
        ensure(r.is_monotone(), format!("transport {k}: norm log not monotone"))?;
        let err = (r.final_norm - reference).abs();
        ensure(err < 1e-6, format!("transport {k}: final norm {} vs {reference}", r.final_norm))?;
        worst = worst.max(err);
        iters = iters.max(r.iterations);
    }
    Ok(format!("25/25 recovered, max norm error {worst:.2e}, max iterations {iters}"))
}

fn random_metric_like(m: &Metric, rng: &mut ChaCha8Rng) -> Metric {
    let n = m.dim();
    loop {
        let p = DMatrix::<f64>::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } + rng.gen_range(-0.5..0.5));
        if p.determinant().abs() < 0.2 {
            continue;
        }
        let g = p.transpose() * m.form().to_dmatrix() * &p;
        let g = (&g + g.transpose()) * 0.5;
        if let Ok(out) = Metric::new(Matrix::from_dmatrix(&g), 1e-9) {
            return out;
        }
    }
}

fn c11_numerical_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let entries = catalog::all();
    let mut worst_fd = 0.0f64;
    let mut worst_grad = 0.0f64;
    for k in 0..50 {
        let e = &entries[k % entries.len()];
        let n = e.algebra.dim();
        let v = minvec::BracketVector { n, c: e.algebra.constants_f64() };
        if v.norm() == 0.0 {
            continue;
        }
        let x = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        let h = 1e-5;
        let plus = act(&expm(&(&x * h)), &v).unwrap();
        let minus = act(&expm(&(&x * -h)), &v).unwrap();
        let fd = plus.sub(&minus).scaled(0.5 / h);
        let exact = infinitesimal_action(&x, &v);
        let rel = fd.sub(&exact).norm() / exact.norm().max(1e-300);
        ensure(rel < 1e-5, format!("{}: action FD relative error {rel:e}", e.name))?;
        worst_fd = worst_fd.max(rel);
        let d = (plus.dot(&plus) - minus.dot(&minus)) / (2.0 * h);
        let g = 2.0 * exact.dot(&v);
        let rel = (d - g).abs() / g.abs().max(1.0);
        ensure(rel < 1e-5, format!("{}: gradient FD relative error {rel:e}", e.name))?;
        worst_grad = worst_grad.max(rel);
    }
    let mut worst_curv = 0.0f64;
    for e in &entries {
        let mut metrics = vec![e.metric.clone()];
        metrics.extend((0..20).map(|_| random_metric_like(&e.metric, &mut rng)));
        for m in &metrics {
            let c = curvature(&e.algebra, m, 1e-12).map_err(|err| format!("{}: {err}", e.name))?;
            let r = c.residuals(&e.algebra, m);
            ensure(r.max() < 1e-10, format!("{}: {r:?}", e.name))?;
            worst_curv = worst_curv.max(r.max());
        }
    }
    Ok(format!(
        "action FD {worst_fd:.1e}, gradient FD {worst_grad:.1e}, curvature identities {worst_curv:.1e} over {} metrics",
        entries.len() * 21
    ))
}

fn c12_einstein() -> Outcome {
    let (su, k) = catalog::entry("su2_killing").unwrap();
    let m = k.negated();
    let s = soliton_decompose(&su, &m, 1e-10).unwrap();
    ensure(s.classification == SolitonClass::Einstein, format!("classified {:?}", s.classification))?;
    ensure((s.lambda.to_f64() - 0.25).abs() < 1e-10, format!("lambda {}", s.lambda))?;
    let c = curvature(&su, &m, 1e-12).unwrap();
    let n = su.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            // R(e_i, e_j) = -1/4 ad([e_i, e_j])
            let oracle = su.ad(&su.bracket_basis(i, j)).unwrap().matrix.scale(&Scalar::ratio(-1, 4));
            worst = worst.max(c.riemann_op(i, j).max_abs_diff(&oracle));
        }
    }
    ensure(worst < 1e-10, format!("oracle residual {worst:e}"))?;
    Ok(format!("einstein, lambda = {}, oracle residual {worst:e}", s.lambda))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("heisenberg soliton", c01_heisenberg_soliton),
        ("derivation dimensions", c02_derivation_dimensions),
        ("cartan uniqueness on heis3", c03_heisenberg_uniqueness),
        ("signature regressions", c04_signatures),
        ("wick round trip", c05_wick_round_trip),
        ("negative certificate", c06_negative_certificate),
        ("main theorem property suite", c07_main_theorem),
        ("equivariance suite", c08_equivariance),
        ("lorentzian impossibility sampling", c09_lorentzian_sampling),
        ("flow recovery", c10_flow_recovery),
        ("numerical analysis checks", c11_numerical_checks),
        ("einstein check", c12_einstein),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS criterion {:>2} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
