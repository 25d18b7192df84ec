//! The isometry group acting on brackets: norms, moment map, the
//! norm-minimizing flow and the search for Cartan involutions that are
//! automorphisms.
//!
//! Everything numeric happens in a `g`-orthonormal frame in which
//! `g = η = diag(I_p, -I_q)` and the reference involution is `θ0 = η`.
//! There, `o(p,q) = k + s` with `k` the skew matrices commuting with `η` and
//! `s` the symmetric matrices anticommuting with `η`, and the norm on
//! brackets is the sum of squared structure constants over `i < j`.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::cartan::{self, Involution};
use crate::error::{Error, Result};
use crate::linalg::{expm, frobenius_dot, symmetric_function, Matrix};
use crate::metric::Metric;
use crate::optimize::{levenberg_marquardt, multistart};
use crate::scalar::Scalar;

/// A bracket as its full antisymmetric tensor `c[(i*n + j)*n + k]`, in
/// frame coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketVector {
    pub n: usize,
    pub c: Vec<f64>,
}

impl BracketVector {
    pub fn zero(n: usize) -> Self {
        BracketVector { n, c: vec![0.0; n * n * n] }
    }

    fn at(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.n + j) * self.n + k]
    }

    /// Inner product summing over `i < j` and all `k`.
    pub fn dot(&self, other: &BracketVector) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    s += self.at(i, j, k) * other.at(i, j, k);
                }
            }
        }
        s
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn sub(&self, other: &BracketVector) -> BracketVector {
        BracketVector { n: self.n, c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect() }
    }

    pub fn scaled(&self, s: f64) -> BracketVector {
        BracketVector { n: self.n, c: self.c.iter().map(|a| a * s).collect() }
    }

    /// Independent components, `i < j`, for use as a residual vector.
    pub fn upper(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n * (n - 1).max(1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    out.push(self.at(i, j, k));
                }
            }
        }
        out
    }
}

/// `(h . μ)(x, y) = h μ(h^-1 x, h^-1 y)` on a raw tensor.
fn transport(v: &BracketVector, h: &DMatrix<f64>, hinv: &DMatrix<f64>) -> BracketVector {
    let n = v.n;
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let mut t1 = vec![0.0; n * n * n];
    for a in 0..n {
        for b in 0..n {
            for l in 0..n {
                let c = v.c[idx(a, b, l)];
                if c != 0.0 {
                    for k in 0..n {
                        t1[idx(a, b, k)] += h[(k, l)] * c;
                    }
                }
            }
        }
    }
    let mut t2 = vec![0.0; n * n * n];
    for a in 0..n {
        for i in 0..n {
            let w = hinv[(a, i)];
            if w != 0.0 {
                for b in 0..n {
                    for k in 0..n {
                        t2[idx(i, b, k)] += w * t1[idx(a, b, k)];
                    }
                }
            }
        }
    }
    let mut t3 = vec![0.0; n * n * n];
    for b in 0..n {
        for j in 0..n {
            let w = hinv[(b, j)];
            if w != 0.0 {
                for i in 0..n {
                    for k in 0..n {
                        t3[idx(i, j, k)] += w * t2[idx(i, b, k)];
                    }
                }
            }
        }
    }
    BracketVector { n, c: t3 }
}

/// The frame, the reference involution and the Cartan splitting of `o(p,q)`.
#[derive(Clone, Debug)]
pub struct BracketSpace {
    n: usize,
    p: usize,
    frame: DMatrix<f64>,
    frame_inv: DMatrix<f64>,
    /// Trace-orthonormal basis of `s`.
    s_basis: Vec<DMatrix<f64>>,
    /// Basis of `k`.
    k_basis: Vec<DMatrix<f64>>,
}

impl BracketSpace {
    /// Uses the given metric Cartan involution as `θ0`, or the one from
    /// signed Gram-Schmidt on the standard basis when `theta0` is `None`.
    pub fn new(m: &Metric, theta0: Option<&Matrix>, tol: f64) -> Result<Self> {
        let n = m.dim();
        let frame = match theta0 {
            None => cartan::orthonormal_frame(m, tol)?,
            Some(theta) => {
                if !cartan::is_metric_cartan(m, theta, tol).is_metric_cartan() {
                    return Err(Error::NotMetricCartan("theta0"));
                }
                let dec = cartan::cartan_decomposition(theta, tol)?;
                let t = cartan::signed_gram_schmidt(m, &dec.t_basis, tol)?;
                let p = cartan::signed_gram_schmidt(m, &dec.p_basis, tol)?;
                let cols: Vec<_> = t
                    .iter()
                    .chain(&p)
                    .map(|v| {
                        let s = m.inner(v, v).to_f64().abs().sqrt();
                        nalgebra::DVector::from_iterator(n, v.iter().map(|x| x.to_f64() / s))
                    })
                    .collect();
                DMatrix::from_columns(&cols)
            }
        };
        let frame_inv = frame.clone().try_inverse().ok_or(Error::Singular)?;
        let (p, _) = m.signature();
        let unit = |a: usize, b: usize| DMatrix::from_fn(n, n, |r, c| if (r, c) == (a, b) { 1.0 } else { 0.0 });
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        let mut s_basis = Vec::new();
        let mut k_basis = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if (a < p) != (b < p) {
                    s_basis.push((unit(a, b) + unit(b, a)) * r2);
                } else {
                    k_basis.push((unit(a, b) - unit(b, a)) * r2);
                }
            }
        }
        Ok(BracketSpace { n, p, frame, frame_inv, s_basis, k_basis })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.n - self.p)
    }

    pub fn s_basis(&self) -> &[DMatrix<f64>] {
        &self.s_basis
    }

    pub fn k_basis(&self) -> &[DMatrix<f64>] {
        &self.k_basis
    }

    pub fn eta(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| if i != j { 0.0 } else if i < self.p { 1.0 } else { -1.0 })
    }

    /// `θ0` in the original coordinates.
    pub fn theta0(&self) -> Matrix {
        Matrix::from_dmatrix(&self.from_frame(&self.eta()))
    }

    /// A map written in frame coordinates, expressed in original ones.
    pub fn from_frame(&self, a: &DMatrix<f64>) -> DMatrix<f64> {
        &self.frame * a * &self.frame_inv
    }

    pub fn to_frame(&self, a: &DMatrix<f64>) -> DMatrix<f64> {
        &self.frame_inv * a * &self.frame
    }

    pub fn vector(&self, alg: &LieAlgebra) -> Result<BracketVector> {
        if alg.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: alg.dim() });
        }
        let raw = BracketVector { n: self.n, c: alg.constants_f64() };
        Ok(transport(&raw, &self.frame_inv, &self.frame))
    }

    /// The bracket back in original coordinates, as a float algebra.
    pub fn algebra(&self, v: &BracketVector, labels: Vec<String>) -> Result<LieAlgebra> {
        let raw = transport(v, &self.frame, &self.frame_inv);
        LieAlgebra::from_constants(labels, raw.c.into_iter().map(Scalar::Float).collect())
    }

    /// Frame coordinates `x` of an element of `s`, as a matrix.
    pub fn s_element(&self, coords: &[f64]) -> DMatrix<f64> {
        let mut x = DMatrix::zeros(self.n, self.n);
        for (b, c) in self.s_basis.iter().zip(coords) {
            x += b * *c;
        }
        x
    }

    pub fn k_element(&self, coords: &[f64]) -> DMatrix<f64> {
        let mut x = DMatrix::zeros(self.n, self.n);
        for (b, c) in self.k_basis.iter().zip(coords) {
            x += b * *c;
        }
        x
    }
}

/// `‖v‖`; zero exactly on abelian brackets.
pub fn theta_norm(v: &BracketVector) -> f64 {
    v.norm()
}

/// `(X μ)(x, y) = X μ(x, y) - μ(X x, y) - μ(x, X y)`.
pub fn infinitesimal_action(x: &DMatrix<f64>, v: &BracketVector) -> BracketVector {
    let n = v.n;
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let mut out = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += x[(k, l)] * v.c[idx(i, j, l)];
                    s -= x[(l, i)] * v.c[idx(l, j, k)];
                    s -= x[(l, j)] * v.c[idx(i, l, k)];
                }
                out[idx(i, j, k)] = s;
            }
        }
    }
    BracketVector { n, c: out }
}

/// `h . v` for an invertible `h` in frame coordinates.
pub fn act(h: &DMatrix<f64>, v: &BracketVector) -> Result<BracketVector> {
    let hinv = h.clone().try_inverse().ok_or(Error::Singular)?;
    Ok(transport(v, h, &hinv))
}

/// The moment map `M = Σ_s <X_s v, v> X_s` over the orthonormal basis of
/// `s`, so that `<M, X> = <X v, v>` for every `X ∈ s`.
pub fn moment(space: &BracketSpace, v: &BracketVector) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(space.n, space.n);
    for b in &space.s_basis {
        let c = infinitesimal_action(b, v).dot(v);
        m += b * c;
    }
    m
}

/// Frobenius norm of a frame matrix.
fn fro(a: &DMatrix<f64>) -> f64 {
    frobenius_dot(a, a).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowStatus {
    MinimalVectorFound,
    CartanFound,
    NoCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowRecord {
    pub iteration: usize,
    pub norm: f64,
    pub moment_norm: f64,
    pub step: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct FlowConfig {
    pub step: f64,
    pub tol_moment: f64,
    pub max_iter: usize,
    /// Bound on `‖x‖` in the polar form `h = k e^x` of the transporter.
    pub divergence_bound: f64,
    /// The run stops once `‖v‖ / ‖v0‖` falls below this ratio.
    pub collapse_ratio: f64,
    pub tol: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            step: 0.1,
            tol_moment: 1e-10,
            max_iter: 10_000,
            divergence_bound: 1e3,
            collapse_ratio: 1e-12,
            tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FlowResult {
    pub status: FlowStatus,
    /// Why no certificate was produced, or `None`.
    pub reason: Option<String>,
    /// Accumulated group element, original coordinates.
    pub transporter: Matrix,
    /// `‖x‖` in the polar decomposition `h = k e^x` of the transporter.
    pub transporter_growth: f64,
    /// Final bracket, frame coordinates.
    pub final_vector: BracketVector,
    pub initial_norm: f64,
    pub final_norm: f64,
    /// `‖M(v)‖ / ‖v‖^2` at the last iterate.
    pub moment_norm: f64,
    pub iterations: usize,
    pub log: Vec<FlowRecord>,
    pub theta: Option<Involution>,
}

impl FlowResult {
    /// One JSON object per line: `iteration`, `norm`, `moment_norm`, `step`.
    pub fn log_jsonl(&self) -> String {
        self.log
            .iter()
            .map(|r| serde_json::to_string(r).expect("plain record") + "\n")
            .collect()
    }

    pub fn is_monotone(&self) -> bool {
        self.log.windows(2).all(|w| w[1].norm <= w[0].norm)
    }
}

fn normalized_moment(space: &BracketSpace, v: &BracketVector) -> (DMatrix<f64>, f64) {
    let n2 = v.dot(v);
    if n2 == 0.0 {
        return (DMatrix::zeros(space.n, space.n), 0.0);
    }
    let m = moment(space, v) / n2;
    let mn = fro(&m);
    (m, mn)
}

/// `‖x‖` for `h = k e^x`: half the norm of `log(h^T h)`.
fn polar_growth(h: &DMatrix<f64>) -> f64 {
    let l = symmetric_function(&(h.transpose() * h), |v| v.max(f64::MIN_POSITIVE).ln());
    0.5 * fro(&l)
}

/// Descends the norm along `v <- exp(-s M(v)/‖v‖^2) v`, halving `s` until the
/// norm decreases. The bracket is that of `alg`, the frame that of `space`.
pub fn minimal_vector_flow(
    alg: &LieAlgebra,
    m: &Metric,
    space: &BracketSpace,
    config: &FlowConfig,
) -> Result<FlowResult> {
    let n = alg.dim();
    let v0 = space.vector(alg)?;
    let initial_norm = v0.norm();
    let mut v = v0.clone();
    let mut h = DMatrix::<f64>::identity(n, n);
    let mut log = Vec::new();
    let mut status = None;
    let mut reason = None;
    let mut iterations = 0;
    let mut growth = 0.0;
    let (mut mom, mut mn) = normalized_moment(space, &v);
    loop {
        let norm = v.norm();
        if !norm.is_finite() || !mn.is_finite() {
            return Err(Error::NonFinite(format!("flow iterate {iterations}: norm {norm}, moment {mn}")));
        }
        let mut record = FlowRecord { iteration: iterations, norm, moment_norm: mn, step: 0.0 };
        if norm == 0.0 || mn < config.tol_moment {
            log.push(record);
            status = Some(FlowStatus::MinimalVectorFound);
            break;
        }
        if norm < config.collapse_ratio * initial_norm {
            log.push(record);
            reason = Some(format!("norm collapsed to {norm:e}: the orbit is not closed"));
            break;
        }
        if growth > config.divergence_bound {
            log.push(record);
            reason = Some(format!("transporter diverged: polar coordinate norm {growth:e}"));
            break;
        }
        if iterations >= config.max_iter {
            log.push(record);
            reason = Some(format!("iteration budget {} exhausted", config.max_iter));
            break;
        }
        let mut s = config.step;
        let accepted = loop {
            let e = expm(&(&mom * -s));
            let cand = act(&e, &v)?;
            if cand.norm() <= norm {
                break Some((e, cand));
            }
            s *= 0.5;
            if s < 1e-14 {
                break None;
            }
        };
        record.step = s;
        log.push(record);
        iterations += 1;
        match accepted {
            Some((e, cand)) => {
                h = e * h;
                v = cand;
                growth = polar_growth(&h);
                (mom, mn) = normalized_moment(space, &v);
            }
            None => {
                reason = Some(format!("line search stalled at moment norm {mn:e}"));
                log.push(FlowRecord { iteration: iterations, norm, moment_norm: mn, step: 0.0 });
                break;
            }
        }
    }
    let mut theta = None;
    if status == Some(FlowStatus::MinimalVectorFound) {
        if let Some(inv) = cartan_from_minimal(alg, m, space, &v, &h, config.tol)? {
            status = Some(FlowStatus::CartanFound);
            theta = Some(inv);
        }
    }
    let final_norm = v.norm();
    Ok(FlowResult {
        status: status.unwrap_or(FlowStatus::NoCertificate),
        reason,
        transporter: Matrix::from_dmatrix(&space.from_frame(&h)),
        transporter_growth: growth,
        final_vector: v,
        initial_norm,
        final_norm,
        moment_norm: mn,
        iterations,
        log,
        theta,
    })
}

/// At a minimal vector `v = h . μ`: if `θ0` fixes `v` then `h^-1 θ0 h`
/// fixes `μ`; otherwise a short search near `θ0` is tried on `v`. Only a
/// verified involution is returned.
fn cartan_from_minimal(
    alg: &LieAlgebra,
    m: &Metric,
    space: &BracketSpace,
    v: &BracketVector,
    h: &DMatrix<f64>,
    tol: f64,
) -> Result<Option<Involution>> {
    let eta = space.eta();
    let scale = v.norm().max(1.0);
    let hinv = h.clone().try_inverse().ok_or(Error::Singular)?;
    let fixed = act(&eta, v)?.sub(v).norm() <= 1e-9 * scale;
    let theta_v = if fixed {
        Some(eta)
    } else {
        let budget = SearchBudget { starts: 4, iterations: 500 };
        search_frame(space, v, budget, 0, tol).into_iter().next().map(|(_, t)| t)
    };
    let Some(theta_v) = theta_v else { return Ok(None) };
    let theta_frame = &hinv * theta_v * h;
    Ok(certify(alg, m, &space.from_frame(&theta_frame), tol))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SearchBudget {
    pub starts: usize,
    pub iterations: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { starts: 32, iterations: 2000 }
    }
}

/// `θ = e^x θ0 e^{-x} = e^{2x} θ0` for `x ∈ s`, frame coordinates.
fn theta_of(space: &BracketSpace, coords: &[f64]) -> DMatrix<f64> {
    expm(&(space.s_element(coords) * 2.0)) * space.eta()
}

/// Largest admissible `‖x‖` for a candidate; beyond it the residual is
/// dominated by rounding and a small value certifies nothing.
const SEARCH_RADIUS: f64 = 20.0;

/// Multi-start least squares for `θ . v = v`. Returns candidate involutions
/// in the frame, ordered by `(residual, start)`, with residual below `1e-9`.
fn search_frame(
    space: &BracketSpace,
    v: &BracketVector,
    budget: SearchBudget,
    seed: u64,
    tol: f64,
) -> Vec<(f64, DMatrix<f64>)> {
    let dim = space.s_basis.len();
    let scale = v.norm().max(1.0);
    let residual = |x: &[f64]| -> Vec<f64> {
        let theta = theta_of(space, x);
        // θ is an involution, so θ^-1 = θ
        let moved = transport(v, &theta, &theta);
        moved.sub(v).scaled(1.0 / scale).upper()
    };
    let results = multistart(budget.starts, seed, |k, rng: &mut ChaCha8Rng| {
        let x0: Vec<f64> = if k == 0 { vec![0.0; dim] } else { (0..dim).map(|_| rng.gen_range(-1.5..1.5)).collect() };
        let r = levenberg_marquardt(&residual, &x0, budget.iterations, 1e-28);
        let radius = r.x.iter().map(|a| a * a).sum::<f64>().sqrt();
        let res = if radius > SEARCH_RADIUS { f64::INFINITY } else { (2.0 * r.cost).sqrt() };
        (res, r.x)
    });
    results
        .into_iter()
        .filter(|r| r.residual <= tol.min(1e-9))
        .map(|r| (r.residual, theta_of(space, &r.value)))
        .collect()
}

/// Verifies a float candidate, preferring an exact rational version of it
/// when one passes the exact checks.
fn certify(alg: &LieAlgebra, m: &Metric, theta: &DMatrix<f64>, tol: f64) -> Option<Involution> {
    let snapped: Option<Vec<Scalar>> = theta.transpose().iter().map(|&x| Scalar::snap(x, 64, 1e-7)).collect();
    if let Some(entries) = snapped {
        let n = theta.nrows();
        let exact = Matrix::from_fn(n, n, |i, j| entries[i * n + j].clone());
        if alg.is_exact() && m.is_exact() {
            let inv = cartan::is_lie_cartan(alg, m, &exact, 0.0);
            if inv.is_lie_cartan() {
                return Some(inv);
            }
        }
    }
    let inv = cartan::is_lie_cartan(alg, m, &Matrix::from_dmatrix(theta), tol);
    inv.is_lie_cartan().then_some(inv)
}

/// Result of one start of the search.
#[derive(Clone, Debug)]
pub struct StartOutcome {
    pub start: usize,
    /// `‖θ . μ - μ‖ / max(1, ‖μ‖)` at the end of the start, infinite when
    /// the iterate left the search radius.
    pub residual: f64,
    /// The verified involution reached by this start, if any.
    pub certified: Option<Matrix>,
}

#[derive(Clone, Debug)]
pub struct CartanSearch {
    /// Certified candidate with the smallest residual.
    pub best: Option<Involution>,
    /// All distinct certified candidates (entrywise distance above `1e-6`).
    pub certified: Vec<Involution>,
    /// Smallest residual reached by any start.
    pub best_residual: f64,
    pub starts_run: usize,
    /// Per-start outcomes ordered by `(residual, start)`.
    pub outcomes: Vec<StartOutcome>,
}

/// Searches for a Cartan involution of `m` that is an automorphism of `alg`,
/// over `θ = e^x θ0 e^{-x}`. Start 0 begins at `θ0`, the others at random
/// points. An empty result is not a proof of nonexistence.
pub fn find_lie_cartan(
    alg: &LieAlgebra,
    m: &Metric,
    budget: SearchBudget,
    seed: u64,
    tol: f64,
) -> Result<CartanSearch> {
    let space = BracketSpace::new(m, None, tol)?;
    let v = space.vector(alg)?;
    let dim = space.s_basis.len();
    let scale = v.norm().max(1.0);
    let residual = |x: &[f64]| -> Vec<f64> {
        let theta = theta_of(&space, x);
        transport(&v, &theta, &theta).sub(&v).scaled(1.0 / scale).upper()
    };
    let results = multistart(budget.starts, seed, |k, rng: &mut ChaCha8Rng| {
        let x0: Vec<f64> = if k == 0 { vec![0.0; dim] } else { (0..dim).map(|_| rng.gen_range(-1.5..1.5)).collect() };
        let r = levenberg_marquardt(&residual, &x0, budget.iterations, 1e-28);
        let radius = r.x.iter().map(|a| a * a).sum::<f64>().sqrt();
        let res = if radius > SEARCH_RADIUS { f64::INFINITY } else { (2.0 * r.cost).sqrt() };
        let inv = (res <= 1e-6).then(|| certify(alg, m, &space.from_frame(&theta_of(&space, &r.x)), tol)).flatten();
        (res, inv)
    });
    let best_residual = results.first().map_or(f64::INFINITY, |r| r.residual);
    let mut certified: Vec<Involution> = Vec::new();
    let mut outcomes = Vec::with_capacity(results.len());
    for r in results {
        if let Some(inv) = &r.value {
            if !certified.iter().any(|c| c.map.max_abs_diff(&inv.map) <= 1e-6) {
                certified.push(inv.clone());
            }
        }
        outcomes.push(StartOutcome { start: r.start, residual: r.residual, certified: r.value.map(|i| i.map) });
    }
    Ok(CartanSearch { best: certified.first().cloned(), certified, best_residual, starts_run: budget.starts, outcomes })
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityReport {
    pub minimal: bool,
    /// `‖M(v)‖`, unnormalized.
    pub moment_norm: f64,
    /// Smallest `‖e^{tX} v‖ - ‖v‖` over the probes.
    pub worst_probe: f64,
    pub probes: usize,
}

/// First-order test `‖M(v)‖ < tol`, backed by random probes along `s`.
pub fn is_minimal(space: &BracketSpace, v: &BracketVector, tol: f64, probes: usize, seed: u64) -> MinimalityReport {
    let moment_norm = fro(&moment(space, v));
    let base = v.norm();
    let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let dim = space.s_basis.len();
    let mut worst = f64::INFINITY;
    for _ in 0..probes.min(if dim == 0 { 0 } else { usize::MAX }) {
        let coords: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let t: f64 = rng.gen_range(-1.0..1.0);
        let x = space.s_element(&coords) * t;
        let moved = transport(v, &expm(&x), &expm(&(-x)));
        worst = worst.min(moved.norm() - base);
    }
    if !worst.is_finite() {
        worst = 0.0;
    }
    MinimalityReport { minimal: moment_norm < tol && worst >= -tol, moment_norm, worst_probe: worst, probes }
}

/// Random element of `O(p,q)_0` in frame coordinates: `e^{k} e^{s}` with
/// coefficients uniform in `[-r, r]`.
pub fn random_identity_component(space: &BracketSpace, rng: &mut impl Rng, r: f64) -> DMatrix<f64> {
    let ks: Vec<f64> = (0..space.k_basis.len()).map(|_| rng.gen_range(-r..r)).collect();
    let ss: Vec<f64> = (0..space.s_basis.len()).map(|_| rng.gen_range(-r..r)).collect();
    expm(&space.k_element(&ks)) * expm(&space.s_element(&ss))
}
