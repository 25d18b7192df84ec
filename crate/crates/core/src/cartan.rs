//! Cartan involutions of a metric, Cartan decompositions, the Wick twist
//! `t + i p`, and conjugacy of Cartan involutions.
//!
//! A metric Cartan involution here is required to be an isometry. Without
//! that requirement `g(x, θ y)` need not even be symmetric.

use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{LieAlgebra, LinearMap, MapRole};
use crate::error::{Error, Result};
use crate::linalg::{expm, symmetric_eigenvalues, symmetric_function, Matrix};
use crate::metric::{self, involution_residual, Metric};
use crate::optimize::{levenberg_marquardt, multistart};
use crate::scalar::Scalar;

/// Tri-state checks: `None` means the check was not performed.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct InvolutionFlags {
    pub is_involution: Option<bool>,
    pub is_metric_isometry: Option<bool>,
    pub g_theta_positive: Option<bool>,
    pub is_automorphism: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionEvidence {
    pub involution_residual: f64,
    pub isometry_residual: f64,
    /// Eigenvalues of `g(., θ .)`, ascending; empty when not computed.
    pub g_theta_eigenvalues: Vec<f64>,
    pub automorphism_residual: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Involution {
    pub map: Matrix,
    pub flags: InvolutionFlags,
    pub evidence: InvolutionEvidence,
}

impl Involution {
    pub fn is_metric_cartan(&self) -> bool {
        let f = &self.flags;
        f.is_involution == Some(true) && f.is_metric_isometry == Some(true) && f.g_theta_positive == Some(true)
    }

    pub fn is_lie_cartan(&self) -> bool {
        self.is_metric_cartan() && self.flags.is_automorphism == Some(true)
    }

    /// Worst of the computed residuals, for ranking candidates.
    pub fn max_residual(&self) -> f64 {
        let e = &self.evidence;
        e.involution_residual.max(e.isometry_residual).max(e.automorphism_residual.unwrap_or(0.0))
    }

    pub fn linear_map(&self) -> LinearMap {
        LinearMap::new(self.map.clone(), MapRole::AutomorphismCandidate)
    }
}

/// Metric-level checks; the automorphism flag stays unchecked.
pub fn is_metric_cartan(m: &Metric, theta: &Matrix, tol: f64) -> Involution {
    let n = m.dim();
    if theta.nrows() != n || theta.ncols() != n {
        return Involution {
            map: theta.clone(),
            flags: InvolutionFlags {
                is_involution: Some(false),
                is_metric_isometry: Some(false),
                g_theta_positive: Some(false),
                is_automorphism: None,
            },
            evidence: InvolutionEvidence {
                involution_residual: f64::INFINITY,
                isometry_residual: f64::INFINITY,
                g_theta_eigenvalues: Vec::new(),
                automorphism_residual: None,
            },
        };
    }
    let inv = (theta * theta).approx_eq(&Matrix::identity(n), tol);
    let iso = m.is_isometry(theta, tol);
    let mut flags = InvolutionFlags { is_involution: Some(inv), is_metric_isometry: Some(iso), ..Default::default() };
    let mut eigen = Vec::new();
    if inv && iso {
        let t = metric::theta_inner(m, theta, tol).expect("preconditions checked");
        flags.g_theta_positive = Some(t.positive);
        eigen = t.eigenvalues;
    }
    Involution {
        map: theta.clone(),
        flags,
        evidence: InvolutionEvidence {
            involution_residual: involution_residual(theta),
            isometry_residual: m.isometry_residual(theta),
            g_theta_eigenvalues: eigen,
            automorphism_residual: None,
        },
    }
}

/// Metric checks plus the automorphism check.
pub fn is_lie_cartan(alg: &LieAlgebra, m: &Metric, theta: &Matrix, tol: f64) -> Involution {
    let mut out = is_metric_cartan(m, theta, tol);
    if theta.nrows() == alg.dim() && theta.ncols() == alg.dim() {
        let aut = alg.is_automorphism(theta, tol).unwrap_or(false);
        out.flags.is_automorphism = Some(aut);
        out.evidence.automorphism_residual = alg.automorphism_residual(theta).ok();
    } else {
        out.flags.is_automorphism = Some(false);
    }
    out
}

/// Cartan involution of the semisimple algebra itself, i.e. of `-κ`.
pub fn is_killing_cartan(alg: &LieAlgebra, theta: &Matrix, tol: f64) -> Result<bool> {
    let k = alg.killing_form();
    let minus_k = match Metric::new(-&k, tol) {
        Ok(m) => m,
        Err(Error::DegenerateMetric { .. }) => return Err(Error::NotSemisimple),
        Err(e) => return Err(e),
    };
    Ok(is_lie_cartan(alg, &minus_k, theta, tol).is_lie_cartan())
}

#[derive(Clone, Debug, Serialize)]
pub struct CartanDecomposition {
    /// `+1` eigenspace.
    pub t_basis: Vec<Vec<Scalar>>,
    /// `-1` eigenspace.
    pub p_basis: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCheck {
    pub t_positive: bool,
    pub p_negative: bool,
    pub orthogonal: bool,
    /// `[t,t] ⊆ t`, `[t,p] ⊆ p`, `[p,p] ⊆ t`.
    pub bracket_grading: bool,
}

pub fn cartan_decomposition(theta: &Matrix, tol: f64) -> Result<CartanDecomposition> {
    let n = theta.nrows();
    let id = Matrix::identity(n);
    if !(theta * theta).approx_eq(&id, tol) {
        return Err(Error::NotInvolution(involution_residual(theta)));
    }
    let t_basis = (theta - &id).nullspace(tol);
    let p_basis = (theta + &id).nullspace(tol);
    if t_basis.len() + p_basis.len() != n {
        return Err(Error::DegenerateBasis);
    }
    Ok(CartanDecomposition { t_basis, p_basis })
}

impl CartanDecomposition {
    pub fn dims(&self) -> (usize, usize) {
        (self.t_basis.len(), self.p_basis.len())
    }

    pub fn check(&self, alg: &LieAlgebra, m: &Metric, tol: f64) -> DecompositionCheck {
        let gram = |a: &[Vec<Scalar>], b: &[Vec<Scalar>]| {
            Matrix::from_fn(a.len(), b.len(), |i, j| m.inner(&a[i], &b[j]))
        };
        let definite = |g: &Matrix, sign: f64| {
            g.nrows() == 0 || symmetric_eigenvalues(&g.to_dmatrix()).iter().all(|&v| sign * v > tol)
        };
        let t_positive = definite(&gram(&self.t_basis, &self.t_basis), 1.0);
        let p_negative = definite(&gram(&self.p_basis, &self.p_basis), -1.0);
        let orthogonal = gram(&self.t_basis, &self.p_basis).max_abs() <= tol;
        let n = alg.dim();
        let mut cols: Vec<Vec<Scalar>> = self.t_basis.clone();
        cols.extend(self.p_basis.iter().cloned());
        let theta_ok = || -> Option<bool> {
            let b = Matrix::from_columns(&cols).ok()?;
            let tau = alg.change_basis(&b, tol).ok()?;
            let nt = self.t_basis.len();
            let kind = |i: usize| i < nt;
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        // [x, y] lands in t iff x and y have the same type
                        if kind(k) != (kind(i) == kind(j)) && !tau.constant(i, j, k).is_zero_tol(tol) {
                            return Some(false);
                        }
                    }
                }
            }
            Some(true)
        };
        DecompositionCheck { t_positive, p_negative, orthogonal, bracket_grading: theta_ok().unwrap_or(false) }
    }
}

/// Orthogonalizes `vectors` against `g` without normalizing, so rational
/// input stays rational. When every remaining vector is null, a pair with
/// nonzero pairing is combined first. Fails if the span is degenerate.
pub fn signed_gram_schmidt(m: &Metric, vectors: &[Vec<Scalar>], tol: f64) -> Result<Vec<Vec<Scalar>>> {
    let mut rest: Vec<Vec<Scalar>> = vectors.to_vec();
    let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let pick = match rest.iter().position(|v| !m.inner(v, v).is_zero_tol(tol)) {
            Some(i) => rest.remove(i),
            None => {
                let mut pair = None;
                'outer: for a in 0..rest.len() {
                    for b in (a + 1)..rest.len() {
                        if !m.inner(&rest[a], &rest[b]).is_zero_tol(tol) {
                            pair = Some((a, b));
                            break 'outer;
                        }
                    }
                }
                let (a, b) = pair.ok_or(Error::DegenerateBasis)?;
                let sum: Vec<Scalar> = rest[a].iter().zip(&rest[b]).map(|(x, y)| x + y).collect();
                rest.remove(a);
                sum
            }
        };
        let norm = m.inner(&pick, &pick);
        for v in rest.iter_mut() {
            let c = &m.inner(v, &pick) / &norm;
            if !c.is_exact_zero() {
                *v = v.iter().zip(&pick).map(|(x, y)| x - &(&c * y)).collect();
            }
        }
        rest.retain(|v| v.iter().any(|x| !x.is_zero_tol(tol)));
        out.push(pick);
    }
    if out.len() != vectors.len() {
        return Err(Error::DegenerateBasis);
    }
    Ok(out)
}

/// A `g`-orthonormal frame (columns): vectors with `g = +1` first, then
/// those with `g = -1`. In this frame `g = diag(I_p, -I_q)`.
pub fn orthonormal_frame(m: &Metric, tol: f64) -> Result<DMatrix<f64>> {
    let n = m.dim();
    let ortho = signed_gram_schmidt(m, &crate::algebra::identity_basis(n), tol)?;
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for v in ortho {
        let nv = m.inner(&v, &v).to_f64();
        let col: Vec<f64> = v.iter().map(|x| x.to_f64() / nv.abs().sqrt()).collect();
        if nv > 0.0 {
            pos.push(col);
        } else {
            neg.push(col);
        }
    }
    let cols: Vec<_> = pos.into_iter().chain(neg).map(nalgebra::DVector::from_vec).collect();
    Ok(DMatrix::from_columns(&cols))
}

/// Output of [`wick_rotate`]. The rotated algebra is written in the adapted
/// basis `t_1..t_a, q_1..q_b` with `q = i p`; `basis_map` holds the adapted
/// vectors `t, p` of the source as columns.
#[derive(Clone, Debug)]
pub struct WickRotation {
    pub algebra: LieAlgebra,
    pub metric: Metric,
    pub basis_map: Matrix,
    /// The involution induced on the rotated algebra, `diag(I, -I)`.
    pub theta: Matrix,
    pub t_dim: usize,
    pub p_dim: usize,
}

fn check_wick_involution(alg: &LieAlgebra, m: &Metric, theta: &Matrix, tol: f64) -> Result<()> {
    if theta.nrows() != alg.dim() || theta.ncols() != alg.dim() || m.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: theta.nrows() });
    }
    if !(theta * theta).approx_eq(&Matrix::identity(alg.dim()), tol) {
        return Err(Error::NotInvolution(involution_residual(theta)));
    }
    if !m.is_isometry(theta, tol) {
        return Err(Error::NotIsometry(m.isometry_residual(theta)));
    }
    if !alg.is_automorphism(theta, tol)? {
        return Err(Error::NotAutomorphism(alg.automorphism_residual(theta)?));
    }
    Ok(())
}

/// The twist `t + i p` along an isometric involutive automorphism `θ`,
/// realised over the reals: brackets of two `q` vectors change sign, every
/// other bracket keeps its coefficients, and the metric changes sign on `p`.
pub fn wick_rotate(alg: &LieAlgebra, m: &Metric, theta: &Matrix, tol: f64) -> Result<WickRotation> {
    check_wick_involution(alg, m, theta, tol)?;
    let dec = cartan_decomposition(theta, tol)?;
    let t = signed_gram_schmidt(m, &dec.t_basis, tol)?;
    let p = signed_gram_schmidt(m, &dec.p_basis, tol)?;
    let (a, b) = (t.len(), p.len());
    let cols: Vec<Vec<Scalar>> = t.into_iter().chain(p).collect();
    let basis = Matrix::from_columns(&cols)?;
    let adapted = alg.change_basis(&basis, tol)?;
    let n = alg.dim();
    let mut c = adapted.constants().to_vec();
    for i in a..n {
        for j in a..n {
            for k in 0..n {
                let idx = (i * n + j) * n + k;
                c[idx] = -&c[idx];
            }
        }
    }
    let mut labels: Vec<String> = (1..=a).map(|i| format!("t{i}")).collect();
    labels.extend((1..=b).map(|i| format!("q{i}")));
    let mut rotated = LieAlgebra::from_constants(labels, c)?;
    if let Some(name) = alg.name() {
        rotated = rotated.with_name(format!("{name}_wick"));
    }
    let gb = m.in_basis(&basis);
    let form = Matrix::from_fn(n, n, |i, j| match (i < a, j < a) {
        (true, true) => gb.form()[(i, j)].clone(),
        (false, false) => -&gb.form()[(i, j)],
        _ => Scalar::zero(),
    });
    let metric = Metric::new(form, tol)?;
    let signs: Vec<i64> = (0..n).map(|i| if i < a { 1 } else { -1 }).collect();
    Ok(WickRotation { algebra: rotated, metric, basis_map: basis, theta: Matrix::diag_ints(&signs), t_dim: a, p_dim: b })
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleWick {
    pub identical: bool,
    pub constants_residual: f64,
    pub metric_residual: f64,
}

/// Rotates twice, the second time along the induced involution, and
/// compares with the source written in the adapted basis.
pub fn involutivity_double_wick(alg: &LieAlgebra, m: &Metric, theta: &Matrix, tol: f64) -> Result<DoubleWick> {
    let once = wick_rotate(alg, m, theta, tol)?;
    let twice = wick_rotate(&once.algebra, &once.metric, &once.theta, tol)?;
    let composed = &once.basis_map * &twice.basis_map;
    let reference = alg.change_basis(&composed, tol)?;
    let ref_metric = m.in_basis(&composed);
    let constants_residual = reference
        .constants()
        .iter()
        .zip(twice.algebra.constants())
        .map(|(x, y)| (x - y).abs_f64())
        .fold(0.0, f64::max);
    let metric_residual = ref_metric.form().max_abs_diff(twice.metric.form());
    let exact_equal = reference.constants() == twice.algebra.constants() && ref_metric.form() == twice.metric.form();
    let identical = if alg.is_exact() && m.is_exact() && theta.is_exact() {
        exact_equal
    } else {
        constants_residual <= tol && metric_residual <= tol
    };
    Ok(DoubleWick { identical, constants_residual, metric_residual })
}

/// `φ` with `φ η φ^-1 = θ` for a metric Cartan `θ` written in an
/// orthonormal frame: `φ = (θ η)^{1/2}`, which lies in `exp(s)`.
fn frame_conjugator(theta_frame: &DMatrix<f64>, eta: &DMatrix<f64>) -> DMatrix<f64> {
    symmetric_function(&(theta_frame * eta), f64::sqrt)
}

fn require_metric_cartan(m: &Metric, theta: &Matrix, tol: f64, which: &'static str) -> Result<()> {
    if is_metric_cartan(m, theta, tol).is_metric_cartan() {
        Ok(())
    } else {
        Err(Error::NotMetricCartan(which))
    }
}

/// `φ ∈ O(p,q)_0` with `φ θ1 φ^-1 = θ2`, a product of two exponentials of
/// `g_θ`-symmetric elements of `o(p,q)`.
pub fn conjugate_metric_cartan(m: &Metric, theta1: &Matrix, theta2: &Matrix, tol: f64) -> Result<LinearMap> {
    require_metric_cartan(m, theta1, tol, "theta1")?;
    require_metric_cartan(m, theta2, tol, "theta2")?;
    let n = m.dim();
    if theta1 == theta2 {
        return Ok(LinearMap::new(Matrix::identity(n), MapRole::Endomorphism));
    }
    let f = orthonormal_frame(m, tol)?;
    let finv = f.clone().try_inverse().ok_or(Error::Singular)?;
    let (p, _) = m.signature();
    let eta = DMatrix::from_fn(n, n, |i, j| if i != j { 0.0 } else if i < p { 1.0 } else { -1.0 });
    let in_frame = |t: &Matrix| &finv * t.to_dmatrix() * &f;
    let phi1 = frame_conjugator(&in_frame(theta1), &eta);
    let phi2 = frame_conjugator(&in_frame(theta2), &eta);
    let phi1_inv = phi1.try_inverse().ok_or(Error::Singular)?;
    let phi = &f * phi2 * phi1_inv * &finv;
    Ok(LinearMap::new(Matrix::from_dmatrix(&phi), MapRole::Endomorphism))
}

/// Largest entry of `φ θ1 φ^-1 - θ2`.
pub fn conjugation_residual(phi: &Matrix, theta1: &Matrix, theta2: &Matrix) -> f64 {
    match phi.inverse(1e-12) {
        Ok(inv) => (&(phi * theta1) * &inv).max_abs_diff(theta2),
        Err(_) => f64::INFINITY,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LieConjugator {
    /// The conjugating map `φ`.
    pub map: Matrix,
    /// Coordinates of each exponential factor in the basis of
    /// `Der(L) ∩ o(p,q)`; `φ` is the product of their exponentials, left to right.
    pub factors: Vec<Vec<f64>>,
    pub conjugation_residual: f64,
    pub automorphism_residual: f64,
    pub isometry_residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct ConjugateBudget {
    pub starts: usize,
    pub iterations: usize,
}

impl Default for ConjugateBudget {
    fn default() -> Self {
        ConjugateBudget { starts: 16, iterations: 500 }
    }
}

fn exp_combination(basis: &[DMatrix<f64>], coeffs: &[f64]) -> DMatrix<f64> {
    let n = basis.first().map_or(0, |b| b.nrows());
    let mut x = DMatrix::<f64>::zeros(n, n);
    for (b, c) in basis.iter().zip(coeffs) {
        x += b * *c;
    }
    expm(&x)
}

/// Least-squares coordinates of `x` in the span of `basis`.
fn coordinates(basis: &[DMatrix<f64>], x: &DMatrix<f64>) -> Vec<f64> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let a = DMatrix::from_fn(x.len(), k, |r, c| basis[c][r]);
    let b = nalgebra::DVector::from_iterator(x.len(), x.iter().copied());
    a.svd(true, true).solve(&b, 1e-12).map(|v| v.iter().copied().collect()).unwrap_or_else(|_| vec![0.0; k])
}

/// `φ ∈ Aut(L)_0 ∩ O(p,q)_0` with `φ θ1 φ^-1 = θ2`, certified as a product
/// of exponentials of `Der(L) ∩ o(p,q)`. `Ok(None)` is a no-certificate
/// outcome within the budget.
pub fn conjugate_lie_cartan(
    alg: &LieAlgebra,
    m: &Metric,
    theta1: &Matrix,
    theta2: &Matrix,
    budget: ConjugateBudget,
    seed: u64,
    tol: f64,
) -> Result<Option<LieConjugator>> {
    for (t, which) in [(theta1, "theta1"), (theta2, "theta2")] {
        if !is_lie_cartan(alg, m, t, tol).is_lie_cartan() {
            return Err(Error::NotLieCartan(which));
        }
    }
    let n = alg.dim();
    let der: Vec<DMatrix<f64>> =
        metric::isometric_derivations(alg, m, tol)?.into_iter().map(|d| d.matrix.to_dmatrix()).collect();
    let t1 = theta1.to_dmatrix();
    let t2 = theta2.to_dmatrix();
    let certify = |phi: DMatrix<f64>, factors: Vec<Vec<f64>>| -> Option<LieConjugator> {
        let map = Matrix::from_dmatrix(&phi);
        let c = LieConjugator {
            conjugation_residual: conjugation_residual(&map, theta1, theta2),
            automorphism_residual: alg.automorphism_residual(&map).ok()?,
            isometry_residual: m.isometry_residual(&map),
            map,
            factors,
        };
        let ok = c.conjugation_residual <= tol.max(1e-9)
            && c.automorphism_residual <= tol.max(1e-9)
            && c.isometry_residual <= tol.max(1e-9);
        ok.then_some(c)
    };
    if theta1 == theta2 {
        let zero = vec![0.0; der.len()];
        return Ok(certify(DMatrix::identity(n, n), vec![zero]));
    }
    // P = θ2 θ1 is self-adjoint and positive for g(., θ1 .); its square root
    // is the exponential of half its logarithm, which is an isometric derivation.
    let g1 = (m.form() * theta1).to_dmatrix();
    if let Some(chol) = g1.clone().cholesky() {
        let l = chol.l();
        if let Some(l_inv) = l.clone().try_inverse() {
            let q = l.transpose() * (&t2 * &t1) * l_inv.transpose();
            let log_q = symmetric_function(&q, |v| if v > 0.0 { v.ln() } else { f64::NAN });
            if log_q.iter().all(|v| v.is_finite()) {
                let x = l_inv.transpose() * log_q * l.transpose() * 0.5;
                let coords = coordinates(&der, &x);
                if let Some(c) = certify(exp_combination(&der, &coords), vec![coords]) {
                    return Ok(Some(c));
                }
            }
        }
    }
    // Search over products of two exponentials.
    let k = der.len();
    let residual = |x: &[f64]| -> Vec<f64> {
        let phi = exp_combination(&der, &x[..k]) * exp_combination(&der, &x[k..]);
        let lhs = &phi * &t1;
        let rhs = &t2 * &phi;
        (lhs - rhs).iter().copied().collect()
    };
    let results = multistart(budget.starts, seed, |_, rng| {
        let x0: Vec<f64> = (0..2 * k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = levenberg_marquardt(&residual, &x0, budget.iterations, 1e-26);
        (r.cost, r.x)
    });
    for r in results {
        let phi = exp_combination(&der, &r.value[..k]) * exp_combination(&der, &r.value[k..]);
        if let Some(c) = certify(phi, vec![r.value[..k].to_vec(), r.value[k..].to_vec()]) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn heis() -> (LieAlgebra, Metric) {
        catalog::entry("heis3_lorentz").unwrap()
    }

    #[test]
    fn metric_cartan_cases() {
        let id = Matrix::identity(3);
        assert!(is_metric_cartan(&Metric::diag(&[1, 2, 3]), &id, 1e-12).is_metric_cartan());
        let (h, g) = heis();
        let inv = is_metric_cartan(&g, &catalog::heis3_cartan(), 1e-12);
        assert!(inv.is_metric_cartan());
        assert_eq!(inv.flags.is_automorphism, None);
        let bad = is_metric_cartan(&g, &id, 1e-12);
        assert_eq!(bad.flags.g_theta_positive, Some(false));
        assert_eq!(bad.evidence.g_theta_eigenvalues, vec![-1.0, -1.0, 1.0]);
        assert!(is_lie_cartan(&h, &g, &catalog::heis3_cartan(), 1e-12).is_lie_cartan());
    }

    #[test]
    fn sl2r_transpose_is_lie_cartan_for_minus_killing() {
        let (sl, mk) = catalog::entry("sl2r_minusk").unwrap();
        let inv = is_lie_cartan(&sl, &mk, &catalog::sl2r_cartan(), 1e-12);
        assert!(inv.is_lie_cartan(), "{inv:?}");
    }

    #[test]
    fn killing_cartan() {
        assert!(is_killing_cartan(&catalog::sl2r(), &catalog::sl2r_cartan(), 1e-12).unwrap());
        assert!(is_killing_cartan(&catalog::su2(), &Matrix::identity(3), 1e-12).unwrap());
        assert!(!is_killing_cartan(&catalog::sl2r(), &Matrix::identity(3), 1e-12).unwrap());
        assert!(matches!(
            is_killing_cartan(&catalog::heisenberg(), &Matrix::identity(3), 1e-12),
            Err(Error::NotSemisimple)
        ));
    }

    #[test]
    fn decompositions() {
        let d = cartan_decomposition(&Matrix::identity(3), 1e-12).unwrap();
        assert_eq!(d.dims(), (3, 0));
        let d = cartan_decomposition(&catalog::heis3_cartan(), 1e-12).unwrap();
        assert_eq!(d.t_basis, vec![crate::algebra::unit(3, 2)]);
        assert_eq!(d.p_basis.len(), 2);
        let d = cartan_decomposition(&catalog::sl2r_cartan(), 1e-12).unwrap();
        assert_eq!(d.dims(), (1, 2));
        // t is spanned by E - F
        let t = &d.t_basis[0];
        assert!(t[0].is_exact_zero() && (&t[1] + &t[2]).is_exact_zero());
        let (sl, mk) = catalog::entry("sl2r_minusk").unwrap();
        let c = d.check(&sl, &mk, 1e-12);
        assert!(c.t_positive && c.p_negative && c.orthogonal && c.bracket_grading);
    }

    #[test]
    fn gram_schmidt_handles_null_vectors() {
        let m = Metric::new(Matrix::from_ints(&[&[0, 1], &[1, 0]]), 1e-12).unwrap();
        let v = signed_gram_schmidt(&m, &crate::algebra::identity_basis(2), 1e-12).unwrap();
        assert_eq!(v.len(), 2);
        assert!(m.inner(&v[0], &v[1]).is_exact_zero());
        assert!(!m.inner(&v[0], &v[0]).is_exact_zero());
    }

    #[test]
    fn heisenberg_wick_rotation() {
        let (h, g) = heis();
        let w = wick_rotate(&h, &g, &catalog::heis3_cartan(), 1e-12).unwrap();
        assert_eq!(w.metric.form(), &Matrix::identity(3));
        assert_eq!(w.algebra.labels(), &["t1", "q1", "q2"]);
        // [q1, q2] = -t1
        assert_eq!(w.algebra.bracket_basis(1, 2), vec![Scalar::int(-1), Scalar::zero(), Scalar::zero()]);
        assert!(w.algebra.check_jacobi(0.0).ok);
        assert!(involutivity_double_wick(&h, &g, &catalog::heis3_cartan(), 1e-12).unwrap().identical);
    }

    #[test]
    fn identity_rotation_is_trivial() {
        let (h, g) = heis();
        let w = wick_rotate(&h, &g, &Matrix::identity(3), 1e-12).unwrap();
        assert_eq!(w.algebra.constants(), h.constants());
        assert_eq!(w.metric.form(), g.form());
    }

    #[test]
    fn sl2r_rotates_to_compact_type() {
        let (sl, mk) = catalog::entry("sl2r_minusk").unwrap();
        let w = wick_rotate(&sl, &mk, &catalog::sl2r_cartan(), 1e-12).unwrap();
        assert_eq!(w.metric.signature(), (3, 0));
        let k = Metric::new(w.algebra.killing_form(), 1e-9).unwrap();
        assert_eq!(k.signature(), (0, 3));
        assert!(crate::metric::is_bi_invariant(&w.algebra, &w.metric, 0.0).unwrap());
        assert!(involutivity_double_wick(&sl, &mk, &catalog::sl2r_cartan(), 1e-12).unwrap().identical);
    }

    #[test]
    fn wick_rejects_non_automorphism() {
        let (h, g) = heis();
        let theta = Matrix::diag_ints(&[1, -1, 1]);
        assert!(matches!(wick_rotate(&h, &g, &theta, 1e-12), Err(Error::NotAutomorphism(_))));
    }

    fn hyperbolic(t: f64) -> Matrix {
        let (c, s) = (t.cosh(), t.sinh());
        Matrix::from_dmatrix(&DMatrix::from_row_slice(3, 3, &[c, 0.0, s, 0.0, 1.0, 0.0, s, 0.0, c]))
    }

    #[test]
    fn metric_conjugator_round_trip() {
        let (_, g) = heis();
        let theta = catalog::heis3_cartan();
        let h = hyperbolic(0.7);
        let theta2 = &(&h * &theta) * &h.inverse(1e-12).unwrap();
        let phi = conjugate_metric_cartan(&g, &theta, &theta2, 1e-9).unwrap();
        assert!(conjugation_residual(&phi.matrix, &theta, &theta2) < 1e-9);
        assert!(g.isometry_residual(&phi.matrix) < 1e-9);
        let same = conjugate_metric_cartan(&g, &theta, &theta, 1e-9).unwrap();
        assert_eq!(same.matrix, Matrix::identity(3));
    }

    #[test]
    fn metric_conjugator_between_sign_patterns() {
        let g = Metric::diag(&[1, -1, -1]);
        let a = Matrix::diag_ints(&[1, -1, -1]);
        let phi = conjugate_metric_cartan(&g, &a, &a, 1e-9).unwrap();
        assert_eq!(phi.matrix, Matrix::identity(3));
        let r = hyperbolic(-0.3);
        let b = &(&r * &a) * &r.inverse(1e-12).unwrap();
        let phi = conjugate_metric_cartan(&g, &a, &b, 1e-9).unwrap();
        assert!(conjugation_residual(&phi.matrix, &a, &b) < 1e-9);
    }

    #[test]
    fn lie_conjugator_recovers_hyperbolic_automorphism() {
        let (sl, mk) = catalog::entry("sl2r_minusk").unwrap();
        let theta = catalog::sl2r_cartan();
        let x = sl.ad_basis(0).to_dmatrix() * 0.4;
        let a = Matrix::from_dmatrix(&expm(&x));
        let theta2 = &(&a * &theta) * &a.inverse(1e-12).unwrap();
        let theta2 = Matrix::from_dmatrix(&theta2.to_dmatrix());
        let c = conjugate_lie_cartan(&sl, &mk, &theta, &theta2, ConjugateBudget::default(), 1, 1e-9)
            .unwrap()
            .expect("certificate");
        assert!(c.conjugation_residual < 1e-8);
        assert!(c.map.max_abs_diff(&a) < 1e-8);
    }

    #[test]
    fn lie_conjugator_identity_case() {
        let (h, g) = heis();
        let theta = catalog::heis3_cartan();
        let c = conjugate_lie_cartan(&h, &g, &theta, &theta, ConjugateBudget::default(), 0, 1e-9).unwrap().unwrap();
        assert_eq!(c.map, Matrix::identity(3));
    }
}
