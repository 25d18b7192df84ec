//! Pseudo-inner products on a Lie algebra and the curvature of the
//! left-invariant metric they define.
//!
//! Conventions: `R(x, y)z = ∇_x ∇_y z - ∇_y ∇_x z - ∇_[x,y] z` and
//! `ric(x, y) = tr(z -> R(z, y)x)`. With these, the Riemannian Heisenberg
//! algebra has Ricci eigenvalues `(-1/2, -1/2, 1/2)` and a bi-invariant
//! metric has `R(x, y)z = -1/4 [[x, y], z]`.

use serde::Serialize;

use crate::algebra::{LieAlgebra, LinearMap, MapRole};
use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigenvalues, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    form: Matrix,
    p: usize,
    q: usize,
}

impl Metric {
    /// Validates symmetry and nondegeneracy and caches the signature.
    pub fn new(form: Matrix, tol: f64) -> Result<Self> {
        if !form.is_square() {
            return Err(Error::DimensionMismatch { expected: form.nrows(), found: form.ncols() });
        }
        let n = form.nrows();
        for i in 0..n {
            for j in (i + 1)..n {
                if !(&form[(i, j)] - &form[(j, i)]).is_zero_tol(tol) {
                    return Err(Error::AsymmetricMetric(i, j));
                }
            }
        }
        let (p, q) = signature(&form, tol)?;
        Ok(Metric { form, p, q })
    }

    pub fn diag(entries: &[i64]) -> Self {
        Metric::new(Matrix::diag_ints(entries), 1e-9).expect("nondegenerate diagonal")
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.nrows()
    }

    /// `(p, q)`: counts of positive and negative eigenvalues.
    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn is_riemannian(&self) -> bool {
        self.q == 0
    }

    pub fn is_exact(&self) -> bool {
        self.form.is_exact()
    }

    pub fn negated(&self) -> Metric {
        Metric { form: -&self.form, p: self.q, q: self.p }
    }

    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        crate::linalg::bilinear(&self.form, x, y)
    }

    /// Largest entry of `A^T g A - g`.
    pub fn isometry_residual(&self, a: &Matrix) -> f64 {
        let pulled = &(&a.transpose() * &self.form) * a;
        pulled.max_abs_diff(&self.form)
    }

    pub fn is_isometry(&self, a: &Matrix, tol: f64) -> bool {
        let pulled = &(&a.transpose() * &self.form) * a;
        pulled.approx_eq(&self.form, tol)
    }

    /// The congruent metric `B^T g B`, i.e. the form in the basis given by
    /// the columns of `B`.
    pub fn in_basis(&self, basis: &Matrix) -> Metric {
        Metric { form: &(&basis.transpose() * &self.form) * basis, p: self.p, q: self.q }
    }
}

/// Sylvester counts from the symmetric eigenvalues. Any eigenvalue within
/// `tol` (relative to the largest entry when that exceeds one) is an error.
pub fn signature(form: &Matrix, tol: f64) -> Result<(usize, usize)> {
    let ev = symmetric_eigenvalues(&form.to_dmatrix());
    let eff = tol * form.max_abs().max(1.0);
    if let Some(&bad) = ev.iter().find(|v| v.abs() <= eff) {
        return Err(Error::DegenerateMetric { eigenvalue: bad });
    }
    if ev.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("metric eigenvalue".into()));
    }
    let p = ev.iter().filter(|&&v| v > 0.0).count();
    Ok((p, ev.len() - p))
}

#[derive(Clone, Debug, Serialize)]
pub struct BiInvariance {
    pub ok: bool,
    pub max_residual: f64,
    /// Basis triple `(i, j, k)` with `g([e_i,e_j],e_k) + g(e_j,[e_i,e_k]) != 0`.
    pub witness: Option<(usize, usize, usize)>,
}

pub fn bi_invariance(alg: &LieAlgebra, m: &Metric, tol: f64) -> Result<BiInvariance> {
    let n = check_dims(alg, m)?;
    let units = crate::algebra::identity_basis(n);
    let mut out = BiInvariance { ok: true, max_residual: 0.0, witness: None };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let r = &m.inner(&alg.bracket_basis(i, j), &units[k])
                    + &m.inner(&units[j], &alg.bracket_basis(i, k));
                if !r.is_zero_tol(tol) {
                    out.ok = false;
                    if r.abs_f64() > out.max_residual || out.witness.is_none() {
                        out.witness = Some((i, j, k));
                    }
                }
                out.max_residual = out.max_residual.max(r.abs_f64());
            }
        }
    }
    Ok(out)
}

pub fn is_bi_invariant(alg: &LieAlgebra, m: &Metric, tol: f64) -> Result<bool> {
    Ok(bi_invariance(alg, m, tol)?.ok)
}

fn check_dims(alg: &LieAlgebra, m: &Metric) -> Result<usize> {
    if alg.dim() != m.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: m.dim() });
    }
    Ok(alg.dim())
}

/// Levi-Civita connection on the left-invariant frame: entry `i` is the
/// matrix of `y -> ∇_{e_i} y`.
pub fn levi_civita(alg: &LieAlgebra, m: &Metric, tol: f64) -> Result<Vec<Matrix>> {
    let n = check_dims(alg, m)?;
    let g = m.form();
    // g(b_ij, e_k) for every pair, with b_ij = [e_i, e_j]
    let gb: Vec<Vec<Scalar>> = (0..n * n)
        .map(|ij| g.mul_vec(&alg.bracket_basis(ij / n, ij % n)))
        .collect();
    let half = Scalar::ratio(1, 2);
    // Koszul: 2 g(∇_i e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i) + g([e_k,e_i],e_j)
    let rhs = Matrix::from_fn(n, n * n, |k, ij| {
        let (i, j) = (ij / n, ij % n);
        let v = &(&gb[i * n + j][k] - &gb[j * n + k][i]) + &gb[k * n + i][j];
        &v * &half
    });
    let sol = g.solve(&rhs, tol)?;
    Ok((0..n).map(|i| Matrix::from_fn(n, n, |k, j| sol[(k, i * n + j)].clone())).collect())
}

#[derive(Clone, Debug)]
pub struct CurvatureData {
    /// `connection[i]` is the matrix of `∇_{e_i}`.
    pub connection: Vec<Matrix>,
    /// `riemann[i * n + j]` is the matrix of `R(e_i, e_j)`.
    pub riemann: Vec<Matrix>,
    pub ricci_tensor: Matrix,
    pub ricci_operator: Matrix,
    pub scalar: Scalar,
}

pub fn curvature(alg: &LieAlgebra, m: &Metric, tol: f64) -> Result<CurvatureData> {
    let n = check_dims(alg, m)?;
    let conn = levi_civita(alg, m, tol)?;
    let mut riemann = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut r = &(&conn[i] * &conn[j]) - &(&conn[j] * &conn[i]);
            for (mi, cm) in conn.iter().enumerate() {
                let c = alg.constant(i, j, mi);
                if !c.is_exact_zero() {
                    r = &r - &cm.scale(c);
                }
            }
            riemann.push(r);
        }
    }
    let ricci_tensor = Matrix::from_fn(n, n, |x, y| (0..n).map(|z| riemann[z * n + y][(z, x)].clone()).sum());
    let ricci_operator = m.form().solve(&ricci_tensor, tol)?;
    let scalar = ricci_operator.trace();
    Ok(CurvatureData { connection: conn, riemann, ricci_tensor, ricci_operator, scalar })
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureResiduals {
    pub torsion: f64,
    pub metric_compatibility: f64,
    pub riemann_antisymmetry: f64,
    pub riemann_metric_skew: f64,
    pub first_bianchi: f64,
    pub ricci_symmetry: f64,
    pub ricci_operator_consistency: f64,
}

impl CurvatureResiduals {
    pub fn max(&self) -> f64 {
        [
            self.torsion,
            self.metric_compatibility,
            self.riemann_antisymmetry,
            self.riemann_metric_skew,
            self.first_bianchi,
            self.ricci_symmetry,
            self.ricci_operator_consistency,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl CurvatureData {
    pub fn dim(&self) -> usize {
        self.connection.len()
    }

    /// `∇_{e_i} e_j`.
    pub fn nabla(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.connection[i].column(j)
    }

    pub fn riemann_op(&self, i: usize, j: usize) -> &Matrix {
        &self.riemann[i * self.dim() + j]
    }

    /// Structural identities the curvature must satisfy.
    pub fn residuals(&self, alg: &LieAlgebra, m: &Metric) -> CurvatureResiduals {
        let n = self.dim();
        let g = m.form();
        let mut torsion = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let a = self.nabla(i, j);
                let b = self.nabla(j, i);
                let c = alg.bracket_basis(i, j);
                for k in 0..n {
                    torsion = torsion.max((&(&a[k] - &b[k]) - &c[k]).abs_f64());
                }
            }
        }
        let skew = |a: &Matrix| {
            let ga = g * a;
            (&ga + &ga.transpose()).max_abs()
        };
        let metric_compatibility = self.connection.iter().map(skew).fold(0.0, f64::max);
        let mut riemann_antisymmetry = 0.0f64;
        let mut riemann_metric_skew = 0.0f64;
        let mut first_bianchi = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let rij = self.riemann_op(i, j);
                riemann_antisymmetry = riemann_antisymmetry.max((rij + self.riemann_op(j, i)).max_abs());
                riemann_metric_skew = riemann_metric_skew.max(skew(rij));
                for k in 0..n {
                    let a = rij.column(k);
                    let b = self.riemann_op(j, k).column(i);
                    let c = self.riemann_op(k, i).column(j);
                    for t in 0..n {
                        first_bianchi = first_bianchi.max((&(&a[t] + &b[t]) + &c[t]).abs_f64());
                    }
                }
            }
        }
        let ricci_symmetry = self.ricci_tensor.max_abs_diff(&self.ricci_tensor.transpose());
        let ricci_operator_consistency = (g * &self.ricci_operator).max_abs_diff(&self.ricci_tensor);
        CurvatureResiduals {
            torsion,
            metric_compatibility,
            riemann_antisymmetry,
            riemann_metric_skew,
            first_bianchi,
            ricci_symmetry,
            ricci_operator_consistency,
        }
    }
}

/// Linear system whose kernel is `o(g)`: `g X + X^T g = 0`, one row per
/// entry `r <= s`, unknown `X[a][b]` at column `a * n + b`.
pub fn isometry_equations(m: &Metric) -> Matrix {
    let n = m.dim();
    let g = m.form();
    let rows = n * (n + 1) / 2;
    let mut sys = Matrix::zeros(rows, n * n);
    let mut row = 0;
    for r in 0..n {
        for s in r..n {
            for a in 0..n {
                // (gX)[r][s] = sum_a g[r][a] X[a][s]
                if !g[(r, a)].is_exact_zero() {
                    sys[(row, a * n + s)] = &sys[(row, a * n + s)] + &g[(r, a)];
                }
                // (X^T g)[r][s] = sum_a X[a][r] g[a][s]
                if !g[(a, s)].is_exact_zero() {
                    sys[(row, a * n + r)] = &sys[(row, a * n + r)] + &g[(a, s)];
                }
            }
            row += 1;
        }
    }
    sys
}

fn kernel_maps(sys: &Matrix, n: usize, role: MapRole, tol: f64) -> Vec<LinearMap> {
    sys.nullspace(tol)
        .into_iter()
        .map(|v| LinearMap::new(Matrix::from_fn(n, n, |a, b| v[a * n + b].clone()), role))
        .collect()
}

/// Basis of the isometry algebra `o(p, q)` of the metric.
pub fn isometry_algebra_basis(m: &Metric, tol: f64) -> Vec<LinearMap> {
    kernel_maps(&isometry_equations(m), m.dim(), MapRole::Endomorphism, tol)
}

/// Basis of `Der(L) ∩ o(p, q)`, the Lie algebra of `Aut(L) ∩ O(p, q)`.
pub fn isometric_derivations(alg: &LieAlgebra, m: &Metric, tol: f64) -> Result<Vec<LinearMap>> {
    let n = check_dims(alg, m)?;
    let der = alg.derivation_equations();
    let iso = isometry_equations(m);
    let stacked = Matrix::from_rows(der.rows_vec().into_iter().chain(iso.rows_vec()).collect())?;
    Ok(kernel_maps(&stacked, n, MapRole::Derivation, tol))
}

#[derive(Clone, Debug)]
pub struct ThetaInner {
    /// `g(x, θ y)` as a matrix.
    pub form: Matrix,
    pub positive: bool,
    pub eigenvalues: Vec<f64>,
}

pub fn involution_residual(theta: &Matrix) -> f64 {
    (theta * theta).max_abs_diff(&Matrix::identity(theta.nrows()))
}

/// The form `g_θ(x, y) = g(x, θ y)` and whether it is positive definite.
pub fn theta_inner(m: &Metric, theta: &Matrix, tol: f64) -> Result<ThetaInner> {
    if theta.nrows() != m.dim() || theta.ncols() != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), found: theta.nrows() });
    }
    if !(theta * theta).approx_eq(&Matrix::identity(m.dim()), tol) {
        return Err(Error::NotInvolution(involution_residual(theta)));
    }
    if !m.is_isometry(theta, tol) {
        return Err(Error::NotIsometry(m.isometry_residual(theta)));
    }
    let form = m.form() * theta;
    let eigenvalues = symmetric_eigenvalues(&form.to_dmatrix());
    let positive = eigenvalues.iter().all(|&v| v > tol);
    Ok(ThetaInner { form, positive, eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn signatures() {
        assert_eq!(signature(&Matrix::diag_ints(&[-1, -1, 1]), 1e-9).unwrap(), (1, 2));
        assert_eq!(signature(&catalog::sl2r().killing_form(), 1e-9).unwrap(), (2, 1));
        assert_eq!(signature(&catalog::su2().killing_form(), 1e-9).unwrap(), (0, 3));
        assert!(matches!(
            signature(&Matrix::diag_ints(&[1, 0, 1]), 1e-9),
            Err(Error::DegenerateMetric { .. })
        ));
    }

    #[test]
    fn metric_rejects_asymmetry() {
        let f = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert!(matches!(Metric::new(f, 1e-9), Err(Error::AsymmetricMetric(0, 1))));
    }

    #[test]
    fn heisenberg_lorentz_not_bi_invariant() {
        let h = catalog::heisenberg();
        let g = Metric::diag(&[1, 1, -1]);
        let b = bi_invariance(&h, &g, 1e-12).unwrap();
        assert!(!b.ok);
        // g([e1,e2],e3) = -1 against g(e1,[e2,e3]) = 0
        assert_eq!(
            g.inner(&h.bracket_basis(0, 1), &crate::algebra::unit(3, 2)),
            Scalar::int(-1)
        );
    }

    #[test]
    fn bi_invariance_of_abelian_and_killing() {
        let a = LieAlgebra::abelian(3);
        assert!(is_bi_invariant(&a, &Metric::diag(&[1, -1, 2]), 0.0).unwrap());
        let sl = catalog::sl2r();
        let mk = Metric::new(-&sl.killing_form(), 1e-9).unwrap();
        let b = bi_invariance(&sl, &mk, 0.0).unwrap();
        assert!(b.ok);
        assert_eq!(b.max_residual, 0.0);
    }

    #[test]
    fn heisenberg_connection_by_hand() {
        let h = catalog::heisenberg();
        let conn = levi_civita(&h, &Metric::diag(&[-1, -1, 1]), 1e-12).unwrap();
        let half = Scalar::ratio(1, 2);
        assert_eq!(conn[0].column(1), vec![Scalar::zero(), Scalar::zero(), half.clone()]);
        assert_eq!(conn[1].column(0), vec![Scalar::zero(), Scalar::zero(), -&half]);
        assert_eq!(conn[0].column(2), vec![Scalar::zero(), half, Scalar::zero()]);
    }

    #[test]
    fn bi_invariant_connection_is_half_bracket() {
        let sl = catalog::sl2r();
        let mk = Metric::new(-&sl.killing_form(), 1e-9).unwrap();
        let conn = levi_civita(&sl, &mk, 1e-12).unwrap();
        for (i, c) in conn.iter().enumerate() {
            assert_eq!(c, &sl.ad_basis(i).scale(&Scalar::ratio(1, 2)));
        }
    }

    #[test]
    fn abelian_is_flat() {
        let a = LieAlgebra::abelian(3);
        let c = curvature(&a, &Metric::diag(&[1, -1, 1]), 1e-12).unwrap();
        assert!(c.connection.iter().all(|m| m.max_abs() == 0.0));
        assert!(c.riemann.iter().all(|m| m.max_abs() == 0.0));
        assert_eq!(c.ricci_operator, Matrix::zeros(3, 3));
    }

    #[test]
    fn heisenberg_ricci_matches_soliton_values() {
        let h = catalog::heisenberg();
        let g = Metric::diag(&[-1, -1, 1]);
        let c = curvature(&h, &g, 1e-12).unwrap();
        let expected = Matrix::diagonal(&[Scalar::ratio(-1, 2), Scalar::ratio(-1, 2), Scalar::ratio(1, 2)]);
        assert_eq!(c.ricci_operator, expected);
        assert_eq!(c.residuals(&h, &g).max(), 0.0);
    }

    #[test]
    fn isometry_algebra_dimensions() {
        assert_eq!(isometry_algebra_basis(&Metric::diag(&[1, 1, 1]), 1e-12).len(), 3);
        assert_eq!(isometry_algebra_basis(&Metric::diag(&[1, 1, -1]), 1e-12).len(), 3);
        let h = catalog::heisenberg();
        assert_eq!(isometric_derivations(&h, &Metric::diag(&[-1, -1, 1]), 1e-12).unwrap().len(), 1);
    }

    #[test]
    fn theta_inner_cases() {
        let id = Matrix::identity(3);
        let r = theta_inner(&Metric::diag(&[1, 2, 3]), &id, 1e-12).unwrap();
        assert!(r.positive);
        assert_eq!(r.form, Matrix::diag_ints(&[1, 2, 3]));

        let theta = Matrix::diag_ints(&[-1, -1, 1]);
        let r = theta_inner(&Metric::diag(&[-1, -1, 1]), &theta, 1e-12).unwrap();
        assert!(r.positive);
        assert_eq!(r.form, Matrix::identity(3));

        let sl = catalog::sl2r();
        let k = Metric::new(sl.killing_form(), 1e-9).unwrap();
        let r = theta_inner(&k, &catalog::sl2r_cartan(), 1e-12).unwrap();
        assert!(r.eigenvalues.iter().all(|&v| v < 0.0));

        let not_inv = Matrix::diag_ints(&[2, 1, 1]);
        assert!(matches!(theta_inner(&Metric::diag(&[1, 1, 1]), &not_inv, 1e-12), Err(Error::NotInvolution(_))));
        let swap = Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(matches!(theta_inner(&Metric::diag(&[1, 2, 1]), &swap, 1e-12), Err(Error::NotIsometry(_))));
    }
}
