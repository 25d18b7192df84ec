//! Algebraic soliton decompositions `Ric = λ I + D` and θ-equivariance of
//! the connection and curvature.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::{LieAlgebra, LinearMap, MapRole};
use crate::cartan::{self, WickRotation};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::metric::{self, involution_residual, Metric};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolitonClass {
    Einstein,
    Nilsoliton,
    Solsoliton,
    AlgebraicSoliton,
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolitonDecomposition {
    pub lambda: Scalar,
    pub d: Matrix,
    /// Largest entry of `Ric - λ I - D`.
    pub residual: f64,
    pub classification: SolitonClass,
    /// Real parts of the eigenvalues of `D`, ascending.
    pub d_eigenvalues: Vec<f64>,
    /// Whether `(λ, D)` was found by exact rational elimination.
    pub exact: bool,
}

impl SolitonDecomposition {
    pub fn accepted(&self) -> bool {
        self.classification != SolitonClass::None
    }

    pub fn derivation(&self) -> LinearMap {
        LinearMap::new(self.d.clone(), MapRole::Derivation)
    }
}

fn eigen_real_parts(a: &Matrix) -> Vec<f64> {
    let mut ev: Vec<f64> = a.to_dmatrix().complex_eigenvalues().iter().map(|z| z.re).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Least-squares fit of the Ricci operator by `λ I + Σ c_i D_i` over a basis
/// of derivations. Abelian algebras return `λ = 0`, `D = Ric`.
pub fn soliton_decompose(alg: &LieAlgebra, m: &Metric, tol: f64) -> Result<SolitonDecomposition> {
    let n = alg.dim();
    let curv = metric::curvature(alg, m, tol)?;
    let ric = curv.ricci_operator;
    let report = alg.structural_classify(tol);
    let (lambda, d, exact) = if report.abelian {
        (Scalar::zero(), ric.clone(), ric.is_exact())
    } else {
        let der = alg.derivation_algebra(tol);
        let k = der.len() + 1;
        // column 0 is the identity, then the derivation basis; last is Ric
        let column = |c: usize, r: usize| -> Scalar {
            let (a, b) = (r / n, r % n);
            match c {
                0 => {
                    if a == b {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }
                c if c < k => der[c - 1].matrix[(a, b)].clone(),
                _ => ric[(a, b)].clone(),
            }
        };
        let aug = Matrix::from_fn(n * n, k + 1, |r, c| column(c, r));
        let exact_solution = if aug.is_exact() {
            let (red, pivots) = aug.rref(0.0);
            (!pivots.contains(&k)).then(|| {
                let mut coef = vec![Scalar::zero(); k];
                for (row, &p) in pivots.iter().enumerate() {
                    coef[p] = red[(row, k)].clone();
                }
                coef
            })
        } else {
            None
        };
        let (coef, exact) = match exact_solution {
            Some(c) => (c, true),
            None => {
                let a = DMatrix::from_fn(n * n, k, |r, c| column(c, r).to_f64());
                let b = nalgebra::DVector::from_fn(n * n, |r, _| column(k, r).to_f64());
                let x = a.svd(true, true).solve(&b, 1e-12).map_err(|e| Error::InvalidArgument(e.to_string()))?;
                (x.iter().map(|&v| Scalar::Float(v)).collect(), false)
            }
        };
        let mut d = Matrix::zeros(n, n);
        for (c, dm) in coef[1..].iter().zip(&der) {
            if !c.is_exact_zero() {
                d = &d + &dm.matrix.scale(c);
            }
        }
        (coef[0].clone(), d, exact)
    };
    let fit = &Matrix::identity(n).scale(&lambda) + &d;
    let residual = fit.max_abs_diff(&ric);
    let accepted = if exact && ric.is_exact() { residual == 0.0 } else { residual < tol };
    let leibniz_ok = alg.leibniz_residual(&d) < tol.max(1e-12);
    let classification = if !(accepted && leibniz_ok) {
        SolitonClass::None
    } else if d.max_abs() <= tol {
        SolitonClass::Einstein
    } else if report.nilpotent {
        SolitonClass::Nilsoliton
    } else if report.solvable {
        SolitonClass::Solsoliton
    } else {
        SolitonClass::AlgebraicSoliton
    };
    let d_eigenvalues = eigen_real_parts(&d);
    Ok(SolitonDecomposition { lambda, d, residual, classification, d_eigenvalues, exact })
}

/// `‖θ D - D θ‖ < tol`.
pub fn check_theta_commutes(theta: &Matrix, d: &Matrix, tol: f64) -> bool {
    theta.commutator(d).max_abs() < tol
}

#[derive(Clone, Debug, Serialize)]
pub struct SolitonWickReport {
    pub source: SolitonDecomposition,
    pub rotated: SolitonDecomposition,
    pub lambda_equal: bool,
    /// Largest entry of `D~ - B^-1 D B` with `B` the adapted basis.
    pub d_transport_residual: f64,
    pub d_maps_to_rotated: bool,
}

/// Decomposes both sides of a Wick rotation and compares them.
pub fn soliton_wick_invariance(alg: &LieAlgebra, m: &Metric, theta: &Matrix, tol: f64) -> Result<SolitonWickReport> {
    let w: WickRotation = cartan::wick_rotate(alg, m, theta, tol)?;
    let source = soliton_decompose(alg, m, tol)?;
    let rotated = soliton_decompose(&w.algebra, &w.metric, tol)?;
    let lambda_equal = (&source.lambda - &rotated.lambda).is_zero_tol(tol);
    let binv = w.basis_map.inverse(tol)?;
    let moved = &(&binv * &source.d) * &w.basis_map;
    let d_transport_residual = moved.max_abs_diff(&rotated.d);
    let d_maps_to_rotated = if moved.is_exact() && rotated.d.is_exact() {
        moved == rotated.d
    } else {
        d_transport_residual < tol
    };
    Ok(SolitonWickReport { source, rotated, lambda_equal, d_transport_residual, d_maps_to_rotated })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    /// `max |∇_{θx} θy - θ ∇_x y|`.
    pub connection: f64,
    /// `max |R(θx, θy) θz - θ R(x, y) z|`.
    pub riemann: f64,
    /// `max |ric(θx, θy) - ric(x, y)|`.
    pub ricci_tensor: f64,
    /// `max |θ Ric - Ric θ|`.
    pub ricci_operator_commutator: f64,
    /// Riemann purely electric with respect to `θ`.
    pub rpe: bool,
}

impl EquivarianceReport {
    pub fn max(&self) -> f64 {
        self.connection.max(self.riemann).max(self.ricci_tensor).max(self.ricci_operator_commutator)
    }
}

/// θ-equivariance of `∇`, `R`, `ric` and `Ric` over all basis tuples.
pub fn equivariance_report(alg: &LieAlgebra, m: &Metric, theta: &Matrix, tol: f64) -> Result<EquivarianceReport> {
    let n = alg.dim();
    if !(theta * theta).approx_eq(&Matrix::identity(n), tol) {
        return Err(Error::NotInvolution(involution_residual(theta)));
    }
    if !m.is_isometry(theta, tol) {
        return Err(Error::NotIsometry(m.isometry_residual(theta)));
    }
    let curv = metric::curvature(alg, m, tol)?;
    let combine = |ops: &[Matrix], i: usize, j: usize| -> Matrix {
        // Σ_ab θ_ai θ_bj ops[a*n + b]
        let mut acc = Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let w = &theta[(a, i)] * &theta[(b, j)];
                if !w.is_exact_zero() {
                    acc = &acc + &ops[a * n + b].scale(&w);
                }
            }
        }
        acc
    };
    let mut connection = 0.0f64;
    for i in 0..n {
        // ∇_{θ e_i} as a matrix: Σ_a θ_ai Γ_a
        let mut nab = Matrix::zeros(n, n);
        for a in 0..n {
            if !theta[(a, i)].is_exact_zero() {
                nab = &nab + &curv.connection[a].scale(&theta[(a, i)]);
            }
        }
        let lhs = &nab * theta;
        let rhs = theta * &curv.connection[i];
        connection = connection.max(lhs.max_abs_diff(&rhs));
    }
    let mut riemann = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let lhs = &combine(&curv.riemann, i, j) * theta;
            let rhs = theta * curv.riemann_op(i, j);
            riemann = riemann.max(lhs.max_abs_diff(&rhs));
        }
    }
    let pulled = &(&theta.transpose() * &curv.ricci_tensor) * theta;
    let ricci_tensor = pulled.max_abs_diff(&curv.ricci_tensor);
    let ricci_operator_commutator = theta.commutator(&curv.ricci_operator).max_abs();
    Ok(EquivarianceReport { connection, riemann, ricci_tensor, ricci_operator_commutator, rpe: riemann < tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn heisenberg_nilsoliton() {
        let (h, g) = catalog::entry("heis3_lorentz").unwrap();
        let s = soliton_decompose(&h, &g, 1e-8).unwrap();
        assert!(s.exact);
        assert_eq!(s.lambda, Scalar::ratio(-3, 2));
        assert_eq!(s.d, Matrix::diag_ints(&[1, 1, 2]));
        assert_eq!(s.classification, SolitonClass::Nilsoliton);
        assert!(check_theta_commutes(&catalog::heis3_cartan(), &s.d, 1e-12));
    }

    #[test]
    fn su2_is_einstein() {
        let (su, k) = catalog::entry("su2_killing").unwrap();
        let s = soliton_decompose(&su, &k.negated(), 1e-8).unwrap();
        assert_eq!(s.classification, SolitonClass::Einstein);
        assert_eq!(s.lambda, Scalar::ratio(1, 4));
    }

    #[test]
    fn abelian_is_flat_einstein() {
        let s = soliton_decompose(&LieAlgebra::abelian(3), &Metric::diag(&[1, -1, 1]), 1e-8).unwrap();
        assert_eq!(s.lambda, Scalar::zero());
        assert_eq!(s.classification, SolitonClass::Einstein);
    }

    #[test]
    fn commutator_checks() {
        let theta = catalog::heis3_cartan();
        assert!(check_theta_commutes(&theta, &Matrix::identity(3).scale(&Scalar::int(5)), 0.0 + 1e-15));
        let e13 = Matrix::from_ints(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        assert!(!check_theta_commutes(&theta, &e13, 1e-12));
    }

    #[test]
    fn wick_preserves_heisenberg_soliton() {
        let (h, g) = catalog::entry("heis3_lorentz").unwrap();
        let r = soliton_wick_invariance(&h, &g, &catalog::heis3_cartan(), 1e-8).unwrap();
        assert!(r.lambda_equal && r.d_maps_to_rotated);
        assert_eq!(r.rotated.lambda, Scalar::ratio(-3, 2));
        assert_eq!(r.rotated.d_eigenvalues, vec![1.0, 1.0, 2.0]);
    }

    #[test]
    fn equivariance_cases() {
        let (h, g) = catalog::entry("heis3_lorentz").unwrap();
        let e = equivariance_report(&h, &g, &catalog::heis3_cartan(), 1e-12).unwrap();
        assert_eq!(e.max(), 0.0);
        assert!(e.rpe);
        let e = equivariance_report(&h, &g, &Matrix::identity(3), 1e-12).unwrap();
        assert_eq!(e.max(), 0.0);
        let (sl, mk) = catalog::entry("sl2r_minusk").unwrap();
        let e = equivariance_report(&sl, &mk, &catalog::sl2r_cartan(), 1e-12).unwrap();
        assert_eq!(e.max(), 0.0);
        // swapping E and F is an anti-automorphism: ∇ = ½[., .] changes sign
        // while R, quadratic in the bracket, does not
        let swap = Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert!(!sl.is_automorphism(&swap, 1e-12).unwrap());
        let e = equivariance_report(&sl, &mk, &swap, 1e-12).unwrap();
        assert!(e.connection > 0.0);
        assert_eq!(e.riemann, 0.0);
    }

    #[test]
    fn generic_reflection_breaks_riemann_equivariance() {
        let (h, g) = catalog::entry("heis3_lorentz").unwrap();
        // reflection along v = e1 + 2 e3, with g(v, v) = 3
        let v = [Scalar::int(1), Scalar::zero(), Scalar::int(2)];
        let gv = g.form().mul_vec(&v);
        let c = Scalar::ratio(2, 3);
        let r = Matrix::from_fn(3, 3, |i, j| {
            let id = if i == j { Scalar::one() } else { Scalar::zero() };
            &id - &(&c * &(&v[i] * &gv[j]))
        });
        assert!(g.is_isometry(&r, 0.0));
        let e = equivariance_report(&h, &g, &r, 1e-12).unwrap();
        assert!(e.riemann > 1e-3 && !e.rpe, "{e:?}");
    }
}
