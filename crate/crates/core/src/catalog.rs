//! Named worked examples: small algebras with exact metrics.

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::metric::Metric;
use crate::scalar::Scalar;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn s(v: i64) -> Scalar {
    Scalar::int(v)
}

/// `[e1, e2] = e3`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_brackets(labels(&["e1", "e2", "e3"]), &[(0, 1, vec![(2, s(1))])])
        .expect("valid brackets")
        .with_name("heis3")
}

/// Basis `H, E, F` with `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
pub fn sl2r() -> LieAlgebra {
    LieAlgebra::from_brackets(
        labels(&["H", "E", "F"]),
        &[(0, 1, vec![(1, s(2))]), (0, 2, vec![(2, s(-2))]), (1, 2, vec![(0, s(1))])],
    )
    .expect("valid brackets")
    .with_name("sl2r")
}

/// Basis `A, B, C` with `[A,B] = 2C`, `[B,C] = 2A`, `[C,A] = 2B`; realised
/// by `A = diag(i, -i)`, `B = [[0, 1], [-1, 0]]`, `C = [[0, i], [i, 0]]`.
pub fn su2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        labels(&["A", "B", "C"]),
        &[(0, 1, vec![(2, s(2))]), (0, 2, vec![(1, s(-2))]), (1, 2, vec![(0, s(2))])],
    )
    .expect("valid brackets")
    .with_name("su2")
}

/// `o(1,3)`: matrices with `X^T η + η X = 0`, `η = diag(1, 1, 1, -1)`, in the
/// basis of rotations `R12, R13, R23` and boosts `B1, B2, B3`.
pub fn o13() -> LieAlgebra {
    let unit = |a: usize, b: usize| Matrix::from_fn(4, 4, |r, c| if (r, c) == (a, b) { s(1) } else { s(0) });
    let rot = |a, b| &unit(a, b) - &unit(b, a);
    let boost = |a| &unit(a, 3) + &unit(3, a);
    let mats = [rot(0, 1), rot(0, 2), rot(1, 2), boost(0), boost(1), boost(2)];
    LieAlgebra::from_matrices(labels(&["R12", "R13", "R23", "B1", "B2", "B3"]), &mats)
        .expect("closed under commutator")
        .with_name("o13")
}

/// `X -> -X^T` on `sl2r` in the basis `H, E, F`.
pub fn sl2r_cartan() -> Matrix {
    Matrix::from_ints(&[&[-1, 0, 0], &[0, 0, -1], &[0, -1, 0]])
}

/// `diag(-1, -1, 1)` on the Heisenberg algebra.
pub fn heis3_cartan() -> Matrix {
    Matrix::diag_ints(&[-1, -1, 1])
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.nrows(), b.nrows());
    Matrix::from_fn(n + m, n + m, |r, c| match (r < n, c < n) {
        (true, true) => a[(r, c)].clone(),
        (false, false) => b[(r - n, c - n)].clone(),
        _ => Scalar::zero(),
    })
}

/// A catalog entry: algebra, metric, and one-line description.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub description: &'static str,
    pub algebra: LieAlgebra,
    pub metric: Metric,
}

const NAMES: &[(&str, &str)] = &[
    ("abelian3", "abelian R^3 with metric diag(1, 1, -1)"),
    ("heis3_lorentz", "Heisenberg algebra, metric diag(-1, -1, 1)"),
    ("heis3_riemann", "Heisenberg algebra, identity metric"),
    ("heis3_timelike", "Heisenberg algebra, Lorentzian metric diag(1, 1, -1) with timelike center"),
    ("heis3_null", "Heisenberg algebra, Lorentzian metric with null center"),
    ("sl2r_killing", "sl(2,R) with its Killing form, signature (2,1)"),
    ("sl2r_minusk", "sl(2,R) with minus its Killing form, signature (1,2)"),
    ("su2_killing", "su(2) with its Killing form, signature (0,3)"),
    ("sl2r_plus_r", "sl(2,R) + R with minus Killing form plus 1, reductive"),
    ("sl2r2_mixed", "sl(2,R)^2 with -kappa + kappa, signature (3,3)"),
    ("sl2r2_minusk", "sl(2,R)^2 with -kappa + -kappa, signature (2,4)"),
    ("o13_killing", "o(1,3) with its Killing form, signature (3,3)"),
];

pub fn names() -> Vec<&'static str> {
    NAMES.iter().map(|(n, _)| *n).collect()
}

fn metric(form: Matrix) -> Metric {
    Metric::new(form, 1e-9).expect("catalog metrics are nondegenerate")
}

fn build(name: &str) -> Option<(LieAlgebra, Metric)> {
    let sl = sl2r();
    let k = sl.killing_form();
    let out = match name {
        "abelian3" => (LieAlgebra::abelian(3), Metric::diag(&[1, 1, -1])),
        "heis3_lorentz" => (heisenberg(), Metric::diag(&[-1, -1, 1])),
        "heis3_riemann" => (heisenberg(), Metric::diag(&[1, 1, 1])),
        "heis3_timelike" => (heisenberg(), Metric::diag(&[1, 1, -1])),
        "heis3_null" => (heisenberg(), metric(Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]))),
        "sl2r_killing" => (sl, metric(k)),
        "sl2r_minusk" => (sl, metric(-&k)),
        "su2_killing" => {
            let su = su2();
            let ks = su.killing_form();
            (su, metric(ks))
        }
        "sl2r_plus_r" => {
            let alg = sl.direct_sum(&LieAlgebra::abelian(1)).with_name("sl2r_plus_r");
            (alg, metric(block_diag(&-&k, &Matrix::identity(1))))
        }
        "sl2r2_mixed" => (sl.direct_sum(&sl).with_name("sl2r2"), metric(block_diag(&-&k, &k))),
        "sl2r2_minusk" => (sl.direct_sum(&sl).with_name("sl2r2"), metric(block_diag(&-&k, &-&k))),
        "o13_killing" => {
            let o = o13();
            let ko = o.killing_form();
            (o, metric(ko))
        }
        _ => return None,
    };
    Some(out)
}

/// Looks up an entry; the algebra's name is set to the catalog name.
pub fn entry(name: &str) -> Result<(LieAlgebra, Metric)> {
    build(name).map(|(a, m)| (a.with_name(name), m)).ok_or_else(|| Error::UnknownCatalog {
        name: name.to_string(),
        available: names().into_iter().map(String::from).collect(),
    })
}

pub fn all() -> Vec<Entry> {
    NAMES
        .iter()
        .map(|&(name, description)| {
            let (algebra, metric) = entry(name).expect("listed entries exist");
            Entry { name, description, algebra, metric }
        })
        .collect()
}

/// `θ ⊕ θ` on a direct sum of two copies.
pub fn block_involution(theta: &Matrix) -> Matrix {
    block_diag(theta, theta)
}
