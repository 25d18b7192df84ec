//! Finite-dimensional real Lie algebras given by structure constants.
//!
//! The bracket is stored as the full tensor `C[i][j][k]`, the coefficient of
//! `e_k` in `[e_i, e_j]`, with antisymmetry enforced at construction. Indices
//! are zero-based throughout the library; the document format is one-based.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// What a matrix is meant to be; informational only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapRole {
    Endomorphism,
    AutomorphismCandidate,
    Derivation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub matrix: Matrix,
    pub role: MapRole,
}

impl LinearMap {
    pub fn new(matrix: Matrix, role: MapRole) -> Self {
        LinearMap { matrix, role }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    name: Option<String>,
    labels: Vec<String>,
    n: usize,
    c: Vec<Scalar>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub max_residual: f64,
    pub ok: bool,
    /// `(i, j, k, l)` of the largest residual, zero-based.
    pub worst: Option<(usize, usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub abelian: bool,
    pub nilpotent: bool,
    pub nilpotency_class: Option<usize>,
    pub solvable: bool,
    pub semisimple: bool,
    pub reductive: bool,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
    pub radical_dim: usize,
}

/// `(i, j, [(k, c)])` meaning `[e_i, e_j] = Σ c e_k`, zero-based.
pub type BracketTriple = (usize, usize, Vec<(usize, Scalar)>);

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    pub fn abelian(n: usize) -> Self {
        LieAlgebra { name: None, labels: default_labels(n), n, c: vec![Scalar::zero(); n * n * n] }
    }

    /// Builds an algebra from brackets `[e_i, e_j] = sum_k coeff_k e_k` with
    /// `i < j`, completed by antisymmetry.
    pub fn from_brackets(
        labels: Vec<String>,
        brackets: &[BracketTriple],
    ) -> Result<Self> {
        let n = labels.len();
        let mut alg = LieAlgebra { name: None, labels, n, c: vec![Scalar::zero(); n * n * n] };
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            if i >= j || j >= n {
                return Err(Error::InvalidArgument(format!(
                    "bracket pair ({i}, {j}) must satisfy i < j < {n}"
                )));
            }
            for (k, v) in coeffs {
                if *k >= n {
                    return Err(Error::InvalidArgument(format!("component index {k} out of range")));
                }
                let idx = alg.idx(i, j, *k);
                alg.c[idx] = &alg.c[idx] + v;
                let idx = alg.idx(j, i, *k);
                alg.c[idx] = &alg.c[idx] - v;
            }
        }
        Ok(alg)
    }

    /// Full tensor `c[(i*n + j)*n + k]`; rejected unless antisymmetric.
    pub fn from_constants(labels: Vec<String>, c: Vec<Scalar>) -> Result<Self> {
        let n = labels.len();
        if c.len() != n * n * n {
            return Err(Error::DimensionMismatch { expected: n * n * n, found: c.len() });
        }
        let alg = LieAlgebra { name: None, labels, n, c };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = alg.constant(i, j, k) + alg.constant(j, i, k);
                    if !s.is_zero_tol(1e-12) {
                        return Err(Error::Antisymmetry { i, j, k });
                    }
                }
            }
        }
        Ok(alg)
    }

    /// Structure constants of the span of linearly independent matrices
    /// closed under the commutator.
    pub fn from_matrices(labels: Vec<String>, mats: &[Matrix]) -> Result<Self> {
        let n = mats.len();
        if labels.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: labels.len() });
        }
        let entries = mats.first().map_or(0, |m| m.nrows() * m.ncols());
        let basis = Matrix::from_fn(entries, n, |r, k| mats[k].entries()[r].clone());
        let mut c = vec![Scalar::zero(); n * n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let comm = mats[i].commutator(&mats[j]);
                let coords = solve_in_span(&basis, comm.entries(), 1e-12)?;
                for (k, v) in coords.into_iter().enumerate() {
                    c[(i * n + j) * n + k] = v.clone();
                    c[(j * n + i) * n + k] = -v;
                }
            }
        }
        LieAlgebra::from_constants(labels, c)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    /// Coefficient of `e_k` in `[e_i, e_j]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[self.idx(i, j, k)]
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.c
    }

    pub fn is_exact(&self) -> bool {
        self.c.iter().all(Scalar::is_exact)
    }

    pub fn is_abelian(&self, tol: f64) -> bool {
        self.c.iter().all(|x| x.is_zero_tol(tol))
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.n).map(|k| self.constant(i, j, k).clone()).collect()
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let n = self.n;
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                let w = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
                if w.is_exact_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    let cij = self.constant(i, j, k);
                    if !cij.is_exact_zero() {
                        *o = &*o + &(&w * cij);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: len });
        }
        Ok(())
    }

    fn check_square(&self, m: &Matrix) -> Result<()> {
        if m.nrows() != self.n || m.ncols() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: m.nrows().max(m.ncols()) });
        }
        Ok(())
    }

    /// Residuals of the cyclic Jacobi sum over `i < j < k` and every
    /// component `l`. Exact algebras must vanish exactly.
    pub fn check_jacobi(&self, tol: f64) -> JacobiReport {
        let n = self.n;
        let mut report = JacobiReport { max_residual: 0.0, ok: true, worst: None };
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in 0..n {
                        let r = self.jacobi_residual(i, j, k, l);
                        let mag = r.abs_f64();
                        if !r.is_zero_tol(tol) {
                            report.ok = false;
                        }
                        if mag > report.max_residual || (report.worst.is_none() && !r.is_exact_zero()) {
                            report.max_residual = mag;
                            report.worst = Some((i, j, k, l));
                        }
                    }
                }
            }
        }
        report
    }

    fn jacobi_residual(&self, i: usize, j: usize, k: usize, l: usize) -> Scalar {
        (0..self.n)
            .map(|m| {
                &(&(self.constant(i, j, m) * self.constant(m, k, l))
                    + &(self.constant(j, k, m) * self.constant(m, i, l)))
                    + &(self.constant(k, i, m) * self.constant(m, j, l))
            })
            .sum()
    }

    /// Fails with the offending triple when the Jacobi identity does not hold.
    pub fn validate_jacobi(&self, tol: f64) -> Result<()> {
        let report = self.check_jacobi(tol);
        if report.ok {
            return Ok(());
        }
        let (i, j, k, l) = report.worst.unwrap_or_default();
        Err(Error::Jacobi { i, j, k, l, residual: self.jacobi_residual(i, j, k, l).to_literal() })
    }

    /// Matrix of `y -> [e_i, y]`.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.n, self.n, |k, j| self.constant(i, j, k).clone())
    }

    pub fn ad(&self, x: &[Scalar]) -> Result<LinearMap> {
        self.check_len(x.len())?;
        let mut m = Matrix::zeros(self.n, self.n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_exact_zero() {
                continue;
            }
            m = &m + &self.ad_basis(i).scale(xi);
        }
        Ok(LinearMap::new(m, MapRole::Endomorphism))
    }

    /// `kappa(e_i, e_j) = tr(ad e_i ad e_j)`.
    pub fn killing_form(&self) -> Matrix {
        let ads: Vec<Matrix> = (0..self.n).map(|i| self.ad_basis(i)).collect();
        let mut k = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in i..self.n {
                let v = (&ads[i] * &ads[j]).trace();
                k[(i, j)] = v.clone();
                k[(j, i)] = v;
            }
        }
        k
    }

    /// Linear system whose kernel is `Der(L)`. Unknown `D[a][b]` sits at
    /// column `a * n + b`; one row per pair `i < j` and component `l`.
    pub fn derivation_equations(&self) -> Matrix {
        let n = self.n;
        let pairs = n * n.saturating_sub(1) / 2;
        let mut sys = Matrix::zeros(pairs * n, n * n);
        let mut row = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                for l in 0..n {
                    for k in 0..n {
                        let v = self.constant(i, j, k);
                        if !v.is_exact_zero() {
                            sys[(row, l * n + k)] = &sys[(row, l * n + k)] + v;
                        }
                    }
                    for a in 0..n {
                        let v = self.constant(a, j, l);
                        if !v.is_exact_zero() {
                            sys[(row, a * n + i)] = &sys[(row, a * n + i)] - v;
                        }
                        let v = self.constant(i, a, l);
                        if !v.is_exact_zero() {
                            sys[(row, a * n + j)] = &sys[(row, a * n + j)] - v;
                        }
                    }
                    row += 1;
                }
            }
        }
        sys
    }

    /// Basis of the derivation algebra.
    pub fn derivation_algebra(&self, tol: f64) -> Vec<LinearMap> {
        let n = self.n;
        let sys = self.derivation_equations();
        let kernel = if sys.nrows() == 0 {
            (0..n * n)
                .map(|c| (0..n * n).map(|r| if r == c { Scalar::one() } else { Scalar::zero() }).collect())
                .collect()
        } else {
            sys.nullspace(tol)
        };
        kernel
            .into_iter()
            .map(|v| LinearMap::new(Matrix::from_fn(n, n, |a, b| v[a * n + b].clone()), MapRole::Derivation))
            .collect()
    }

    /// Largest deviation from the Leibniz rule over basis pairs.
    pub fn leibniz_residual(&self, d: &Matrix) -> f64 {
        let n = self.n;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|i| d.column(i)).collect();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = d.mul_vec(&self.bracket_basis(i, j));
                let a = self.bracket(&cols[i], &unit(n, j)).expect("dims");
                let b = self.bracket(&unit(n, i), &cols[j]).expect("dims");
                for k in 0..n {
                    worst = worst.max((&(&lhs[k] - &a[k]) - &b[k]).abs_f64());
                }
            }
        }
        worst
    }

    /// Span of all brackets `[u, v]` with `u` in `a` and `v` in `b`.
    fn bracket_span(&self, a: &[Vec<Scalar>], b: &[Vec<Scalar>], tol: f64) -> Vec<Vec<Scalar>> {
        let mut gens = Vec::new();
        for u in a {
            for v in b {
                gens.push(self.bracket(u, v).expect("dims"));
            }
        }
        span_basis(&gens, self.n, tol)
    }

    pub fn derived_algebra(&self, tol: f64) -> Vec<Vec<Scalar>> {
        let full = identity_basis(self.n);
        self.bracket_span(&full, &full, tol)
    }

    /// Basis of `{x : [e_i, x] = 0 for all i}`.
    pub fn center(&self, tol: f64) -> Vec<Vec<Scalar>> {
        let n = self.n;
        let sys = Matrix::from_fn(n * n, n, |r, x| {
            let (i, k) = (r / n, r % n);
            self.constant(i, x, k).clone()
        });
        sys.nullspace(tol)
    }

    /// Killing-orthogonal complement of the derived algebra, which is the
    /// solvable radical in characteristic zero.
    pub fn radical(&self, tol: f64) -> Vec<Vec<Scalar>> {
        let n = self.n;
        let derived = self.derived_algebra(tol);
        if derived.is_empty() {
            return identity_basis(n);
        }
        let kappa = self.killing_form();
        let rows: Vec<Vec<Scalar>> = derived.iter().map(|y| kappa.mul_vec(y)).collect();
        Matrix::from_rows(rows).expect("rectangular").nullspace(tol)
    }

    pub fn structural_classify(&self, tol: f64) -> StructureReport {
        let n = self.n;
        let full = identity_basis(n);

        let mut derived_dims = vec![n];
        let mut current = full.clone();
        loop {
            let next = self.bracket_span(&current, &current, tol);
            if next.len() == current.len() {
                break;
            }
            derived_dims.push(next.len());
            current = next;
            if current.is_empty() {
                break;
            }
        }

        let mut lower_dims = vec![n];
        let mut current = full.clone();
        loop {
            let next = self.bracket_span(&full, &current, tol);
            if next.len() == current.len() {
                break;
            }
            lower_dims.push(next.len());
            current = next;
            if current.is_empty() {
                break;
            }
        }

        let solvable = derived_dims.last() == Some(&0) || n == 0;
        let nilpotent = lower_dims.last() == Some(&0) || n == 0;
        let abelian = self.is_abelian(tol);
        let center_dim = self.center(tol).len();
        let radical_dim = self.radical(tol).len();
        StructureReport {
            abelian,
            nilpotent,
            nilpotency_class: nilpotent.then(|| lower_dims.len().saturating_sub(1)),
            solvable,
            semisimple: radical_dim == 0,
            reductive: radical_dim == center_dim,
            derived_series_dims: derived_dims,
            lower_central_dims: lower_dims,
            center_dim,
            radical_dim,
        }
    }

    fn automorphism_defects(&self, a: &Matrix) -> Result<Vec<Scalar>> {
        self.check_square(a)?;
        let n = self.n;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|i| a.column(i)).collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = a.mul_vec(&self.bracket_basis(i, j));
                let rhs = self.bracket(&cols[i], &cols[j])?;
                out.extend(lhs.iter().zip(&rhs).map(|(l, r)| l - r));
            }
        }
        Ok(out)
    }

    /// Largest deviation of `A[x, y] - [Ax, Ay]` over basis pairs.
    pub fn automorphism_residual(&self, a: &Matrix) -> Result<f64> {
        Ok(self.automorphism_defects(a)?.iter().map(Scalar::abs_f64).fold(0.0, f64::max))
    }

    pub fn is_automorphism(&self, a: &Matrix, tol: f64) -> Result<bool> {
        self.check_square(a)?;
        if a.rank(tol) < self.n {
            return Err(Error::Singular);
        }
        Ok(self.automorphism_defects(a)?.iter().all(|d| d.is_zero_tol(tol)))
    }

    /// The natural action `(h . mu)(x, y) = h mu(h^-1 x, h^-1 y)`.
    pub fn act_on_bracket(&self, h: &Matrix, tol: f64) -> Result<LieAlgebra> {
        self.check_square(h)?;
        let hinv = h.inverse(tol)?;
        Ok(self.transport(h, &hinv))
    }

    /// Structure constants in the basis given by the columns of `basis`.
    pub fn change_basis(&self, basis: &Matrix, tol: f64) -> Result<LieAlgebra> {
        self.check_square(basis)?;
        let inv = basis.inverse(tol)?;
        Ok(self.transport(&inv, basis))
    }

    fn transport(&self, h: &Matrix, hinv: &Matrix) -> LieAlgebra {
        let n = self.n;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|i| hinv.column(i)).collect();
        let mut c = vec![Scalar::zero(); n * n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = h.mul_vec(&self.bracket(&cols[i], &cols[j]).expect("dims"));
                for (k, vk) in v.into_iter().enumerate() {
                    c[(i * n + j) * n + k] = vk.clone();
                    c[(j * n + i) * n + k] = -vk;
                }
            }
        }
        LieAlgebra { name: self.name.clone(), labels: self.labels.clone(), n, c }
    }

    /// Direct sum `self + other` with blocks in order.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.n + other.n;
        let mut c = vec![Scalar::zero(); n * n * n];
        for (alg, off) in [(self, 0), (other, self.n)] {
            for i in 0..alg.n {
                for j in 0..alg.n {
                    for k in 0..alg.n {
                        c[((i + off) * n + j + off) * n + k + off] = alg.constant(i, j, k).clone();
                    }
                }
            }
        }
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("{l}_1")).collect();
        labels.extend(other.labels.iter().map(|l| format!("{l}_2")));
        LieAlgebra { name: None, labels, n, c }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Every constant replaced by its binary64 value.
    pub fn to_float(&self) -> LieAlgebra {
        LieAlgebra {
            c: self.c.iter().map(|x| Scalar::Float(x.to_f64())).collect(),
            ..self.clone()
        }
    }

    /// Flat binary64 copy of the full tensor.
    pub fn constants_f64(&self) -> Vec<f64> {
        self.c.iter().map(Scalar::to_f64).collect()
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect()
}

pub fn identity_basis(n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| unit(n, i)).collect()
}

/// Row-reduced basis of the span of `vectors` in an `n`-dimensional space.
pub fn span_basis(vectors: &[Vec<Scalar>], n: usize, tol: f64) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec()).expect("rectangular");
    debug_assert_eq!(m.ncols(), n);
    let (r, pivots) = m.rref(tol);
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

/// Coordinates of `target` in the column span of `basis`.
fn solve_in_span(basis: &Matrix, target: &[Scalar], tol: f64) -> Result<Vec<Scalar>> {
    let k = basis.ncols();
    let aug = Matrix::from_fn(basis.nrows(), k + 1, |r, c| {
        if c < k {
            basis[(r, c)].clone()
        } else {
            target[r].clone()
        }
    });
    let (red, pivots) = aug.rref(tol);
    if pivots.contains(&k) {
        return Err(Error::InvalidArgument("matrices are not closed under the commutator".into()));
    }
    if pivots.len() < k {
        return Err(Error::InvalidArgument("matrices are linearly dependent".into()));
    }
    Ok((0..k).map(|i| red[(i, k)].clone()).collect())
}
