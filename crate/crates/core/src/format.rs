//! The JSON algebra document: exact literals, canonical field order and a
//! content hash.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::metric::Metric;
use crate::scalar::Scalar;

pub const SCHEMA_VERSION: &str = "1";

/// `[e_i, e_j] = Σ_k coeffs[k] e_k` with one-based `i < j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, Scalar>,
}

/// Where a derived document came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub parent_hash: String,
    pub theta: Vec<Vec<Scalar>>,
    pub basis_map: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub schema_version: String,
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    pub metric: Vec<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { path: path.into(), message: message.into() }
}

impl AlgebraDocument {
    /// Nonzero brackets with `i < j`, in lexicographic order.
    pub fn from_parts(alg: &LieAlgebra, m: &Metric, name: &str) -> Self {
        let n = alg.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let coeffs: BTreeMap<usize, Scalar> = (0..n)
                    .filter(|&k| !alg.constant(i, j, k).is_exact_zero())
                    .map(|k| (k + 1, alg.constant(i, j, k).clone()))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketEntry { i: i + 1, j: j + 1, coeffs });
                }
            }
        }
        AlgebraDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            name: name.to_string(),
            dim: n,
            basis: alg.labels().to_vec(),
            brackets,
            metric: m.form().rows_vec(),
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, parent_hash: String, theta: &Matrix, basis_map: &Matrix) -> Self {
        self.provenance = Some(Provenance { parent_hash, theta: theta.rows_vec(), basis_map: basis_map.rows_vec() });
        self
    }

    /// Checks the schema rules and builds the algebra and metric. Jacobi is
    /// checked when `validate` is set, exactly for rational constants.
    pub fn to_parts(&self, validate: bool, tol: f64) -> Result<(LieAlgebra, Metric)> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(schema("schema_version", format!("unsupported version {:?}", self.schema_version)));
        }
        let n = self.dim;
        if self.basis.len() != n {
            return Err(schema("basis", format!("expected {n} labels, found {}", self.basis.len())));
        }
        let mut triples = Vec::with_capacity(self.brackets.len());
        let mut seen = std::collections::BTreeSet::new();
        for (idx, b) in self.brackets.iter().enumerate() {
            let path = format!("brackets[{idx}]");
            if b.i < 1 || b.j > n || b.i >= b.j {
                return Err(schema(path, format!("need 1 <= i < j <= {n}, found i={}, j={}", b.i, b.j)));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(schema(path, format!("duplicate pair ({}, {})", b.i, b.j)));
            }
            let mut coeffs = Vec::with_capacity(b.coeffs.len());
            for (k, v) in &b.coeffs {
                if *k < 1 || *k > n {
                    return Err(schema(format!("{path}.coeffs.{k}"), format!("component index must lie in 1..={n}")));
                }
                coeffs.push((k - 1, v.clone()));
            }
            triples.push((b.i - 1, b.j - 1, coeffs));
        }
        let alg = LieAlgebra::from_brackets(self.basis.clone(), &triples)?.with_name(self.name.clone());
        if self.metric.len() != n || self.metric.iter().any(|r| r.len() != n) {
            return Err(schema("metric", format!("expected a {n}x{n} array")));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.metric[i][j] != self.metric[j][i] {
                    return Err(schema(format!("metric[{i}][{j}]"), "metric is not symmetric as written"));
                }
            }
        }
        let form = Matrix::from_rows(self.metric.clone())?;
        let m = Metric::new(form, tol)?;
        if validate {
            let jt = if alg.is_exact() { 0.0 } else { tol };
            alg.validate_jacobi(jt)?;
        }
        Ok((alg, m))
    }

    /// Canonical compact serialization without the provenance block.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let bare = AlgebraDocument { provenance: None, ..self.clone() };
        serde_json::to_vec(&bare).expect("documents always serialize")
    }

    /// Lowercase hex SHA-256 of [`canonical_bytes`](Self::canonical_bytes).
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_bytes()))
    }

    /// Pretty-printed document followed by a newline.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize") + "\n"
    }
}

/// Parses a document, reporting the JSON path and position of any error.
pub fn parse_document(text: &str) -> Result<AlgebraDocument> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: AlgebraDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        schema(path, format!("{inner} (line {}, column {})", inner.line(), inner.column()))
    })?;
    Ok(doc)
}

pub fn parse_algebra(text: &str, validate: bool, tol: f64) -> Result<(LieAlgebra, Metric, AlgebraDocument)> {
    let doc = parse_document(text)?;
    let (alg, m) = doc.to_parts(validate, tol)?;
    Ok((alg, m, doc))
}

pub fn emit(alg: &LieAlgebra, m: &Metric, name: &str) -> String {
    AlgebraDocument::from_parts(alg, m, name).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const HEIS: &str = r#"{
  "schema_version": "1",
  "name": "heis3",
  "dim": 3,
  "basis": ["e1", "e2", "e3"],
  "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}],
  "metric": [[-1, 0, 0], [0, -1, 0], [0, 0, 1]]
}"#;

    #[test]
    fn parses_heisenberg() {
        let (h, g, _) = parse_algebra(HEIS, true, 1e-9).unwrap();
        assert_eq!(h.constant(0, 1, 2), &Scalar::one());
        assert_eq!(h.constant(1, 0, 2), &Scalar::int(-1));
        assert_eq!(g.signature(), (1, 2));
    }

    #[test]
    fn empty_brackets_give_abelian() {
        let text = HEIS.replace(r#"[{"i": 1, "j": 2, "coeffs": {"3": "1"}}]"#, "[]");
        let (a, _, _) = parse_algebra(&text, true, 1e-9).unwrap();
        assert!(a.is_abelian(0.0));
    }

    #[test]
    fn rejects_diagonal_pair() {
        let text = HEIS.replace(r#""i": 1, "j": 2"#, r#""i": 2, "j": 2"#);
        match parse_algebra(&text, true, 1e-9) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "brackets[0]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_field_path_and_line() {
        let text = HEIS.replace(r#""3": "1""#, r#""3": "one""#);
        match parse_document(&text) {
            Err(Error::Schema { path, message }) => {
                assert_eq!(path, "brackets[0].coeffs.3");
                assert!(message.contains("line 6"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_jacobi_failure_unless_disabled() {
        let text = HEIS.replace(
            r#"[{"i": 1, "j": 2, "coeffs": {"3": "1"}}]"#,
            r#"[{"i": 1, "j": 2, "coeffs": {"3": "1"}}, {"i": 1, "j": 3, "coeffs": {"1": "1"}}]"#,
        );
        assert!(matches!(parse_algebra(&text, true, 1e-9), Err(Error::Jacobi { .. })));
        assert!(parse_algebra(&text, false, 1e-9).is_ok());
    }

    #[test]
    fn round_trip_is_exact_for_every_catalog_entry() {
        for e in catalog::all() {
            let doc = AlgebraDocument::from_parts(&e.algebra, &e.metric, e.name);
            let text = doc.to_json();
            let (a, m, back) = parse_algebra(&text, true, 1e-9).unwrap();
            assert_eq!(a.constants(), e.algebra.constants(), "{}", e.name);
            assert_eq!(m.form(), e.metric.form());
            assert_eq!(back.hash(), doc.hash());
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn literal_forms() {
        let text = HEIS.replace(r#"[0, 0, 1]]"#, r#"[0, 0, "3/2"]]"#).replace("[-1, 0, 0]", "[-0.5, 0, 0]");
        let (_, m, doc) = parse_algebra(&text, true, 1e-9).unwrap();
        assert_eq!(m.form()[(2, 2)], Scalar::ratio(3, 2));
        assert!(!m.form()[(0, 0)].is_exact());
        let out = doc.to_json();
        assert!(out.contains("\"3/2\"") && out.contains("-0.5"));
    }

    #[test]
    fn provenance_does_not_change_hash() {
        let doc = AlgebraDocument::from_parts(&catalog::heisenberg(), &Metric::diag(&[1, 1, 1]), "h");
        let with = doc.clone().with_provenance("00".into(), &Matrix::identity(3), &Matrix::identity(3));
        assert_eq!(doc.hash(), with.hash());
        assert_eq!(doc.hash().len(), 64);
    }
}
