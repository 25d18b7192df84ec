use wickrot::cartan::{self, conjugate_lie_cartan, conjugate_metric_cartan, wick_rotate};
use wickrot::format::{parse_algebra, AlgebraDocument};
use wickrot::minvec::{find_lie_cartan, minimal_vector_flow, BracketSpace, FlowConfig, FlowStatus, SearchBudget};
use wickrot::{catalog, Matrix, Metric};

#[test]
fn found_involution_rotates_to_a_riemannian_document() {
    let (h, g) = catalog::entry("heis3_lorentz").unwrap();
    let theta = find_lie_cartan(&h, &g, SearchBudget::default(), 0, 1e-9).unwrap().best.unwrap();
    let w = wick_rotate(&h, &g, &theta.map, 1e-9).unwrap();
    let parent = AlgebraDocument::from_parts(&h, &g, "heis3_lorentz");
    let doc = AlgebraDocument::from_parts(&w.algebra, &w.metric, "rot").with_provenance(
        parent.hash(),
        &theta.map,
        &w.basis_map,
    );
    let (a, m, back) = parse_algebra(&doc.to_json(), true, 1e-9).unwrap();
    assert_eq!(m.signature(), (3, 0));
    assert_eq!(a.constants(), w.algebra.constants());
    assert_eq!(back.provenance.unwrap().parent_hash, parent.hash());
}

#[test]
fn timelike_center_is_minimal_without_certificate() {
    let (h, g) = catalog::entry("heis3_timelike").unwrap();
    let space = BracketSpace::new(&g, None, 1e-9).unwrap();
    let r = minimal_vector_flow(&h, &g, &space, &FlowConfig::default()).unwrap();
    assert_eq!(r.status, FlowStatus::MinimalVectorFound);
    assert!(r.theta.is_none());
    assert!(find_lie_cartan(&h, &g, SearchBudget::default(), 0, 1e-9).unwrap().best.is_none());
}

#[test]
fn null_center_orbit_collapses() {
    let (h, g) = catalog::entry("heis3_null").unwrap();
    let space = BracketSpace::new(&g, None, 1e-9).unwrap();
    let r = minimal_vector_flow(&h, &g, &space, &FlowConfig::default()).unwrap();
    assert_eq!(r.status, FlowStatus::NoCertificate);
    assert!(r.final_norm < 1e-9 * r.initial_norm);
    assert!(r.is_monotone());
}

#[test]
fn two_certificates_on_sl2r_are_conjugate() {
    let (sl, g) = catalog::entry("sl2r_minusk").unwrap();
    let t1 = catalog::sl2r_cartan();
    let x = sl.ad_basis(0).to_dmatrix() * 0.7;
    let phi = Matrix::from_dmatrix(&wickrot::linalg::expm(&x));
    let t2 = &(&phi * &t1) * &phi.inverse(1e-12).unwrap();
    assert!(cartan::is_lie_cartan(&sl, &g, &t2, 1e-9).is_lie_cartan());

    let metric_only = conjugate_metric_cartan(&g, &t1, &t2, 1e-9).unwrap();
    assert!(cartan::conjugation_residual(&metric_only.matrix, &t1, &t2) < 1e-9);
    assert!(g.isometry_residual(&metric_only.matrix) < 1e-9);

    let c = conjugate_lie_cartan(&sl, &g, &t1, &t2, Default::default(), 0, 1e-9).unwrap().unwrap();
    assert!(c.conjugation_residual < 1e-9);
    assert!(c.automorphism_residual < 1e-9);
    assert!(c.isometry_residual < 1e-9);

    let w1 = wick_rotate(&sl, &g, &t1, 1e-9).unwrap();
    let w2 = wick_rotate(&sl, &g, &t2, 1e-9).unwrap();
    for w in [&w1, &w2] {
        assert!(w.metric.is_riemannian());
        assert_eq!(wickrot::metric::signature(&w.algebra.killing_form(), 1e-9).unwrap(), (0, 3));
    }
}

#[test]
fn direct_sum_of_riemannian_pieces_certifies() {
    let h = catalog::heisenberg().direct_sum(&wickrot::LieAlgebra::abelian(1));
    let g = Metric::diag(&[1, 1, 1, 1]);
    let r = find_lie_cartan(&h, &g, SearchBudget { starts: 4, iterations: 500 }, 0, 1e-9).unwrap();
    assert_eq!(r.best.unwrap().map, Matrix::identity(4));
}
