use qpol_core::catalog::{build_simplest, build_sym_series, Printing, SeriesId, Simplest};
use qpol_core::coaction::paper_composites;
use qpol_core::numeric::relation_residual_suite;
use qpol_core::Algebra;

fn phases(id: SeriesId, phi: f64) -> Vec<f64> {
    vec![phi; id.phase_arity()]
}

#[test]
fn catalog_satisfies_every_relation() {
    for q in [0.3, 0.5, 0.8] {
        for id in SeriesId::ALL {
            for phi in [0.0, std::f64::consts::FRAC_PI_3] {
                let r = build_sym_series(id, &phases(id, phi), q, &vec![12; id.tensor_rank()], Printing::Corrected)
                    .unwrap();
                let suite = relation_residual_suite(&r).unwrap();
                assert_eq!(suite.len(), 9);
                for rr in suite {
                    assert!(rr.residual < 1e-12, "{id} q={q} phi={phi}: {rr:?}");
                }
            }
        }
    }
}

#[test]
fn simplest_representations_satisfy_relations() {
    for alg in [Algebra::Sym2, Algebra::Mat2] {
        for kind in [Simplest::F0, Simplest::F1, Simplest::F2] {
            let size = if alg == Algebra::Mat2 && kind == Simplest::F2 { 4 } else { 8 };
            let r = build_simplest(alg, kind, 0.5, size).unwrap();
            for rr in relation_residual_suite(&r).unwrap() {
                assert!(rr.residual < 1e-12, "{alg} {kind}: {rr:?}");
            }
        }
    }
}

#[test]
fn composites_are_representations() {
    for spec in paper_composites(0.5, 8) {
        let r = spec.build().unwrap();
        for rr in relation_residual_suite(&r).unwrap() {
            assert!(rr.residual < 1e-10, "{}: {rr:?}", spec.label());
        }
    }
}
