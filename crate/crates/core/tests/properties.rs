use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qpol_core::algebra::{gram_matrix, is_positive_definite_at, parse_expression, Strategy as Rewrite};
use qpol_core::analysis::equivalent;
use qpol_core::catalog::{build_sym_series, Printing, SeriesId, Simplest, Su2Kind};
use qpol_core::coaction::{torus_twist, CompositeSpec};
use qpol_core::numeric::{evaluate_word, interior_for, relation_residual_suite};
use qpol_core::orbit::{classify_seed, orbit_point, step, Direction, OrbitClass, OrbitPoint};
use qpol_core::{Algebra, LaurentScalar, NCPoly, Presentation, RepInstance, Word};

fn poly_strategy(alg: Algebra, max_len: usize, max_terms: usize) -> impl Strategy<Value = NCPoly> {
    let letters = alg.letters();
    let n = letters.len();
    let term = (
        prop::collection::vec(0..n, 0..=max_len),
        -3i32..=3,
        prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)],
    );
    prop::collection::vec(term, 1..=max_terms).prop_map(move |terms| {
        let mut p = NCPoly::zero(alg);
        for (idx, k, c) in terms {
            let w = Word(idx.into_iter().map(|i| letters[i]).collect());
            p.add_term(w, &LaurentScalar::from_pairs(&[(k, c)]));
        }
        p
    })
}

fn any_algebra() -> impl Strategy<Value = Algebra> {
    prop_oneof![Just(Algebra::Sym2), Just(Algebra::Mat2)]
}

fn nf(p: &NCPoly) -> NCPoly {
    Presentation::get(p.algebra()).normal_form(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rewriting_is_confluent(p in any_algebra().prop_flat_map(|a| poly_strategy(a, 4, 3)), seed in any::<u64>()) {
        let pres = Presentation::get(p.algebra());
        prop_assert_eq!(pres.normal_form_with(&p, Rewrite::Leftmost), pres.normal_form_with(&p, Rewrite::Random(seed)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_forms_are_normal_and_fixed(p in any_algebra().prop_flat_map(|a| poly_strategy(a, 4, 3))) {
        let n = nf(&p);
        prop_assert!(n.terms().all(|(w, _)| w.is_normal()));
        prop_assert_eq!(nf(&n), n);
    }

    #[test]
    fn star_commutes_with_normal_form(p in any_algebra().prop_flat_map(|a| poly_strategy(a, 4, 3))) {
        prop_assert_eq!(nf(&p.star()), nf(&nf(&p).star()));
    }

    #[test]
    fn normal_form_is_multiplicative(
        (a, b) in any_algebra().prop_flat_map(|alg| (poly_strategy(alg, 2, 2), poly_strategy(alg, 2, 2)))
    ) {
        prop_assert_eq!(nf(&(&a * &b)), nf(&(&nf(&a) * &nf(&b))));
    }

    #[test]
    fn print_parse_round_trip(p in any_algebra().prop_flat_map(|a| poly_strategy(a, 4, 4))) {
        let back = parse_expression(&p.to_expr(), p.algebra()).unwrap();
        prop_assert_eq!(back, p);
    }
}

fn sym_model() -> RepInstance {
    build_sym_series(SeriesId::Pi4, &[0.7], 0.5, &[9, 9], Printing::Corrected).unwrap()
}

fn mat_model() -> RepInstance {
    CompositeSpec::new(Algebra::Mat2, Simplest::F1, &[Su2Kind::Pi, Su2Kind::Pi], 0.5, 6).build().unwrap()
}

fn scale_of(p: &NCPoly) -> f64 {
    1.0 + p.terms().map(|(_, c)| c.eval_f64(0.5).abs()).sum::<f64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    // The normal form is the same element of the algebra, so both sides act
    // identically in any representation.
    #[test]
    fn normal_form_is_numerically_sound(p in any_algebra().prop_flat_map(|a| poly_strategy(a, 3, 3))) {
        let rep = if p.algebra() == Algebra::Sym2 { sym_model() } else { mat_model() };
        let n = nf(&p);
        let cols = interior_for(&[&p, &n], &rep);
        prop_assume!(!cols.is_empty());
        let diff = &evaluate_word(&p, &rep).unwrap() - &evaluate_word(&n, &rep).unwrap();
        let r = diff.max_column_norm(&cols);
        prop_assert!(r < 1e-10 * scale_of(&p) * scale_of(&n), "residual {r}");
    }
}

fn point() -> impl Strategy<Value = OrbitPoint> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| OrbitPoint::new(a, b))
}

proptest! {
    #[test]
    fn orbit_maps_commute(p in point(), q in 0.2f64..0.9) {
        let a = step(step(p, 1, Direction::Forward, q), 2, Direction::Forward, q);
        let b = step(step(p, 2, Direction::Forward, q), 1, Direction::Forward, q);
        prop_assert!(a.dist(b) < 1e-12);
    }

    #[test]
    fn orbit_steps_invert(p in point(), q in 0.2f64..0.9, k in 1u8..=2) {
        let back = step(step(p, k, Direction::Forward, q), k, Direction::Inverse, q);
        prop_assert!(back.dist(p) < 1e-9);
    }

    #[test]
    fn closed_form_matches_iteration(p in point(), q in 0.3f64..0.9, m in 0i32..5, n in 0i32..5) {
        let mut it = p;
        for _ in 0..m {
            it = step(it, 1, Direction::Forward, q);
        }
        for _ in 0..n {
            it = step(it, 2, Direction::Forward, q);
        }
        prop_assert!(orbit_point(p, m, n, q).dist(it) < 1e-12);
    }

    // Points strictly between admissible labels are rejected.
    #[test]
    fn off_orbit_points_are_inadmissible(x1 in 0.0f64..1.0, x2 in 0.0f64..1.0) {
        let v = classify_seed(OrbitPoint::new(x1 + 1e-6, x2 + 1e-6), 0.5, 20, 1e-9);
        let hit = classify_seed(OrbitPoint::new(x1, x2), 0.5, 20, 1e-7).class != OrbitClass::Inadmissible;
        prop_assume!(!hit);
        prop_assert_eq!(v.class, OrbitClass::Inadmissible);
    }

    // A torus twist of the third series is a gauge transform of the series
    // at the shifted phase.
    #[test]
    fn twist_moves_the_third_series_phase(phi in 0.0f64..6.28, a1 in 0.0f64..6.28, a2 in 0.0f64..6.28) {
        let q = 0.5;
        let twisted = torus_twist(&build_sym_series(SeriesId::Pi3, &[phi], q, &[10], Printing::Corrected).unwrap(), &[a1, a2]).unwrap();
        let target = build_sym_series(SeriesId::Pi3, &[phi + a1 + a2], q, &[10], Printing::Corrected).unwrap();
        let gauged = target.gauge(|idx| 2.0 * a2 * idx[0] as f64).unwrap();
        for ((_, x), (_, y)) in twisted.generators().zip(gauged.generators()) {
            prop_assert!(x.max_abs_diff(y) < 1e-12);
        }
    }
}

#[test]
fn twisted_third_series_is_equivalent_to_shifted_phase() {
    let q = 0.5;
    let twisted =
        torus_twist(&build_sym_series(SeriesId::Pi3, &[0.3], q, &[10], Printing::Corrected).unwrap(), &[0.4, 0.9]).unwrap();
    let target = build_sym_series(SeriesId::Pi3, &[1.6], q, &[10], Printing::Corrected).unwrap();
    assert!(equivalent(&twisted, &target, 1e-8).unwrap().equivalent);
}

#[test]
fn gram_matrices_are_positive_definite() {
    for (p, r) in [(1, 4), (1, 2), (3, 4)] {
        let q = BigRational::new(BigInt::from(p), BigInt::from(r));
        let gram = gram_matrix(Algebra::Sym2, 3);
        assert!(is_positive_definite_at(&gram, &q), "q = {p}/{r}");
    }
}

#[test]
fn declared_bands_are_honest() {
    for id in SeriesId::ALL {
        let r = build_sym_series(id, &vec![0.4; id.phase_arity()], 0.5, &vec![7; id.tensor_rank()], Printing::Corrected)
            .unwrap();
        for (g, op) in r.generators() {
            assert!(op.band_is_honest(), "{id} {g}");
            assert!(r.op(g.star()).band_is_honest(), "{id} {g}*");
        }
    }
}

#[test]
fn residuals_are_stable_in_the_truncation() {
    for dim in [8, 12, 16] {
        for id in [SeriesId::Pi3, SeriesId::Pi4] {
            let r = build_sym_series(id, &[1.0], 0.5, &vec![dim; id.tensor_rank()], Printing::Corrected).unwrap();
            for rr in relation_residual_suite(&r).unwrap() {
                assert!(rr.residual < 1e-12, "{id} at {dim}: {rr:?}");
            }
        }
    }
}
