//! One PASS/FAIL line per acceptance criterion. A criterion whose literal
//! statement does not hold is printed as FAIL with the reason, and the
//! test pins that outcome so a change in either direction is noticed.

use std::f64::consts::PI;
use std::process::Command;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qpol_core::algebra::{gram_matrix, is_positive_definite_at, pair_transport_identities, parse_expression};
use qpol_core::analysis::{
    composite_claims, fock_crosscheck, mat2_case7, pi3_diagonal_part, pi4_block_oscillator, pi4_transport, Verdict,
};
use qpol_core::catalog::build_sym_series;
use qpol_core::coaction::paper_composites;
use qpol_core::numeric::{diagonal_family, joint_decomposition, relation_residual_suite, SpectralOptions};
use qpol_core::orbit::{candidates, classify_seed, match_spectrum, OrbitClass, OrbitPoint};
use qpol_core::{Algebra, Presentation, Printing, RepInstance, SeriesId};

struct Outcome {
    passed: bool,
    detail: String,
}

fn line(n: usize, title: &str, o: &Outcome) {
    let mark = if o.passed { "PASS" } else { "FAIL" };
    println!("{mark} criterion {n}: {title}: {}", o.detail);
}

fn series(id: SeriesId, phases: &[f64], q: f64, dim: usize, printing: Printing) -> RepInstance {
    build_sym_series(id, phases, q, &vec![dim; id.tensor_rank()], printing).unwrap()
}

fn worst(rep: &RepInstance) -> f64 {
    relation_residual_suite(rep).unwrap().iter().map(|r| r.residual).fold(0.0, f64::max)
}

fn relation_conformance() -> Outcome {
    let mut max: f64 = 0.0;
    let mut count = 0;
    let mut relations = 0;
    for q in [0.3, 0.5, 0.8] {
        for phi in [0.0, PI / 3.0] {
            for (id, phases) in [
                (SeriesId::Pi1, vec![phi, phi]),
                (SeriesId::Pi2, vec![phi]),
                (SeriesId::Pi3, vec![phi]),
                (SeriesId::Pi4, vec![phi]),
                (SeriesId::Pi5, vec![]),
            ] {
                let rep = series(id, &phases, q, 12, Printing::Corrected);
                relations = relation_residual_suite(&rep).unwrap().len();
                max = max.max(worst(&rep));
                count += 1;
            }
        }
    }
    Outcome {
        passed: max < 1e-12 && relations == 9,
        detail: format!("{count} builds, all {relations} relations, worst residual {max:.2e}"),
    }
}

fn typo_detection() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for q in [0.3f64, 0.5, 0.8] {
        let rep = series(SeriesId::Pi1, &[0.4, 1.1], q, 1, Printing::AsPrinted);
        let r = relation_residual_suite(&rep).unwrap();
        let hit = r.iter().find(|x| x.relation == "z11* z11").unwrap().residual;
        let expected = (1.0 / q - q).powi(2) * (1.0 + q * q);
        ok &= (hit - expected).abs() < 1e-12;
        ok &= r.iter().filter(|x| x.relation != "z11* z11").all(|x| x.residual < 1e-12);
        parts.push(format!("q={q}: {hit}"));
    }
    let pi3 = series(SeriesId::Pi3, &[PI / 3.0], 0.5, 12, Printing::AsPrinted);
    let comm = relation_residual_suite(&pi3).unwrap().into_iter().find(|x| x.relation == "z11 z22").unwrap().residual;
    ok &= comm > 1e-3;
    parts.push(format!("pi3 as printed at pi/3, z11 z22 commutator residual {comm:.3}"));
    Outcome {
        passed: ok,
        detail: format!(
            "pi1 as printed fails z11* z11 by (1/q - q)^2 (1 + q^2) [{}] (2.8125 at q = 0.5; 3.8125 is an arithmetic slip); {}",
            parts[..3].join(", "),
            parts[3]
        ),
    }
}

fn symbolic_oracle() -> (Outcome, bool) {
    let ids = pair_transport_identities();
    let holding = ids.iter().filter(|t| t.holds).count();
    let pattern = ids.iter().all(|t| t.holds == !t.lhs.ends_with("z11"));
    let pres = Presentation::get(Algebra::Sym2);
    let p = |s: &str| parse_expression(s, Algebra::Sym2).unwrap();
    let commutator = pres.normal_form(&p("z21 z21* z11 - z11 z21 z21*"));
    let coefficient = pres.check_identity(&commutator, &p("q (q^2 - q^-2) z21^2 z22*"));
    let second = pres.check_identity(&p("z22 z22* z11 - z11 z22 z22*"), &p("-q (q^2 - q^-2) z21^2 z22*"));
    let detail = format!(
        "{holding} of 6 transport identities hold (z21, z22 against both x1 and x2); the two with z11 are false, \
         their defect being the commutator terms; z11 commutator = {} (coefficient q(q^2 - q^-2): {coefficient}, \
         x2 companion: {second})",
        commutator.to_expr()
    );
    (Outcome { passed: holding == 6 && coefficient && second, detail }, pattern && coefficient && second)
}

fn fock_crosscheck_criterion() -> Outcome {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let gram = (1..=3).all(|d| is_positive_definite_at(&gram_matrix(Algebra::Sym2, d), &half));
    let q: f64 = 0.5;
    let cmp = fock_crosscheck(q, 4).unwrap();
    let dist = cmp.distance.unwrap_or(f64::INFINITY);
    let norms = cmp.vacuum_norms.iter().all(|(g, n)| {
        let expected = if g == "z21" { (1.0 - q * q).sqrt() } else { (1.0 - q.powi(4)).sqrt() };
        (n - expected).abs() < 1e-12
    });
    Outcome {
        passed: gram && dist < 1e-12 && norms,
        detail: format!(
            "Gram to degree 3 positive definite at 1/2: {gram}; compressions to depth {} differ by {dist:.2e}; vacuum norms {:?}",
            cmp.depth, cmp.vacuum_norms
        ),
    }
}

fn coaction_homomorphism() -> Outcome {
    let mut max: f64 = 0.0;
    let specs = paper_composites(0.5, 8);
    for s in &specs {
        max = max.max(worst(&s.build().unwrap()));
    }
    Outcome { passed: max < 1e-10, detail: format!("{} composites, worst residual {max:.2e}", specs.len()) }
}

fn reducibility_claims() -> Outcome {
    let claims = composite_claims(0.5, 8).unwrap();
    let get = |id: &str| claims.iter().find(|c| c.id == id).unwrap();
    let wanted = ["sym-2", "sym-4-series", "sym-1", "sym-5", "mat-7"];
    let ok = wanted.iter().all(|id| get(id).verdict == Verdict::Confirmed);
    let case7 = mat2_case7(0.5, &[8, 16]).unwrap();
    let grows = case7.kernel_dims.windows(2).all(|w| w[1].1 > w[0].1);
    let passed = ok && case7.adjoint_identity < 1e-12 && grows;
    let detail = format!(
        "{}; case 7 adjoint identity {:.1e}, kernel dims {:?}; the two third-series pieces of (F0 x pi) are the \
         z21 eigenvectors at phases -pi/2 and pi/2 in ker z22*, not the parity classes ({})",
        wanted.map(|id| format!("{id} {:?}", get(id).verdict)).join(", "),
        case7.adjoint_identity,
        case7.kernel_dims,
        get("sym-5").evidence
    );
    Outcome { passed, detail }
}

fn orbit_classification() -> Outcome {
    let q = 0.5;
    let seeds = [
        (OrbitPoint::new(0.0, 0.0), OrbitClass::Omega00),
        (OrbitPoint::new(1.0, 0.0), OrbitClass::Omega10),
        (OrbitPoint::new(0.0, 1.0), OrbitClass::Omega01),
    ];
    let named = seeds.iter().all(|(p, c)| classify_seed(*p, q, 20, 1e-9).class == *c);
    let table = candidates(q, 20);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut tried = 0;
    let mut wrong = 0;
    while tried < 100 {
        let p = OrbitPoint::new(rng.random::<f64>(), rng.random::<f64>());
        if table.iter().any(|(_, c, _)| c.dist(p) < 1e-6) {
            continue;
        }
        tried += 1;
        wrong += usize::from(classify_seed(p, q, 20, 1e-9).class != OrbitClass::Inadmissible);
    }
    let predicted = [
        (SeriesId::Pi1, OrbitClass::Omega01),
        (SeriesId::Pi2, OrbitClass::Omega01),
        (SeriesId::Pi3, OrbitClass::Omega10),
        (SeriesId::Pi4, OrbitClass::Omega00),
        (SeriesId::Pi5, OrbitClass::Omega00),
    ];
    let mut matched = 0;
    for (id, want) in predicted {
        let rep = series(id, &vec![0.7; id.phase_arity()], q, 10, Printing::Corrected);
        let fam = diagonal_family(&rep);
        let ops: Vec<_> = fam.iter().map(|f| &f.1).collect();
        let dec = joint_decomposition(&ops, &SpectralOptions::default()).unwrap();
        let pts: Vec<_> =
            dec.spaces.iter().map(|s| (OrbitPoint::new(s.values[0], s.values[1]), s.multiplicity())).collect();
        matched += usize::from(match_spectrum(&pts, q, 20, 1e-9).unwrap().0 == want);
    }
    Outcome {
        passed: named && wrong == 0 && matched == 5,
        detail: format!(
            "named seeds correct: {named}; {wrong} of 100 off-orbit seeds misclassified; {matched} of 5 series in their class"
        ),
    }
}

fn analysis_invariants() -> Outcome {
    let pi3 = series(SeriesId::Pi3, &[0.7], 0.5, 12, Printing::Corrected);
    let pi4 = series(SeriesId::Pi4, &[0.7], 0.5, 12, Printing::Corrected);
    let checks = [pi4_transport(&pi4).unwrap(), pi3_diagonal_part(&pi3).unwrap(), pi4_block_oscillator(&pi4).unwrap()];
    let passed = checks.iter().all(|c| c.passed && c.residual < 1e-10);
    let detail = checks.iter().map(|c| format!("{} {:.1e} over {}", c.name, c.residual, c.tested)).collect::<Vec<_>>();
    Outcome { passed, detail: detail.join("; ") }
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qpol");
    let once = || {
        Command::new(bin)
            .args(["analyze", "--full", "--q", "0.5", "--trunc", "8", "--format", "json"])
            .output()
            .unwrap()
            .stdout
    };
    let (a, b) = (once(), once());
    let parsed = serde_json::from_slice::<serde_json::Value>(&a).is_ok();
    Outcome {
        passed: parsed && a == b,
        detail: format!("two full-suite reports of {} bytes, identical: {}", a.len(), a == b),
    }
}

#[test]
fn acceptance() {
    let (c3, c3_expected) = symbolic_oracle();
    let results = [
        ("relation conformance", relation_conformance(), true),
        ("typo detection", typo_detection(), true),
        ("symbolic oracle", c3, false),
        ("Fock cross-check", fock_crosscheck_criterion(), true),
        ("coaction homomorphism", coaction_homomorphism(), true),
        ("reducibility claims", reducibility_claims(), true),
        ("orbit classification", orbit_classification(), true),
        ("analysis invariants", analysis_invariants(), true),
        ("determinism", determinism(), true),
    ];
    for (i, (title, o, _)) in results.iter().enumerate() {
        line(i + 1, title, o);
    }
    assert!(c3_expected, "transport identities changed: {}", results[2].1.detail);
    for (i, (title, o, expected)) in results.iter().enumerate() {
        assert_eq!(o.passed, *expected, "criterion {} ({title}) changed: {}", i + 1, o.detail);
    }
}
