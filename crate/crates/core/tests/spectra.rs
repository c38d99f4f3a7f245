use qpol_core::analysis::{
    omega01_oscillator, pi3_diagonal_part, pi3_offdiagonal_formula, pi4_block_oscillator, pi4_transport,
};
use qpol_core::catalog::{build_sym_series, Printing, SeriesId};
use qpol_core::numeric::{commutant_dimension, diagonal_family, joint_decomposition, joint_spectrum, SpectralOptions};
use qpol_core::orbit::{match_spectrum, OrbitClass, OrbitPoint};
use qpol_core::RepInstance;

fn series(id: SeriesId, dim: usize) -> RepInstance {
    build_sym_series(id, &vec![0.9; id.phase_arity()], 0.5, &vec![dim; id.tensor_rank()], Printing::Corrected).unwrap()
}

fn class_of(rep: &RepInstance) -> OrbitClass {
    let fam = diagonal_family(rep);
    let ops: Vec<_> = fam.iter().map(|f| &f.1).collect();
    let dec = joint_decomposition(&ops, &SpectralOptions::default()).unwrap();
    let pts: Vec<_> = dec.spaces.iter().map(|s| (OrbitPoint::new(s.values[0], s.values[1]), s.multiplicity())).collect();
    match_spectrum(&pts, rep.q(), 20, 1e-9).unwrap().0
}

#[test]
fn each_series_lands_in_its_class() {
    let expected = [
        (SeriesId::Pi1, OrbitClass::Omega01),
        (SeriesId::Pi2, OrbitClass::Omega01),
        (SeriesId::Pi3, OrbitClass::Omega10),
        (SeriesId::Pi4, OrbitClass::Omega00),
        (SeriesId::Pi5, OrbitClass::Omega00),
    ];
    for (id, class) in expected {
        assert_eq!(class_of(&series(id, 8)), class, "{id}");
    }
}

#[test]
fn third_series_spectrum_is_the_fixed_point_family() {
    let q: f64 = 0.5;
    let r = series(SeriesId::Pi3, 16);
    let fam = diagonal_family(&r);
    let pts = joint_spectrum(&fam[0].1, &fam[1].1, 1e-9).unwrap();
    assert!(!pts.is_empty());
    // Labels deeper than the clustering tolerance merge; check the rest.
    for p in pts.iter().filter(|p| p.values[0] > 1e-7) {
        assert_eq!(p.multiplicity, 1);
        let (x1, x2) = (p.values[0], p.values[1]);
        let n = ((1.0 - x2).ln() / q.powi(4).ln()).round() as i32;
        assert!((x1 - q.powi(4 * n)).abs() < 1e-12, "{x1} {x2}");
        assert!((x2 - 1.0 + q.powi(4 * n)).abs() < 1e-12);
    }
}

#[test]
fn commutant_detects_multiplicity() {
    let pi3 = series(SeriesId::Pi3, 16);
    assert_eq!(commutant_dimension(&pi3, 1e-9).unwrap().dimension, 1);
    let pi1 = series(SeriesId::Pi1, 1);
    let double = RepInstance::direct_sum(&pi1, &pi1).unwrap();
    assert_eq!(commutant_dimension(&double, 1e-9).unwrap().dimension, 4);
}

#[test]
fn eigenspace_identities_hold_at_truncation_twelve() {
    let pi3 = series(SeriesId::Pi3, 12);
    let pi4 = series(SeriesId::Pi4, 12);
    for c in [
        pi3_diagonal_part(&pi3).unwrap(),
        pi3_offdiagonal_formula(&pi3).unwrap(),
        pi4_transport(&pi4).unwrap(),
        pi4_block_oscillator(&pi4).unwrap(),
        omega01_oscillator(&series(SeriesId::Pi1, 1)).unwrap(),
        omega01_oscillator(&series(SeriesId::Pi2, 12)).unwrap(),
    ] {
        assert!(c.passed, "{c:?}");
    }
}
