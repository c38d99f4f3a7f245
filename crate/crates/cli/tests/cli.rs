use std::process::Command;

use qpol_cli::report::RunReport;
use qpol_cli::run;

fn qpol(args: &[&str]) -> qpol_cli::Outcome {
    run(std::iter::once("qpol").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, RunReport) {
    let mut v: Vec<&str> = args.to_vec();
    v.extend(["--format", "json"]);
    let out = qpol(&v);
    let report = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stderr));
    (out.code, report)
}

#[test]
fn verify_fifth_series() {
    let (code, r) = json(&["verify", "--algebra", "sym", "--rep", "pi5", "--q", "0.5", "--trunc", "12"]);
    assert_eq!(code, 0);
    assert_eq!(r.schema, 1);
    assert_eq!(r.residuals.len(), 9);
    assert!(r.residuals.iter().all(|l| l.residual < 1e-12));
}

#[test]
fn lemma_identity_is_exact() {
    let out = qpol(&["identity", "--algebra", "sym", "z21 z21* z11 - z11 z21 z21*", "q (q^2-q^-2) z21^2 z22*"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "exact-true");
}

#[test]
fn wrong_identity_fails_with_its_name() {
    let out = qpol(&["identity", "z11 z21", "q^3 z21 z11", "--format", "json"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("z11 z21 = q^3 z21 z11"), "{}", out.stderr);
}

#[test]
fn identity_at_an_exact_q() {
    // q^2 - 1/4 vanishes at q = 1/2 only.
    assert_eq!(qpol(&["identity", "q^2", "1/4", "--q-exact", "1/2"]).code, 0);
    assert_eq!(qpol(&["identity", "q^2", "1/4", "--q-exact", "1/3"]).code, 1);
    assert_eq!(qpol(&["identity", "q^2", "1/4"]).code, 1);
}

#[test]
fn orbit_classifies_the_scalar_seed() {
    let out = qpol(&["orbit", "--x1", "0", "--x2", "1", "--classify"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "Omega01");
}

#[test]
fn orbit_expectation_and_steps() {
    assert_eq!(qpol(&["orbit", "--x1", "1", "--x2", "0", "--classify", "--expect", "Omega10"]).code, 0);
    assert_eq!(qpol(&["orbit", "--x1", "0.3", "--x2", "0.3", "--classify", "--expect", "Omega00"]).code, 1);
    let (_, r) = json(&["orbit", "--x1", "0", "--x2", "0", "--steps", "1,1"]);
    assert_eq!(r.values[0].value, "(0.046875, 0.9375)");
}

#[test]
fn sweep_is_seeded() {
    let a = qpol(&["orbit", "--sweep", "20", "--format", "csv"]).stdout;
    let b = qpol(&["orbit", "--sweep", "20", "--format", "csv"]).stdout;
    let c = qpol(&["orbit", "--sweep", "20", "--seed", "7", "--format", "csv"]).stdout;
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(a.lines().filter(|l| l.starts_with("orbit,")).count(), 20);
}

#[test]
fn as_printed_scalar_series_names_the_relation() {
    let out = qpol(&["verify", "--rep", "pi1", "--printing", "as-printed", "--format", "json"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("`z11* z11`"), "{}", out.stderr);
}

#[test]
fn flag_errors_exit_two() {
    for args in [
        vec!["verify", "--rep", "pi9"],
        vec!["verify", "--rep", "pi3", "--phases", "1,2"],
        vec!["verify", "--rep", "pi3", "--q", "1.5"],
        vec!["verify", "--rep", "pi3", "--algebra", "mat2"],
        vec!["normal-form", "z33"],
        vec!["identity", "--q-exact", "half", "z11", "z11"],
        vec!["orbit", "--x1", "0"],
        vec!["nonsense"],
    ] {
        assert_eq!(qpol(&args).code, 2, "{args:?}");
    }
}

#[test]
fn normal_form_of_the_commutator() {
    let out = qpol(&["normal-form", "z11 z22"]);
    assert_eq!(out.stdout.trim(), "z22 z11 + (q^3 - q^-1) z21^2");
}

#[test]
fn fock_gram_and_norms() {
    let (code, r) = json(&["fock", "--q-exact", "1/2"]);
    assert_eq!(code, 0);
    assert_eq!(r.checks.len(), 7);
}

#[test]
fn compose_matrix_list() {
    let (code, r) = json(&["compose", "--algebra", "mat2", "--trunc", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r.residuals.len(), 12 * 16);
}

#[test]
fn compose_one_with_fingerprint() {
    let (code, r) = json(&["compose", "--rep", "F2:eps", "--trunc", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r.fingerprints.len(), 1);
}

#[test]
fn spectrum_class_of_the_third_series() {
    let (_, r) = json(&["spectrum", "--rep", "pi3", "--phases", "0.4", "--trunc", "10"]);
    assert_eq!(r.spectra[0].class.map(|c| c.to_string()).as_deref(), Some("Omega10"));
}

#[test]
fn analyze_equivalence() {
    let (code, r) = json(&["analyze", "--rep", "F1:eps", "--against", "pi2", "--against-phases", "0"]);
    assert_eq!(code, 0);
    assert!(r.equivalences[0].report.equivalent);
    assert_eq!(r.commutants[0].commutant.as_ref().unwrap().dimension, 1);
    let (code, _) = json(&["analyze", "--rep", "pi3", "--phases", "0", "--against", "pi3", "--against-phases", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn analyze_series_checks() {
    let (code, r) = json(&["analyze", "--rep", "pi4", "--phases", "0.3", "--trunc", "10", "--checks"]);
    assert_eq!(code, 0);
    assert_eq!(r.checks.len(), 2);
}

#[test]
fn export_round_trip_both_encodings() {
    for enc in ["json", "text"] {
        let (code, r) = json(&["export", "--rep", "pi4", "--phases", "0.2", "--generator", "z11*", "--encoding", enc]);
        assert_eq!(code, 0);
        assert!(r.exports[0].round_trip_exact);
    }
    let dir = std::env::temp_dir().join(format!("qpol-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z11.txt");
    let out = qpol(&["export", "--rep", "f1", "--generator", "z11", "--encoding", "text", "--to", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().count() == 4));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn report_to_file() {
    let path = std::env::temp_dir().join(format!("qpol-report-{}.json", std::process::id()));
    let out = qpol(&["normal-form", "z21* z21", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let r: RunReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.command[0], "normal-form");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn timing_is_opt_in() {
    assert!(!qpol(&["normal-form", "z11", "--format", "json"]).stdout.contains("timing_ms"));
    assert!(qpol(&["normal-form", "z11", "--format", "json", "--timing"]).stdout.contains("timing_ms"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qpol");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["orbit", "--x1", "0", "--x2", "1", "--classify"]), Some(0));
    assert_eq!(status(&["verify", "--rep", "pi1", "--printing", "as-printed"]), Some(1));
    assert_eq!(status(&["verify"]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));
}
