use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qpol_core::algebra::{
    gram_matrix, is_positive_definite_at, pair_transport_identities, parse_expression, Generator,
};
use qpol_core::analysis::{
    composite_claims, equivalent, f0_pi_split, fingerprint, fock_crosscheck, mat2_case7, null_cyclic_vectors,
    omega01_oscillator, pi3_diagonal_part, pi3_offdiagonal_formula, pi4_block_oscillator, pi4_transport,
    CheckResult,
};
use qpol_core::catalog::{build_fock_module, build_simplest, build_sym_series};
use qpol_core::coaction::{paper_composites, torus_twist, CompositeSpec};
use qpol_core::numeric::{
    commutant_dimension, diagonal_family, export_json, export_text, import_json, import_text, joint_decomposition,
    relation_residual_suite, OperatorHeader, SpectralOptions, C64,
};
use qpol_core::orbit::{classify_seed, match_spectrum, orbit_point, OrbitClass, OrbitPoint};
use qpol_core::{Algebra, Error, LaurentScalar, Presentation, Printing, RepInstance, SeriesId, Simplest, Su2Kind};

use crate::args::{Encoding, PrintingArg, RepArgs};
use crate::report::{
    CommutantLine, EquivalenceLine, ExportLine, FingerprintLine, IdentityLine, OrbitLine, RunReport, SpectrumLine,
};
use crate::CliError;

/// Seed of every randomized step the tool takes.
pub const SEED: u64 = 0x5eed;

/// Settings shared by every command.
#[derive(Clone)]
pub struct Ctx {
    pub algebra: Algebra,
    pub q: f64,
    pub q_exact: Option<BigRational>,
    pub trunc: usize,
    pub tol: Option<f64>,
}

impl Ctx {
    fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    /// The exact q if given, else the float read exactly.
    fn q_rational(&self) -> BigRational {
        self.q_exact.clone().unwrap_or_else(|| BigRational::from_float(self.q).expect("q is finite"))
    }
}

/// Parse `p/r` or an integer and its float value.
pub fn parse_rational(s: &str) -> Result<(BigRational, f64), CliError> {
    let bad = || CliError::Usage(format!("--q-exact expects p/r, got `{s}`"));
    let r = BigRational::from_str(s.trim()).map_err(|_| bad())?;
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim().parse::<f64>().map_err(|_| bad())?, d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (s.trim().parse::<f64>().map_err(|_| bad())?, 1.0),
    };
    Ok((r, n / d))
}

pub struct RepRequest<'a> {
    pub spec: &'a str,
    pub phases: &'a [f64],
    pub angles: &'a [f64],
    pub printing: Printing,
    pub degree: usize,
}

impl<'a> RepRequest<'a> {
    pub fn from_args(a: &'a RepArgs) -> Self {
        let printing = match a.printing {
            PrintingArg::Corrected => Printing::Corrected,
            PrintingArg::AsPrinted => Printing::AsPrinted,
        };
        Self { spec: &a.rep, phases: &a.phases, angles: &a.angles, printing, degree: a.degree }
    }

    pub fn plain(spec: &'a str, phases: &'a [f64], angles: &'a [f64], degree: usize) -> Self {
        Self { spec, phases, angles, printing: Printing::Corrected, degree }
    }

    fn is_composite(&self) -> bool {
        self.spec.contains(':')
    }
}

/// Build `pi1`..`pi5`, `f0`..`f2`, `fock` or a composite `F1:pi[:eps]`.
pub fn build_rep(ctx: &Ctx, r: &RepRequest) -> Result<RepInstance, CliError> {
    let lower = r.spec.to_ascii_lowercase();
    let rep = if r.is_composite() {
        let mut parts = lower.split(':');
        let base = Simplest::from_str(parts.next().unwrap_or_default())?;
        let legs = parts.map(Su2Kind::from_str).collect::<Result<Vec<_>, _>>()?;
        let mut spec = CompositeSpec::new(ctx.algebra, base, &legs, ctx.q, ctx.trunc);
        spec.fock_degree = r.degree;
        spec.angles = r.angles.to_vec();
        return Ok(spec.build()?);
    } else if lower.starts_with("pi") {
        let id = SeriesId::from_str(&lower)?;
        if ctx.algebra != Algebra::Sym2 {
            return Err(CliError::Usage(format!("{id} belongs to the symmetric algebra; pass --algebra sym")));
        }
        let phases = if r.phases.is_empty() { vec![0.0; id.phase_arity()] } else { r.phases.to_vec() };
        build_sym_series(id, &phases, ctx.q, &vec![ctx.trunc; id.tensor_rank()], r.printing)?
    } else if lower == "fock" {
        build_fock_module(ctx.algebra, r.degree, ctx.q)?
    } else {
        let kind = Simplest::from_str(&lower)?;
        let size = if ctx.algebra == Algebra::Mat2 && kind == Simplest::F2 { r.degree } else { ctx.trunc };
        build_simplest(ctx.algebra, kind, ctx.q, size)?
    };
    if r.angles.is_empty() {
        Ok(rep)
    } else {
        Ok(torus_twist(&rep, r.angles)?)
    }
}

fn subject(r: &RepRequest) -> String {
    let mut s = r.spec.to_string();
    if !r.phases.is_empty() {
        s.push_str(&format!(" phases {:?}", r.phases));
    }
    if !r.angles.is_empty() {
        s.push_str(&format!(" twist {:?}", r.angles));
    }
    if r.printing == Printing::AsPrinted {
        s.push_str(" as printed");
    }
    s
}

fn residual_suite(report: &mut RunReport, subject: &str, rep: &RepInstance, tol: f64) -> Result<(), CliError> {
    for rr in relation_residual_suite(rep)? {
        report.residual(subject, &rr.relation, rr.residual, tol);
    }
    Ok(())
}

pub fn verify(ctx: &Ctx, report: &mut RunReport, req: &RepRequest) -> Result<(), CliError> {
    let rep = build_rep(ctx, req)?;
    let tol = ctx.tol_or(if req.is_composite() { 1e-10 } else { 1e-12 });
    residual_suite(report, &subject(req), &rep, tol)
}

pub fn normal_form(ctx: &Ctx, report: &mut RunReport, expr: &str) -> Result<(), CliError> {
    let p = parse_expression(expr, ctx.algebra)?;
    report.value("normal_form", Presentation::get(ctx.algebra).normal_form(&p).to_expr());
    Ok(())
}

/// `lhs = rhs` in the algebra, or at the exact q when one is given.
pub fn identity(ctx: &Ctx, report: &mut RunReport, lhs: &str, rhs: &str) -> Result<(), CliError> {
    let (l, r) = (parse_expression(lhs, ctx.algebra)?, parse_expression(rhs, ctx.algebra)?);
    let diff = Presentation::get(ctx.algebra).normal_form(&(&l - &r));
    let holds = match &ctx.q_exact {
        Some(q) => diff.terms().all(|(_, c)| c.eval_rational(q) == BigRational::from_integer(BigInt::from(0))),
        None => diff.is_zero(),
    };
    let verdict = if holds { "exact-true" } else { "exact-false" };
    if !holds {
        report.fail(format!("identity `{lhs} = {rhs}` is false"));
    }
    report.identities.push(IdentityLine {
        lhs: lhs.into(),
        rhs: rhs.into(),
        difference: diff.to_expr(),
        verdict: verdict.into(),
        at_q: ctx.q_exact.as_ref().map(|q| q.to_string()),
    });
    Ok(())
}

/// The six transport identities of the commuting pair.
pub fn transport(report: &mut RunReport) {
    for t in pair_transport_identities() {
        let verdict = if t.holds { "exact-true" } else { "exact-false" };
        if !t.holds {
            report.fail(format!("transport identity `{} = {}` is false", t.lhs, t.rhs));
        }
        report.identities.push(IdentityLine {
            lhs: t.lhs,
            rhs: t.rhs,
            difference: t.defect,
            verdict: verdict.into(),
            at_q: None,
        });
    }
}

fn indicator(name: String, ok: bool, tested: usize) -> CheckResult {
    CheckResult { name, residual: if ok { 0.0 } else { 1.0 }, passed: ok, tested }
}

fn measured(name: String, residual: f64, tol: f64, tested: usize) -> CheckResult {
    CheckResult { name, residual, passed: residual < tol, tested }
}

pub fn fock(ctx: &Ctx, report: &mut RunReport, degree: usize) -> Result<(), CliError> {
    let q = ctx.q_rational();
    for d in 1..=degree {
        let gram = gram_matrix(ctx.algebra, d);
        let ok = is_positive_definite_at(&gram, &q);
        report.check(indicator(format!("Gram matrix to degree {d} positive definite at q = {q}"), ok, gram.len()));
    }
    if ctx.algebra != Algebra::Sym2 {
        return Ok(());
    }
    let tol = ctx.tol_or(1e-12);
    let cmp = fock_crosscheck(ctx.q, degree + 1)?;
    let dist = cmp.distance.unwrap_or(f64::MAX);
    report.check(measured(format!("Fock module vs pi5 to depth {}", cmp.depth), dist, tol, 1));
    let qf = ctx.q;
    for (g, norm) in &cmp.vacuum_norms {
        let expected = match g.as_str() {
            "z21" => (1.0 - qf * qf).sqrt(),
            _ => (1.0 - qf.powi(4)).sqrt(),
        };
        let name = format!("|{g} v| = {}", if g == "z21" { "sqrt(1-q^2)" } else { "sqrt(1-q^4)" });
        report.check(measured(name, (norm - expected).abs(), tol, 1));
    }
    Ok(())
}

fn fingerprint_line(report: &mut RunReport, subject: &str, rep: &RepInstance) -> Result<(), CliError> {
    match fingerprint(rep) {
        Ok(fp) => report.fingerprints.push(FingerprintLine { subject: subject.into(), fingerprint: fp }),
        Err(e) => report.fail(format!("{subject}: fingerprint failed: {e}")),
    }
    Ok(())
}

pub fn compose(
    ctx: &Ctx,
    report: &mut RunReport,
    rep: Option<&str>,
    angles: &[f64],
    all_fingerprints: bool,
) -> Result<(), CliError> {
    let tol = ctx.tol_or(1e-10);
    if let Some(spec) = rep {
        let req = RepRequest::plain(spec, &[], angles, 4);
        let built = build_rep(ctx, &req)?;
        let s = format!("{} {}", ctx.algebra, subject(&req));
        residual_suite(report, &s, &built, tol)?;
        return fingerprint_line(report, &s, &built);
    }
    for mut spec in paper_composites(ctx.q, ctx.trunc).into_iter().filter(|s| s.algebra == ctx.algebra) {
        spec.angles = angles.to_vec();
        let built = spec.build()?;
        let s = format!("{} {}", spec.algebra, spec.label());
        residual_suite(report, &s, &built, tol)?;
        if all_fingerprints {
            fingerprint_line(report, &s, &built)?;
        }
    }
    Ok(())
}

pub struct OrbitRequest<'a> {
    pub x1: Option<f64>,
    pub x2: Option<f64>,
    pub classify: bool,
    pub steps: &'a [i32],
    pub sweep: Option<usize>,
    pub seed: u64,
    pub window: u32,
    pub expect: Option<&'a str>,
}

fn parse_class(s: &str) -> Result<OrbitClass, CliError> {
    [OrbitClass::Omega00, OrbitClass::Omega10, OrbitClass::Omega01, OrbitClass::Inadmissible]
        .into_iter()
        .find(|c| c.to_string().eq_ignore_ascii_case(s))
        .ok_or_else(|| CliError::Usage(format!("unknown orbit class `{s}`")))
}

pub fn orbit(ctx: &Ctx, report: &mut RunReport, o: &OrbitRequest) -> Result<(), CliError> {
    let expect = o.expect.map(parse_class).transpose()?;
    let tol = ctx.tol_or(1e-9);
    let mut seeds = Vec::new();
    match (o.x1, o.x2) {
        (Some(x1), Some(x2)) => seeds.push(OrbitPoint::new(x1, x2)),
        (None, None) => {}
        _ => return Err(CliError::Usage("--x1 and --x2 go together".into())),
    }
    if !o.steps.is_empty() {
        if o.steps.len() != 2 {
            return Err(CliError::Usage("--steps takes two integers m,n".into()));
        }
        let Some(&seed) = seeds.first() else {
            return Err(CliError::Usage("--steps needs a seed (--x1, --x2)".into()));
        };
        let p = orbit_point(seed, o.steps[0], o.steps[1], ctx.q);
        report.value("orbit_point", format!("({}, {})", p.x1, p.x2));
    }
    if let Some(n) = o.sweep {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
        report.seed = o.seed;
        seeds.extend((0..n).map(|_| OrbitPoint::new(rng.random::<f64>(), rng.random::<f64>())));
    }
    if seeds.is_empty() {
        return Err(CliError::Usage("orbit needs --x1/--x2 or --sweep".into()));
    }
    if !o.classify && o.sweep.is_none() && !o.steps.is_empty() {
        return Ok(());
    }
    for s in seeds {
        let v = classify_seed(s, ctx.q, o.window, tol);
        if let Some(want) = expect {
            if v.class != want {
                report.fail(format!("seed ({}, {}) classified {} instead of {want}", s.x1, s.x2, v.class));
            }
        }
        report.orbit.push(OrbitLine { seed: s, class: v.class, distance: v.distance, indices: v.indices });
    }
    Ok(())
}

fn spectrum_line(ctx: &Ctx, subject: &str, rep: &RepInstance) -> Result<SpectrumLine, CliError> {
    let fam = diagonal_family(rep);
    let ops: Vec<_> = fam.iter().map(|f| &f.1).collect();
    let opts = SpectralOptions { tol: ctx.tol_or(1e-9), ..SpectralOptions::default() };
    let dec = joint_decomposition(&ops, &opts)?;
    let points = dec.points();
    let (class, class_residual) = if rep.algebra() == Algebra::Sym2 && !points.is_empty() {
        let pts: Vec<_> =
            points.iter().map(|p| (OrbitPoint::new(p.values[0], p.values[1]), p.multiplicity)).collect();
        let (c, r) = match_spectrum(&pts, ctx.q, 20, 1e-9)?;
        (Some(c), Some(r))
    } else {
        (None, None)
    };
    Ok(SpectrumLine { subject: subject.into(), class, class_residual, points, dropped: dec.dropped })
}

pub fn spectrum(ctx: &Ctx, report: &mut RunReport, req: &RepRequest) -> Result<(), CliError> {
    let rep = build_rep(ctx, req)?;
    let line = spectrum_line(ctx, &subject(req), &rep)?;
    report.spectra.push(line);
    Ok(())
}

/// The eigenspace identities that apply to a catalog series.
fn series_checks(rep: &RepInstance, id: SeriesId) -> Result<Vec<CheckResult>, CliError> {
    Ok(match id {
        SeriesId::Pi1 | SeriesId::Pi2 => vec![omega01_oscillator(rep)?],
        SeriesId::Pi3 => vec![pi3_diagonal_part(rep)?, pi3_offdiagonal_formula(rep)?],
        SeriesId::Pi4 => vec![pi4_transport(rep)?, pi4_block_oscillator(rep)?],
        SeriesId::Pi5 => Vec::new(),
    })
}

pub struct AnalyzeRequest<'a> {
    pub rep: Option<RepRequest<'a>>,
    pub against: Option<RepRequest<'a>>,
    pub claims: bool,
    pub checks: bool,
    pub full: bool,
}

pub fn analyze(ctx: &Ctx, report: &mut RunReport, a: &AnalyzeRequest) -> Result<(), CliError> {
    if a.rep.is_none() && !a.claims && !a.checks && !a.full {
        return Err(CliError::Usage("analyze needs --rep, --claims, --checks or --full".into()));
    }
    if a.against.is_some() && a.rep.is_none() {
        return Err(CliError::Usage("--against needs --rep".into()));
    }
    if a.full {
        return full_suite(ctx, report);
    }
    if let Some(req) = &a.rep {
        let rep = build_rep(ctx, req)?;
        let s = subject(req);
        fingerprint_line(report, &s, &rep)?;
        let null_cyclic = null_cyclic_vectors(&rep, 1e-8).len();
        let (commutant, note) = match commutant_dimension(&rep, 1e-9) {
            Ok(r) => (Some(r), None),
            Err(Error::TooLarge(m)) => (None, Some(format!("commutant not computed: {m}"))),
            Err(e) => return Err(e.into()),
        };
        report.commutants.push(CommutantLine { subject: s.clone(), null_cyclic, commutant, note });
        if let Some(other) = &a.against {
            let b = build_rep(ctx, other)?;
            let eq = equivalent(&rep, &b, 1e-8)?;
            if !eq.equivalent {
                report.fail(format!("{s} is not equivalent to {}", subject(other)));
            }
            report.equivalences.push(EquivalenceLine { a: s.clone(), b: subject(other), report: eq });
        }
        if a.checks {
            if let Ok(id) = SeriesId::from_str(req.spec) {
                for c in series_checks(&rep, id)? {
                    report.check(c);
                }
            }
        }
    } else if a.checks {
        catalog_checks(ctx, report)?;
    }
    if a.claims {
        claims(ctx, report)?;
    }
    Ok(())
}

fn catalog(ctx: &Ctx) -> Result<Vec<(SeriesId, RepInstance)>, CliError> {
    let mut out = Vec::new();
    for id in SeriesId::ALL {
        let dims = vec![ctx.trunc; id.tensor_rank()];
        out.push((id, build_sym_series(id, &vec![0.0; id.phase_arity()], ctx.q, &dims, Printing::Corrected)?));
    }
    Ok(out)
}

fn catalog_checks(ctx: &Ctx, report: &mut RunReport) -> Result<(), CliError> {
    for (id, rep) in catalog(ctx)? {
        for c in series_checks(&rep, id)? {
            report.check(c);
        }
    }
    Ok(())
}

fn claims(ctx: &Ctx, report: &mut RunReport) -> Result<(), CliError> {
    for c in composite_claims(ctx.q, ctx.trunc)? {
        report.claim(c);
    }
    let split = f0_pi_split(ctx.q, 2 * ctx.trunc, 3)?;
    report.value("f0_pi_split", serde_json::to_string(&split).expect("serializes"));
    let case7 = mat2_case7(ctx.q, &[ctx.trunc, 2 * ctx.trunc])?;
    report.value("mat2_case7", serde_json::to_string(&case7).expect("serializes"));
    Ok(())
}

/// Everything at once: the catalog, the symbolic identities, the Fock
/// module, both composite lists, the orbit seeds, spectra and claims.
fn full_suite(ctx: &Ctx, report: &mut RunReport) -> Result<(), CliError> {
    let sym = Ctx { algebra: Algebra::Sym2, ..ctx.clone() };
    let mat = Ctx { algebra: Algebra::Mat2, ..ctx.clone() };
    for (id, rep) in catalog(&sym)? {
        residual_suite(report, id.name(), &rep, sym.tol_or(1e-12))?;
        report.spectra.push(spectrum_line(&sym, id.name(), &rep)?);
    }
    transport(report);
    identity(
        &Ctx { q_exact: None, ..sym.clone() },
        report,
        "z21 z21* z11 - z11 z21 z21*",
        "q (q^2-q^-2) z21^2 z22*",
    )?;
    fock(&sym, report, 3)?;
    compose(&sym, report, None, &[], false)?;
    compose(&mat, report, None, &[], false)?;
    for (x1, x2) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)] {
        let o = OrbitRequest {
            x1: Some(x1),
            x2: Some(x2),
            classify: true,
            steps: &[],
            sweep: None,
            seed: SEED,
            window: 20,
            expect: None,
        };
        orbit(&sym, report, &o)?;
    }
    catalog_checks(&sym, report)?;
    claims(&sym, report)
}

pub fn export(
    ctx: &Ctx,
    report: &mut RunReport,
    req: &RepRequest,
    generator: &str,
    encoding: Encoding,
    to: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let rep = build_rep(ctx, req)?;
    let g = parse_generator(ctx.algebra, generator)?;
    let op = rep.op(g);
    let header = OperatorHeader::for_op(op, Some(ctx.algebra), Some(g.to_string()), Some(ctx.q));
    let (content, back) = match encoding {
        Encoding::Json => {
            let s = export_json(op, &header)?;
            let back = import_json(&s)?;
            (s, back)
        }
        Encoding::Text => {
            let s = export_text(op, &header)?;
            let back = import_text(&s)?;
            (s, back)
        }
    };
    let bits = |(i, j, c): (usize, usize, C64)| (i, j, c.re.to_bits(), c.im.to_bits());
    let exact = back.1.triplets().map(bits).eq(op.triplets().map(bits)) && back.1.space() == op.space();
    if !exact {
        report.fail(format!("round trip of {g} changed the operator"));
    }
    let path = match to {
        Some(p) => {
            std::fs::write(p, &content).map_err(Error::from)?;
            Some(p.display().to_string())
        }
        None => None,
    };
    report.exports.push(ExportLine {
        subject: subject(req),
        generator: g.to_string(),
        encoding: format!("{encoding:?}").to_lowercase(),
        nnz: op.nnz(),
        round_trip_exact: exact,
        content: if path.is_none() { Some(content) } else { None },
        path,
    });
    Ok(())
}

fn parse_generator(algebra: Algebra, name: &str) -> Result<Generator, CliError> {
    let p = parse_expression(name, algebra)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((w, c)), None) if w.len() == 1 && *c == LaurentScalar::one() => Ok(w.letters()[0]),
        _ => Err(CliError::Usage(format!("`{name}` is not a single generator"))),
    }
}
