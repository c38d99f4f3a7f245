//! The reducibility and equivalence statements attached to each composite,
//! decided at truncation scale.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{cyclic_compress, equivalent, fingerprint, letter_kernel, normal_eigen, null_cyclic_vectors, Compression};
use crate::algebra::{Algebra, Generator};
use crate::catalog::{build_sym_series, Printing, SeriesId, Simplest, Su2Kind};
use crate::coaction::{torus_twist, CompositeSpec};
use crate::error::{Error, Result};
use crate::numeric::{commutant_dimension, RepInstance, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub composite: String,
    pub statement: String,
    pub verdict: Verdict,
    pub evidence: String,
}

impl Claim {
    fn new(id: &str, spec: &CompositeSpec, statement: &str, verdict: Verdict, evidence: String) -> Self {
        Self {
            id: id.into(),
            composite: format!("{} {}", spec.algebra, spec.label()),
            statement: statement.into(),
            verdict,
            evidence,
        }
    }
}

fn confirmed(ok: bool) -> Verdict {
    if ok {
        Verdict::Confirmed
    } else {
        Verdict::Refuted
    }
}

fn unit(n: usize, i: usize) -> DVector<C64> {
    let mut v = DVector::zeros(n);
    v[i] = C64::new(1.0, 0.0);
    v
}

/// Largest entry difference between two compressions' generators; `None`
/// when the spans differ in dimension or level structure.
pub fn compression_distance(a: &Compression, b: &Compression) -> Option<f64> {
    if a.levels != b.levels {
        return None;
    }
    let mut worst: f64 = 0.0;
    for ((g, x), (h, y)) in a.rep.generators().zip(b.rep.generators()) {
        if g != h {
            return None;
        }
        worst = worst.max(x.max_abs_diff(y));
    }
    Some(worst)
}

/// What a displayed formula says a letter does to the distinguished vector.
#[derive(Clone, Copy, Debug)]
enum Shown {
    /// `g v = c v`.
    Scalar(f64),
    /// `g v = c h v`.
    Via(Generator, f64),
}

/// Lines of a displayed action that the composite does not satisfy at
/// the first basis vector.
fn displayed_action(rep: &RepInstance, lines: &[(Generator, Shown)]) -> Vec<String> {
    let v: Vec<C64> = unit(rep.dim(), 0).iter().copied().collect();
    let mut bad = Vec::new();
    for &(g, shown) in lines {
        let lhs = rep.op(g).apply(&v);
        let rhs: Vec<C64> = match shown {
            Shown::Scalar(c) => v.iter().map(|x| x * c).collect(),
            Shown::Via(h, c) => rep.op(h).apply(&v).iter().map(|x| x * c).collect(),
        };
        let r = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        if r > 1e-10 {
            bad.push(format!("{g} (deviation {r:.3e})"));
        }
    }
    bad
}

/// Torus angles on the quarter-turn grid, identity first.
fn quarter_turns(alg: Algebra) -> Vec<Vec<f64>> {
    let n = if alg == Algebra::Sym2 { 2 } else { 4 };
    let step = std::f64::consts::FRAC_PI_2;
    (0..4usize.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let a = (k % 4) as f64 * step;
                    k /= 4;
                    a
                })
                .collect()
        })
        .collect()
}

fn display_claim(id: &str, spec: &CompositeSpec, rep: &RepInstance, lines: &[(Generator, Shown)]) -> Result<Claim> {
    let bad = displayed_action(rep, lines);
    let evidence = if bad.is_empty() {
        format!("all {} displayed lines hold at e_0", lines.len())
    } else {
        let mut twist = None;
        for angles in quarter_turns(rep.algebra()).into_iter().skip(1) {
            if displayed_action(&torus_twist(rep, &angles)?, lines).is_empty() {
                twist = Some(angles);
                break;
            }
        }
        match twist {
            Some(a) => format!("failing lines: {}; all hold after the torus twist {a:?}", bad.join(", ")),
            None => format!("failing lines: {}; no quarter-turn torus twist repairs them", bad.join(", ")),
        }
    };
    Ok(Claim::new(id, spec, "displayed action on v = e_0", confirmed(bad.is_empty()), evidence))
}

fn irreducible_claim(id: &str, spec: &CompositeSpec, rep: &RepInstance) -> Claim {
    let statement = "irreducible";
    match commutant_dimension(rep, 1e-9) {
        Ok(r) => Claim::new(
            id,
            spec,
            statement,
            confirmed(r.dimension == 1),
            format!("commutant dimension {} over {} unknowns, gap {:?}", r.dimension, r.unknowns, r.gap()),
        ),
        Err(e) => Claim::new(id, spec, statement, Verdict::Inconclusive, e.to_string()),
    }
}

/// Compression of the unique null-cyclic vector of `rep`.
fn vacuum_compression(rep: &RepInstance, depth: u32) -> Result<Compression> {
    let vac = null_cyclic_vectors(rep, 1e-8);
    let v = vac.first().ok_or_else(|| Error::EmptyInput(format!("{} has no null-cyclic vector", rep.provenance())))?;
    cyclic_compress(rep, v, depth)
}

/// A null-cyclic vector generates a copy of the Fock representation while
/// the whole composite is not the Fock representation.
fn fock_subrep_claim(id: &str, spec: &CompositeSpec, fock: &RepInstance, depth: u32) -> Result<Claim> {
    let rep = spec.build()?;
    let vac = null_cyclic_vectors(&rep, 1e-8);
    let statement = "reducible: contains a subrepresentation equivalent to the Fock representation";
    let Some(v) = vac.first() else {
        return Ok(Claim::new(id, spec, statement, Verdict::Refuted, "no null-cyclic vector".into()));
    };
    let sub = cyclic_compress(&rep, v, depth)?;
    let reference = vacuum_compression(fock, depth)?;
    let dist = compression_distance(&sub, &reference);
    // A Fock representation has a one-dimensional vacuum space, so a second
    // null-cyclic vector already rules out equivalence with it.
    let differs = if vac.len() > 1 {
        Some(format!("{} independent null-cyclic vectors", vac.len()))
    } else {
        fingerprint(&rep)?.mismatch(&fingerprint(fock)?, 1e-6)
    };
    let matches = dist.is_some_and(|d| d < 1e-8) && sub.leakage < 1e-8;
    let evidence = format!(
        "depth-{depth} span of dim {} matches the Fock compression to {} (leakage {:.2e}); not the Fock representation: {}",
        sub.levels.len(),
        dist.map_or("n/a (different span shapes)".into(), |d| format!("{d:.2e}")),
        sub.leakage,
        differs.clone().unwrap_or_else(|| "no difference found".into()),
    );
    let verdict = match (matches, differs.is_some()) {
        (true, true) => Verdict::Confirmed,
        (false, _) => Verdict::Refuted,
        (true, false) => Verdict::Inconclusive,
    };
    Ok(Claim::new(id, spec, statement, verdict, evidence))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    pub trunc: usize,
    pub kernel_dim: usize,
    /// Phases of `z21` on the kernel of `z22*`.
    pub phases: Vec<f64>,
    /// Distance of each piece's compression to that of the matching
    /// third-series representation.
    pub distances: Vec<Option<f64>>,
    pub leakage: Vec<f64>,
    /// Largest overlap between the two cyclic spans.
    pub overlap: f64,
    /// Largest component of `z21` mapping even basis vectors to odd ones.
    pub parity_mixing: f64,
}

/// The two pieces of `(F0 [x] pi) Delta`: eigenvectors of `z21` on the
/// kernel of `z22*`, each compressed and compared with the third series at
/// the eigenphase.
pub fn f0_pi_split(q: f64, trunc: usize, depth: u32) -> Result<SplitReport> {
    let spec = CompositeSpec::new(Algebra::Sym2, Simplest::F0, &[Su2Kind::Pi], q, trunc);
    let rep = spec.build()?;
    let g = |a, b| Generator::new(Algebra::Sym2, a, b);
    let kernel = letter_kernel(&rep, g(2, 2).star(), 1e-8);
    if kernel.is_empty() {
        return Err(Error::EmptyInput("z22* has no interior kernel".into()));
    }
    let k = DMatrix::from_columns(&kernel);
    let z21 = rep.op(g(2, 1));
    let img = DMatrix::from_columns(&kernel.iter().map(|v| DVector::from_vec(z21.apply(v.as_slice()))).collect::<Vec<_>>());
    let m = k.adjoint() * &img;
    let (vals, vecs) = normal_eigen(&m);
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&a, &b| vals[a].arg().total_cmp(&vals[b].arg()));
    let mut phases = Vec::new();
    let mut distances = Vec::new();
    let mut leakage = Vec::new();
    let mut bases = Vec::new();
    for &i in &order {
        let phi = vals[i].arg();
        let v = &k * vecs.column(i);
        let v = &v / C64::new(v.norm(), 0.0);
        let piece = cyclic_compress(&rep, &v, depth)?;
        let model = build_sym_series(SeriesId::Pi3, &[phi], q, &[trunc], Printing::Corrected)?;
        let reference = cyclic_compress(&model, &unit(model.dim(), 0), depth)?;
        phases.push(phi);
        distances.push(compression_distance(&piece, &reference));
        leakage.push(piece.leakage);
        bases.push(piece.basis);
    }
    let overlap = if bases.len() >= 2 {
        (bases[0].adjoint() * &bases[1]).iter().map(|c| c.norm()).fold(0.0, f64::max)
    } else {
        0.0
    };
    let parity_mixing = z21.triplets().filter(|(i, j, _)| (i + j) % 2 == 1).map(|(_, _, v)| v.norm()).fold(0.0, f64::max);
    Ok(SplitReport { trunc, kernel_dim: kernel.len(), phases, distances, leakage, overlap, parity_mixing })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case7Report {
    /// `max |(z2^1)* + z1^2|` over interior columns.
    pub adjoint_identity: f64,
    /// Kernel dimension of `(z2^2)*` per truncation.
    pub kernel_dims: Vec<(usize, usize)>,
    /// `max |(z2^2)* z2^1 v|` over kernel vectors `v`: how far `z2^1`
    /// is from preserving the kernel.
    pub kernel_invariance: f64,
}

/// `(F0 [x] pi [x] pi) D`: the adjoint identity and the kernel of
/// `(z2^2)*` across truncations.
pub fn mat2_case7(q: f64, truncs: &[usize]) -> Result<Case7Report> {
    let g = |a, b| Generator::new(Algebra::Mat2, a, b);
    let mut adjoint_identity: f64 = 0.0;
    let mut kernel_dims = Vec::new();
    let mut kernel_invariance: f64 = 0.0;
    for &t in truncs {
        let rep = CompositeSpec::new(Algebra::Mat2, Simplest::F0, &[Su2Kind::Pi, Su2Kind::Pi], q, t).build()?;
        let diff = rep.op(g(2, 1).star()) + rep.op(g(1, 2));
        let margin: Vec<u32> = diff.band().iter().map(|b| b.up.max(b.down)).collect();
        adjoint_identity = adjoint_identity.max(diff.max_column_norm(&rep.space().interior(&margin)));
        let kernel = letter_kernel(&rep, g(2, 2).star(), 1e-8);
        kernel_dims.push((t, kernel.len()));
        let (z, zs) = (rep.op(g(2, 1)), rep.op(g(2, 2).star()));
        for v in &kernel {
            let w = zs.apply(&z.apply(v.as_slice()));
            kernel_invariance = kernel_invariance.max(w.iter().map(|c| c.norm()).fold(0.0, f64::max));
        }
    }
    Ok(Case7Report { adjoint_identity, kernel_dims, kernel_invariance })
}

/// Equivalence of two realizations, and failing that, of the first with a
/// quarter-turn torus twist of the second.
fn orders_claim(id: &str, spec: &CompositeSpec, statement: &str, a: &RepInstance, b: &RepInstance) -> Result<Claim> {
    let eq = equivalent(a, b, 1e-8)?;
    if eq.equivalent {
        let evidence = format!("intertwiner space dim {}, residual {:?}", eq.intertwiner_dim, eq.intertwiner_residual);
        return Ok(Claim::new(id, spec, statement, Verdict::Confirmed, evidence));
    }
    let reason = eq.fingerprint_mismatch.unwrap_or_else(|| "no unitary intertwiner".into());
    for angles in quarter_turns(b.algebra()).into_iter().skip(1) {
        if equivalent(a, &torus_twist(b, &angles)?, 1e-8)?.equivalent {
            let evidence = format!("not equivalent as built ({reason}); equivalent after the torus twist {angles:?}");
            return Ok(Claim::new(id, spec, statement, Verdict::Refuted, evidence));
        }
    }
    let evidence = format!("not equivalent ({reason}), nor after any quarter-turn torus twist");
    Ok(Claim::new(id, spec, statement, Verdict::Refuted, evidence))
}

/// Every composite statement of both lists at `(q, trunc)`.
pub fn composite_claims(q: f64, trunc: usize) -> Result<Vec<Claim>> {
    use Simplest::*;
    use Su2Kind::*;
    let sym = |base, leg| CompositeSpec::new(Algebra::Sym2, base, &[leg], q, trunc);
    let mat = |base, a, b| CompositeSpec::new(Algebra::Mat2, base, &[a, b], q, trunc);
    let s = |a, b| Generator::new(Algebra::Sym2, a, b);
    let m = |a, b| Generator::new(Algebra::Mat2, a, b);
    let mut out = Vec::new();

    let spec = sym(F2, Pi);
    let pi5 = build_sym_series(SeriesId::Pi5, &[], q, &[trunc; 3], Printing::Corrected)?;
    out.push(fock_subrep_claim("sym-1", &spec, &pi5, 3)?);

    let spec = sym(F2, Eps);
    let rep = spec.build()?;
    let worst = rep.generators().zip(pi5.generators()).map(|((_, a), (_, b))| a.max_abs_diff(b)).fold(0.0, f64::max);
    let same_space = rep.space().dims() == pi5.space().dims();
    out.push(Claim::new(
        "sym-2",
        &spec,
        "is the Fock representation",
        confirmed(same_space && worst < 1e-12),
        format!("entrywise distance to the fifth series {worst:.2e}"),
    ));

    let spec = sym(F1, Pi);
    let rep = spec.build()?;
    out.push(display_claim(
        "sym-3-display",
        &spec,
        &rep,
        &[
            (s(1, 1), Shown::Scalar(1.0)),
            (s(1, 1).star(), Shown::Scalar(1.0)),
            (s(2, 1).star(), Shown::Scalar(0.0)),
            (s(2, 2).star(), Shown::Scalar(0.0)),
        ],
    )?);
    out.push(irreducible_claim("sym-3-irreducible", &spec, &rep));

    let spec = sym(F1, Eps);
    let rep = spec.build()?;
    out.push(display_claim(
        "sym-4-display",
        &spec,
        &rep,
        &[
            (s(2, 1), Shown::Scalar(0.0)),
            (s(2, 2), Shown::Scalar(1.0)),
            (s(1, 1).star(), Shown::Scalar(0.0)),
            (s(2, 1).star(), Shown::Scalar(0.0)),
            (s(2, 2).star(), Shown::Scalar(1.0)),
        ],
    )?);
    out.push(irreducible_claim("sym-4-irreducible", &spec, &rep));
    let pi2 = build_sym_series(SeriesId::Pi2, &[0.0], q, &[trunc], Printing::Corrected)?;
    let eq = equivalent(&rep, &pi2, 1e-8)?;
    out.push(Claim::new(
        "sym-4-series",
        &spec,
        "equivalent to the second series at phase 0",
        confirmed(eq.equivalent),
        format!("intertwiner space dim {}, residual {:?}", eq.intertwiner_dim, eq.intertwiner_residual),
    ));

    let spec = sym(F0, Pi);
    let split = f0_pi_split(q, 2 * trunc, 3)?;
    let pieces_ok = split.kernel_dim == 2
        && split.distances.iter().all(|d| d.is_some_and(|d| d < 1e-8))
        && split.leakage.iter().all(|&l| l < 1e-8)
        && split.overlap < 1e-8;
    out.push(Claim::new(
        "sym-5",
        &spec,
        "reducible: two subrepresentations of third-series type",
        confirmed(pieces_ok),
        format!(
            "kernel of z22* has dim {} at truncation {}; z21 phases {:?}; compression distances {:?}; span overlap {:.2e}; \
             z21 parity mixing {:.2e}",
            split.kernel_dim, split.trunc, split.phases, split.distances, split.overlap, split.parity_mixing
        ),
    ));

    let spec = sym(F0, Eps);
    let rep = spec.build()?;
    let pi1 = build_sym_series(SeriesId::Pi1, &[0.0, 0.0], q, &[], Printing::Corrected)?;
    let worst = rep.generators().zip(pi1.generators()).map(|((_, a), (_, b))| a.max_abs_diff(b)).fold(0.0, f64::max);
    out.push(Claim::new(
        "sym-6",
        &spec,
        "the one-dimensional representation z11 = q^-1, z21 = 0, z22 = 1",
        confirmed(rep.dim() == 1 && worst < 1e-12),
        format!("dimension {}, entrywise distance to the first series at phases (0, 0) {worst:.2e}", rep.dim()),
    ));

    let fock = mat(F2, Eps, Eps).build()?;
    out.push(fock_subrep_claim("mat-1", &mat(F2, Pi, Pi), &fock, 2)?);
    out.push(fock_subrep_claim("mat-2a", &mat(F2, Pi, Eps), &fock, 2)?);
    out.push(fock_subrep_claim("mat-2b", &mat(F2, Eps, Pi), &fock, 2)?);
    let spec = mat(F2, Eps, Eps);
    out.push(irreducible_claim("mat-3", &spec, &fock));

    let spec = mat(F1, Pi, Pi);
    let rep = spec.build()?;
    out.push(display_claim(
        "mat-4-display",
        &spec,
        &rep,
        &[
            (m(1, 1), Shown::Scalar(1.0)),
            (m(1, 1).star(), Shown::Scalar(1.0)),
            (m(1, 2).star(), Shown::Scalar(0.0)),
            (m(2, 1).star(), Shown::Scalar(0.0)),
            (m(2, 2).star(), Shown::Scalar(0.0)),
        ],
    )?);
    out.push(irreducible_claim("mat-4-irreducible", &spec, &rep));

    let five = [
        (m(1, 1), Shown::Scalar(0.0)),
        (m(2, 1), Shown::Scalar(1.0)),
        (m(1, 1).star(), Shown::Scalar(0.0)),
        (m(1, 2).star(), Shown::Scalar(0.0)),
        (m(2, 1).star(), Shown::Scalar(1.0)),
        (m(2, 2).star(), Shown::Scalar(0.0)),
    ];
    let spec_a = mat(F1, Pi, Eps);
    let spec_b = mat(F1, Eps, Pi);
    let (a, b) = (spec_a.build()?, spec_b.build()?);
    out.push(display_claim("mat-5a-display", &spec_a, &a, &five)?);
    out.push(display_claim("mat-5b-display", &spec_b, &b, &five)?);
    out.push(irreducible_claim("mat-5a-irreducible", &spec_a, &a));
    out.push(irreducible_claim("mat-5b-irreducible", &spec_b, &b));
    out.push(orders_claim("mat-5-orders", &spec_b, "the two leg orders share one displayed action", &a, &b)?);

    let spec = mat(F1, Eps, Eps);
    let rep = spec.build()?;
    out.push(display_claim(
        "mat-6-display",
        &spec,
        &rep,
        &[
            (m(1, 2), Shown::Scalar(0.0)),
            (m(2, 1), Shown::Scalar(0.0)),
            (m(2, 2), Shown::Scalar(1.0)),
            (m(1, 1).star(), Shown::Scalar(0.0)),
            (m(1, 2).star(), Shown::Scalar(0.0)),
            (m(2, 1).star(), Shown::Scalar(0.0)),
            (m(2, 2).star(), Shown::Scalar(1.0)),
        ],
    )?);
    out.push(irreducible_claim("mat-6-irreducible", &spec, &rep));

    let spec = mat(F0, Pi, Pi);
    let c7 = mat2_case7(q, &[trunc, 2 * trunc])?;
    let grows = c7.kernel_dims.windows(2).all(|w| w[1].1 > w[0].1);
    out.push(Claim::new(
        "mat-7",
        &spec,
        "reducible: (z2^1)* = -z1^2 and (z2^2)* has a kernel of growing dimension",
        confirmed(c7.adjoint_identity < 1e-12 && grows),
        format!(
            "identity residual {:.2e}; kernel dims {:?}; z2^1 preserves the kernel to {:.2e}",
            c7.adjoint_identity, c7.kernel_dims, c7.kernel_invariance
        ),
    ));

    let eight = [
        (m(1, 1), Shown::Scalar(0.0)),
        (m(1, 2), Shown::Scalar(1.0)),
        (m(2, 1), Shown::Scalar(1.0)),
        (m(1, 1).star(), Shown::Via(m(2, 2), -1.0 / q)),
        (m(1, 2).star(), Shown::Scalar(1.0)),
        (m(2, 1).star(), Shown::Scalar(1.0)),
        (m(2, 2).star(), Shown::Scalar(0.0)),
    ];
    let spec_a = mat(F0, Pi, Eps);
    let spec_b = mat(F0, Eps, Pi);
    let (a, b) = (spec_a.build()?, spec_b.build()?);
    out.push(display_claim("mat-8a-display", &spec_a, &a, &eight)?);
    out.push(display_claim("mat-8b-display", &spec_b, &b, &eight)?);
    out.push(irreducible_claim("mat-8a-irreducible", &spec_a, &a));
    out.push(irreducible_claim("mat-8b-irreducible", &spec_b, &b));
    out.push(orders_claim("mat-8-orders", &spec_b, "the two leg orders are isomorphic", &a, &b)?);

    let spec = mat(F0, Eps, Eps);
    let rep = spec.build()?;
    out.push(display_claim(
        "mat-9-display",
        &spec,
        &rep,
        &[
            (m(1, 1), Shown::Scalar(1.0 / q)),
            (m(1, 2), Shown::Scalar(0.0)),
            (m(2, 1), Shown::Scalar(0.0)),
            (m(2, 2), Shown::Scalar(1.0)),
            (m(1, 1).star(), Shown::Scalar(1.0 / q)),
            (m(1, 2).star(), Shown::Scalar(0.0)),
            (m(2, 1).star(), Shown::Scalar(0.0)),
            (m(2, 2).star(), Shown::Scalar(1.0)),
        ],
    )?);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FockComparison {
    pub degree: usize,
    pub depth: u32,
    /// `|g v|` for each unstarred generator on the Fock vacuum.
    pub vacuum_norms: Vec<(String, f64)>,
    /// Largest entry difference between the vacuum compressions of the
    /// Fock module and of the fifth series.
    pub distance: Option<f64>,
}

/// The symmetric Fock module up to `degree` against the fifth series, both
/// compressed from their vacua.
pub fn fock_crosscheck(q: f64, degree: usize) -> Result<FockComparison> {
    let fock = crate::catalog::build_fock_module(Algebra::Sym2, degree, q)?;
    let depth = degree.saturating_sub(1).max(1) as u32;
    let model = build_sym_series(SeriesId::Pi5, &[], q, &[degree + 3; 3], Printing::Corrected)?;
    let vac = unit(fock.dim(), 0);
    let a = cyclic_compress(&fock, &vac, depth)?;
    let b = cyclic_compress(&model, &unit(model.dim(), 0), depth)?;
    let v: Vec<C64> = vac.iter().copied().collect();
    let vacuum_norms = fock
        .generators()
        .map(|(g, op)| (g.to_string(), op.apply(&v).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()))
        .collect();
    Ok(FockComparison { degree, depth, vacuum_norms, distance: compression_distance(&a, &b) })
}
