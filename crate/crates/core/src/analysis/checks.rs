//! Operator identities on the joint eigenspaces `H_{m,n}` of the pair
//! `(z21 z21*, z22 z22*)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_expression, Algebra, Generator};
use crate::error::{Error, Result};
use crate::numeric::{interior_residual, BlockSystem, RepInstance, SpectralOptions, C64};
use crate::orbit::{candidates, OrbitClass, OrbitPoint};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub passed: bool,
    /// Number of blocks or vectors the check looked at.
    pub tested: usize,
}

impl CheckResult {
    fn new(name: &str, residual: f64, tol: f64, tested: usize) -> Self {
        Self { name: name.to_string(), residual, passed: residual < tol && tested > 0, tested }
    }
}

fn sym(a: u8, b: u8) -> Generator {
    Generator::new(Algebra::Sym2, a, b)
}

fn require_sym(rep: &RepInstance) -> Result<()> {
    if rep.algebra() != Algebra::Sym2 {
        return Err(Error::AlgebraMismatch { expected: Algebra::Sym2, found: rep.algebra() });
    }
    Ok(())
}

fn tight() -> SpectralOptions {
    SpectralOptions { tol: 1e-12, ..SpectralOptions::default() }
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Orbit indices `(m, n)` of each verified cluster among the candidates
/// of one class. A cluster is resolved when exactly one candidate lies
/// within `1e-10` of its label and no other lies within `2e-10`; labels
/// deep in the truncation crowd together and stay unresolved.
pub fn resolved_labels(sys: &BlockSystem, q: f64, class: OrbitClass) -> Vec<Option<(u32, u32)>> {
    let table: Vec<_> = candidates(q, 40).into_iter().filter(|(c, _, _)| *c == class).collect();
    sys.decomposition
        .spaces
        .iter()
        .map(|s| {
            let p = OrbitPoint::new(s.values[0], s.values[1]);
            let near: Vec<_> = table.iter().filter(|(_, c, _)| c.dist(p) < 2e-10).collect();
            match near.as_slice() {
                [(_, c, idx)] if c.dist(p) < 1e-10 => *idx,
                _ => None,
            }
        })
        .collect()
}

/// `z21` maps `H_{m,n}` into `H_{m+1,n}`, `z22` into `H_{m,n+1}` and `z11`
/// into `H_{m,n} + H_{m+2,n-1}`. The residual is the largest entry of any
/// transport block landing elsewhere; blocks touching an unresolved
/// cluster are skipped.
pub fn pi4_transport(rep: &RepInstance) -> Result<CheckResult> {
    require_sym(rep)?;
    let sys = BlockSystem::new(rep, &tight())?;
    let labels = resolved_labels(&sys, rep.q(), OrbitClass::Omega00);
    let mut worst: f64 = 0.0;
    let mut tested = 0;
    for (g, blocks) in &sys.transports {
        if g.starred {
            continue;
        }
        for (&(to, from), block) in blocks {
            let (Some((m, n)), Some(target)) = (labels[from], labels[to]) else { continue };
            let allowed: Vec<(u32, u32)> = match g.index {
                (2, 1) => vec![(m + 1, n)],
                (2, 2) => vec![(m, n + 1)],
                _ if n > 0 => vec![(m, n), (m + 2, n - 1)],
                _ => vec![(m, n)],
            };
            tested += 1;
            if !allowed.contains(&target) {
                worst = worst.max(max_abs(block));
            }
        }
    }
    Ok(CheckResult::new("pi4 H_{m,n} transport", worst, 1e-10, tested))
}

/// The part of `z11` preserving each `H_n` vanishes.
pub fn pi3_diagonal_part(rep: &RepInstance) -> Result<CheckResult> {
    require_sym(rep)?;
    let sys = BlockSystem::new(rep, &tight())?;
    let mut worst: f64 = 0.0;
    for c in 0..sys.cluster_count() {
        if let Some(b) = sys.transport(sym(1, 1), c, c) {
            worst = worst.max(max_abs(b));
        }
    }
    Ok(CheckResult::new("pi3 diagonal part of z11", worst, 1e-10, sys.cluster_count()))
}

/// `z11 = -q^3 z21^2 z22* (1 - z22 z22*)^{-1}` on interior vectors, with the
/// inverse taken on the diagonal `1 - z22 z22*`.
pub fn pi3_offdiagonal_formula(rep: &RepInstance) -> Result<CheckResult> {
    require_sym(rep)?;
    let q = rep.q();
    let (z11, z21, z22s) = (rep.op(sym(1, 1)), rep.op(sym(2, 1)), rep.op(sym(2, 2).star()));
    let d = rep.op(sym(2, 2)) * rep.op(sym(2, 2).star());
    let n = rep.dim();
    let cols = rep.space().interior(&[3]);
    let mut worst: f64 = 0.0;
    for &j in &cols {
        if d.column(j).iter().any(|&(i, _)| i != j) {
            return Err(Error::Numerical("z22 z22* is not diagonal in the given basis".into()));
        }
        let gap = C64::new(1.0, 0.0) - d.entry(j, j);
        if gap.norm() < 1e-300 {
            return Err(Error::Numerical(format!("1 - z22 z22* vanishes at basis vector {j}")));
        }
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[j] = C64::new(1.0, 0.0) / gap;
        let w = z21.apply(&z21.apply(&z22s.apply(&v)));
        let mut e = vec![C64::new(0.0, 0.0); n];
        e[j] = C64::new(1.0, 0.0);
        let lhs = z11.apply(&e);
        let r = lhs.iter().zip(&w).map(|(a, b)| (a + b * q.powi(3)).norm()).fold(0.0, f64::max);
        worst = worst.max(r);
    }
    Ok(CheckResult::new("pi3 off-diagonal part of z11", worst, 1e-10, cols.len()))
}

/// `M* M - q^4 M M* = (1 - q^4) q^{4m}` on each `H_{m,n}`, where `M` is the
/// block of `z11` preserving `H_{m,n}`.
pub fn pi4_block_oscillator(rep: &RepInstance) -> Result<CheckResult> {
    require_sym(rep)?;
    let q = rep.q();
    let sys = BlockSystem::new(rep, &tight())?;
    let labels = resolved_labels(&sys, q, OrbitClass::Omega00);
    let mut worst: f64 = 0.0;
    let mut tested = 0;
    for (c, label) in labels.iter().enumerate() {
        let Some((m, _)) = label else { continue };
        // Only blocks whose z11 image stays inside verified clusters.
        if sys.escape(sym(1, 1), c) > 1e-12 || sys.escape(sym(1, 1).star(), c) > 1e-12 {
            continue;
        }
        let k = sys.multiplicity(c);
        let zero = DMatrix::<C64>::zeros(k, k);
        let b = sys.transport(sym(1, 1), c, c).unwrap_or(&zero);
        let lhs = b.adjoint() * b - (b * b.adjoint()).scale(q.powi(4));
        let rhs = DMatrix::<C64>::identity(k, k).scale((1.0 - q.powi(4)) * q.powi(4 * *m as i32));
        worst = worst.max(max_abs(&(lhs - rhs)));
        tested += 1;
    }
    Ok(CheckResult::new("pi4 blockwise q-oscillator", worst, 1e-10, tested))
}

/// `z11* z11 = q^4 z11 z11* + q^-2 - q^2` on interior vectors.
pub fn omega01_oscillator(rep: &RepInstance) -> Result<CheckResult> {
    require_sym(rep)?;
    let p = parse_expression("z11* z11 - q^4 z11 z11* - q^-2 + q^2", Algebra::Sym2)?;
    let r = interior_residual(&p, rep)?;
    Ok(CheckResult::new("Omega01 z11 relation", r, 1e-10, 1))
}
