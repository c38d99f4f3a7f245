//! Composite representations `(rho_1 [x] rho_2) Delta` and
//! `(rho_1 [x] rho_2 [x] rho_3) D` built through the coactions, and the
//! torus twists.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Generator};
use crate::catalog::{build_simplest, build_su2_rep, Simplest, Su2Kind, Su2Rep};
use crate::error::{Error, Result};
use crate::numeric::{RepInstance, TruncOp, C64};

/// JSON-serializable description of a composite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompositeSpec {
    pub algebra: Algebra,
    pub base: Simplest,
    pub legs: Vec<Su2Kind>,
    pub q: f64,
    /// Truncation of every `l2(Z+)` factor.
    pub trunc: usize,
    /// Degree bound of the matrix-algebra Fock module.
    #[serde(default = "default_fock_degree")]
    pub fock_degree: usize,
    /// Torus angles applied to the finished composite; empty means none.
    #[serde(default)]
    pub angles: Vec<f64>,
}

fn default_fock_degree() -> usize {
    4
}

impl CompositeSpec {
    pub fn new(algebra: Algebra, base: Simplest, legs: &[Su2Kind], q: f64, trunc: usize) -> Self {
        Self { algebra, base, legs: legs.to_vec(), q, trunc, fock_degree: default_fock_degree(), angles: Vec::new() }
    }

    /// Short label such as `(F0 [x] pi [x] eps)`.
    pub fn label(&self) -> String {
        let legs: Vec<String> = self.legs.iter().map(|l| l.to_string()).collect();
        format!("({} [x] {})", self.base, legs.join(" [x] "))
    }

    pub fn build(&self) -> Result<RepInstance> {
        let expected = match self.algebra {
            Algebra::Sym2 => 1,
            Algebra::Mat2 => 2,
        };
        if self.legs.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "{} composites take {expected} leg(s), got {}",
                self.algebra,
                self.legs.len()
            )));
        }
        let size = match (self.algebra, self.base) {
            (Algebra::Mat2, Simplest::F2) => self.fock_degree,
            _ => self.trunc,
        };
        let base = build_simplest(self.algebra, self.base, self.q, size)?;
        let legs: Vec<Su2Rep> = self.legs.iter().map(|&k| build_su2_rep(k, self.q, self.trunc)).collect();
        let mut rep = match self.algebra {
            Algebra::Sym2 => coact_sym(&base, &legs[0])?,
            Algebra::Mat2 => coact_mat2(&base, &legs[0], &legs[1])?,
        };
        if !self.angles.is_empty() {
            rep = torus_twist(&rep, &self.angles)?;
        }
        rep.set_provenance(self.label());
        Ok(rep)
    }
}

/// Sum of the coaction terms, with the band narrowed to the stored
/// pattern: terms that vanish identically (a zero leg coefficient) would
/// otherwise widen it and shrink every interior.
fn sum(terms: Vec<TruncOp>) -> TruncOp {
    let mut it = terms.into_iter();
    let first = it.next().expect("nonempty sum");
    let out = it.fold(first, |acc, t| &acc + &t);
    let band = out.actual_band();
    out.with_band(band)
}

/// `out(z_jk) = rho(z11) t_1j t_1k + q rho(z21) t_1j t_2k + rho(z21) t_2j t_1k + rho(z22) t_2j t_2k`.
pub fn coact_sym(base: &RepInstance, leg: &Su2Rep) -> Result<RepInstance> {
    if base.algebra() != Algebra::Sym2 {
        return Err(Error::AlgebraMismatch { expected: Algebra::Sym2, found: base.algebra() });
    }
    let q = base.q();
    let g = |a, b| Generator::new(Algebra::Sym2, a, b);
    let (z11, z21, z22) = (base.op(g(1, 1)), base.op(g(2, 1)), base.op(g(2, 2)));
    let ops = [(1, 1), (2, 1), (2, 2)]
        .into_iter()
        .map(|(j, k)| {
            let out = sum(vec![
                z11.kron(&leg.tt(1, j, 1, k)),
                z21.kron(&leg.tt(1, j, 2, k)).scale(C64::new(q, 0.0)),
                z21.kron(&leg.tt(2, j, 1, k)),
                z22.kron(&leg.tt(2, j, 2, k)),
            ]);
            (g(j as u8, k as u8), out)
        })
        .collect();
    RepInstance::new(Algebra::Sym2, q, ops, format!("({} [x] {})", base.provenance(), leg.kind))
}

/// `out(z_j^i) = sum_{a,b} rho(z_b^a) (x) A(t_bj) (x) B(t_ai)`.
pub fn coact_mat2(base: &RepInstance, leg_a: &Su2Rep, leg_b: &Su2Rep) -> Result<RepInstance> {
    if base.algebra() != Algebra::Mat2 {
        return Err(Error::AlgebraMismatch { expected: Algebra::Mat2, found: base.algebra() });
    }
    let g = |lower, upper| Generator::new(Algebra::Mat2, lower, upper);
    let mut ops = Vec::new();
    for j in 1..=2u8 {
        for i in 1..=2u8 {
            let mut terms = Vec::new();
            for a in 1..=2u8 {
                for b in 1..=2u8 {
                    let t = leg_a.t(b as usize, j as usize).kron(leg_b.t(a as usize, i as usize));
                    terms.push(base.op(g(b, a)).kron(&t));
                }
            }
            ops.push((g(j, i), sum(terms)));
        }
    }
    RepInstance::new(
        Algebra::Mat2,
        base.q(),
        ops,
        format!("({} [x] {} [x] {})", base.provenance(), leg_a.kind, leg_b.kind),
    )
}

/// Phase of a generator under the torus: `z_jk -> e^{i(theta_j + theta_k)}`
/// for the symmetric algebra, `z_j^i -> e^{i(theta_i - psi_j)}` for angles
/// `(theta_1, theta_2, psi_1, psi_2)` on the matrix algebra.
pub fn torus_phase(g: Generator, angles: &[f64]) -> Result<f64> {
    let (a, b) = (g.index.0 as usize, g.index.1 as usize);
    match g.algebra {
        Algebra::Sym2 if angles.len() == 2 => Ok(angles[a - 1] + angles[b - 1]),
        Algebra::Mat2 if angles.len() == 4 => Ok(angles[b - 1] - angles[2 + a - 1]),
        alg => Err(Error::InvalidArgument(format!(
            "torus of {alg} takes {} angles, got {}",
            if alg == Algebra::Sym2 { 2 } else { 4 },
            angles.len()
        ))),
    }
}

pub fn torus_twist(rep: &RepInstance, angles: &[f64]) -> Result<RepInstance> {
    let phases: Vec<(Generator, f64)> =
        rep.generators().map(|(g, _)| torus_phase(*g, angles).map(|p| (*g, p))).collect::<Result<_>>()?;
    let mut out = rep.map_ops(&format!("twist({})", rep.provenance()), |g, op| {
        let p = phases.iter().find(|(h, _)| *h == g).expect("generator").1;
        op.scale(C64::from_polar(1.0, p))
    })?;
    out.set_provenance(rep.provenance().to_string());
    Ok(out)
}

/// Every composite the construction lists: the six symmetric ones followed
/// by the matrix ones (the two leg orders of a mixed pair both appear).
pub fn paper_composites(q: f64, trunc: usize) -> Vec<CompositeSpec> {
    use Simplest::*;
    use Su2Kind::*;
    let mut out = Vec::new();
    for base in [F2, F1, F0] {
        for leg in [Pi, Eps] {
            out.push(CompositeSpec::new(Algebra::Sym2, base, &[leg], q, trunc));
        }
    }
    for base in [F2, F1, F0] {
        for legs in [[Pi, Pi], [Pi, Eps], [Eps, Pi], [Eps, Eps]] {
            out.push(CompositeSpec::new(Algebra::Mat2, base, &legs, q, trunc));
        }
    }
    out
}
