//! Concrete representations: the five series of bounded irreducible
//! representations of the symmetric algebra, the simplest representations
//! of both algebras, and the quantum SU(2) and disc building blocks.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{action_matrix, fock_basis, gram_matrix, Algebra, Generator};
use crate::error::{Error, Result};
use crate::numeric::{graded_space, Band, RepInstance, Space, TruncOp, C64};

/// The five series of the symmetric-matrix classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesId {
    Pi1,
    Pi2,
    Pi3,
    Pi4,
    Pi5,
}

impl SeriesId {
    pub const ALL: [SeriesId; 5] = [SeriesId::Pi1, SeriesId::Pi2, SeriesId::Pi3, SeriesId::Pi4, SeriesId::Pi5];

    pub fn phase_arity(self) -> usize {
        match self {
            SeriesId::Pi1 => 2,
            SeriesId::Pi2 | SeriesId::Pi3 | SeriesId::Pi4 => 1,
            SeriesId::Pi5 => 0,
        }
    }

    /// Number of `l2(Z+)` tensor factors.
    pub fn tensor_rank(self) -> usize {
        match self {
            SeriesId::Pi1 => 0,
            SeriesId::Pi2 | SeriesId::Pi3 => 1,
            SeriesId::Pi4 => 2,
            SeriesId::Pi5 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SeriesId::Pi1 => "pi1",
            SeriesId::Pi2 => "pi2",
            SeriesId::Pi3 => "pi3",
            SeriesId::Pi4 => "pi4",
            SeriesId::Pi5 => "pi5",
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SeriesId::ALL
            .into_iter()
            .find(|id| id.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown series `{s}`")))
    }
}

/// Whether to apply the two corrections to the displayed formulas
/// (modulus `q^-1` on `z11` in the scalar series, `e^{2i phi}` on `z11` in
/// the third series) or build them literally.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Printing {
    #[default]
    Corrected,
    AsPrinted,
}

/// The simplest representations the coaction starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Simplest {
    F0,
    F1,
    F2,
}

impl FromStr for Simplest {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f0" | "calf0" => Ok(Simplest::F0),
            "f1" | "calf1" => Ok(Simplest::F1),
            "f2" | "calf2" => Ok(Simplest::F2),
            _ => Err(Error::InvalidArgument(format!("unknown simplest representation `{s}`"))),
        }
    }
}

impl fmt::Display for Simplest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Simplest::F0 => "F0",
            Simplest::F1 => "F1",
            Simplest::F2 => "F2",
        })
    }
}

/// Representations of the quantum SU(2) coordinate algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Su2Kind {
    Pi,
    Eps,
}

impl FromStr for Su2Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pi" | "su2_pi" => Ok(Su2Kind::Pi),
            "eps" | "epsilon" | "su2_eps" => Ok(Su2Kind::Eps),
            _ => Err(Error::InvalidArgument(format!("unknown SU(2) representation `{s}`"))),
        }
    }
}

impl fmt::Display for Su2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Su2Kind::Pi => "pi",
            Su2Kind::Eps => "eps",
        })
    }
}

/// The four matrix coefficients `t_ij` as operators.
#[derive(Clone, Debug)]
pub struct Su2Rep {
    pub kind: Su2Kind,
    t: [[TruncOp; 2]; 2],
}

impl Su2Rep {
    /// `t_ij` with 1-based indices.
    pub fn t(&self, i: usize, j: usize) -> &TruncOp {
        &self.t[i - 1][j - 1]
    }

    /// `t_ab t_cd` by operator composition.
    pub fn tt(&self, a: usize, b: usize, c: usize, d: usize) -> TruncOp {
        self.t(a, b) * self.t(c, d)
    }

    pub fn space(&self) -> &Space {
        self.t[0][0].space()
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn phase(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

fn check_dims(id: &str, dims: &[usize], rank: usize) -> Result<()> {
    if dims.len() != rank {
        return Err(Error::InvalidArgument(format!("{id} needs {rank} truncation dims, got {}", dims.len())));
    }
    if let Some(d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidArgument(format!("truncation {d} too small for {id}")));
    }
    Ok(())
}

fn diag1(dim: usize, f: impl Fn(usize) -> f64) -> TruncOp {
    TruncOp::shift(dim, 0, f)
}

fn id1(dim: usize) -> TruncOp {
    diag1(dim, |_| 1.0)
}

/// One of the five series at truncation `dims` (one entry per tensor factor).
pub fn build_sym_series(id: SeriesId, phases: &[f64], q: f64, dims: &[usize], printing: Printing) -> Result<RepInstance> {
    if phases.len() != id.phase_arity() {
        return Err(Error::PhaseArity { series: id.name().into(), expected: id.phase_arity(), found: phases.len() });
    }
    check_dims(id.name(), dims, id.tensor_rank())?;
    check_q(q)?;
    let g = |a, b| Generator::new(Algebra::Sym2, a, b);
    let (z11, z21, z22) = (g(1, 1), g(2, 1), g(2, 2));
    let corrected = printing == Printing::Corrected;
    let ops = match id {
        SeriesId::Pi1 => {
            let (phi, psi) = (phases[0], phases[1]);
            let modulus = if corrected { 1.0 / q } else { 1.0 };
            vec![
                (z11, TruncOp::scalar(phase(psi) * modulus)),
                (z21, TruncOp::scalar(re(0.0))),
                (z22, TruncOp::scalar(phase(phi))),
            ]
        }
        SeriesId::Pi2 => {
            let n = dims[0];
            let sp = Space::shifts(&[n]);
            vec![
                (z11, TruncOp::shift(n, 1, |k| (1.0 - q.powi(4 * k as i32 + 4)).sqrt() / q)),
                (z21, TruncOp::zero(&sp)),
                (z22, TruncOp::identity(&sp).scale(phase(phases[0]))),
            ]
        }
        SeriesId::Pi3 => {
            let n = dims[0];
            let phi = phases[0];
            let twist = if corrected { phase(2.0 * phi) } else { re(1.0) };
            vec![
                (z11, TruncOp::shift(n, -1, |k| -(1.0 - q.powi(4 * k as i32)).sqrt() / q).scale(twist)),
                (z21, diag1(n, |k| q.powi(2 * k as i32)).scale(phase(phi))),
                (z22, TruncOp::shift(n, 1, |k| (1.0 - q.powi(4 * k as i32 + 4)).sqrt())),
            ]
        }
        SeriesId::Pi4 => {
            let (nk, nl) = (dims[0], dims[1]);
            let phi = phases[0];
            let diag_part = diag1(nk, |k| q.powi(2 * k as i32)).kron(&id1(nl)).scale(phase(phi));
            let jump = TruncOp::shift(nk, 2, |k| {
                ((1.0 - q.powi(2 * k as i32 + 2)) * (1.0 - q.powi(2 * k as i32 + 4))).sqrt()
            })
            .kron(&TruncOp::shift(nl, -1, |l| (1.0 - q.powi(4 * l as i32)).sqrt()))
            .scale(re(-1.0 / q));
            vec![
                (z11, &diag_part + &jump),
                (
                    z21,
                    TruncOp::shift(nk, 1, |k| (1.0 - q.powi(2 * k as i32 + 2)).sqrt())
                        .kron(&diag1(nl, |l| q.powi(2 * l as i32))),
                ),
                (z22, id1(nk).kron(&TruncOp::shift(nl, 1, |l| (1.0 - q.powi(4 * l as i32 + 4)).sqrt()))),
            ]
        }
        SeriesId::Pi5 => pi5_ops(q, dims[0], dims[1], dims[2]),
    };
    let params: Vec<(&str, f64)> = match id {
        SeriesId::Pi1 => vec![("phi", phases[0]), ("psi", phases[1])],
        SeriesId::Pi5 => vec![],
        _ => vec![("phi", phases[0])],
    };
    let tag = match printing {
        Printing::Corrected => id.name().to_string(),
        Printing::AsPrinted => format!("{}(as printed)", id.name()),
    };
    Ok(RepInstance::new(Algebra::Sym2, q, ops, tag)?.with_params(&params))
}

fn pi5_ops(q: f64, nk: usize, nl: usize, nm: usize) -> Vec<(Generator, TruncOp)> {
    let g = |a, b| Generator::new(Algebra::Sym2, a, b);
    let up_m = id1(nk)
        .kron(&diag1(nl, |l| q.powi(2 * l as i32)))
        .kron(&TruncOp::shift(nm, 1, |m| (1.0 - q.powi(4 * m as i32 + 4)).sqrt()));
    let jump = TruncOp::shift(nk, -1, |k| (1.0 - q.powi(4 * k as i32)).sqrt())
        .kron(&TruncOp::shift(nl, 2, |l| ((1.0 - q.powi(2 * l as i32 + 2)) * (1.0 - q.powi(2 * l as i32 + 4))).sqrt()))
        .kron(&id1(nm))
        .scale(re(-1.0 / q));
    vec![
        (g(1, 1), &up_m + &jump),
        (
            g(2, 1),
            diag1(nk, |k| q.powi(2 * k as i32))
                .kron(&TruncOp::shift(nl, 1, |l| (1.0 - q.powi(2 * l as i32 + 2)).sqrt()))
                .kron(&id1(nm)),
        ),
        (
            g(2, 2),
            TruncOp::shift(nk, 1, |k| (1.0 - q.powi(4 * k as i32 + 4)).sqrt()).kron(&id1(nl)).kron(&id1(nm)),
        ),
    ]
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("q must lie in (0, 1), got {q}")))
    }
}

/// The infinite-dimensional representation (`Pi`, truncated to `dim`) or the
/// counit (`Eps`, one-dimensional).
pub fn build_su2_rep(kind: Su2Kind, q: f64, dim: usize) -> Su2Rep {
    let t = match kind {
        Su2Kind::Eps => {
            let s = |x: f64| TruncOp::scalar(re(x));
            [[s(1.0), s(0.0)], [s(0.0), s(1.0)]]
        }
        Su2Kind::Pi => [
            [
                TruncOp::shift(dim, -1, |n| (1.0 - q.powi(2 * n as i32)).sqrt()),
                diag1(dim, |n| q.powi(n as i32 + 1)),
            ],
            [
                diag1(dim, |n| -q.powi(n as i32)),
                TruncOp::shift(dim, 1, |n| (1.0 - q.powi(2 * n as i32 + 2)).sqrt()),
            ],
        ],
    };
    Su2Rep { kind, t }
}

/// Fock representation of the disc algebra `z* z = t^2 z z* + 1 - t^2`.
pub fn build_disc_fock(t: f64, dim: usize) -> TruncOp {
    TruncOp::shift(dim, 1, |n| (1.0 - t.powi(2 * n as i32 + 2)).sqrt())
}

/// `size` is the truncation for `F1`, the per-factor truncation of the
/// symmetric Fock model, or the degree bound of the matrix Fock module.
pub fn build_simplest(algebra: Algebra, kind: Simplest, q: f64, size: usize) -> Result<RepInstance> {
    check_q(q)?;
    let tag = format!("{kind}");
    let gens = algebra.generators();
    let rep = match (algebra, kind) {
        (_, Simplest::F0) => {
            let ops = gens
                .iter()
                .map(|&g| {
                    let v = match g.index {
                        (1, 1) => 1.0 / q,
                        (2, 2) => 1.0,
                        _ => 0.0,
                    };
                    (g, TruncOp::scalar(re(v)))
                })
                .collect();
            RepInstance::new(algebra, q, ops, tag)?
        }
        (_, Simplest::F1) => {
            if size < 2 {
                return Err(Error::InvalidArgument("F1 needs truncation >= 2".into()));
            }
            let t = match algebra {
                Algebra::Sym2 => q * q,
                Algebra::Mat2 => q,
            };
            let sp = Space::shifts(&[size]);
            let ops = gens
                .iter()
                .map(|&g| {
                    let op = match g.index {
                        (1, 1) => build_disc_fock(t, size).scale(re(1.0 / q)),
                        (2, 2) => TruncOp::identity(&sp),
                        _ => TruncOp::zero(&sp),
                    };
                    (g, op)
                })
                .collect();
            RepInstance::new(algebra, q, ops, tag)?
        }
        (Algebra::Sym2, Simplest::F2) => {
            let mut r = build_sym_series(SeriesId::Pi5, &[], q, &[size; 3], Printing::Corrected)?;
            r.set_provenance(tag);
            r
        }
        (Algebra::Mat2, Simplest::F2) => {
            if size < 1 {
                return Err(Error::InvalidArgument("Fock degree bound must be >= 1".into()));
            }
            let mut r = build_fock_module(algebra, size, q)?;
            r.set_provenance(tag);
            r
        }
    };
    Ok(rep)
}

/// Numeric model of the Fock module up to a degree bound: the symbolic
/// action on normal words, orthonormalized by the Cholesky factor of the
/// exact Gram matrix evaluated at `q`. Basis levels are word degrees.
pub fn build_fock_module(algebra: Algebra, degree: usize, q: f64) -> Result<RepInstance> {
    check_q(q)?;
    let basis = fock_basis(algebra, degree);
    let n = basis.len();
    let to_f64 = |m: Vec<Vec<crate::algebra::LaurentScalar>>| DMatrix::from_fn(n, n, |i, j| m[i][j].eval_f64(q));
    let gram = to_f64(gram_matrix(algebra, degree));
    let chol = gram
        .cholesky()
        .ok_or_else(|| Error::Numerical(format!("Fock Gram matrix not positive definite at q = {q}")))?;
    let l = chol.l();
    let lt = l.transpose();
    // op = L^T C L^{-T}, computed as a triangular solve on the right
    let space = graded_space(basis.iter().map(|w| w.len() as u32).collect());
    let mut ops = Vec::new();
    for g in algebra.generators() {
        let c = to_f64(action_matrix(g, degree));
        let lc = &lt * c;
        let m = l
            .solve_lower_triangular(&lc.transpose())
            .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?
            .transpose();
        let cm = m.map(|x| if x.abs() < 1e-15 { C64::new(0.0, 0.0) } else { re(x) });
        ops.push((g, TruncOp::from_dense(&space, vec![Band::RAISE], &cm)));
    }
    RepInstance::new(algebra, q, ops, format!("fock(deg<={degree})"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::relation_residual_suite;

    #[test]
    fn pi2_first_step() {
        let r = build_sym_series(SeriesId::Pi2, &[0.3], 0.5, &[6], Printing::Corrected).unwrap();
        let z11 = r.op(Generator::new(Algebra::Sym2, 1, 1));
        assert!((z11.entry(1, 0).re - 1.936_491_673_103_708).abs() < 1e-12);
    }

    #[test]
    fn su2_values() {
        let q: f64 = 0.5;
        let p = build_su2_rep(Su2Kind::Pi, q, 6);
        assert!((p.t(2, 1).entry(3, 3).re + q.powi(3)).abs() < 1e-15);
        assert!((p.t(2, 2).entry(1, 0).re - (1.0 - q * q).sqrt()).abs() < 1e-15);
        let e = build_su2_rep(Su2Kind::Eps, q, 6);
        assert_eq!(e.t(1, 2).entry(0, 0), re(0.0));
        assert_eq!(e.t(2, 2).entry(0, 0), re(1.0));
    }

    #[test]
    fn mat2_fock_norm() {
        let q: f64 = 0.5;
        let r = build_simplest(Algebra::Mat2, Simplest::F2, q, 2).unwrap();
        let z22 = r.op(Generator::new(Algebra::Mat2, 2, 2));
        let img = z22.apply(&{
            let mut v = vec![re(0.0); r.dim()];
            v[0] = re(1.0);
            v
        });
        let norm2: f64 = img.iter().map(|x| x.norm_sqr()).sum();
        assert!((norm2 - (1.0 - q * q)).abs() < 1e-14);
        for rr in relation_residual_suite(&r).unwrap() {
            assert!(rr.residual < 1e-12, "{rr:?}");
        }
    }
}
