use serde::{Deserialize, Serialize};

use super::op::{TruncOp, C64};
use super::rep::RepInstance;
use crate::algebra::{NCPoly, Presentation, Word};
use crate::error::{Error, Result};

/// Operator of a polynomial: coefficients evaluated at the representation's
/// `q`, letters composed left to right, starred letters by adjoints.
pub fn evaluate_word(p: &NCPoly, rep: &RepInstance) -> Result<TruncOp> {
    if p.algebra() != rep.algebra() {
        return Err(Error::AlgebraMismatch { expected: rep.algebra(), found: p.algebra() });
    }
    let space = rep.space();
    let mut acc = TruncOp::zero(space);
    for (w, c) in p.terms() {
        let coeff = c.eval_f64(rep.q());
        let term = word_op(w, rep).scale(C64::new(coeff, 0.0));
        acc = &acc + &term;
    }
    Ok(acc)
}

fn word_op(w: &Word, rep: &RepInstance) -> TruncOp {
    let mut letters = w.letters().iter();
    let Some(first) = letters.next() else {
        return TruncOp::identity(rep.space());
    };
    letters.fold(rep.op(*first).clone(), |acc, g| &acc * rep.op(*g))
}

/// Per-factor margin needed for every word of `p` to act exactly: the sum
/// of the letters' upward bandwidths, maximized over words.
pub fn word_margin(p: &NCPoly, rep: &RepInstance) -> Vec<u32> {
    let rank = rep.space().rank();
    let mut out = vec![0; rank];
    for (w, _) in p.terms() {
        let mut m = vec![0; rank];
        for g in w.letters() {
            for (slot, b) in m.iter_mut().zip(rep.op(*g).band()) {
                *slot += b.up;
            }
        }
        for (o, v) in out.iter_mut().zip(m) {
            *o = (*o).max(v);
        }
    }
    out
}

/// Basis vectors on which every word of the given polynomials acts exactly.
pub fn interior_for(polys: &[&NCPoly], rep: &RepInstance) -> Vec<usize> {
    let rank = rep.space().rank();
    let mut margin = vec![0; rank];
    for p in polys {
        for (o, v) in margin.iter_mut().zip(word_margin(p, rep)) {
            *o = (*o).max(v);
        }
    }
    rep.space().interior(&margin)
}

/// Largest column norm of `p`'s operator over interior basis vectors.
pub fn interior_residual(p: &NCPoly, rep: &RepInstance) -> Result<f64> {
    let cols = interior_for(&[p], rep);
    if cols.is_empty() {
        return Err(Error::NoInterior(p.to_expr()));
    }
    Ok(evaluate_word(p, rep)?.max_column_norm(&cols))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationResidual {
    pub relation: String,
    pub residual: f64,
}

/// Interior residual of every defining relation of the representation's
/// algebra, in presentation order.
pub fn relation_residual_suite(rep: &RepInstance) -> Result<Vec<RelationResidual>> {
    let pres = Presentation::get(rep.algebra());
    pres.relations()
        .iter()
        .map(|r| {
            Ok(RelationResidual { relation: r.name.clone(), residual: interior_residual(&r.as_poly(), rep)? })
        })
        .collect()
}

/// Largest residual of the suite, with the offending relation.
pub fn worst_relation(rep: &RepInstance) -> Result<RelationResidual> {
    let suite = relation_residual_suite(rep)?;
    Ok(suite
        .into_iter()
        .fold(RelationResidual { relation: String::new(), residual: 0.0 }, |a, b| {
            if b.residual > a.residual {
                b
            } else {
                a
            }
        }))
}

/// Fails unless every relation holds to `tol` on the interior.
pub fn require_representation(rep: &RepInstance, tol: f64) -> Result<()> {
    let worst = worst_relation(rep)?;
    if worst.residual > tol {
        return Err(Error::NotARepresentation { relation: worst.relation, residual: worst.residual });
    }
    Ok(())
}
