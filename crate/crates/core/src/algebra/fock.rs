//! The Fock module: the cyclic module on a vacuum `v` killed by every
//! starred generator, with its vacuum state and exact Gram matrices.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::generator::{Algebra, Generator, Word};
use super::laurent::LaurentScalar;
use super::poly::NCPoly;
use super::presentation::Presentation;

/// `w v` for a combination `w` of normal unstarred words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector(NCPoly);

impl FockVector {
    pub fn vacuum(algebra: Algebra) -> Self {
        Self(NCPoly::one(algebra))
    }

    /// Projects an arbitrary element onto the module: normal-forms it and
    /// drops every word carrying a starred (hence annihilating) suffix.
    pub fn from_poly(p: &NCPoly, pres: &Presentation) -> Self {
        let nf = pres.normal_form(p);
        let mut out = NCPoly::zero(p.algebra());
        for (w, c) in nf.terms() {
            if !w.ends_starred() {
                out.add_term(w.clone(), c);
            }
        }
        Self(out)
    }

    pub fn poly(&self) -> &NCPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, w: &Word) -> LaurentScalar {
        self.0.coeff(w)
    }
}

pub fn fock_act(g: Generator, v: &FockVector, pres: &Presentation) -> FockVector {
    FockVector::from_poly(&(&NCPoly::gen(g) * &v.0), pres)
}

/// `<v, p v>`: the constant term of the normal form. Every other normal
/// word has an unstarred prefix or a starred suffix and pairs to zero.
pub fn vacuum_expectation(p: &NCPoly, pres: &Presentation) -> LaurentScalar {
    pres.normal_form(p).constant_term()
}

/// Normal unstarred words of total degree `<= degree`, degree-lex ordered.
pub fn fock_basis(algebra: Algebra, degree: usize) -> Vec<Word> {
    let gens = algebra.generators();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..degree {
        let mut next = Vec::new();
        for w in &layer {
            let floor = w.letters().last().map_or(0, |g| g.rank());
            for g in gens.iter().filter(|g| g.rank() >= floor) {
                next.push(w.concat(&Word::letter(*g)));
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Entry `(i, j)` is `<w_i v, w_j v> = phi(w_i^* w_j)`.
pub fn gram_matrix(algebra: Algebra, degree: usize) -> Vec<Vec<LaurentScalar>> {
    let pres = Presentation::get(algebra);
    let basis = fock_basis(algebra, degree);
    let n = basis.len();
    let mut g = vec![vec![LaurentScalar::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            // distinct degrees are orthogonal by the grading
            if basis[i].len() != basis[j].len() {
                continue;
            }
            let w = basis[i].star().concat(&basis[j]);
            let val = vacuum_expectation(&NCPoly::word(algebra, w), pres);
            g[j][i] = val.clone();
            g[i][j] = val;
        }
    }
    g
}

/// Matrix of an unstarred generator on the Fock basis up to `degree`:
/// column `j` holds `g w_j` expanded in the basis; images beyond the
/// degree bound are dropped.
pub fn action_matrix(g: Generator, degree: usize) -> Vec<Vec<LaurentScalar>> {
    assert!(!g.starred, "starred generators act by the adjoint");
    let pres = Presentation::get(g.algebra);
    let basis = fock_basis(g.algebra, degree);
    let n = basis.len();
    let mut m = vec![vec![LaurentScalar::zero(); n]; n];
    for (j, w) in basis.iter().enumerate() {
        if w.len() == degree {
            continue;
        }
        let img = fock_act(g, &FockVector(NCPoly::word(g.algebra, w.clone())), pres);
        for (u, c) in img.poly().terms() {
            let i = basis.binary_search(u).expect("image stays in the basis");
            m[i][j] = c.clone();
        }
    }
    m
}

/// Exact positive-definiteness at a rational `q`: symmetric Gaussian
/// elimination, whose pivots are ratios of consecutive leading minors.
pub fn is_positive_definite_at(gram: &[Vec<LaurentScalar>], q: &BigRational) -> bool {
    let mut a: Vec<Vec<BigRational>> =
        gram.iter().map(|row| row.iter().map(|c| c.eval_rational(q)).collect()).collect();
    let n = a.len();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if !pivot.is_positive() {
            return false;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_expression;

    #[test]
    fn annihilation_and_creation() {
        let pres = Presentation::get(Algebra::Sym2);
        let z22 = Generator::new(Algebra::Sym2, 2, 2);
        let v = FockVector::vacuum(Algebra::Sym2);
        assert!(fock_act(z22.star(), &v, pres).is_zero());
        let w = fock_act(z22, &v, pres);
        let back = fock_act(z22.star(), &w, pres);
        assert_eq!(back.poly().constant_term(), LaurentScalar::from_pairs(&[(0, 1), (4, -1)]));
        assert_eq!(back.poly().len(), 1);
        let ww = fock_act(z22, &w, pres);
        assert_eq!(ww.poly(), &NCPoly::monomial(Algebra::Sym2, &[z22, z22]));
    }

    #[test]
    fn vacuum_values() {
        let pres = Presentation::get(Algebra::Sym2);
        let e = |s: &str| vacuum_expectation(&parse_expression(s, Algebra::Sym2).unwrap(), pres);
        assert_eq!(e("z21* z21"), LaurentScalar::from_pairs(&[(0, 1), (2, -1)]));
        assert_eq!(e("z11* z11"), LaurentScalar::from_pairs(&[(0, 1), (4, -1)]));
        assert_eq!(e("1"), LaurentScalar::one());
        assert!(e("z11* z21").is_zero());
    }

    #[test]
    fn degree_one_gram_is_diagonal() {
        let g = gram_matrix(Algebra::Sym2, 1);
        assert_eq!(g.len(), 4);
        assert!(g[0][0].is_one());
        let a = LaurentScalar::from_pairs(&[(0, 1), (4, -1)]);
        let b = LaurentScalar::from_pairs(&[(0, 1), (2, -1)]);
        assert_eq!(g[1][1], a);
        assert_eq!(g[2][2], b);
        assert_eq!(g[3][3], a);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(g[i][j].is_zero());
                }
            }
        }
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(fock_basis(Algebra::Sym2, 3).len(), 20);
        assert_eq!(fock_basis(Algebra::Mat2, 4).len(), 70);
        assert!(fock_basis(Algebra::Mat2, 3).iter().all(Word::is_normal));
    }
}
