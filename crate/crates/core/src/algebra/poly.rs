use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::generator::{Algebra, Generator, Word};
use super::laurent::LaurentScalar;

/// Element of the free *-algebra over Laurent coefficients: a finite sum of
/// words, all over one algebra, with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    algebra: Algebra,
    terms: BTreeMap<Word, LaurentScalar>,
}

impl NCPoly {
    pub fn zero(algebra: Algebra) -> Self {
        Self { algebra, terms: BTreeMap::new() }
    }

    pub fn one(algebra: Algebra) -> Self {
        Self::scalar(algebra, LaurentScalar::one())
    }

    pub fn scalar(algebra: Algebra, c: LaurentScalar) -> Self {
        Self::term(algebra, Word::empty(), c)
    }

    pub fn gen(g: Generator) -> Self {
        Self::term(g.algebra, Word::letter(g), LaurentScalar::one())
    }

    pub fn word(algebra: Algebra, w: Word) -> Self {
        Self::term(algebra, w, LaurentScalar::one())
    }

    pub fn term(algebra: Algebra, w: Word, c: LaurentScalar) -> Self {
        debug_assert!(w.letters().iter().all(|g| g.algebra == algebra));
        let mut p = Self::zero(algebra);
        p.add_term(w, &c);
        p
    }

    /// Product of generators given in left-to-right order.
    pub fn monomial(algebra: Algebra, letters: &[Generator]) -> Self {
        Self::word(algebra, Word(letters.to_vec()))
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing degree-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, LaurentScalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> LaurentScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> LaurentScalar {
        self.coeff(&Word::empty())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: &LaurentScalar) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot += c;
                slot.is_zero()
            }
            None => {
                self.terms.insert(w.clone(), c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &NCPoly, c: &LaurentScalar) {
        assert_eq!(self.algebra, other.algebra, "mixing algebras");
        for (w, d) in &other.terms {
            self.add_term(w.clone(), &(c * d));
        }
    }

    pub fn scale(&self, c: &LaurentScalar) -> NCPoly {
        let mut out = NCPoly::zero(self.algebra);
        out.add_scaled(self, c);
        out
    }

    /// The involution: reverses every word and flips each star.
    /// Coefficients are real Laurent polynomials, so they are unchanged.
    pub fn star(&self) -> NCPoly {
        NCPoly {
            algebra: self.algebra,
            terms: self.terms.iter().map(|(w, c)| (w.star(), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        let mut acc = NCPoly::one(self.algebra);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Rendering in the input grammar.
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = split_sign(c);
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let word = fmt_word(w);
            if w.is_empty() {
                if mag.needs_parens() {
                    out.push_str(&format!("({})", mag.to_expr()));
                } else {
                    out.push_str(&mag.to_expr());
                }
            } else if mag.is_one() {
                out.push_str(&word);
            } else if mag.needs_parens() {
                out.push_str(&format!("({}) {word}", mag.to_expr()));
            } else {
                out.push_str(&format!("{} {word}", mag.to_expr()));
            }
        }
        out
    }
}

/// Pulls a leading minus out of a monomial coefficient so that `-q z11`
/// prints instead of `+ -q z11`.
fn split_sign(c: &LaurentScalar) -> (bool, LaurentScalar) {
    use num_traits::Signed;
    match c.as_monomial() {
        Some((_, r)) if r.is_negative() => (true, -c),
        _ => (false, c.clone()),
    }
}

/// Letters separated by spaces, runs written as powers: `z22^2 z11*`.
pub(crate) fn fmt_word(w: &Word) -> String {
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i + 1;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let n = j - i;
        if n == 1 {
            parts.push(letters[i].name());
        } else {
            parts.push(format!("{}^{n}", letters[i].name()));
        }
        i = j;
    }
    parts.join(" ")
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentScalar::one());
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentScalar::from_int(-1));
        out
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        assert_eq!(self.algebra, rhs.algebra, "mixing algebras");
        let mut out = NCPoly::zero(self.algebra);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.concat(b), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&LaurentScalar::from_int(-1))
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: NCPoly) -> NCPoly {
        &self + &rhs
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[{}]({})", self.algebra, self.to_expr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_reverses_and_flips() {
        let z11 = Generator::new(Algebra::Sym2, 1, 1);
        let z22 = Generator::new(Algebra::Sym2, 2, 2);
        let p = NCPoly::monomial(Algebra::Sym2, &[z11, z22]);
        let expected = NCPoly::monomial(Algebra::Sym2, &[z22.star(), z11.star()]);
        assert_eq!(p.star(), expected);
        assert_eq!(p.star().star(), p);
        let c = NCPoly::scalar(Algebra::Sym2, LaurentScalar::from_pairs(&[(-1, 1), (3, 2)]));
        assert_eq!(c.star(), c);
    }

    #[test]
    fn products_of_sums() {
        let alg = Algebra::Sym2;
        let a = NCPoly::gen(Generator::new(alg, 2, 1));
        let one = NCPoly::one(alg);
        let s = &a + &one;
        let sq = &s * &s;
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.to_expr(), "1 + 2 z21 + z21^2");
    }
}
