//! Laurent polynomials in `q` with rational coefficients.
//!
//! Every structure constant of the two presentations lives in this ring, so
//! the symbolic layer never needs square roots or floating point.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Finite map from a power of `q` to a nonzero rational coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i32, BigRational>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    /// The monomial `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    pub fn monomial(coeff: BigRational, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(k, coeff);
        }
        Self { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(n)), 0)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::monomial(r, 0)
    }

    /// Builds `sum c_k q^k` from `(k, c_k)` pairs with integer coefficients.
    pub fn from_pairs(pairs: &[(i32, i64)]) -> Self {
        let mut out = Self::zero();
        for &(k, c) in pairs {
            out += &Self::monomial(BigRational::from_integer(BigInt::from(c)), k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i32) -> BigRational {
        self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The single term `(k, c)` when this is a monomial.
    pub fn as_monomial(&self) -> Option<(i32, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    /// Multiplicative inverse, defined only for monomials `c q^k`.
    pub fn inverse(&self) -> Option<Self> {
        let (k, c) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -k))
    }

    pub fn pow(&self, n: i32) -> Option<Self> {
        if n < 0 {
            return self.inverse()?.pow(-n);
        }
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        Some(acc)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) * q.powi(*k))
            .sum()
    }

    /// Exact evaluation at a nonzero rational `q`.
    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (k, c) in &self.terms {
            acc += c * pow_rational(q, *k);
        }
        acc
    }

    fn add_term(&mut self, k: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&k) {
            Some(slot) => {
                *slot += c;
                slot.is_zero()
            }
            None => {
                self.terms.insert(k, c);
                false
            }
        };
        if remove {
            self.terms.remove(&k);
        }
    }
}

pub(crate) fn pow_rational(q: &BigRational, k: i32) -> BigRational {
    let base = if k < 0 { q.recip() } else { q.clone() };
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&LaurentScalar> for LaurentScalar {
    fn sub_assign(&mut self, rhs: &LaurentScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, -c.clone());
        }
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, rhs: LaurentScalar) -> LaurentScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Writes one term with its sign folded in, e.g. `-3/2 q^-2`, `q`, `1`.
fn fmt_term(k: i32, c: &BigRational, out: &mut String) {
    let mag = c.abs();
    let power = match k {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{k}"),
    };
    if power.is_empty() {
        out.push_str(&fmt_rational(&mag));
    } else if mag.is_one() {
        out.push_str(&power);
    } else {
        out.push_str(&fmt_rational(&mag));
        out.push(' ');
        out.push_str(&power);
    }
}

impl LaurentScalar {
    /// Grammar-compatible rendering; highest power first.
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            fmt_term(*k, c, &mut out);
        }
        out
    }

    /// True when printing needs parentheses in a product.
    pub(crate) fn needs_parens(&self) -> bool {
        self.terms.len() > 1
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self.to_expr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentScalar {
        LaurentScalar::q_pow(1)
    }

    #[test]
    fn arithmetic_cancels_to_zero() {
        let a = &q() - &q().inverse().unwrap();
        let b = &q() + &q().inverse().unwrap();
        // (q - q^-1)(q + q^-1) = q^2 - q^-2
        let prod = &a * &b;
        assert_eq!(prod, LaurentScalar::from_pairs(&[(2, 1), (-2, -1)]));
        assert!((&prod - &prod).is_zero());
    }

    #[test]
    fn evaluation_matches_float_and_exact() {
        let p = LaurentScalar::from_pairs(&[(3, 1), (-1, -1)]); // q^3 - q^-1
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.eval_rational(&half), BigRational::new((-15).into(), 8.into()));
        assert!((p.eval_f64(0.5) + 1.875).abs() < 1e-15);
    }

    #[test]
    fn inverse_only_for_monomials() {
        assert!(LaurentScalar::from_pairs(&[(0, 1), (4, -1)]).inverse().is_none());
        let m = LaurentScalar::monomial(BigRational::new(3.into(), 2.into()), 2);
        assert!((&m * &m.inverse().unwrap()).is_one());
    }

    #[test]
    fn printing() {
        assert_eq!(LaurentScalar::from_pairs(&[(0, 1), (4, -1)]).to_expr(), "-q^4 + 1");
        assert_eq!(LaurentScalar::q_pow(-1).to_expr(), "q^-1");
        assert_eq!(LaurentScalar::zero().to_expr(), "0");
    }
}
