//! Expression grammar for both algebras.
//!
//! ```text
//! expr    := sign? product (sign product)*
//! product := factor ('.'? factor)*
//! factor  := atom ('*' | '^' int)*
//! atom    := number ('/' number)? | 'q' | generator | '(' expr ')'
//! ```
//!
//! Generators are `z11 z21 z22` (plus the sugar `z12 = q z21`) for the
//! symmetric algebra and `z1^1 z1^2 z2^1 z2^2` for the matrix algebra.
//! Postfix `*` is the involution; `*` never means multiplication.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::generator::{Algebra, Generator};
use super::laurent::LaurentScalar;
use super::poly::NCPoly;
use crate::error::{Error, Result};

pub fn parse_expression(text: &str, algebra: Algebra) -> Result<NCPoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, algebra };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

/// Parses a scalar expression in `q` alone (no generators).
pub fn parse_scalar(text: &str) -> Result<LaurentScalar> {
    // Generators are rejected because the result must be a pure scalar.
    let p = parse_expression(text, Algebra::Sym2)?;
    if p.terms().any(|(w, _)| !w.is_empty()) {
        return Err(Error::Syntax { pos: 0, msg: "expected a scalar in q".into() });
    }
    Ok(p.constant_term())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    algebra: Algebra,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Next byte without skipping whitespace; postfix operators must be glued.
    fn peek_tight(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = NCPoly::zero(self.algebra);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let term = self.product()?;
            acc.add_scaled(&term, &LaurentScalar::from_int(sign));
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn starts_atom(c: u8) -> bool {
        c.is_ascii_digit() || c == b'q' || c == b'z' || c == b'('
    }

    fn product(&mut self) -> Result<NCPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'.') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                Some(c) if Self::starts_atom(c) => {
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<NCPoly> {
        let mut val = self.atom()?;
        loop {
            match self.peek_tight() {
                Some(b'*') => {
                    self.pos += 1;
                    val = val.star();
                }
                Some(b'^') => {
                    self.pos += 1;
                    let at = self.pos;
                    let k = self.signed_int()?;
                    val = self.power(val, k, at)?;
                }
                _ => return Ok(val),
            }
        }
    }

    fn power(&self, val: NCPoly, k: i64, at: usize) -> Result<NCPoly> {
        let k32 = i32::try_from(k).map_err(|_| Error::Syntax { pos: at, msg: "exponent out of range".into() })?;
        if k32 >= 0 {
            return Ok(val.pow(k32 as u32));
        }
        let is_scalar = val.terms().all(|(w, _)| w.is_empty());
        let inv = if is_scalar { val.constant_term().pow(k32) } else { None };
        match inv {
            Some(c) => Ok(NCPoly::scalar(self.algebra, c)),
            None => Err(Error::Syntax {
                pos: at,
                msg: "negative powers need a monomial scalar base".into(),
            }),
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek_tight() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let n = self.digits()?;
        let v: i64 = n.parse().map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<NCPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(NCPoly::scalar(self.algebra, LaurentScalar::q_pow(1)))
            }
            Some(b'z') => self.generator(),
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits()?.parse().expect("digits");
                let mut den = BigInt::from(1);
                if self.peek_tight() == Some(b'/') {
                    self.pos += 1;
                    den = self.digits()?.parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(self.err("division by zero"));
                    }
                }
                let r = BigRational::new(num, den);
                Ok(NCPoly::scalar(self.algebra, LaurentScalar::from_rational(r)))
            }
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn generator(&mut self) -> Result<NCPoly> {
        let start = self.pos;
        self.pos += 1; // 'z'
        let d = self.digits()?;
        let name_err = |name: String, alg| Error::UnknownGenerator { name, algebra: alg };
        match self.algebra {
            Algebra::Sym2 => {
                let b = d.as_bytes();
                if b.len() != 2 {
                    return Err(name_err(format!("z{d}"), self.algebra));
                }
                let (j, k) = (b[0] - b'0', b[1] - b'0');
                if (j, k) == (1, 2) {
                    let z21 = Generator::new(Algebra::Sym2, 2, 1);
                    return Ok(NCPoly::gen(z21).scale(&LaurentScalar::q_pow(1)));
                }
                Generator::try_new(self.algebra, j, k)
                    .map(NCPoly::gen)
                    .map_err(|_| name_err(format!("z{d}"), self.algebra))
            }
            Algebra::Mat2 => {
                let b = d.as_bytes();
                let upper = if b.len() == 1 && self.peek_tight() == Some(b'^') {
                    self.pos += 1;
                    let u = self.digits()?;
                    (u.len() == 1).then(|| u.as_bytes()[0] - b'0')
                } else {
                    None
                };
                let text = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match upper {
                    Some(u) => Generator::try_new(self.algebra, b[0] - b'0', u)
                        .map(NCPoly::gen)
                        .map_err(|_| name_err(text, self.algebra)),
                    None => Err(name_err(text, self.algebra)),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Word;

    fn g(a: u8, b: u8) -> Generator {
        Generator::new(Algebra::Sym2, a, b)
    }

    #[test]
    fn literal_product() {
        let p = parse_expression("z11 z21", Algebra::Sym2).unwrap();
        assert_eq!(p, NCPoly::monomial(Algebra::Sym2, &[g(1, 1), g(2, 1)]));
    }

    #[test]
    fn unit_scaling() {
        let p = parse_expression("q^-1", Algebra::Sym2).unwrap();
        assert_eq!(p, NCPoly::scalar(Algebra::Sym2, LaurentScalar::q_pow(-1)));
    }

    #[test]
    fn relation_text() {
        let p = parse_expression("z22* z22 - q^4 z22 z22* - 1 + q^4", Algebra::Sym2).unwrap();
        let z = g(2, 2);
        assert_eq!(p.coeff(&Word(vec![z.star(), z])), LaurentScalar::one());
        assert_eq!(p.coeff(&Word(vec![z, z.star()])), LaurentScalar::from_pairs(&[(4, -1)]));
        assert_eq!(p.constant_term(), LaurentScalar::from_pairs(&[(0, -1), (4, 1)]));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn sugar_and_dots() {
        let a = parse_expression("z12", Algebra::Sym2).unwrap();
        let b = parse_expression("q.z21", Algebra::Sym2).unwrap();
        assert_eq!(a, b);
        let c = parse_expression("(z11 z22)*", Algebra::Sym2).unwrap();
        assert_eq!(c, NCPoly::monomial(Algebra::Sym2, &[g(2, 2).star(), g(1, 1).star()]));
    }

    #[test]
    fn mat2_tokens() {
        let p = parse_expression("z1^2 z2^1* - (q - q^-1) z2^2^2", Algebra::Mat2).unwrap();
        assert_eq!(p.len(), 2);
        let z22 = Generator::new(Algebra::Mat2, 2, 2);
        assert_eq!(p.coeff(&Word(vec![z22, z22])), LaurentScalar::from_pairs(&[(1, -1), (-1, 1)]));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expression("z11 + z13", Algebra::Sym2) {
            Err(Error::UnknownGenerator { name, .. }) => assert_eq!(name, "z13"),
            other => panic!("{other:?}"),
        }
        match parse_expression("z11 + )", Algebra::Sym2) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_expression("z11^-1", Algebra::Sym2).is_err());
        assert!(parse_expression("z1^1", Algebra::Sym2).is_err());
        assert!(parse_expression("z11", Algebra::Mat2).is_err());
    }
}
