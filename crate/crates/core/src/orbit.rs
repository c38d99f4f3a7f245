//! The Z^2 action on the plane transporting the joint spectrum of
//! `(z21 z21*, z22 z22*)`, and the admissibility classification of orbits.
//!
//! Bounded nonnegative spectra force every backward chain of `F1`, `F2` to
//! terminate exactly at zero or to sit at a fixed point. Within a window of
//! `n`, `m` values the admissible points are
//!
//! * `Omega01`: the common fixed point `(0, 1)`;
//! * `Omega10`: `(q^{4n}, 1 - q^{4n})`, on the fixed line of `F1`;
//! * `Omega00`: `(q^{4n}(1 - q^{2m}), 1 - q^{4n})`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::LaurentScalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub x1: f64,
    pub x2: f64,
}

impl OrbitPoint {
    pub fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    /// Max-norm distance.
    pub fn dist(self, o: OrbitPoint) -> f64 {
        (self.x1 - o.x1).abs().max((self.x2 - o.x2).abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitClass {
    Omega00,
    Omega10,
    Omega01,
    Inadmissible,
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitClass::Omega00 => "Omega00",
            OrbitClass::Omega10 => "Omega10",
            OrbitClass::Omega01 => "Omega01",
            OrbitClass::Inadmissible => "Inadmissible",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// One application of `F1` or `F2` (`k` = 1 or 2), or its inverse.
pub fn step(p: OrbitPoint, k: u8, dir: Direction, q: f64) -> OrbitPoint {
    let (q2, q4) = (q * q, q.powi(4));
    match (k, dir) {
        (1, Direction::Forward) => OrbitPoint::new(q2 * p.x1 - (1.0 - q2) * p.x2 + 1.0 - q2, p.x2),
        (1, Direction::Inverse) => OrbitPoint::new((p.x1 + (1.0 - q2) * p.x2 - (1.0 - q2)) / q2, p.x2),
        (2, Direction::Forward) => OrbitPoint::new(q4 * p.x1, q4 * p.x2 + 1.0 - q4),
        (2, Direction::Inverse) => OrbitPoint::new(p.x1 / q4, (p.x2 - 1.0 + q4) / q4),
        _ => panic!("map index must be 1 or 2"),
    }
}

/// `F2^n F1^m (seed)` in closed form; negative exponents use the inverses.
pub fn orbit_point(seed: OrbitPoint, m: i32, n: i32, q: f64) -> OrbitPoint {
    let a = q.powi(2 * m);
    let b = q.powi(4 * n);
    OrbitPoint::new(a * b * seed.x1 - b * (1.0 - a) * (seed.x2 - 1.0), b * seed.x2 + 1.0 - b)
}

/// A nearest admissible candidate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub class: OrbitClass,
    /// Max-norm distance to the nearest candidate of `class` (or of any
    /// class when inadmissible).
    pub distance: f64,
    /// `(m, n)` of the matched candidate; `None` for the fixed point.
    pub indices: Option<(u32, u32)>,
}

/// Every admissible point within the window with its class and `(m, n)`.
pub fn candidates(q: f64, window: u32) -> Vec<(OrbitClass, OrbitPoint, Option<(u32, u32)>)> {
    let mut out = vec![(OrbitClass::Omega01, OrbitPoint::new(0.0, 1.0), None)];
    for n in 0..=window {
        let h = q.powi(4 * n as i32);
        out.push((OrbitClass::Omega10, OrbitPoint::new(h, 1.0 - h), Some((0, n))));
    }
    for n in 0..=window {
        let h = q.powi(4 * n as i32);
        for m in 0..=window {
            let x1 = h * (1.0 - q.powi(2 * m as i32));
            out.push((OrbitClass::Omega00, OrbitPoint::new(x1, 1.0 - h), Some((m, n))));
        }
    }
    out
}

/// Nearest candidate of a given class.
fn nearest(p: OrbitPoint, class: Option<OrbitClass>, q: f64, window: u32) -> Verdict {
    let mut best = Verdict { class: OrbitClass::Inadmissible, distance: f64::INFINITY, indices: None };
    for (c, pt, idx) in candidates(q, window) {
        if class.is_some_and(|want| want != c) {
            continue;
        }
        let d = p.dist(pt);
        if d < best.distance {
            best = Verdict { class: c, distance: d, indices: idx };
        }
    }
    best
}

/// Class of the orbit through `seed`, decided by membership to `tol`.
pub fn classify_seed(seed: OrbitPoint, q: f64, window: u32, tol: f64) -> Verdict {
    let v = nearest(seed, None, q, window);
    if v.distance <= tol {
        v
    } else {
        Verdict { class: OrbitClass::Inadmissible, distance: v.distance, indices: None }
    }
}

/// Exact membership for seeds given as Laurent polynomials in `q`, compared
/// after `eval` (the identity for formal `q`, evaluation at a rational `q`
/// for a concrete value).
pub fn classify_seed_exact<T: PartialEq>(
    x1: &LaurentScalar,
    x2: &LaurentScalar,
    window: u32,
    eval: impl Fn(&LaurentScalar) -> T,
) -> (OrbitClass, Option<(u32, u32)>) {
    let (e1, e2) = (eval(x1), eval(x2));
    if e1 == eval(&LaurentScalar::zero()) && e2 == eval(&LaurentScalar::one()) {
        return (OrbitClass::Omega01, None);
    }
    let one = LaurentScalar::one();
    for n in 0..=window {
        let h = LaurentScalar::q_pow(4 * n as i32);
        if e2 != eval(&(&one - &h)) {
            continue;
        }
        if e1 == eval(&h) {
            return (OrbitClass::Omega10, Some((0, n)));
        }
        for m in 0..=window {
            let x = &h * &(&one - &LaurentScalar::q_pow(2 * m as i32));
            if e1 == eval(&x) {
                return (OrbitClass::Omega00, Some((m, n)));
            }
        }
    }
    (OrbitClass::Inadmissible, None)
}

/// Majority class of a weighted point set, with the largest distance of any
/// point to that class. Any inadmissible point makes the whole set so.
pub fn match_spectrum(points: &[(OrbitPoint, usize)], q: f64, window: u32, tol: f64) -> Result<(OrbitClass, f64)> {
    if points.is_empty() {
        return Err(Error::EmptyInput("no spectral points to classify".into()));
    }
    let verdicts: Vec<Verdict> = points.iter().map(|(p, _)| classify_seed(*p, q, window, tol)).collect();
    if let Some(bad) = verdicts.iter().filter(|v| v.class == OrbitClass::Inadmissible).map(|v| v.distance).reduce(f64::max) {
        return Ok((OrbitClass::Inadmissible, bad));
    }
    let classes = [OrbitClass::Omega00, OrbitClass::Omega10, OrbitClass::Omega01];
    let weight = |c: OrbitClass| -> usize {
        verdicts.iter().zip(points).filter(|(v, _)| v.class == c).map(|(_, (_, w))| *w).sum()
    };
    let winner = classes.into_iter().max_by_key(|&c| weight(c)).expect("three classes");
    let residual = points.iter().map(|(p, _)| nearest(*p, Some(winner), q, window).distance).fold(0.0, f64::max);
    Ok((winner, residual))
}

/// CSV rows `x1,x2,class,m,n` for a sweep of seeds.
pub fn sweep_csv(seeds: &[OrbitPoint], q: f64, window: u32, tol: f64) -> String {
    let mut out = String::from("x1,x2,class,m,n\n");
    for &s in seeds {
        let v = classify_seed(s, q, window, tol);
        let (m, n) = match v.indices {
            Some((m, n)) => (m.to_string(), n.to_string()),
            None => (String::new(), String::new()),
        };
        out.push_str(&format!("{},{},{},{},{}\n", s.x1, s.x2, v.class, m, n));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: f64 = 0.5;

    #[test]
    fn fixed_point_and_step() {
        let p = OrbitPoint::new(0.0, 1.0);
        assert_eq!(step(p, 1, Direction::Forward, Q), p);
        assert_eq!(step(p, 2, Direction::Forward, Q), p);
        let s = step(OrbitPoint::new(1.0, 0.0), 2, Direction::Forward, Q);
        assert_eq!(s, OrbitPoint::new(Q.powi(4), 1.0 - Q.powi(4)));
    }

    #[test]
    fn closed_form_value() {
        let p = orbit_point(OrbitPoint::new(0.0, 0.0), 1, 1, Q);
        assert!((p.x1 - 0.046875).abs() < 1e-15 && (p.x2 - 0.9375).abs() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        let c = |x1, x2| classify_seed(OrbitPoint::new(x1, x2), Q, 20, 1e-9).class;
        assert_eq!(c(0.0, 1.0), OrbitClass::Omega01);
        assert_eq!(c(1.0, 0.0), OrbitClass::Omega10);
        assert_eq!(c(0.0, 0.0), OrbitClass::Omega00);
        assert_eq!(c(0.5, 0.0), OrbitClass::Inadmissible);
    }

    #[test]
    fn exact_path() {
        let q4 = LaurentScalar::q_pow(4);
        let x2 = &LaurentScalar::one() - &q4;
        let (c, idx) = classify_seed_exact(&q4, &x2, 20, |x| x.clone());
        assert_eq!((c, idx), (OrbitClass::Omega10, Some((0, 1))));
        let half = LaurentScalar::from_rational(num_rational::BigRational::new(1.into(), 2.into()));
        let (c, _) = classify_seed_exact(&half, &LaurentScalar::zero(), 20, |x| x.clone());
        assert_eq!(c, OrbitClass::Inadmissible);
    }

    #[test]
    fn negative_point_is_inadmissible() {
        let (c, _) = match_spectrum(&[(OrbitPoint::new(-0.1, 0.5), 1)], Q, 20, 1e-9).unwrap();
        assert_eq!(c, OrbitClass::Inadmissible);
        assert!(match_spectrum(&[], Q, 20, 1e-9).is_err());
    }
}
