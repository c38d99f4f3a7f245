use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The two algebras: polynomials on quantum symmetric 2x2 matrices and on
/// quantum general 2x2 matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Sym2,
    Mat2,
}

impl Algebra {
    /// Unstarred generators in normal-form order (leftmost first).
    pub fn generators(self) -> Vec<Generator> {
        let idx: &[(u8, u8)] = match self {
            Algebra::Sym2 => &[(2, 2), (2, 1), (1, 1)],
            Algebra::Mat2 => &[(2, 2), (2, 1), (1, 2), (1, 1)],
        };
        idx.iter().map(|&(a, b)| Generator::new(self, a, b)).collect()
    }

    /// Unstarred generators followed by their adjoints.
    pub fn letters(self) -> Vec<Generator> {
        let mut g = self.generators();
        let stars: Vec<_> = g.iter().rev().map(|x| x.star()).collect();
        g.extend(stars);
        g
    }

    pub fn name(self) -> &'static str {
        match self {
            Algebra::Sym2 => "sym",
            Algebra::Mat2 => "mat2",
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "sym" | "sym2" => Ok(Algebra::Sym2),
            "mat2" | "mat" => Ok(Algebra::Mat2),
            other => Err(Error::InvalidArgument(format!("unknown algebra `{other}`"))),
        }
    }
}

/// A letter of the free *-algebra.
///
/// For `Sym2` the index is `(j, k)` in `z_jk`; for `Mat2` it is
/// `(lower, upper)` in `z_lower^upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub algebra: Algebra,
    pub index: (u8, u8),
    pub starred: bool,
}

impl Generator {
    /// Panics on an index outside the algebra; use [`Generator::try_new`]
    /// for untrusted input.
    pub fn new(algebra: Algebra, a: u8, b: u8) -> Self {
        Self::try_new(algebra, a, b).expect("generator index out of range")
    }

    pub fn try_new(algebra: Algebra, a: u8, b: u8) -> Result<Self, Error> {
        let ok = match algebra {
            Algebra::Sym2 => matches!((a, b), (1, 1) | (2, 1) | (2, 2)),
            Algebra::Mat2 => (1..=2).contains(&a) && (1..=2).contains(&b),
        };
        if !ok {
            return Err(Error::UnknownGenerator {
                name: match algebra {
                    Algebra::Sym2 => format!("z{a}{b}"),
                    Algebra::Mat2 => format!("z{a}^{b}"),
                },
                algebra,
            });
        }
        Ok(Self { algebra, index: (a, b), starred: false })
    }

    pub fn star(self) -> Self {
        Self { starred: !self.starred, ..self }
    }

    pub fn unstarred(self) -> Self {
        Self { starred: false, ..self }
    }

    /// Position in the normal-form order. Normal words have non-decreasing
    /// rank: the unstarred block first, then the starred block.
    pub fn rank(self) -> u8 {
        let base = match (self.algebra, self.index) {
            (Algebra::Sym2, (2, 2)) => 0,
            (Algebra::Sym2, (2, 1)) => 1,
            (Algebra::Sym2, _) => 2,
            (Algebra::Mat2, (2, 2)) => 0,
            (Algebra::Mat2, (2, 1)) => 1,
            (Algebra::Mat2, (1, 2)) => 2,
            (Algebra::Mat2, _) => 3,
        };
        let top = match self.algebra {
            Algebra::Sym2 => 2,
            Algebra::Mat2 => 3,
        };
        if self.starred {
            // starred block mirrors the unstarred one
            2 * top + 1 - base
        } else {
            base
        }
    }

    pub fn name(self) -> String {
        let (a, b) = self.index;
        let body = match self.algebra {
            Algebra::Sym2 => format!("z{a}{b}"),
            Algebra::Mat2 => format!("z{a}^{b}"),
        };
        if self.starred {
            body + "*"
        } else {
            body
        }
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.algebra, self.rank()).cmp(&(other.algebra, other.rank()))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A finite sequence of letters; the empty word is the unit.
///
/// Ordered degree-first, then lexicographically by rank. Rewriting strictly
/// decreases words in this order, which is what makes it terminate.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letter(g: Generator) -> Self {
        Self(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Reversed word with every letter starred.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.star()).collect())
    }

    /// First position `i` with `w[i] > w[i+1]` in rank.
    pub fn first_inversion(&self) -> Option<usize> {
        self.0.windows(2).position(|p| p[0].rank() > p[1].rank())
    }

    pub fn inversions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0].rank() > p[1].rank())
            .map(|(i, _)| i)
    }

    pub fn is_normal(&self) -> bool {
        self.first_inversion().is_none()
    }

    pub fn has_starred(&self) -> bool {
        self.0.iter().any(|g| g.starred)
    }

    pub fn ends_starred(&self) -> bool {
        self.0.last().is_some_and(|g| g.starred)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let names: Vec<_> = self.0.iter().map(|g| g.name()).collect();
        f.write_str(&names.join(" "))
    }
}
