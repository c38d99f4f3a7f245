use serde::{Deserialize, Serialize};

/// What a tensor factor's basis index means.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    /// `l2(Z+)` truncated to its first `dim` basis vectors; level = index.
    Shift,
    /// Orthonormalized graded basis (Fock degree or cyclic layer).
    Graded,
    /// A finite multiplicity space with no truncation; every level is 0.
    Flat,
}

/// One tensor factor: its dimension and the level of each basis vector.
/// Operators move levels by bounded amounts; the truncation boundary is
/// the top level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub levels: Vec<u32>,
}

impl Factor {
    pub fn shift(dim: usize) -> Self {
        Self { kind: FactorKind::Shift, levels: (0..dim as u32).collect() }
    }

    pub fn graded(levels: Vec<u32>) -> Self {
        Self { kind: FactorKind::Graded, levels }
    }

    pub fn flat(dim: usize) -> Self {
        Self { kind: FactorKind::Flat, levels: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn max_level(&self) -> u32 {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    /// Whether a flat factor imposes no boundary at all.
    fn unbounded(&self) -> bool {
        self.kind == FactorKind::Flat
    }
}

/// Tensor product of factors, lexicographic basis (first factor slowest).
/// The empty product is the one-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Space {
    factors: Vec<Factor>,
}

impl Space {
    pub fn new(factors: Vec<Factor>) -> Self {
        Self { factors }
    }

    pub fn scalar() -> Self {
        Self::default()
    }

    /// `l2(Z+)^{n}` truncated to `dims`.
    pub fn shifts(dims: &[usize]) -> Self {
        Self::new(dims.iter().map(|&d| Factor::shift(d)).collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(Factor::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Factor::dim).product()
    }

    pub fn kron(&self, other: &Space) -> Space {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        Space::new(f)
    }

    /// Per-factor basis indices of a flat index.
    pub fn multi_index(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = i % f.dim();
            i /= f.dim();
        }
        out
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.factors).fold(0, |acc, (&k, f)| acc * f.dim() + k)
    }

    pub fn levels_of(&self, i: usize) -> Vec<u32> {
        self.multi_index(i).iter().zip(&self.factors).map(|(&k, f)| f.levels[k]).collect()
    }

    /// Basis vectors whose every level leaves room for `margin[f]` upward
    /// steps before hitting the truncation.
    pub fn interior(&self, margin: &[u32]) -> Vec<usize> {
        assert_eq!(margin.len(), self.rank(), "margin arity");
        (0..self.dim())
            .filter(|&i| {
                self.levels_of(i).iter().zip(&self.factors).zip(margin).all(|((&l, f), &m)| {
                    f.unbounded() || l + m <= f.max_level()
                })
            })
            .collect()
    }

    pub fn is_interior(&self, i: usize, margin: &[u32]) -> bool {
        self.levels_of(i)
            .iter()
            .zip(&self.factors)
            .zip(margin)
            .all(|((&l, f), &m)| f.unbounded() || l + m <= f.max_level())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_round_trips() {
        let s = Space::shifts(&[3, 4, 2]);
        assert_eq!(s.dim(), 24);
        for i in 0..24 {
            assert_eq!(s.flat_index(&s.multi_index(i)), i);
        }
        assert_eq!(s.multi_index(1), vec![0, 0, 1]);
        assert_eq!(Space::scalar().dim(), 1);
    }

    #[test]
    fn interior_respects_margins() {
        let s = Space::shifts(&[4, 4]);
        assert_eq!(s.interior(&[0, 0]).len(), 16);
        assert_eq!(s.interior(&[1, 2]).len(), 6);
        let f = Space::new(vec![Factor::flat(3), Factor::shift(4)]);
        assert_eq!(f.interior(&[5, 1]).len(), 9);
    }
}
