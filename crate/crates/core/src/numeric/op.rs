use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::space::{Factor, Space};
use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest upward and downward level shift an operator makes on one factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Band {
    pub up: u32,
    pub down: u32,
}

impl Band {
    pub const DIAG: Band = Band { up: 0, down: 0 };
    pub const RAISE: Band = Band { up: 1, down: 0 };
    pub const LOWER: Band = Band { up: 0, down: 1 };

    pub fn new(up: u32, down: u32) -> Self {
        Self { up, down }
    }

    fn join(self, o: Band) -> Band {
        Band { up: self.up.max(o.up), down: self.down.max(o.down) }
    }

    fn compose(self, o: Band) -> Band {
        Band { up: self.up + o.up, down: self.down + o.down }
    }

    fn flip(self) -> Band {
        Band { up: self.down, down: self.up }
    }
}

/// Sparse complex operator on a truncated tensor-product basis, stored by
/// columns. Each column lists `(row, value)` sorted by row.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncOp {
    space: Space,
    cols: Vec<Vec<(usize, C64)>>,
    band: Vec<Band>,
}

impl TruncOp {
    pub fn zero(space: &Space) -> Self {
        Self { space: space.clone(), cols: vec![Vec::new(); space.dim()], band: vec![Band::DIAG; space.rank()] }
    }

    pub fn identity(space: &Space) -> Self {
        Self::from_diag(space, |_| C64::new(1.0, 0.0))
    }

    /// `c` times the identity of the one-dimensional space.
    pub fn scalar(c: C64) -> Self {
        Self::from_diag(&Space::scalar(), |_| c)
    }

    pub fn from_diag(space: &Space, f: impl Fn(usize) -> C64) -> Self {
        let cols = (0..space.dim())
            .map(|i| {
                let v = f(i);
                if v == C64::new(0.0, 0.0) {
                    Vec::new()
                } else {
                    vec![(i, v)]
                }
            })
            .collect();
        Self { space: space.clone(), cols, band: vec![Band::DIAG; space.rank()] }
    }

    /// Builds from explicit columns; rows are sorted and merged here.
    pub fn from_columns(space: &Space, band: Vec<Band>, cols: Vec<Vec<(usize, C64)>>) -> Self {
        assert_eq!(cols.len(), space.dim(), "column count");
        assert_eq!(band.len(), space.rank(), "band arity");
        let cols = cols.into_iter().map(normalize_column).collect();
        Self { space: space.clone(), cols, band }
    }

    /// Single shift factor of `dim`: `e_k -> f(k) e_{k + step}`, terms
    /// leaving `0..dim` dropped.
    pub fn shift(dim: usize, step: i32, f: impl Fn(usize) -> f64) -> Self {
        let space = Space::shifts(&[dim]);
        let cols = (0..dim)
            .map(|k| {
                let t = k as i64 + step as i64;
                if t < 0 || t >= dim as i64 {
                    return Vec::new();
                }
                let v = f(k);
                if v == 0.0 {
                    Vec::new()
                } else {
                    vec![(t as usize, C64::new(v, 0.0))]
                }
            })
            .collect();
        let band = if step >= 0 { Band::new(step as u32, 0) } else { Band::new(0, (-step) as u32) };
        Self { space, cols, band: vec![band] }
    }

    pub fn from_dense(space: &Space, band: Vec<Band>, m: &DMatrix<C64>) -> Self {
        assert_eq!(m.nrows(), space.dim());
        assert_eq!(m.ncols(), space.dim());
        let cols = (0..m.ncols())
            .map(|j| (0..m.nrows()).filter(|&i| m[(i, j)] != C64::new(0.0, 0.0)).map(|i| (i, m[(i, j)])).collect())
            .collect();
        Self::from_columns(space, band, cols)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn factor_dims(&self) -> Vec<usize> {
        self.space.dims()
    }

    /// Declared per-factor bandwidth.
    pub fn band(&self) -> &[Band] {
        &self.band
    }

    pub fn with_band(mut self, band: Vec<Band>) -> Self {
        assert_eq!(band.len(), self.space.rank());
        self.band = band;
        self
    }

    /// Replaces the level metadata of the space without touching entries.
    pub fn relabel(mut self, space: Space) -> Self {
        assert_eq!(space.dim(), self.dim());
        self.band = vec![Band::DIAG; space.rank()];
        self.space = space;
        let b = self.actual_band();
        self.band = b;
        self
    }

    pub fn column(&self, j: usize) -> &[(usize, C64)] {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        match self.cols[j].binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.cols[j][p].1,
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |&(i, v)| (i, j, v)))
    }

    /// Bandwidth implied by the stored pattern.
    pub fn actual_band(&self) -> Vec<Band> {
        let mut out = vec![Band::DIAG; self.space.rank()];
        for (i, j, _) in self.triplets() {
            let li = self.space.levels_of(i);
            let lj = self.space.levels_of(j);
            for (f, b) in out.iter_mut().enumerate() {
                let d = li[f] as i64 - lj[f] as i64;
                if d > 0 {
                    b.up = b.up.max(d as u32);
                } else {
                    b.down = b.down.max((-d) as u32);
                }
            }
        }
        out
    }

    /// Every stored entry lies within the declared band.
    pub fn band_is_honest(&self) -> bool {
        self.actual_band().iter().zip(&self.band).all(|(a, d)| a.up <= d.up && a.down <= d.down)
    }

    pub fn kron(&self, other: &TruncOp) -> TruncOp {
        let space = self.space.kron(&other.space);
        let n2 = other.dim();
        let mut cols = Vec::with_capacity(space.dim());
        for ca in &self.cols {
            for cb in &other.cols {
                let mut col = Vec::with_capacity(ca.len() * cb.len());
                for &(ia, va) in ca {
                    for &(ib, vb) in cb {
                        col.push((ia * n2 + ib, va * vb));
                    }
                }
                cols.push(col);
            }
        }
        let mut band = self.band.clone();
        band.extend_from_slice(&other.band);
        Self { space, cols, band }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> TruncOp {
        let mut cols = vec![Vec::new(); self.dim()];
        for (i, j, v) in self.triplets() {
            cols[i].push((j, v.conj()));
        }
        Self { space: self.space.clone(), cols, band: self.band.iter().map(|b| b.flip()).collect() }
    }

    pub fn scale(&self, c: C64) -> TruncOp {
        if c == C64::new(0.0, 0.0) {
            return TruncOp::zero(&self.space).with_band(self.band.clone());
        }
        let cols = self.cols.iter().map(|col| col.iter().map(|&(i, v)| (i, v * c)).collect()).collect();
        Self { space: self.space.clone(), cols, band: self.band.clone() }
    }

    fn check_same(&self, other: &TruncOp) {
        assert_eq!(self.space.dims(), other.space.dims(), "operators on different spaces");
    }

    pub fn try_add(&self, other: &TruncOp) -> Result<TruncOp> {
        if self.space.dims() != other.space.dims() {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.space.dims(), other.space.dims())));
        }
        Ok(self + other)
    }

    fn combine(&self, other: &TruncOp, s: f64) -> TruncOp {
        self.check_same(other);
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut c: Vec<(usize, C64)> = a.clone();
                c.extend(b.iter().map(|&(i, v)| (i, v * s)));
                normalize_column(c)
            })
            .collect();
        let band = self.band.iter().zip(&other.band).map(|(a, b)| a.join(*b)).collect();
        Self { space: self.space.clone(), cols, band }
    }

    /// `self * other`, i.e. `other` acts first.
    pub fn compose(&self, other: &TruncOp) -> TruncOp {
        self.check_same(other);
        let n = self.dim();
        let mut acc = vec![C64::new(0.0, 0.0); n];
        let mut touched = vec![false; n];
        let mut rows = Vec::new();
        let mut cols = Vec::with_capacity(n);
        for bcol in &other.cols {
            for &(k, bv) in bcol {
                for &(i, av) in &self.cols[k] {
                    if !touched[i] {
                        touched[i] = true;
                        rows.push(i);
                    }
                    acc[i] += av * bv;
                }
            }
            rows.sort_unstable();
            let mut col = Vec::with_capacity(rows.len());
            for &i in &rows {
                if acc[i] != C64::new(0.0, 0.0) {
                    col.push((i, acc[i]));
                }
                acc[i] = C64::new(0.0, 0.0);
                touched[i] = false;
            }
            rows.clear();
            cols.push(col);
        }
        let band = self.band.iter().zip(&other.band).map(|(a, b)| a.compose(*b)).collect();
        Self { space: self.space.clone(), cols, band }
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim());
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        for (j, &x) in v.iter().enumerate() {
            if x == C64::new(0.0, 0.0) {
                continue;
            }
            for &(i, a) in &self.cols[j] {
                out[i] += a * x;
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn column_norm(&self, j: usize) -> f64 {
        self.cols[j].iter().fold(0.0, |acc, e| acc + e.1.norm_sqr()).sqrt()
    }

    /// Largest column norm over `cols`.
    pub fn max_column_norm(&self, cols: &[usize]) -> f64 {
        cols.iter().map(|&j| self.column_norm(j)).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.triplets().map(|(_, _, v)| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entry of `self - other` in absolute value.
    pub fn max_abs_diff(&self, other: &TruncOp) -> f64 {
        (self - other).max_abs()
    }

    /// Submatrix with rows and columns restricted to `idx` (in that order).
    pub fn compress(&self, idx: &[usize]) -> DMatrix<C64> {
        let mut pos = vec![usize::MAX; self.dim()];
        for (p, &i) in idx.iter().enumerate() {
            pos[i] = p;
        }
        let mut m = DMatrix::zeros(idx.len(), idx.len());
        for (pj, &j) in idx.iter().enumerate() {
            for &(i, v) in &self.cols[j] {
                if pos[i] != usize::MAX {
                    m[(pos[i], pj)] = v;
                }
            }
        }
        m
    }
}

fn normalize_column(mut c: Vec<(usize, C64)>) -> Vec<(usize, C64)> {
    c.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, C64)> = Vec::with_capacity(c.len());
    for (i, v) in c {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| e.1 != C64::new(0.0, 0.0));
    out
}

impl Add for &TruncOp {
    type Output = TruncOp;
    fn add(self, rhs: &TruncOp) -> TruncOp {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &TruncOp {
    type Output = TruncOp;
    fn sub(self, rhs: &TruncOp) -> TruncOp {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &TruncOp {
    type Output = TruncOp;
    fn mul(self, rhs: &TruncOp) -> TruncOp {
        self.compose(rhs)
    }
}

impl Neg for &TruncOp {
    type Output = TruncOp;
    fn neg(self) -> TruncOp {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Single graded factor with the given levels, used by compressions.
pub fn graded_space(levels: Vec<u32>) -> Space {
    Space::new(vec![Factor::graded(levels)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn shift_and_adjoint() {
        let s = TruncOp::shift(4, 1, |k| (k + 1) as f64);
        assert_eq!(s.entry(1, 0), c(1.0));
        assert_eq!(s.entry(3, 2), c(3.0));
        assert_eq!(s.nnz(), 3);
        let a = s.adjoint();
        assert_eq!(a.entry(0, 1), c(1.0));
        assert_eq!(a.band()[0], Band::LOWER);
        assert!(s.band_is_honest() && a.band_is_honest());
    }

    #[test]
    fn compose_matches_dense() {
        let s = TruncOp::shift(5, 1, |k| 0.5 + k as f64);
        let d = TruncOp::from_diag(&Space::shifts(&[5]), |k| C64::new(k as f64, 1.0));
        let p = &s * &d;
        let dense = s.to_dense() * d.to_dense();
        assert!((p.to_dense() - dense).norm() < 1e-14);
        assert_eq!(p.band()[0], Band::RAISE);
    }

    #[test]
    fn kron_layout_is_lexicographic() {
        let a = TruncOp::shift(2, 1, |_| 1.0);
        let b = TruncOp::identity(&Space::shifts(&[3]));
        let k = a.kron(&b);
        // e_{0,2} -> e_{1,2}
        assert_eq!(k.entry(5, 2), c(1.0));
        assert_eq!(k.band().len(), 2);
        let s = TruncOp::scalar(c(2.0));
        assert_eq!(a.kron(&s).dim(), 2);
    }
}
