//! Joint spectra of commuting self-adjoint families on interior vectors.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::op::{TruncOp, C64};
use crate::error::{Error, Result};

/// Sparse vector: `(basis index, coefficient)` sorted by index.
pub type SparseVec = Vec<(usize, C64)>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralOptions {
    /// Clustering and Hermitian/commutation check tolerance.
    pub tol: f64,
    /// Eigenvectors whose residual against the full truncated operators
    /// exceeds this are discarded as boundary artifacts.
    pub verify_tol: f64,
    /// Seed for the random combination coefficients.
    pub seed: u64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self { tol: 1e-9, verify_tol: 1e-8, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub values: Vec<f64>,
    pub multiplicity: usize,
}

/// One cluster of joint eigenvectors, orthonormal, in the full space.
#[derive(Clone, Debug)]
pub struct JointEigenspace {
    pub values: Vec<f64>,
    pub vectors: Vec<SparseVec>,
}

impl JointEigenspace {
    pub fn multiplicity(&self) -> usize {
        self.vectors.len()
    }
}

#[derive(Clone, Debug)]
pub struct JointDecomposition {
    /// Clusters sorted lexicographically by value.
    pub spaces: Vec<JointEigenspace>,
    /// Interior basis the operators were compressed to.
    pub interior: Vec<usize>,
    /// Eigenvectors rejected by the full-operator check.
    pub dropped: usize,
    /// Random weights of the combined operator.
    pub weights: Vec<f64>,
}

impl JointDecomposition {
    pub fn points(&self) -> Vec<SpectralPoint> {
        self.spaces.iter().map(|s| SpectralPoint { values: s.values.clone(), multiplicity: s.multiplicity() }).collect()
    }
}

pub(crate) fn apply_sparse(op: &TruncOp, v: &[(usize, C64)]) -> SparseVec {
    let mut acc: BTreeMap<usize, C64> = BTreeMap::new();
    for &(j, c) in v {
        for &(i, a) in op.column(j) {
            *acc.entry(i).or_default() += a * c;
        }
    }
    acc.into_iter().filter(|e| e.1 != C64::new(0.0, 0.0)).collect()
}

/// `|a - x b|` for sparse vectors.
fn residual_norm(av: &[(usize, C64)], v: &[(usize, C64)], x: f64) -> f64 {
    let mut acc: BTreeMap<usize, C64> = av.iter().copied().collect();
    for &(i, c) in v {
        *acc.entry(i).or_default() -= c * x;
    }
    acc.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn margin_of(ops: &[&TruncOp]) -> Vec<u32> {
    let rank = ops[0].space().rank();
    (0..rank).map(|f| ops.iter().map(|o| o.band()[f].up).max().unwrap_or(0)).collect()
}

fn check_family(ops: &[&TruncOp], interior: &[usize], tol: f64) -> Result<()> {
    let scale = ops.iter().map(|o| o.max_abs()).fold(1.0, f64::max);
    for op in ops {
        let m = op.compress(interior);
        let dev = (&m - m.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
        if dev > tol * scale {
            return Err(Error::NonHermitian(dev));
        }
    }
    let space = ops[0].space();
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            let margin: Vec<u32> = a.band().iter().zip(b.band()).map(|(x, y)| x.up + y.up).collect();
            let cols = space.interior(&margin);
            if cols.is_empty() {
                return Err(Error::NoInterior("commutator of the spectral family".into()));
            }
            let dev = (&(*a * *b) - &(*b * *a)).max_column_norm(&cols);
            if dev > tol * scale * scale {
                return Err(Error::NonCommuting(dev));
            }
        }
    }
    Ok(())
}

/// Connected components of the union sparsity pattern on `interior`.
fn components(ops: &[&TruncOp], interior: &[usize]) -> Vec<Vec<usize>> {
    let n = ops[0].dim();
    let mut pos = vec![usize::MAX; n];
    for (p, &i) in interior.iter().enumerate() {
        pos[i] = p;
    }
    let mut parent: Vec<usize> = (0..interior.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for op in ops {
        for (pj, &j) in interior.iter().enumerate() {
            for &(i, _) in op.column(j) {
                if pos[i] != usize::MAX {
                    let (a, b) = (find(&mut parent, pos[i]), find(&mut parent, pj));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..interior.len() {
        let r = find(&mut parent, p);
        groups.entry(r).or_default().push(interior[p]);
    }
    groups.into_values().collect()
}

/// Orthonormal eigenvectors of a Hermitian matrix restricted to the
/// columns of `basis`, grouped by eigenvalue to `tol`.
fn split(h: &DMatrix<C64>, basis: &DMatrix<C64>, tol: f64) -> Vec<DMatrix<C64>> {
    let small = basis.adjoint() * h * basis;
    let small = (&small + small.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(small);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let rotated = basis * &eig.eigenvectors;
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=order.len() {
        if k == order.len() || eig.eigenvalues[order[k]] - eig.eigenvalues[order[k - 1]] > tol {
            let cols: Vec<usize> = order[start..k].to_vec();
            out.push(rotated.select_columns(&cols));
            start = k;
        }
    }
    out
}

fn to_sparse(idx: &[usize], col: nalgebra::DVectorView<C64>) -> SparseVec {
    idx.iter().zip(col.iter()).filter(|(_, c)| c.norm() > 1e-300).map(|(&i, &c)| (i, c)).collect()
}

/// Simultaneous diagonalization of a commuting self-adjoint family on the
/// interior of its bandwidth, verified against the full truncated operators.
pub fn joint_decomposition(ops: &[&TruncOp], opts: &SpectralOptions) -> Result<JointDecomposition> {
    if ops.is_empty() {
        return Err(Error::EmptyInput("no operators".into()));
    }
    let dims = ops[0].factor_dims();
    if ops.iter().any(|o| o.factor_dims() != dims) {
        return Err(Error::DimensionMismatch("spectral family on different spaces".into()));
    }
    let interior = ops[0].space().interior(&margin_of(ops));
    if interior.is_empty() {
        return Err(Error::NoInterior("spectral family".into()));
    }
    check_family(ops, &interior, opts.tol)?;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let weights: Vec<f64> = ops.iter().map(|_| rng.random_range(1.0..2.0)).collect();
    let mut pairs: Vec<(Vec<f64>, SparseVec)> = Vec::new();
    let mut dropped = 0;
    for comp in components(ops, &interior) {
        let mats: Vec<DMatrix<C64>> = ops.iter().map(|o| o.compress(&comp)).collect();
        let vecs: Vec<SparseVec> = if comp.len() == 1 {
            vec![vec![(comp[0], C64::new(1.0, 0.0))]]
        } else {
            let mut combined = DMatrix::<C64>::zeros(comp.len(), comp.len());
            for (m, w) in mats.iter().zip(&weights) {
                combined += m.scale(*w);
            }
            let wsum: f64 = weights.iter().sum();
            let id = DMatrix::<C64>::identity(comp.len(), comp.len());
            let mut groups = split(&combined, &id, opts.tol * wsum);
            for m in &mats {
                groups = groups.iter().flat_map(|g| if g.ncols() > 1 { split(m, g, opts.tol) } else { vec![g.clone()] }).collect();
            }
            groups.iter().flat_map(|g| g.column_iter().map(|c| to_sparse(&comp, c)).collect::<Vec<_>>()).collect()
        };
        for v in vecs {
            let mut values = Vec::with_capacity(ops.len());
            let mut ok = true;
            for op in ops {
                let av = apply_sparse(op, &v);
                let mut x = C64::new(0.0, 0.0);
                let lookup: BTreeMap<usize, C64> = av.iter().copied().collect();
                for &(i, c) in &v {
                    x += c.conj() * lookup.get(&i).copied().unwrap_or_default();
                }
                if residual_norm(&av, &v, x.re) > opts.verify_tol * x.re.abs().max(1.0) {
                    ok = false;
                    break;
                }
                values.push(x.re);
            }
            if ok {
                pairs.push((values, v));
            } else {
                dropped += 1;
            }
        }
    }
    let spaces = cluster(pairs, opts.tol);
    Ok(JointDecomposition { spaces, interior, dropped, weights })
}

fn cluster(mut pairs: Vec<(Vec<f64>, SparseVec)>, tol: f64) -> Vec<JointEigenspace> {
    pairs.sort_by(|a, b| {
        a.0.iter().zip(&b.0).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out: Vec<JointEigenspace> = Vec::new();
    for (values, v) in pairs {
        let hit = out.iter_mut().find(|s| s.values.iter().zip(&values).all(|(a, b)| (a - b).abs() <= tol));
        match hit {
            Some(s) => s.vectors.push(v),
            None => out.push(JointEigenspace { values, vectors: vec![v] }),
        }
    }
    out
}

/// Joint eigenvalue pairs of a commuting self-adjoint pair, with
/// multiplicity, clustered to `tol`.
pub fn joint_spectrum(a: &TruncOp, b: &TruncOp, tol: f64) -> Result<Vec<SpectralPoint>> {
    let opts = SpectralOptions { tol, ..SpectralOptions::default() };
    Ok(joint_decomposition(&[a, b], &opts)?.points())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Space;

    #[test]
    fn identity_pair() {
        let s = Space::shifts(&[5]);
        let id = TruncOp::identity(&s);
        let pts = joint_spectrum(&id, &id, 1e-9).unwrap();
        assert_eq!(pts, vec![SpectralPoint { values: vec![1.0, 1.0], multiplicity: 5 }]);
    }

    #[test]
    fn diagonal_pairs_are_exact() {
        let s = Space::shifts(&[6]);
        let a = TruncOp::from_diag(&s, |i| C64::new(i as f64 * 0.1, 0.0));
        let b = TruncOp::from_diag(&s, |i| C64::new(1.0 - i as f64 * 0.1, 0.0));
        let pts = joint_spectrum(&a, &b, 1e-9).unwrap();
        assert_eq!(pts.len(), 6);
        for (k, p) in pts.iter().enumerate() {
            assert_eq!(p.values, vec![k as f64 * 0.1, 1.0 - k as f64 * 0.1]);
        }
    }

    #[test]
    fn coupled_block_is_diagonalized() {
        let s = Space::new(vec![crate::numeric::Factor::flat(2)]);
        let m = DMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let a = TruncOp::from_dense(&s, vec![crate::numeric::Band::DIAG], &m);
        let id = TruncOp::identity(&s);
        let pts = joint_spectrum(&a, &id, 1e-9).unwrap();
        assert_eq!(pts.len(), 2);
        assert!((pts[0].values[0] + 1.0).abs() < 1e-12 && (pts[1].values[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = TruncOp::shift(4, 1, |_| 1.0);
        let id = TruncOp::identity(a.space());
        assert!(matches!(joint_spectrum(&a, &id, 1e-9), Err(Error::NonHermitian(_))));
    }
}
