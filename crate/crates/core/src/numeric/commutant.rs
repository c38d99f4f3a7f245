//! Commutants and intertwiners restricted to joint eigenspaces of the
//! diagonal family.
//!
//! Anything commuting with the representation commutes with the diagonal
//! family, so it is block diagonal in the family's joint eigenspaces. The
//! unknowns are the blocks; the equations come from every generator's
//! transport between eigenspaces. Truncation only removes equations at the
//! boundary rather than freeing boundary columns, which is what defeats the
//! naive truncated commutator system.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::op::{TruncOp, C64};
use super::rep::RepInstance;
use super::spectrum::{apply_sparse, joint_decomposition, JointDecomposition, SpectralOptions};
use crate::algebra::{Algebra, Generator};
use crate::error::{Error, Result};

/// Largest number of block unknowns the dense solve accepts.
pub const MAX_UNKNOWNS: usize = 2500;

/// The commuting self-adjoint family `z z*` over the "diagonal" generators.
pub fn diagonal_family(rep: &RepInstance) -> Vec<(String, TruncOp)> {
    let gens: Vec<Generator> = match rep.algebra() {
        Algebra::Sym2 => vec![Generator::new(Algebra::Sym2, 2, 1), Generator::new(Algebra::Sym2, 2, 2)],
        Algebra::Mat2 => vec![
            Generator::new(Algebra::Mat2, 1, 2),
            Generator::new(Algebra::Mat2, 2, 1),
            Generator::new(Algebra::Mat2, 2, 2),
        ],
    };
    gens.into_iter().map(|g| (format!("{g} {}", g.star()), rep.op(g) * rep.op(g.star()))).collect()
}

/// Joint eigenspaces of the diagonal family together with every letter's
/// transport matrices between them.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    pub decomposition: JointDecomposition,
    /// `transports[letter][(to, from)]` = `V_to^H g V_from`.
    pub transports: Vec<(Generator, HashMap<(usize, usize), DMatrix<C64>>)>,
    /// `image_norms[letter][c]` = squared Frobenius norm of `g V_c`.
    pub image_norms: Vec<Vec<f64>>,
}

impl BlockSystem {
    pub fn new(rep: &RepInstance, opts: &SpectralOptions) -> Result<Self> {
        let family = diagonal_family(rep);
        let refs: Vec<&TruncOp> = family.iter().map(|f| &f.1).collect();
        let decomposition = joint_decomposition(&refs, opts)?;
        let mut owners: HashMap<usize, Vec<(usize, usize, C64)>> = HashMap::new();
        for (c, s) in decomposition.spaces.iter().enumerate() {
            for (p, v) in s.vectors.iter().enumerate() {
                for &(i, x) in v {
                    owners.entry(i).or_default().push((c, p, x));
                }
            }
        }
        let mut transports = Vec::new();
        let mut image_norms = Vec::new();
        let letters = rep.algebra().generators().into_iter().flat_map(|g| [g, g.star()]);
        for g in letters {
            let op = rep.op(g);
            let mut blocks: HashMap<(usize, usize), DMatrix<C64>> = HashMap::new();
            let mut norms = vec![0.0; decomposition.spaces.len()];
            for (c, s) in decomposition.spaces.iter().enumerate() {
                for (p, v) in s.vectors.iter().enumerate() {
                    let w = apply_sparse(op, v);
                    norms[c] += w.iter().map(|e| e.1.norm_sqr()).sum::<f64>();
                    for (i, x) in w {
                        for &(c2, p2, u) in owners.get(&i).map(Vec::as_slice).unwrap_or(&[]) {
                            let m2 = decomposition.spaces[c2].multiplicity();
                            let block = blocks.entry((c2, c)).or_insert_with(|| DMatrix::zeros(m2, s.multiplicity()));
                            block[(p2, p)] += u.conj() * x;
                        }
                    }
                }
            }
            blocks.retain(|_, b| b.iter().any(|x| x.norm() > 1e-13));
            transports.push((g, blocks));
            image_norms.push(norms);
        }
        Ok(Self { decomposition, transports, image_norms })
    }

    pub fn cluster_count(&self) -> usize {
        self.decomposition.spaces.len()
    }

    /// Transport block of `letter` from cluster `from` to `to`, if nonzero.
    pub fn transport(&self, letter: Generator, to: usize, from: usize) -> Option<&DMatrix<C64>> {
        self.transports.iter().find(|(g, _)| *g == letter).and_then(|(_, t)| t.get(&(to, from)))
    }

    /// Squared norm of `letter` applied to cluster `from` that lands outside
    /// every verified cluster.
    pub fn escape(&self, letter: Generator, from: usize) -> f64 {
        let k = self.transports.iter().position(|(g, _)| *g == letter).expect("letter of the algebra");
        let inside: f64 = self.transports[k].1.iter().filter(|((_, f), _)| *f == from).map(|(_, b)| b.norm_squared()).sum();
        (self.image_norms[k][from] - inside).max(0.0)
    }

    pub fn multiplicity(&self, c: usize) -> usize {
        self.decomposition.spaces[c].multiplicity()
    }
}

/// Outcome of a block null-space solve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NullSpaceReport {
    pub dimension: usize,
    pub unknowns: usize,
    pub equations: usize,
    /// Largest singular value counted as zero.
    pub largest_discarded: f64,
    /// Smallest singular value counted as nonzero.
    pub smallest_kept: Option<f64>,
}

impl NullSpaceReport {
    /// Ratio separating kept from discarded singular values.
    pub fn gap(&self) -> Option<f64> {
        self.smallest_kept.map(|k| k / self.largest_discarded.max(f64::MIN_POSITIVE))
    }
}

/// Blocks `U_c` matching clusters of `a` to clusters of `b` with
/// `U_to T^a - T^b U_from = 0` for every letter.
pub(crate) struct BlockSolve {
    pub report: NullSpaceReport,
    /// Null vectors, each split into blocks per matched pair.
    pub null_vectors: Vec<Vec<DMatrix<C64>>>,
}

pub(crate) fn solve_blocks(
    a: &BlockSystem,
    b: &BlockSystem,
    pairs: &[(usize, usize)],
    tol: f64,
) -> Result<BlockSolve> {
    let mut offset = Vec::with_capacity(pairs.len());
    let mut unknowns = 0;
    for &(ca, _) in pairs {
        offset.push(unknowns);
        let m = a.multiplicity(ca);
        unknowns += m * m;
    }
    if unknowns > MAX_UNKNOWNS {
        return Err(Error::TooLarge(format!("{unknowns} block unknowns exceed the limit of {MAX_UNKNOWNS}")));
    }
    if unknowns == 0 {
        return Err(Error::EmptyInput("no matched eigenspaces".into()));
    }
    let index_a: HashMap<usize, usize> = pairs.iter().enumerate().map(|(k, &(ca, _))| (ca, k)).collect();
    let mut rows: Vec<Vec<(usize, C64)>> = Vec::new();
    for ((_, ta), (_, tb)) in a.transports.iter().zip(&b.transports) {
        let mut keys: Vec<(usize, usize)> = ta.keys().copied().collect();
        keys.sort_unstable();
        for (to_a, from_a) in keys {
            let (Some(&kt), Some(&kf)) = (index_a.get(&to_a), index_a.get(&from_a)) else { continue };
            let (to_b, from_b) = (pairs[kt].1, pairs[kf].1);
            let t_a = &ta[&(to_a, from_a)];
            let zero = DMatrix::zeros(t_a.nrows(), t_a.ncols());
            let t_b = tb.get(&(to_b, from_b)).unwrap_or(&zero);
            let (mt, mf) = (t_a.nrows(), t_a.ncols());
            for r in 0..mt {
                for s in 0..mf {
                    let mut row = Vec::new();
                    for t in 0..mt {
                        row.push((offset[kt] + r * mt + t, t_a[(t, s)]));
                    }
                    for t in 0..mf {
                        row.push((offset[kf] + t * mf + s, -t_b[(r, t)]));
                    }
                    rows.push(row);
                }
            }
        }
        for (key, t_b) in tb {
            // b moves between clusters where a does not: U_to * 0 = T^b U_from.
            let pos = |cb: usize| pairs.iter().position(|p| p.1 == cb);
            let (Some(kt), Some(kf)) = (pos(key.0), pos(key.1)) else { continue };
            if ta.contains_key(&(pairs[kt].0, pairs[kf].0)) {
                continue;
            }
            let mf = t_b.ncols();
            for r in 0..t_b.nrows() {
                for s in 0..mf {
                    let row = (0..mf).map(|t| (offset[kf] + t * mf + s, -t_b[(r, t)])).collect();
                    rows.push(row);
                }
            }
        }
    }
    let equations = rows.len();
    let (null, largest_discarded, smallest_kept) = null_space(&rows, unknowns, tol);
    let split = |v: &DVector<C64>| -> Vec<DMatrix<C64>> {
        pairs
            .iter()
            .enumerate()
            .map(|(kk, &(ca, _))| {
                let m = a.multiplicity(ca);
                DMatrix::from_fn(m, m, |r, c| v[offset[kk] + r * m + c])
            })
            .collect()
    };
    Ok(BlockSolve {
        report: NullSpaceReport { dimension: null.len(), unknowns, equations, largest_discarded, smallest_kept },
        null_vectors: null.iter().map(split).collect(),
    })
}

fn apply_rows(rows: &[Vec<(usize, C64)>], v: &DVector<C64>) -> DVector<C64> {
    DVector::from_iterator(rows.len(), rows.iter().map(|r| r.iter().map(|&(c, x)| x * v[c]).sum::<C64>()))
}

/// Null space of the sparse system `rows` to singular-value threshold
/// `tol`. The normal matrix locates a candidate subspace cheaply; small
/// singular values are then recomputed from the system itself, since the
/// normal matrix only resolves them to about the square root of machine
/// precision.
pub(crate) fn null_space(rows: &[Vec<(usize, C64)>], unknowns: usize, tol: f64) -> (Vec<DVector<C64>>, f64, Option<f64>) {
    let mut gram = DMatrix::<C64>::zeros(unknowns, unknowns);
    for row in rows {
        for &(ci, vi) in row {
            for &(cj, vj) in row {
                gram[(ci, cj)] += vi.conj() * vj;
            }
        }
    }
    let eig = SymmetricEigen::new(gram);
    let top = eig.eigenvalues.iter().copied().fold(1.0, f64::max);
    let coarse = 1e-8 * top;
    let mut kept: Vec<f64> = Vec::new();
    let mut cand: Vec<DVector<C64>> = Vec::new();
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        if l < coarse {
            cand.push(eig.eigenvectors.column(k).into_owned());
        } else {
            kept.push(l.sqrt());
        }
    }
    let mut null = Vec::new();
    let mut discarded: f64 = 0.0;
    if !cand.is_empty() {
        let basis = DMatrix::from_columns(&cand);
        let images: Vec<DVector<C64>> = cand.iter().map(|v| apply_rows(rows, v)).collect();
        let kc = if rows.is_empty() { DMatrix::zeros(1, cand.len()) } else { DMatrix::from_columns(&images) };
        let svd = kc.svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors");
        let sv = svd.singular_values.as_slice();
        for k in 0..cand.len() {
            let (s, dir) = if k < v_t.nrows() {
                (sv[k], v_t.row(k).adjoint())
            } else {
                (0.0, complement(&v_t, cand.len(), k - v_t.nrows()))
            };
            if s < tol {
                discarded = discarded.max(s);
                null.push(&basis * dir);
            } else {
                kept.push(s);
            }
        }
    }
    let smallest = kept.iter().copied().reduce(f64::min);
    (null, discarded, smallest)
}

/// The `k`-th unit-norm vector orthogonal to the rows of `v_t` in `C^n`.
fn complement(v_t: &DMatrix<C64>, n: usize, k: usize) -> DVector<C64> {
    let mut basis: Vec<DVector<C64>> = v_t.row_iter().map(|r| r.adjoint()).collect();
    let mut found = 0;
    for e in 0..n {
        let mut v = DVector::<C64>::zeros(n);
        v[e] = C64::new(1.0, 0.0);
        for b in &basis {
            let c = b.dotc(&v);
            v -= b * c;
        }
        let nv = v.norm();
        if nv > 1e-8 {
            v /= C64::new(nv, 0.0);
            if found == k {
                return v;
            }
            found += 1;
            basis.push(v);
        }
    }
    unreachable!("complement index out of range")
}

/// Numerical commutant dimension of a representation, with the
/// singular-value gap that separates the count from the rest.
pub fn commutant_dimension(rep: &RepInstance, tol: f64) -> Result<NullSpaceReport> {
    commutant_with(rep, tol, &SpectralOptions::default())
}

pub fn commutant_with(rep: &RepInstance, tol: f64, opts: &SpectralOptions) -> Result<NullSpaceReport> {
    let sys = BlockSystem::new(rep, opts)?;
    let pairs: Vec<(usize, usize)> = (0..sys.cluster_count()).map(|c| (c, c)).collect();
    Ok(solve_blocks(&sys, &sys, &pairs, tol)?.report)
}
