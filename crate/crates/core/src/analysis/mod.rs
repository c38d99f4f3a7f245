//! Reducibility and equivalence at truncation scale: Fock-type cyclic
//! vectors, cyclic compressions, spectral fingerprints and intertwiners.

mod checks;
mod claims;

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Generator};
use crate::error::{Error, Result};
use crate::numeric::{
    graded_space, null_space, require_representation, solve_blocks, Band, BlockSystem, RepInstance, SpectralOptions,
    TruncOp, C64,
};
use crate::orbit::{classify_seed, match_spectrum, OrbitClass, OrbitPoint};

pub use checks::{
    omega01_oscillator, pi3_diagonal_part, pi3_offdiagonal_formula, pi4_block_oscillator, pi4_transport, resolved_labels,
    CheckResult,
};
pub use claims::{
    composite_claims, compression_distance, f0_pi_split, fock_crosscheck, mat2_case7, Case7Report, Claim, FockComparison,
    SplitReport, Verdict,
};

/// Orthonormal basis of the joint kernel of `ops` among vectors supported
/// on `cols`, to singular-value threshold `tol`.
pub fn kernel_on(ops: &[&TruncOp], cols: &[usize], tol: f64) -> Vec<DVector<C64>> {
    let Some(first) = ops.first() else { return Vec::new() };
    let n = first.dim();
    let mut pos = vec![usize::MAX; n];
    for (p, &j) in cols.iter().enumerate() {
        pos[j] = p;
    }
    // Columns coupled through a shared row belong to one block.
    let mut parent: Vec<usize> = (0..cols.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut rows: HashMap<(usize, usize), Vec<(usize, C64)>> = HashMap::new();
    for (k, op) in ops.iter().enumerate() {
        for (p, &j) in cols.iter().enumerate() {
            for &(i, v) in op.column(j) {
                rows.entry((k, i)).or_default().push((p, v));
            }
        }
    }
    for row in rows.values() {
        for w in row.windows(2) {
            let (a, b) = (find(&mut parent, w[0].0), find(&mut parent, w[1].0));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for p in 0..cols.len() {
        let r = find(&mut parent, p);
        groups.entry(r).or_default().push(p);
    }
    let mut keys: Vec<usize> = groups.keys().copied().collect();
    keys.sort_unstable_by_key(|k| groups[k][0]);
    let mut row_keys: Vec<&(usize, usize)> = rows.keys().collect();
    row_keys.sort_unstable();
    let mut out = Vec::new();
    for key in keys {
        let members = &groups[&key];
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(l, &p)| (p, l)).collect();
        let block_rows: Vec<Vec<(usize, C64)>> = row_keys
            .iter()
            .filter(|rk| local.contains_key(&rows[rk][0].0))
            .map(|rk| rows[rk].iter().map(|&(p, v)| (local[&p], v)).collect())
            .collect();
        let (null, _, _) = null_space(&block_rows, members.len(), tol);
        for v in null {
            let mut full = DVector::<C64>::zeros(n);
            for (l, &p) in members.iter().enumerate() {
                full[cols[p]] = v[l];
            }
            out.push(full);
        }
    }
    out
}

fn starred_ops(rep: &RepInstance) -> Vec<&TruncOp> {
    rep.algebra().generators().into_iter().map(|g| rep.op(g.star())).collect()
}

fn up_margin(ops: &[&TruncOp]) -> Vec<u32> {
    let rank = ops[0].space().rank();
    (0..rank).map(|f| ops.iter().map(|o| o.band()[f].up).max().unwrap_or(0)).collect()
}

/// Joint kernel of every starred generator on interior vectors: the
/// candidates for a Fock vacuum.
pub fn null_cyclic_vectors(rep: &RepInstance, tol: f64) -> Vec<DVector<C64>> {
    let ops = starred_ops(rep);
    let cols = rep.space().interior(&up_margin(&ops));
    kernel_on(&ops, &cols, tol)
}

/// Kernel of one letter on interior vectors.
pub fn letter_kernel(rep: &RepInstance, letter: Generator, tol: f64) -> Vec<DVector<C64>> {
    let op = rep.op(letter);
    let cols = rep.space().interior(&up_margin(&[op]));
    kernel_on(&[op], &cols, tol)
}

/// A compressed representation on the cyclic span of a vector.
#[derive(Clone, Debug)]
pub struct Compression {
    pub rep: RepInstance,
    /// Orthonormal basis of the span as columns, in the original space.
    pub basis: DMatrix<C64>,
    /// Layer of each basis vector: the shortest word reaching it.
    pub levels: Vec<u32>,
    /// Largest `|g q - Q Q^H g q|` over basis vectors below the top layer.
    pub leakage: f64,
    /// Norm of the part of the top layer's images outside the span.
    pub top_escape: f64,
}

const ESCAPE_TOL: f64 = 1e-9;

/// Orthonormalized span of all words of length at most `depth` applied
/// to `v`, with every generator compressed onto it.
pub fn cyclic_compress(rep: &RepInstance, v: &DVector<C64>, depth: u32) -> Result<Compression> {
    let nv = v.norm();
    if (nv - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidArgument(format!("cyclic vector must be a unit vector, norm {nv}")));
    }
    let letters = rep.algebra().letters();
    let ops: Vec<&TruncOp> = letters.iter().map(|&g| rep.op(g)).collect();
    let margin = up_margin(&ops);
    let space = rep.space();
    let exact: Vec<bool> = (0..space.dim()).map(|i| space.is_interior(i, &margin)).collect();
    let outside = |w: &DVector<C64>| -> f64 {
        w.iter().enumerate().filter(|(i, _)| !exact[*i]).map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt()
    };
    let mut basis: Vec<DVector<C64>> = vec![v.clone()];
    let mut levels = vec![0u32];
    let mut layer_start = 0;
    for layer in 0..depth {
        let layer_end = basis.len();
        for k in layer_start..layer_end {
            let weight = outside(&basis[k]);
            if weight > ESCAPE_TOL {
                return Err(Error::SpanEscapesInterior { depth: layer as usize, weight });
            }
            let dense: Vec<C64> = basis[k].iter().copied().collect();
            for op in &ops {
                let mut w = DVector::from_vec(op.apply(&dense));
                for _ in 0..2 {
                    for b in &basis {
                        let c = b.dotc(&w);
                        w -= b * c;
                    }
                }
                let nw = w.norm();
                if nw > 1e-9 {
                    basis.push(w / C64::new(nw, 0.0));
                    levels.push(layer + 1);
                }
            }
        }
        layer_start = layer_end;
    }
    let q = DMatrix::from_columns(&basis);
    let r = basis.len();
    let mut leakage: f64 = 0.0;
    let mut top_escape: f64 = 0.0;
    let mut compressed = Vec::new();
    for (&g, op) in letters.iter().zip(&ops) {
        let mut m = DMatrix::<C64>::zeros(r, r);
        for j in 0..r {
            let dense: Vec<C64> = q.column(j).iter().copied().collect();
            let img = DVector::from_vec(op.apply(&dense));
            let coeffs = q.adjoint() * &img;
            let rest = (&img - &q * &coeffs).norm();
            if levels[j] < depth {
                leakage = leakage.max(rest);
            } else {
                top_escape = top_escape.max(rest);
            }
            for i in 0..r {
                if levels[i] <= levels[j] + 1 && coeffs[i].norm() > 1e-15 {
                    m[(i, j)] = coeffs[i];
                }
            }
        }
        if !g.starred {
            compressed.push((g, m));
        }
    }
    let gspace = graded_space(levels.clone());
    let band = vec![Band::new(1, depth)];
    let gens = compressed.into_iter().map(|(g, m)| (g, TruncOp::from_dense(&gspace, band.clone(), &m))).collect();
    let out = RepInstance::new(rep.algebra(), rep.q(), gens, format!("cyclic({}, depth {depth})", rep.provenance()))?;
    Ok(Compression { rep: out, basis: q, levels, leakage, top_escape })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub label: Vec<f64>,
    /// Orbit indices `(m, n)` for symmetric-algebra labels.
    pub indices: Option<(u32, u32)>,
    pub multiplicity: usize,
    /// Multiplicity drops when the interior shrinks by one level, so it
    /// grows with the truncation.
    pub growing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseEntry {
    pub generator: String,
    /// Distinct eigenvalue phases in `(-pi, pi]`.
    pub phases: Vec<f64>,
}

/// Truncation-stable invariants used as a proxy for the equivalence class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub algebra: Algebra,
    pub orbit: Option<OrbitClass>,
    pub orbit_residual: Option<f64>,
    pub table: Vec<LabelEntry>,
    /// Where the phases were read: `kernel` or `lowest`.
    pub phase_source: String,
    pub distinguished_dim: usize,
    pub phases: Vec<PhaseEntry>,
    pub dim: usize,
    pub interior_dim: usize,
    pub verified: usize,
    pub dropped: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FingerprintOptions {
    pub spectral: SpectralOptions,
    /// Orbit indices (or levels, for the matrix algebra) kept in the table.
    pub window: u32,
    pub orbit_window: u32,
    pub kernel_tol: f64,
}

impl Default for FingerprintOptions {
    fn default() -> Self {
        Self { spectral: SpectralOptions::default(), window: 2, orbit_window: 20, kernel_tol: 1e-8 }
    }
}

/// The letter whose kernel carries the phase invariants.
fn vacuum_letter(alg: Algebra) -> Generator {
    Generator::new(alg, 2, 2).star()
}

fn wrap(phase: f64) -> f64 {
    let t = std::f64::consts::TAU;
    let mut p = phase.rem_euclid(t);
    if p > std::f64::consts::PI {
        p -= t;
    }
    p
}

fn phase_close(a: f64, b: f64, tol: f64) -> bool {
    wrap(a - b).abs() <= tol
}

/// Eigenvalues of a normal matrix through a Hermitian combination of its
/// real and imaginary parts.
pub(crate) fn normal_eigen(m: &DMatrix<C64>) -> (Vec<C64>, DMatrix<C64>) {
    let i = C64::new(0.0, 1.0);
    let re = (m + m.adjoint()).scale(0.5);
    let im = (m - m.adjoint()) * (-i * 0.5);
    let h = &re + im.scale(std::f64::consts::SQRT_2);
    let eig = SymmetricEigen::new(h);
    let vals = (0..m.ncols())
        .map(|k| {
            let v = eig.eigenvectors.column(k);
            (v.adjoint() * m * v)[(0, 0)]
        })
        .collect();
    (vals, eig.eigenvectors)
}

/// Minimal total level carrying weight in a set of vectors.
fn height(rep: &RepInstance, vectors: &[Vec<(usize, C64)>]) -> u32 {
    let mut weight: HashMap<usize, f64> = HashMap::new();
    for v in vectors {
        for &(i, c) in v {
            *weight.entry(i).or_default() += c.norm_sqr();
        }
    }
    weight
        .into_iter()
        .filter(|&(_, w)| w > 1e-6)
        .map(|(i, _)| rep.space().levels_of(i).iter().sum::<u32>())
        .min()
        .unwrap_or(u32::MAX)
}

/// Number of directions of a cluster that survive shrinking the interior
/// by one level.
fn shrunk_multiplicity(rep: &RepInstance, margin: &[u32], vectors: &[Vec<(usize, C64)>]) -> usize {
    let deeper: Vec<u32> = margin.iter().map(|m| m + 1).collect();
    let space = rep.space();
    let rows: Vec<usize> = {
        let mut r: Vec<usize> = vectors.iter().flatten().map(|e| e.0).filter(|&i| !space.is_interior(i, &deeper)).collect();
        r.sort_unstable();
        r.dedup();
        r
    };
    if rows.is_empty() {
        return vectors.len();
    }
    let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut m = DMatrix::<C64>::zeros(rows.len(), vectors.len());
    for (c, v) in vectors.iter().enumerate() {
        for &(i, x) in v {
            if let Some(&p) = pos.get(&i) {
                m[(p, c)] = x;
            }
        }
    }
    let rank = m.svd(false, false).singular_values.iter().filter(|&&s| s > 1e-6).count();
    vectors.len() - rank
}

pub fn fingerprint(rep: &RepInstance) -> Result<Fingerprint> {
    fingerprint_with(rep, &FingerprintOptions::default())
}

pub fn fingerprint_with(rep: &RepInstance, opts: &FingerprintOptions) -> Result<Fingerprint> {
    require_representation(rep, 1e-8)?;
    let sys = BlockSystem::new(rep, &opts.spectral)?;
    let dec = &sys.decomposition;
    let family_margin = {
        let fam = crate::numeric::diagonal_family(rep);
        let refs: Vec<&TruncOp> = fam.iter().map(|f| &f.1).collect();
        up_margin(&refs)
    };
    let q = rep.q();
    let (orbit, orbit_residual) = if rep.algebra() == Algebra::Sym2 && !dec.spaces.is_empty() {
        let pts: Vec<(OrbitPoint, usize)> =
            dec.spaces.iter().map(|s| (OrbitPoint::new(s.values[0], s.values[1]), s.multiplicity())).collect();
        let (c, r) = match_spectrum(&pts, q, opts.orbit_window, opts.spectral.tol)?;
        (Some(c), Some(r))
    } else {
        (None, None)
    };
    let mut table = Vec::new();
    for s in &dec.spaces {
        let indices = if rep.algebra() == Algebra::Sym2 {
            let v = classify_seed(OrbitPoint::new(s.values[0], s.values[1]), q, opts.orbit_window, opts.spectral.tol);
            match (v.class, v.indices) {
                (OrbitClass::Inadmissible, _) => continue,
                (_, Some((m, n))) if m > opts.window || n > opts.window => continue,
                (_, idx) => idx,
            }
        } else {
            if height(rep, &s.vectors) > opts.window {
                continue;
            }
            None
        };
        let shrunk = shrunk_multiplicity(rep, &family_margin, &s.vectors);
        table.push(LabelEntry {
            label: s.values.clone(),
            indices,
            multiplicity: s.multiplicity(),
            growing: shrunk < s.multiplicity(),
        });
    }

    let kernel = letter_kernel(rep, vacuum_letter(rep.algebra()), opts.kernel_tol);
    let (phase_source, dist): (&str, Vec<DVector<C64>>) = if !kernel.is_empty() {
        ("kernel", kernel)
    } else {
        let lowest = dec.spaces.iter().min_by_key(|s| height(rep, &s.vectors));
        let vecs = lowest
            .map(|s| {
                s.vectors
                    .iter()
                    .map(|v| {
                        let mut d = DVector::<C64>::zeros(rep.dim());
                        for &(i, c) in v {
                            d[i] = c;
                        }
                        d
                    })
                    .collect()
            })
            .unwrap_or_default();
        ("lowest", vecs)
    };
    let mut phases = Vec::new();
    if !dist.is_empty() {
        let d = DMatrix::from_columns(&dist);
        for (g, op) in rep.generators() {
            let img = DMatrix::from_columns(
                &dist.iter().map(|v| DVector::from_vec(op.apply(v.as_slice()))).collect::<Vec<_>>(),
            );
            let m = d.adjoint() * &img;
            let invariant = (&img - &d * &m).iter().map(|c| c.norm()).fold(0.0, f64::max) < 1e-8;
            if !invariant {
                continue;
            }
            // Phases are read only where the restriction is normal.
            let defect = (&m * m.adjoint() - m.adjoint() * &m).iter().map(|c| c.norm()).fold(0.0, f64::max);
            if defect > 1e-8 {
                continue;
            }
            let (vals, _) = normal_eigen(&m);
            let mut ph: Vec<f64> = vals.iter().filter(|z| z.norm() > 1e-8).map(|z| wrap(z.arg())).collect();
            ph.sort_by(f64::total_cmp);
            ph.dedup_by(|a, b| phase_close(*a, *b, 1e-9));
            if !ph.is_empty() {
                phases.push(PhaseEntry { generator: g.to_string(), phases: ph });
            }
        }
    }
    Ok(Fingerprint {
        algebra: rep.algebra(),
        orbit,
        orbit_residual,
        table,
        phase_source: phase_source.to_string(),
        distinguished_dim: dist.len(),
        phases,
        dim: rep.dim(),
        interior_dim: dec.interior.len(),
        verified: dec.spaces.iter().map(|s| s.multiplicity()).sum(),
        dropped: dec.dropped,
    })
}

impl Fingerprint {
    /// Equality of the invariant parts: orbit class, windowed table
    /// (multiplicities compared only where neither grows) and phases.
    pub fn matches(&self, other: &Fingerprint, tol: f64) -> bool {
        self.mismatch(other, tol).is_none()
    }

    /// First difference found, described for reports.
    pub fn mismatch(&self, other: &Fingerprint, tol: f64) -> Option<String> {
        if self.algebra != other.algebra {
            return Some("different algebras".into());
        }
        if self.orbit != other.orbit {
            return Some(format!("orbit class {:?} vs {:?}", self.orbit, other.orbit));
        }
        if self.table.len() != other.table.len() {
            return Some(format!("{} vs {} windowed labels", self.table.len(), other.table.len()));
        }
        for (a, b) in self.table.iter().zip(&other.table) {
            if a.label.iter().zip(&b.label).any(|(x, y)| (x - y).abs() > tol) {
                return Some(format!("label {:?} vs {:?}", a.label, b.label));
            }
            if a.growing != b.growing {
                return Some(format!("growth differs at label {:?}", a.label));
            }
            if !a.growing && a.multiplicity != b.multiplicity {
                return Some(format!("multiplicity {} vs {} at label {:?}", a.multiplicity, b.multiplicity, a.label));
            }
        }
        if self.phases.len() != other.phases.len() {
            return Some("different generators carry phases".into());
        }
        for (a, b) in self.phases.iter().zip(&other.phases) {
            if a.generator != b.generator
                || a.phases.len() != b.phases.len()
                || a.phases.iter().zip(&b.phases).any(|(x, y)| !phase_close(*x, *y, tol))
            {
                return Some(format!("phases of {}: {:?} vs {:?}", a.generator, a.phases, b.phases));
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub fingerprint_mismatch: Option<String>,
    pub matched_clusters: usize,
    pub intertwiner_dim: usize,
    /// `max |U T^a - T^b U|` over matched transports of the unitary found.
    pub intertwiner_residual: Option<f64>,
}

/// Fingerprint comparison followed by a search for a unitary intertwiner
/// block-diagonal in the matched joint eigenspaces.
pub fn equivalent(a: &RepInstance, b: &RepInstance, tol: f64) -> Result<EquivalenceReport> {
    if a.algebra() != b.algebra() {
        return Err(Error::AlgebraMismatch { expected: a.algebra(), found: b.algebra() });
    }
    if (a.q() - b.q()).abs() > 1e-15 {
        return Err(Error::InvalidArgument(format!("q differs: {} vs {}", a.q(), b.q())));
    }
    let opts = FingerprintOptions::default();
    let (fa, fb) = (fingerprint_with(a, &opts)?, fingerprint_with(b, &opts)?);
    let mismatch = fa.mismatch(&fb, 1e-6);
    if mismatch.is_some() {
        return Ok(EquivalenceReport {
            equivalent: false,
            fingerprint_mismatch: mismatch,
            matched_clusters: 0,
            intertwiner_dim: 0,
            intertwiner_residual: None,
        });
    }
    let sa = BlockSystem::new(a, &opts.spectral)?;
    let sb = BlockSystem::new(b, &opts.spectral)?;
    // Clusters are paired with their mutual nearest label, so labels that
    // crowd together deep in the truncation cannot be paired twice.
    let dist = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let nearest = |v: &[f64], among: &[crate::numeric::JointEigenspace]| {
        among.iter().enumerate().map(|(k, t)| (dist(v, &t.values), k)).min_by(|x, y| x.0.total_cmp(&y.0))
    };
    let (xa, xb) = (&sa.decomposition.spaces, &sb.decomposition.spaces);
    let mut pairs = Vec::new();
    for (ca, s) in xa.iter().enumerate() {
        let Some((d, cb)) = nearest(&s.values, xb) else { continue };
        let mutual = nearest(&xb[cb].values, xa).is_some_and(|(_, back)| back == ca);
        if mutual && d <= 1e-8 && xb[cb].multiplicity() == s.multiplicity() {
            pairs.push((ca, cb));
        }
    }
    if pairs.is_empty() {
        return Err(Error::TruncationMismatch("no joint eigenspaces could be matched".into()));
    }
    let mut report = EquivalenceReport {
        equivalent: false,
        fingerprint_mismatch: None,
        matched_clusters: pairs.len(),
        intertwiner_dim: 0,
        intertwiner_residual: None,
    };
    let solved = solve_blocks(&sa, &sb, &pairs, tol.max(1e-10))?;
    report.intertwiner_dim = solved.null_vectors.len();
    if solved.null_vectors.is_empty() {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.spectral.seed);
    let weights: Vec<C64> =
        solved.null_vectors.iter().map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let mut unitary = Vec::with_capacity(pairs.len());
    let mut smallest = f64::INFINITY;
    let mut largest: f64 = 0.0;
    for k in 0..pairs.len() {
        let mut x = solved.null_vectors[0][k].scale(0.0);
        for (nv, w) in solved.null_vectors.iter().zip(&weights) {
            x += &nv[k] * *w;
        }
        let svd = x.svd(true, true);
        for &s in svd.singular_values.iter() {
            smallest = smallest.min(s);
            largest = largest.max(s);
        }
        unitary.push(svd.u.expect("u") * svd.v_t.expect("v_t"));
    }
    if smallest <= 1e-8 * largest {
        return Ok(report);
    }
    let index: HashMap<usize, usize> = pairs.iter().enumerate().map(|(k, &(ca, _))| (ca, k)).collect();
    let mut residual: f64 = 0.0;
    for ((_, ta), (_, tb)) in sa.transports.iter().zip(&sb.transports) {
        for (&(to, from), t_a) in ta {
            let (Some(&kt), Some(&kf)) = (index.get(&to), index.get(&from)) else { continue };
            let zero = DMatrix::zeros(t_a.nrows(), t_a.ncols());
            let t_b = tb.get(&(pairs[kt].1, pairs[kf].1)).unwrap_or(&zero);
            let r = (&unitary[kt] * t_a - t_b * &unitary[kf]).iter().map(|c| c.norm()).fold(0.0, f64::max);
            residual = residual.max(r);
        }
    }
    report.intertwiner_residual = Some(residual);
    report.equivalent = residual <= tol.max(1e-10);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_sym_series, Printing, SeriesId, Simplest, Su2Kind};
    use crate::coaction::CompositeSpec;
    use std::f64::consts::FRAC_PI_2;

    fn series(id: SeriesId, phases: &[f64], dims: &[usize]) -> RepInstance {
        build_sym_series(id, phases, 0.5, dims, Printing::Corrected).unwrap()
    }

    #[test]
    fn fifth_series_vacuum_is_the_corner() {
        let v = null_cyclic_vectors(&series(SeriesId::Pi5, &[], &[6, 6, 6]), 1e-8);
        assert_eq!(v.len(), 1);
        assert!((v[0][0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_series_has_no_vacuum() {
        assert!(null_cyclic_vectors(&series(SeriesId::Pi1, &[0.2, 0.3], &[]), 1e-8).is_empty());
    }

    #[test]
    fn corner_compression_reproduces_the_block() {
        let rep = series(SeriesId::Pi5, &[], &[6, 6, 6]);
        let c = cyclic_compress(&rep, &null_cyclic_vectors(&rep, 1e-8)[0], 2).unwrap();
        // Words of length <= 2 reach the corner, three first-level and six
        // second-level vectors.
        assert_eq!(c.levels.len(), 10);
        assert!(c.leakage < 1e-12);
    }

    #[test]
    fn compression_rejects_non_unit_vectors() {
        let rep = series(SeriesId::Pi3, &[0.0], &[8]);
        let v = DVector::from_element(8, C64::new(1.0, 0.0));
        assert!(matches!(cyclic_compress(&rep, &v, 2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn scalar_fingerprint() {
        let f = fingerprint(&series(SeriesId::Pi1, &[0.7, 0.3], &[])).unwrap();
        assert_eq!(f.orbit, Some(OrbitClass::Omega01));
        assert_eq!(f.table.len(), 1);
        assert_eq!(f.table[0].multiplicity, 1);
        let by_name = |n: &str| f.phases.iter().find(|p| p.generator == n).unwrap().phases.clone();
        assert!((by_name("z22")[0] - 0.7).abs() < 1e-12);
        assert!((by_name("z11")[0] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn third_series_phase_on_vacuum() {
        let f = fingerprint(&series(SeriesId::Pi3, &[1.1], &[10])).unwrap();
        assert_eq!(f.orbit, Some(OrbitClass::Omega10));
        assert_eq!(f.phase_source, "kernel");
        let z21 = f.phases.iter().find(|p| p.generator == "z21").unwrap();
        assert!((z21.phases[0] - 1.1).abs() < 1e-10);
    }

    #[test]
    fn fock_composite_fingerprints_as_fifth_series() {
        let a = series(SeriesId::Pi5, &[], &[6, 6, 6]);
        let b = CompositeSpec::new(Algebra::Sym2, Simplest::F2, &[Su2Kind::Eps], 0.5, 6).build().unwrap();
        assert!(fingerprint(&a).unwrap().matches(&fingerprint(&b).unwrap(), 1e-8));
    }

    #[test]
    fn second_series_equals_f1() {
        let a = series(SeriesId::Pi2, &[0.0], &[8]);
        let b = crate::catalog::build_simplest(Algebra::Sym2, Simplest::F1, 0.5, 8).unwrap();
        assert!(equivalent(&a, &b, 1e-8).unwrap().equivalent);
    }

    #[test]
    fn scalar_phases_separate() {
        let a = series(SeriesId::Pi1, &[0.0, 0.0], &[]);
        let b = series(SeriesId::Pi1, &[FRAC_PI_2, 0.0], &[]);
        let r = equivalent(&a, &b, 1e-8).unwrap();
        assert!(!r.equivalent);
        assert!(r.fingerprint_mismatch.is_some());
    }

    #[test]
    fn fifth_and_fourth_series_differ() {
        let a = series(SeriesId::Pi5, &[], &[6, 6, 6]);
        let b = series(SeriesId::Pi4, &[0.0], &[6, 6]);
        assert!(!equivalent(&a, &b, 1e-8).unwrap().equivalent);
    }

    #[test]
    fn gauge_is_invisible_to_equivalence() {
        let a = series(SeriesId::Pi4, &[0.4], &[6, 6]);
        let b = a.gauge(|idx| 0.3 * idx[0] as f64 - 1.2 * idx[1] as f64).unwrap();
        assert!(equivalent(&a, &b, 1e-8).unwrap().equivalent);
    }

    #[test]
    fn third_series_phase_is_detected() {
        let a = series(SeriesId::Pi3, &[0.0], &[10]);
        let b = series(SeriesId::Pi3, &[0.5], &[10]);
        assert!(!equivalent(&a, &b, 1e-8).unwrap().equivalent);
    }
}
