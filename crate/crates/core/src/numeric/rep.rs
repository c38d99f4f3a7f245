use std::collections::BTreeMap;

use super::op::{TruncOp, C64};
use super::space::{Factor, Space};
use crate::algebra::{Algebra, Generator};
use crate::error::{Error, Result};

/// A truncated *-representation: one operator per unstarred generator;
/// starred generators act by the numeric adjoint.
#[derive(Clone, Debug)]
pub struct RepInstance {
    algebra: Algebra,
    q: f64,
    gens: BTreeMap<Generator, TruncOp>,
    adjoints: BTreeMap<Generator, TruncOp>,
    params: Vec<(String, f64)>,
    provenance: String,
}

impl RepInstance {
    pub fn new(
        algebra: Algebra,
        q: f64,
        ops: Vec<(Generator, TruncOp)>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let mut gens = BTreeMap::new();
        for (g, op) in ops {
            if g.algebra != algebra || g.starred {
                return Err(Error::InvalidArgument(format!("{g} is not an unstarred generator of {algebra}")));
            }
            gens.insert(g, op);
        }
        let dims: Vec<_> = gens.values().map(TruncOp::factor_dims).collect();
        if dims.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::DimensionMismatch(format!("generator operators on spaces {dims:?}")));
        }
        for g in algebra.generators() {
            if !gens.contains_key(&g) {
                return Err(Error::InvalidArgument(format!("missing operator for {g}")));
            }
        }
        let adjoints = gens.iter().map(|(g, op)| (*g, op.adjoint())).collect();
        Ok(Self { algebra, q, gens, adjoints, params: Vec::new(), provenance: provenance.into() })
    }

    pub fn with_params(mut self, params: &[(&str, f64)]) -> Self {
        self.params = params.iter().map(|(n, v)| (n.to_string(), *v)).collect();
        self
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn params(&self) -> &[(String, f64)] {
        &self.params
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn set_provenance(&mut self, p: impl Into<String>) {
        self.provenance = p.into();
    }

    /// Operator of a letter; starred letters give the adjoint.
    pub fn op(&self, g: Generator) -> &TruncOp {
        let table = if g.starred { &self.adjoints } else { &self.gens };
        &table[&g.unstarred()]
    }

    pub fn generators(&self) -> impl Iterator<Item = (&Generator, &TruncOp)> {
        self.gens.iter()
    }

    pub fn space(&self) -> &Space {
        self.gens.values().next().expect("at least one generator").space()
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    /// Applies `f` to every generator's operator.
    pub fn map_ops(&self, provenance: &str, mut f: impl FnMut(Generator, &TruncOp) -> TruncOp) -> Result<Self> {
        let ops = self.gens.iter().map(|(g, op)| (*g, f(*g, op))).collect();
        let mut out = Self::new(self.algebra, self.q, ops, provenance)?;
        out.params = self.params.clone();
        Ok(out)
    }

    /// Conjugation by the diagonal unitary `e_i -> e^{i theta(idx)} e_i`,
    /// with `idx` the per-factor multi-index.
    pub fn gauge(&self, theta: impl Fn(&[usize]) -> f64) -> Result<Self> {
        let space = self.space().clone();
        let phase: Vec<C64> = (0..space.dim()).map(|i| C64::from_polar(1.0, theta(&space.multi_index(i)))).collect();
        let u = TruncOp::from_diag(&space, |i| phase[i]);
        let ud = u.adjoint();
        self.map_ops(&format!("gauge({})", self.provenance), |_, op| {
            let band = op.band().to_vec();
            (&(&u * op) * &ud).with_band(band)
        })
    }

    /// `a (+) b` realized on `C^2 (x) H`; both summands must share a space.
    pub fn direct_sum(a: &RepInstance, b: &RepInstance) -> Result<Self> {
        if a.algebra != b.algebra {
            return Err(Error::AlgebraMismatch { expected: a.algebra, found: b.algebra });
        }
        if a.space().dims() != b.space().dims() {
            return Err(Error::DimensionMismatch("direct sum of different spaces".into()));
        }
        let sel = |k: usize| {
            TruncOp::from_diag(&Space::new(vec![Factor::flat(2)]), move |i| C64::new((i == k) as u8 as f64, 0.0))
        };
        let (p0, p1) = (sel(0), sel(1));
        let ops = a
            .gens
            .iter()
            .map(|(g, op)| (*g, &p0.kron(op) + &p1.kron(&b.gens[g])))
            .collect();
        Self::new(a.algebra, a.q, ops, format!("{} (+) {}", a.provenance, b.provenance))
    }

    /// Representation with every generator zero on `space`.
    pub fn zero(algebra: Algebra, q: f64, space: &Space) -> Result<Self> {
        let ops = algebra.generators().into_iter().map(|g| (g, TruncOp::zero(space))).collect();
        Self::new(algebra, q, ops, "zero")
    }
}
