//! Defining relations of both algebras as oriented rewrite rules.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::generator::{Algebra, Generator, Word};
use super::parse::parse_expression;
use super::poly::NCPoly;

/// One defining relation `lead = replacement`, with `lead` a two-letter
/// word that is out of normal order.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lead: (Generator, Generator),
    pub replacement: NCPoly,
}

impl Relation {
    /// `lead - replacement`, which vanishes in the algebra.
    pub fn as_poly(&self) -> NCPoly {
        let lead = NCPoly::monomial(self.replacement.algebra(), &[self.lead.0, self.lead.1]);
        &lead - &self.replacement
    }
}

/// Which inversion to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    /// Uniformly random inversion, from a seeded generator.
    Random(u64),
}

pub struct Presentation {
    algebra: Algebra,
    relations: Vec<Relation>,
    rules: HashMap<(Generator, Generator), NCPoly>,
    cache: Mutex<HashMap<Word, NCPoly>>,
}

const SYM2_RELATIONS: &[(&str, &str)] = &[
    ("z11 z21", "q^2 z21 z11"),
    ("z21 z22", "q^2 z22 z21"),
    ("z11 z22", "z22 z11 + q (q^2 - q^-2) z21^2"),
    (
        "z11* z11",
        "q^4 z11 z11* - q (q^-1 - q)(1 + q^2)^2 z21 z21* + (q^-1 - q)^2 (1 + q^2) z22 z22* + 1 - q^4",
    ),
    ("z11* z21", "q^2 z21 z11* - q (q^-1 - q)(q^-1 + q) z22 z21*"),
    ("z11* z22", "z22 z11*"),
    ("z21* z22", "q^2 z22 z21*"),
    ("z21* z21", "q^2 z21 z21* - (1 - q^2) z22 z22* + 1 - q^2"),
    ("z22* z22", "q^4 z22 z22* + 1 - q^4"),
];

// The mixed relation for (z1^1)* carries the transposed partner (z_j^i)*;
// with the untransposed index the relations are not torus-homogeneous and
// no composite built by the coaction satisfies them.
const MAT2_RELATIONS: &[(&str, &str)] = &[
    ("z1^1 z1^2", "q z1^2 z1^1"),
    ("z2^1 z2^2", "q z2^2 z2^1"),
    ("z1^1 z2^1", "q z2^1 z1^1"),
    ("z1^2 z2^2", "q z2^2 z1^2"),
    ("z1^2 z2^1", "z2^1 z1^2"),
    ("z1^1 z2^2", "z2^2 z1^1 + (q - q^-1) z1^2 z2^1"),
    (
        "z1^1* z1^1",
        "q^2 z1^1 z1^1* - q^2 (q^-2 - 1)(z2^1 z2^1* + z1^2 z1^2*) + q^2 (q^-2 - 1)^2 z2^2 z2^2* + 1 - q^2",
    ),
    ("z1^1* z1^2", "q z1^2 z1^1* + (q - q^-1) z2^2 z2^1*"),
    ("z1^1* z2^1", "q z2^1 z1^1* + (q - q^-1) z2^2 z1^2*"),
    ("z1^1* z2^2", "z2^2 z1^1*"),
    ("z1^2* z1^2", "q^2 z1^2 z1^2* - (1 - q^2) z2^2 z2^2* + 1 - q^2"),
    ("z2^1* z2^1", "q^2 z2^1 z2^1* - (1 - q^2) z2^2 z2^2* + 1 - q^2"),
    ("z2^1* z1^2", "z1^2 z2^1*"),
    ("z2^2* z1^2", "q z1^2 z2^2*"),
    ("z2^2* z2^1", "q z2^1 z2^2*"),
    ("z2^2* z2^2", "q^2 z2^2 z2^2* + 1 - q^2"),
];

impl Presentation {
    /// Shared instance per algebra.
    pub fn get(algebra: Algebra) -> &'static Presentation {
        static SYM: OnceLock<Presentation> = OnceLock::new();
        static MAT: OnceLock<Presentation> = OnceLock::new();
        match algebra {
            Algebra::Sym2 => SYM.get_or_init(|| Presentation::build(Algebra::Sym2)),
            Algebra::Mat2 => MAT.get_or_init(|| Presentation::build(Algebra::Mat2)),
        }
    }

    fn build(algebra: Algebra) -> Self {
        let table = match algebra {
            Algebra::Sym2 => SYM2_RELATIONS,
            Algebra::Mat2 => MAT2_RELATIONS,
        };
        let mut relations = Vec::new();
        let mut rules = HashMap::new();
        for &(lead, rhs) in table {
            let lead_poly = parse_expression(lead, algebra).expect("built-in relation");
            let (word, _) = lead_poly.terms().next().expect("nonempty lead");
            let pair = match word.letters() {
                [a, b] => (*a, *b),
                _ => panic!("relation lead must have two letters"),
            };
            let replacement = parse_expression(rhs, algebra).expect("built-in relation");
            relations.push(Relation { name: lead.to_string(), lead: pair, replacement: replacement.clone() });
            let starred = (pair.1.star(), pair.0.star());
            rules.entry(starred).or_insert_with(|| replacement.star());
            rules.insert(pair, replacement);
        }
        Self { algebra, relations, rules, cache: Mutex::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    /// The defining relations as listed for the algebra.
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name == name)
    }

    /// Rewrite rules: the relations together with their adjoints.
    pub fn rules(&self) -> impl Iterator<Item = (&(Generator, Generator), &NCPoly)> {
        self.rules.iter()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Every inverted pair has a rule and every rule strictly decreases
    /// its leading word. Together these give termination.
    pub fn check_order(&self) -> Result<(), String> {
        let letters = self.algebra.letters();
        for &a in &letters {
            for &b in &letters {
                let inverted = a.rank() > b.rank();
                match (inverted, self.rules.get(&(a, b))) {
                    (true, None) => return Err(format!("no rule for {a} {b}")),
                    (false, Some(_)) => return Err(format!("rule on ordered pair {a} {b}")),
                    _ => {}
                }
            }
        }
        for ((a, b), rhs) in &self.rules {
            let lead = Word(vec![*a, *b]);
            if let Some((w, _)) = rhs.terms().find(|(w, _)| **w >= lead) {
                return Err(format!("rule {a} {b} -> {w:?} does not decrease"));
            }
        }
        Ok(())
    }

    pub fn normal_form(&self, p: &NCPoly) -> NCPoly {
        self.normal_form_with(p, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, p: &NCPoly, strategy: Strategy) -> NCPoly {
        assert_eq!(p.algebra(), self.algebra, "polynomial over another algebra");
        match strategy {
            Strategy::Leftmost => {
                let mut out = NCPoly::zero(self.algebra);
                for (w, c) in p.terms() {
                    out.add_scaled(&self.normal_word(w), c);
                }
                out
            }
            Strategy::Random(seed) => self.normal_form_random(p, seed),
        }
    }

    /// Normal form of a single word, memoized.
    pub fn normal_word(&self, w: &Word) -> NCPoly {
        let Some(i) = w.first_inversion() else {
            return NCPoly::word(self.algebra, w.clone());
        };
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(w) {
            return hit.clone();
        }
        let rhs = &self.rules[&(w.0[i], w.0[i + 1])];
        let mut out = NCPoly::zero(self.algebra);
        for (r, c) in rhs.terms() {
            out.add_scaled(&self.normal_word(&splice(w, i, r)), c);
        }
        self.cache.lock().expect("cache poisoned").insert(w.clone(), out.clone());
        out
    }

    fn normal_form_random(&self, p: &NCPoly, seed: u64) -> NCPoly {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut work = p.clone();
        let mut out = NCPoly::zero(self.algebra);
        loop {
            let top = work.terms().next_back().map(|(w, c)| (w.clone(), c.clone()));
            let Some((w, c)) = top else { break };
            work.add_term(w.clone(), &-&c);
            let inv: Vec<usize> = w.inversions().collect();
            if inv.is_empty() {
                out.add_term(w, &c);
                continue;
            }
            let i = inv[rng.random_range(0..inv.len())];
            for (r, d) in self.rules[&(w.0[i], w.0[i + 1])].terms() {
                work.add_term(splice(&w, i, r), &(&c * d));
            }
        }
        out
    }

    /// True iff `lhs - rhs` rewrites to zero.
    pub fn check_identity(&self, lhs: &NCPoly, rhs: &NCPoly) -> bool {
        self.normal_form(&(lhs - rhs)).is_zero()
    }
}

/// `w` with the two letters at `i, i+1` replaced by `r`.
fn splice(w: &Word, i: usize, r: &Word) -> Word {
    let mut v = Vec::with_capacity(w.len() + r.len());
    v.extend_from_slice(&w.0[..i]);
    v.extend_from_slice(&r.0);
    v.extend_from_slice(&w.0[i + 2..]);
    Word(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> NCPoly {
        parse_expression(s, Algebra::Sym2).unwrap()
    }

    #[test]
    fn rule_counts_and_order() {
        let s = Presentation::get(Algebra::Sym2);
        assert_eq!(s.relations().len(), 9);
        assert_eq!(s.rule_count(), 15);
        s.check_order().unwrap();
        let m = Presentation::get(Algebra::Mat2);
        assert_eq!(m.relations().len(), 16);
        assert_eq!(m.rule_count(), 28);
        m.check_order().unwrap();
    }

    #[test]
    fn commutator_of_z11_and_z22() {
        let s = Presentation::get(Algebra::Sym2);
        let nf = s.normal_form(&sym("z11 z22"));
        assert_eq!(nf, sym("z22 z11 + q (q^2 - q^-2) z21^2"));
    }

    #[test]
    fn transport_past_z11() {
        let s = Presentation::get(Algebra::Sym2);
        let nf = s.normal_form(&sym("z21 z21* z11 - z11 z21 z21*"));
        assert_eq!(nf, sym("q (q^2 - q^-2) z21^2 z22*"));
        let nf2 = s.normal_form(&sym("z22 z22* z11 - z11 z22 z22*"));
        assert_eq!(nf2, sym("-q (q^2 - q^-2) z21^2 z22*"));
    }

    #[test]
    fn normal_words_are_fixed() {
        let s = Presentation::get(Algebra::Sym2);
        let p = sym("z22^2 z11 z22*");
        assert_eq!(s.normal_form(&p), p);
    }

    #[test]
    fn identities() {
        let s = Presentation::get(Algebra::Sym2);
        assert!(s.check_identity(&sym("z22 z22* z22"), &sym("z22 (q^4 z22 z22* + 1 - q^4)")));
        assert!(s.check_identity(&sym("z22 z22* z21"), &sym("z21 z22 z22*")));
        assert!(!s.check_identity(&sym("z11 z21"), &sym("q^3 z21 z11")));
    }

    #[test]
    fn strategies_agree_on_a_long_word() {
        let m = Presentation::get(Algebra::Mat2);
        let p = parse_expression("z2^2* z1^1* z1^1 z2^1* z1^2 z2^2", Algebra::Mat2).unwrap();
        let a = m.normal_form(&p);
        for seed in 0..4 {
            assert_eq!(m.normal_form_with(&p, Strategy::Random(seed)), a);
        }
    }
}
