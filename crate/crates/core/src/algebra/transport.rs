//! How the commuting pair `x1 = z21 z21*`, `x2 = z22 z22*` moves past a
//! generator.

use serde::{Deserialize, Serialize};

use super::{parse_expression, Algebra, NCPoly, Presentation};

/// Components of the affine maps on `(x1, x2)`, indexed `[d - 1][b - 1]`.
const MAPS: [[&str; 2]; 2] = [
    ["q^2 z21 z21* - (1 - q^2) z22 z22* + 1 - q^2", "z22 z22*"],
    ["q^4 z21 z21*", "q^4 z22 z22* + 1 - q^4"],
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransportIdentity {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    /// Normal form of `lhs - rhs`.
    pub defect: String,
}

/// `x_b z_cd = z_cd F_d^b(x1, x2)` for `b` in `{1, 2}` and each unstarred
/// generator `z_cd`, decided by rewriting. The map is picked by the column
/// `d` of the generator and the component by `b`.
pub fn pair_transport_identities() -> Vec<TransportIdentity> {
    let pres = Presentation::get(Algebra::Sym2);
    let parse = |s: &str| parse_expression(s, Algebra::Sym2).expect("fixed expressions parse");
    let mut out = Vec::new();
    for (b, x) in [(1, "z21 z21*"), (2, "z22 z22*")] {
        for (g, d) in [("z11", 1), ("z21", 1), ("z22", 2)] {
            let lhs = format!("{x} {g}");
            let rhs = format!("{g} ({})", MAPS[d - 1][b - 1]);
            let defect: NCPoly = pres.normal_form(&(&parse(&lhs) - &parse(&rhs)));
            out.push(TransportIdentity { lhs, rhs, holds: defect.is_zero(), defect: defect.to_expr() });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transport_holds_for_the_second_row() {
        let ids = pair_transport_identities();
        assert_eq!(ids.len(), 6);
        for id in &ids {
            assert_eq!(id.holds, !id.lhs.ends_with("z11"), "{id:?}");
        }
    }

    #[test]
    fn z11_defect_against_x2_is_the_commutator_term() {
        let ids = pair_transport_identities();
        let id = ids.iter().find(|i| i.lhs == "z22 z22* z11").unwrap();
        let expected = parse_expression("-q (q^2 - q^-2) z21^2 z22*", Algebra::Sym2).unwrap();
        assert_eq!(parse_expression(&id.defect, Algebra::Sym2).unwrap(), expected);
    }
}
