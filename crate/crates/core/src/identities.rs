//! The polynomial identities behind the singular-locus analysis, checked
//! by exact expansion.

use serde::Serialize;

use crate::bipoly::IntPoly2;
use crate::singularity::{
    common_denominator_poly, cubed_denominator_poly, first_curve_poly, quartic_poly,
    second_curve_poly,
};

#[derive(Debug, Clone)]
pub struct Identity {
    pub name: &'static str,
    pub statement: &'static str,
    pub lhs: IntPoly2,
    pub rhs: IntPoly2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub statement: &'static str,
    pub pass: bool,
    /// `lhs − rhs`, rendered; `"0"` on a pass.
    pub difference: String,
}

impl Identity {
    pub fn check(&self) -> IdentityReport {
        let diff = &self.lhs - &self.rhs;
        IdentityReport {
            identity: self.name,
            statement: self.statement,
            pass: diff.is_zero(),
            difference: diff.to_string(),
        }
    }
}

fn parse(s: &str) -> IntPoly2 {
    s.parse().expect("built-in identity literal must parse")
}

/// The four identities, in a fixed order.
pub fn all() -> Vec<Identity> {
    vec![
        Identity {
            name: "denominator-factorization",
            statement: "(bc - 1 - b)(bc - c - 2b) = b^2c^2 + 2b^2 - 3b^2c + c - bc^2 + 2b",
            lhs: first_curve_poly() * second_curve_poly(),
            rhs: parse("b^2c^2 + 2b^2 - 3b^2c + c - bc^2 + 2b"),
        },
        Identity {
            name: "common-denominator-reduction",
            statement: "Q (bc-1-b)^2 (bc-c-2b)^2 (b^2c^2 + 2b^2 - 3b^2c + c - bc^2 + 2b) = Q (bc-1-b)^3 (bc-c-2b)^3",
            lhs: common_denominator_poly(),
            rhs: cubed_denominator_poly(),
        },
        Identity {
            name: "quartic-discriminant",
            statement: "disc_b(b^2c^4 - 6b^2c^3 + 13b^2c^2 - 12b^2c + 4b^2 + c^2) = -4(c-1)^2(c-2)^2c^2",
            lhs: quartic_poly()
                .discriminant_in_b()
                .expect("quartic factor has degree 2 in b"),
            rhs: parse("-4(c-1)^2(c-2)^2c^2"),
        },
        Identity {
            name: "quartic-sum-of-squares",
            statement: "b^2c^4 - 6b^2c^3 + 13b^2c^2 - 12b^2c + 4b^2 + c^2 = (c-1)^2(c-2)^2b^2 + c^2",
            lhs: quartic_poly().clone(),
            rhs: parse("(c-1)^2(c-2)^2b^2 + c^2"),
        },
    ]
}

/// Checks every identity in [`all`].
pub fn check_all() -> Vec<IdentityReport> {
    all().iter().map(Identity::check).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        for r in check_all() {
            assert!(r.pass, "{} failed: {}", r.identity, r.difference);
            assert_eq!(r.difference, "0");
        }
        assert_eq!(check_all().len(), 4);
    }

    #[test]
    fn corrupted_identity_reports_difference() {
        let mut id = all().remove(0);
        id.rhs = &id.rhs + &IntPoly2::monomial(1, 1, 0);
        let r = id.check();
        assert!(!r.pass);
        assert_eq!(r.difference, "-b");
    }
}
