//! Singular points of the coefficient formulas.
//!
//! After the common denominator is reduced, a point `(b, c)` is singular
//! exactly when one of three factors vanishes:
//!
//! * the first curve `bc − 1 − b`, parametrized by `b = 1/(c − 1)`;
//! * the second curve `bc − c − 2b`, parametrized by `b = c/(c − 2)`;
//! * the quartic `b²c⁴ − 6b²c³ + 13b²c² − 12b²c + 4b² + c²`, which equals
//!   `(c − 1)²(c − 2)²b² + c²` and so has the origin as its only rational
//!   point.

use std::fmt;
use std::sync::LazyLock;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bipoly::{IntPoly2, PointPowers};
use crate::coefficients::Params;
use crate::rational::Rational;

/// One factor of the reduced common denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    FirstCurve,
    SecondCurve,
    ThirdVariety,
}

impl Component {
    pub const ALL: [Component; 3] = [
        Component::FirstCurve,
        Component::SecondCurve,
        Component::ThirdVariety,
    ];

    fn bit(self) -> u8 {
        1 << self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Component::FirstCurve => "FirstCurve",
            Component::SecondCurve => "SecondCurve",
            Component::ThirdVariety => "ThirdVariety",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Set of vanishing denominator factors. Empty means nonsingular.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SingularityClass {
    bits: u8,
}

impl SingularityClass {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn of(components: &[Component]) -> Self {
        let mut s = Self::empty();
        for &c in components {
            s.insert(c);
        }
        s
    }

    pub fn insert(&mut self, c: Component) {
        self.bits |= c.bit();
    }

    pub fn contains(&self, c: Component) -> bool {
        self.bits & c.bit() != 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_superset(&self, other: &SingularityClass) -> bool {
        self.bits & other.bits == other.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = Component> + '_ {
        Component::ALL.into_iter().filter(|c| self.contains(*c))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.iter().map(Component::name).collect()
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("nonsingular");
        }
        f.write_str(&self.names().join(", "))
    }
}

impl Serialize for SingularityClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.names())
    }
}

struct Factors {
    first: IntPoly2,
    second: IntPoly2,
    quartic: IntPoly2,
}

static FACTORS: LazyLock<Factors> = LazyLock::new(|| Factors {
    first: IntPoly2::from_terms(&[(1, 1, 1), (-1, 0, 0), (-1, 1, 0)]),
    second: IntPoly2::from_terms(&[(1, 1, 1), (-1, 0, 1), (-2, 1, 0)]),
    quartic: IntPoly2::from_terms(&[
        (1, 2, 4),
        (-6, 2, 3),
        (13, 2, 2),
        (-12, 2, 1),
        (4, 2, 0),
        (1, 0, 2),
    ]),
});

/// `bc − 1 − b`.
pub fn first_curve_poly() -> &'static IntPoly2 {
    &FACTORS.first
}

/// `bc − c − 2b`.
pub fn second_curve_poly() -> &'static IntPoly2 {
    &FACTORS.second
}

/// `b²c⁴ − 6b²c³ + 13b²c² − 12b²c + 4b² + c²`.
pub fn quartic_poly() -> &'static IntPoly2 {
    &FACTORS.quartic
}

/// The six-term denominator shared by `E₁₀`, `E₁₁` and `E₀₁`.
pub fn linear_group_denominator_poly() -> IntPoly2 {
    IntPoly2::from_terms(&[
        (1, 2, 2),
        (2, 2, 0),
        (-3, 2, 1),
        (1, 0, 1),
        (-1, 1, 2),
        (2, 1, 0),
    ])
}

/// Unreduced common denominator: quartic · (bc−1−b)² · (bc−c−2b)² · six-term factor.
pub fn common_denominator_poly() -> IntPoly2 {
    quartic_poly()
        * &first_curve_poly().pow(2)
        * second_curve_poly().pow(2)
        * linear_group_denominator_poly()
}

/// Common denominator after factoring the six-term factor: quartic · (bc−1−b)³ · (bc−c−2b)³.
pub fn cubed_denominator_poly() -> IntPoly2 {
    quartic_poly() * first_curve_poly().pow(3) * second_curve_poly().pow(3)
}

/// Reduced common denominator: quartic · (bc−1−b) · (bc−c−2b).
pub fn reduced_denominator_poly() -> IntPoly2 {
    quartic_poly() * first_curve_poly() * second_curve_poly()
}

fn powers_for(p: &Params) -> PointPowers {
    PointPowers::new(&p.b, &p.c, 2, 4)
}

fn is_origin(p: &Params) -> bool {
    p.b.is_zero() && p.c.is_zero()
}

/// Flags the factors of the reduced common denominator that vanish at `p`.
///
/// The quartic is decided by its closed-form rational point set; debug
/// builds re-check against direct evaluation.
pub fn classify(p: &Params) -> SingularityClass {
    let pw = powers_for(p);
    let mut class = SingularityClass::empty();
    if first_curve_poly().vanishes_at(&pw) {
        class.insert(Component::FirstCurve);
    }
    if second_curve_poly().vanishes_at(&pw) {
        class.insert(Component::SecondCurve);
    }
    if is_origin(p) {
        class.insert(Component::ThirdVariety);
    }
    debug_assert_eq!(
        class.contains(Component::ThirdVariety),
        quartic_poly().vanishes_at(&pw),
        "quartic closed form disagrees with evaluation at {p}"
    );
    class
}

/// Classification by evaluating all three factors, including the quartic.
pub fn classify_by_evaluation(p: &Params) -> SingularityClass {
    let pw = powers_for(p);
    let mut class = SingularityClass::empty();
    for (poly, comp) in [
        (first_curve_poly(), Component::FirstCurve),
        (second_curve_poly(), Component::SecondCurve),
        (quartic_poly(), Component::ThirdVariety),
    ] {
        if poly.vanishes_at(&pw) {
            class.insert(comp);
        }
    }
    class
}

/// Values of `bc − 1 − b`, `bc − c − 2b` and the quartic at `p`.
pub fn factor_values(p: &Params) -> [Rational; 3] {
    let pw = powers_for(p);
    [
        first_curve_poly().eval_at(&pw),
        second_curve_poly().eval_at(&pw),
        quartic_poly().eval_at(&pw),
    ]
}

/// Pole of a curve parametrization `b(c)`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the {curve} parametrization has a pole at c = {c}")]
pub struct PoleError {
    pub curve: Component,
    pub c: Rational,
}

/// `b = 1/(c − 1)`, the first curve solved for `b`.
pub fn first_curve_b(c: &Rational) -> Result<Rational, PoleError> {
    let d = c - Rational::one();
    if d.is_zero() {
        return Err(PoleError {
            curve: Component::FirstCurve,
            c: c.clone(),
        });
    }
    Ok(d.recip())
}

/// `b = c/(c − 2)`, the second curve solved for `b`.
pub fn second_curve_b(c: &Rational) -> Result<Rational, PoleError> {
    let d = c - Rational::from_integer(2.into());
    if d.is_zero() {
        return Err(PoleError {
            curve: Component::SecondCurve,
            c: c.clone(),
        });
    }
    Ok(c / d)
}

/// Every rational point of the quartic factor: the origin alone.
pub fn third_variety_points() -> Vec<Params> {
    vec![Params::new(Rational::zero(), Rational::zero())]
}
