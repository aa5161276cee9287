//! Graded verification of a parameter point.
//!
//! A point climbs through seven levels:
//!
//! | level | meaning                                                   |
//! |-------|-----------------------------------------------------------|
//! | 0     | singular, or the edge cubic has a non-square discriminant |
//! | 1     | edge cubic discriminant is a rational square              |
//! | 2     | edge cubic splits over ℚ                                  |
//! | 3     | edge roots are all positive                               |
//! | 4     | diagonal cubic splits with positive roots                 |
//! | 5     | some diagonal pairing satisfies all auxiliary equations   |
//! | 6     | the roots form a perfect cuboid with unit space diagonal  |
//!
//! Every check is exact: a pass means a residual of exactly zero.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coefficients::{edge_cubic, CoefficientSet, E21Form, Evaluator, Params};
use crate::cubic::{is_rational_square, rational_roots, split_after_prefilter, RootTriple};
use crate::rational::{serde_frac, Rational};
use crate::singularity::{classify, SingularityClass};

/// Right-hand sides `(E₂₁, E₁₁, E₁₂)` of the auxiliary equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryRhs {
    pub e21: Rational,
    pub e11: Rational,
    pub e12: Rational,
}

impl From<&CoefficientSet> for AuxiliaryRhs {
    fn from(cs: &CoefficientSet) -> Self {
        Self {
            e21: cs.e21.clone(),
            e11: cs.e11.clone(),
            e12: cs.e12.clone(),
        }
    }
}

/// Assignment of diagonal slots: slot `i` of the auxiliary equations reads
/// `d[perm[i]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pairing(pub [usize; 3]);

impl Pairing {
    pub const IDENTITY: Pairing = Pairing([0, 1, 2]);

    /// All six permutations in lexicographic order.
    pub const ALL: [Pairing; 6] = [
        Pairing([0, 1, 2]),
        Pairing([0, 2, 1]),
        Pairing([1, 0, 2]),
        Pairing([1, 2, 0]),
        Pairing([2, 0, 1]),
        Pairing([2, 1, 0]),
    ];

    pub fn apply<T: Clone>(&self, d: &[T; 3]) -> [T; 3] {
        [
            d[self.0[0]].clone(),
            d[self.0[1]].clone(),
            d[self.0[2]].clone(),
        ]
    }

    pub fn inverse(&self) -> Pairing {
        let mut inv = [0; 3];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Pairing(inv)
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.0[0] + 1, self.0[1] + 1, self.0[2] + 1)
    }
}

/// `LHS − RHS` of the three auxiliary equations with diagonals read through
/// `perm`:
///
/// * `x₁x₂d₃ + x₂x₃d₁ + x₃x₁d₂ − E₂₁`
/// * `x₁d₂ + d₁x₂ + x₂d₃ + d₂x₃ + x₃d₁ + d₃x₁ − E₁₁`
/// * `x₁d₂d₃ + x₂d₃d₁ + x₃d₁d₂ − E₁₂`
pub fn auxiliary_residuals(
    x: &[Rational; 3],
    d: &[Rational; 3],
    perm: Pairing,
    rhs: &AuxiliaryRhs,
) -> [Rational; 3] {
    let [x1, x2, x3] = x;
    let [d1, d2, d3] = perm.apply(d);
    let lhs21 = x1 * x2 * &d3 + x2 * x3 * &d1 + x3 * x1 * &d2;
    let lhs11 = x1 * &d2 + &d1 * x2 + x2 * &d3 + &d2 * x3 + x3 * &d1 + &d3 * x1;
    let lhs12 = x1 * &d2 * &d3 + x2 * &d3 * &d1 + x3 * &d1 * &d2;
    [lhs21 - &rhs.e21, lhs11 - &rhs.e11, lhs12 - &rhs.e12]
}

/// First pairing, in lexicographic order, under which all three residuals
/// vanish.
pub fn check_pairings(x: &[Rational; 3], d: &[Rational; 3], rhs: &AuxiliaryRhs) -> Option<Pairing> {
    Pairing::ALL.into_iter().find(|&perm| {
        auxiliary_residuals(x, d, perm, rhs)
            .iter()
            .all(Zero::is_zero)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PythagoreanOutcome {
    pub holds: bool,
    /// Cyclic face convention that succeeded.
    pub convention: Option<usize>,
    /// `x_j² + x_k² − d²` per face, for the successful convention or for
    /// convention 0 when none succeeds.
    #[serde(with = "serde_frac::triple")]
    pub face_residuals: [Rational; 3],
    /// `x₁² + x₂² + x₃² − 1`.
    #[serde(with = "serde_frac")]
    pub space_residual: Rational,
}

fn face_residuals(x: &[Rational; 3], d: &[Rational; 3], shift: usize) -> [Rational; 3] {
    std::array::from_fn(|i| {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        let di = &d[(i + shift) % 3];
        &x[j] * &x[j] + &x[k] * &x[k] - di * di
    })
}

/// Checks the face relations `x_j² + x_k² = d²` under each of the three
/// cyclic face conventions, plus `x₁² + x₂² + x₃² = 1`.
pub fn pythagorean_check(
    x: &[Rational; 3],
    d: &[Rational; 3],
    perm: Pairing,
) -> PythagoreanOutcome {
    let d = perm.apply(d);
    let space_residual = x.iter().map(|v| v * v).sum::<Rational>() - Rational::one();
    let found = (0..3).find_map(|shift| {
        let r = face_residuals(x, &d, shift);
        r.iter().all(Zero::is_zero).then_some((shift, r))
    });
    let (convention, faces) = match found {
        Some((shift, r)) => (Some(shift), r),
        None => (None, face_residuals(x, &d, 0)),
    };
    PythagoreanOutcome {
        holds: convention.is_some() && space_residual.is_zero(),
        convention,
        face_residuals: faces,
        space_residual,
    }
}

/// Why grading stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum Reason {
    Singular,
    DiscNonsquare,
    EdgeNoSplit,
    EdgeNonpositive,
    DiagonalNoSplit,
    DiagonalNonpositive,
    E21Pole,
    NoPairing,
    NotPythagorean,
    PerfectCuboid,
}

impl Reason {
    pub const ALL: [Reason; 10] = [
        Reason::Singular,
        Reason::DiscNonsquare,
        Reason::EdgeNoSplit,
        Reason::EdgeNonpositive,
        Reason::DiagonalNoSplit,
        Reason::DiagonalNonpositive,
        Reason::E21Pole,
        Reason::NoPairing,
        Reason::NotPythagorean,
        Reason::PerfectCuboid,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Reason::Singular => "singular",
            Reason::DiscNonsquare => "disc-nonsquare",
            Reason::EdgeNoSplit => "edge-no-split",
            Reason::EdgeNonpositive => "edge-nonpositive",
            Reason::DiagonalNoSplit => "diag-no-split",
            Reason::DiagonalNonpositive => "diag-nonpositive",
            Reason::E21Pole => "e21-pole",
            Reason::NoPairing => "no-pairing",
            Reason::NotPythagorean => "not-pythagorean",
            Reason::PerfectCuboid => "perfect-cuboid",
        }
    }

    pub fn from_code(code: &str) -> Option<Reason> {
        Reason::ALL.into_iter().find(|r| r.code() == code)
    }

    /// Level reached by a point that stops for this reason.
    pub fn level(self) -> u8 {
        match self {
            Reason::Singular | Reason::DiscNonsquare => 0,
            Reason::EdgeNoSplit => 1,
            Reason::EdgeNonpositive => 2,
            Reason::DiagonalNoSplit | Reason::DiagonalNonpositive => 3,
            Reason::E21Pole | Reason::NoPairing => 4,
            Reason::NotPythagorean => 5,
            Reason::PerfectCuboid => 6,
        }
    }
}

impl From<Reason> for &'static str {
    fn from(r: Reason) -> Self {
        r.code()
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub params: Params,
    pub level: u8,
    pub reason: Reason,
    /// Exact residuals of the failed check (empty when there is none to show).
    #[serde(with = "serde_frac::vec")]
    pub residuals: Vec<Rational>,
    pub singular: SingularityClass,
    pub edges: Option<RootTriple>,
    pub diagonals: Option<RootTriple>,
    pub pairing: Option<Pairing>,
    pub e21_form: E21Form,
}

impl Verdict {
    fn stop(params: &Params, form: E21Form, reason: Reason, residuals: Vec<Rational>) -> Verdict {
        Verdict {
            params: params.clone(),
            level: reason.level(),
            reason,
            residuals,
            singular: SingularityClass::empty(),
            edges: None,
            diagonals: None,
            pairing: None,
            e21_form: form,
        }
    }

    pub fn is_perfect_cuboid(&self) -> bool {
        self.level == 6
    }
}

/// Runs the full pipeline at `p`, stopping at the first failed check.
pub fn grade(p: &Params, form: E21Form) -> Verdict {
    let class = classify(p);
    if !class.is_empty() {
        let mut v = Verdict::stop(p, form, Reason::Singular, Vec::new());
        v.singular = class;
        return v;
    }

    let ev = Evaluator::new(p);
    let edge = edge_cubic(&ev.e10(), &ev.e20(), &ev.e30());
    let disc = edge.discriminant();
    if is_rational_square(&disc).is_none() {
        return Verdict::stop(p, form, Reason::DiscNonsquare, vec![disc]);
    }
    let Some(edges) = split_after_prefilter(&edge) else {
        return Verdict::stop(p, form, Reason::EdgeNoSplit, Vec::new());
    };
    let with_edges = |reason, residuals| {
        let mut v = Verdict::stop(p, form, reason, residuals);
        v.edges = Some(edges.clone());
        v
    };
    if !edges.all_positive() {
        return with_edges(Reason::EdgeNonpositive, Vec::new());
    }

    let diag = edge_cubic(&ev.e01(), &ev.e02(), &ev.e03());
    let Some(diagonals) = rational_roots(&diag) else {
        return with_edges(Reason::DiagonalNoSplit, vec![diag.discriminant()]);
    };
    let with_both = |reason, residuals| {
        let mut v = with_edges(reason, residuals);
        v.diagonals = Some(diagonals.clone());
        v
    };
    if !diagonals.all_positive() {
        return with_both(Reason::DiagonalNonpositive, Vec::new());
    }

    let Ok(e21) = ev.e21(form) else {
        return with_both(Reason::E21Pole, Vec::new());
    };
    let rhs = AuxiliaryRhs {
        e21,
        e11: ev.e11(),
        e12: ev.e12(),
    };
    let Some(pairing) = check_pairings(&edges, &diagonals, &rhs) else {
        let r = auxiliary_residuals(&edges, &diagonals, Pairing::IDENTITY, &rhs);
        return with_both(Reason::NoPairing, r.to_vec());
    };

    let py = pythagorean_check(&edges, &diagonals, pairing);
    let (reason, residuals) = if py.holds {
        debug_assert_eq!(crate::cubic::CubicPoly::from_roots(&edges), edge);
        debug_assert_eq!(crate::cubic::CubicPoly::from_roots(&diagonals), diag);
        (Reason::PerfectCuboid, Vec::new())
    } else {
        let mut r = py.face_residuals.to_vec();
        r.push(py.space_residual);
        (Reason::NotPythagorean, r)
    };
    let mut v = with_both(reason, residuals);
    v.pairing = Some(pairing);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn ints(v: [i64; 3]) -> [Rational; 3] {
        v.map(int)
    }

    fn rhs(e21: i64, e11: i64, e12: i64) -> AuxiliaryRhs {
        AuxiliaryRhs {
            e21: int(e21),
            e11: int(e11),
            e12: int(e12),
        }
    }

    #[test]
    fn residual_examples() {
        let ones = ints([1, 1, 1]);
        assert_eq!(
            auxiliary_residuals(&ones, &ones, Pairing::IDENTITY, &rhs(3, 6, 3)),
            ints([0, 0, 0])
        );
        assert_eq!(
            auxiliary_residuals(&ones, &ones, Pairing::IDENTITY, &rhs(0, 0, 0)),
            ints([3, 6, 3])
        );
        // x1 d2 d3 + x2 d3 d1 + x3 d1 d2 = 1 + 2 + 3 with unit diagonals
        assert_eq!(
            auxiliary_residuals(&ints([1, 2, 3]), &ones, Pairing::IDENTITY, &rhs(0, 0, 0)),
            ints([11, 12, 6])
        );
    }

    #[test]
    fn pairing_examples() {
        let ones = ints([1, 1, 1]);
        assert_eq!(
            check_pairings(&ones, &ones, &rhs(3, 6, 3)),
            Some(Pairing::IDENTITY)
        );
        assert_eq!(
            check_pairings(&ints([1, 2, 3]), &ints([4, 5, 6]), &rhs(0, 0, 0)),
            None
        );
    }

    #[test]
    fn scrambled_diagonals_recover_the_pairing() {
        let x = [ratio(1, 3), ratio(2, 5), ratio(7, 4)];
        let d_true = [ratio(3, 2), ratio(5, 7), ratio(11, 9)];
        let target = {
            let r = auxiliary_residuals(&x, &d_true, Pairing::IDENTITY, &rhs(0, 0, 0));
            AuxiliaryRhs {
                e21: r[0].clone(),
                e11: r[1].clone(),
                e12: r[2].clone(),
            }
        };
        for sigma in Pairing::ALL {
            // d_in[sigma[i]] = d_true[i]
            let d_in = sigma.inverse().apply(&d_true);
            assert_eq!(sigma.apply(&d_in), d_true);
            assert_eq!(check_pairings(&x, &d_in, &target), Some(sigma));
        }
    }

    #[test]
    fn pythagorean_examples() {
        let out = pythagorean_check(
            &ints([44, 117, 240]),
            &ints([267, 244, 125]),
            Pairing::IDENTITY,
        );
        assert!(!out.holds);
        assert_eq!(out.convention, Some(0));
        assert_eq!(out.face_residuals, ints([0, 0, 0]));
        assert_eq!(out.space_residual, int(73224));

        let out = pythagorean_check(&ints([1, 0, 0]), &ints([0, 1, 1]), Pairing::IDENTITY);
        assert!(out.holds);

        let ones = ints([1, 1, 1]);
        assert!(!pythagorean_check(&ones, &ones, Pairing::IDENTITY).holds);
    }

    #[test]
    fn pythagorean_accepts_any_cyclic_convention() {
        // diagonals rotated by one slot still pass through convention 1
        let out = pythagorean_check(
            &ints([44, 117, 240]),
            &ints([125, 267, 244]),
            Pairing::IDENTITY,
        );
        assert_eq!(out.convention, Some(1));
        assert_eq!(out.face_residuals, ints([0, 0, 0]));
    }

    #[test]
    fn grade_singular_point() {
        let v = grade(&Params::new(ratio(1, 2), int(3)), E21Form::Printed);
        assert_eq!(v.level, 0);
        assert_eq!(v.reason, Reason::Singular);
        assert_eq!(v.singular.names(), vec!["FirstCurve"]);
    }

    #[test]
    fn grade_levels_match_reasons() {
        for b in -3..=3 {
            for c in -3..=3 {
                let v = grade(&Params::new(ratio(b, 2), ratio(c, 3)), E21Form::Printed);
                assert_eq!(v.level, v.reason.level());
                assert_eq!(v.edges.is_some(), v.level >= 2);
                assert_eq!(
                    v.diagonals.is_some(),
                    v.level >= 4 || v.reason == Reason::DiagonalNonpositive
                );
            }
        }
    }

    #[test]
    fn reason_codes_round_trip() {
        for r in Reason::ALL {
            assert_eq!(Reason::from_code(r.code()), Some(r));
        }
    }
}
