//! Exact evaluation of the nine coefficient formulas `E₁₀ … E₁₂`.
//!
//! `E₁₀, E₂₀, E₃₀` are the elementary symmetric values of the edge cubic,
//! `E₀₁, E₀₂, E₀₃` those of the face-diagonal cubic, and `E₂₁, E₁₁, E₁₂`
//! the right-hand sides of the three auxiliary equations. Each formula is
//! stored as a product of integer polynomial factors and evaluated factor by
//! factor, so the denominators seen here are the ones written in the
//! formulas.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bipoly::{IntPoly2, PointPowers};
use crate::cubic::CubicPoly;
use crate::rational::{serde_frac, Frac, Rational};
use crate::singularity::{classify, SingularityClass};

/// A point `(b, c)` of the parameter plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    #[serde(with = "serde_frac")]
    pub b: Rational,
    #[serde(with = "serde_frac")]
    pub c: Rational,
}

impl Params {
    pub fn new(b: Rational, c: Rational) -> Self {
        Self { b, c }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", Frac(&self.b), Frac(&self.c))
    }
}

/// Which denominator to use for `E₂₁`.
///
/// `Printed` keeps the quartic with its extra `−4c³` term as the `E₂₁`
/// formula is written; `Common` uses the quartic shared with `E₃₀`, `E₀₃`,
/// `E₁₂` and the common denominator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum E21Form {
    #[default]
    Printed,
    Common,
}

impl E21Form {
    pub fn as_str(self) -> &'static str {
        match self {
            E21Form::Printed => "printed",
            E21Form::Common => "common",
        }
    }
}

impl fmt::Display for E21Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for E21Form {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "printed" => Ok(E21Form::Printed),
            "common" => Ok(E21Form::Common),
            other => Err(format!(
                "unknown E21 form `{other}` (expected printed|common)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoefficientError {
    #[error("singular point: {0}")]
    SingularPoint(SingularityClass),
    /// The printed `E₂₁` denominator vanishes at a point that is not on the
    /// singular locus of the common denominator.
    #[error("printed E21 denominator vanishes at {0}")]
    E21PrintedPole(Box<Params>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientSet {
    #[serde(with = "serde_frac")]
    pub e10: Rational,
    #[serde(with = "serde_frac")]
    pub e20: Rational,
    #[serde(with = "serde_frac")]
    pub e30: Rational,
    #[serde(with = "serde_frac")]
    pub e01: Rational,
    #[serde(with = "serde_frac")]
    pub e02: Rational,
    #[serde(with = "serde_frac")]
    pub e03: Rational,
    #[serde(with = "serde_frac")]
    pub e21: Rational,
    #[serde(with = "serde_frac")]
    pub e11: Rational,
    #[serde(with = "serde_frac")]
    pub e12: Rational,
}

impl CoefficientSet {
    /// `(name, value)` pairs in the conventional order.
    pub fn entries(&self) -> [(&'static str, &Rational); 9] {
        [
            ("e10", &self.e10),
            ("e20", &self.e20),
            ("e30", &self.e30),
            ("e01", &self.e01),
            ("e02", &self.e02),
            ("e03", &self.e03),
            ("e21", &self.e21),
            ("e11", &self.e11),
            ("e12", &self.e12),
        ]
    }

    /// Monic cubic `x³ − E₁₀x² + E₂₀x − E₃₀` whose roots are the edges.
    pub fn edge_cubic(&self) -> CubicPoly {
        edge_cubic(&self.e10, &self.e20, &self.e30)
    }

    /// Monic cubic `d³ − E₀₁d² + E₀₂d − E₀₃` whose roots are the face diagonals.
    pub fn diagonal_cubic(&self) -> CubicPoly {
        edge_cubic(&self.e01, &self.e02, &self.e03)
    }
}

/// `x³ − e1·x² + e2·x − e3`.
pub fn edge_cubic(e1: &Rational, e2: &Rational, e3: &Rational) -> CubicPoly {
    CubicPoly::new(-e1.clone(), e2.clone(), -e3.clone())
}

/// Same sign mapping as [`edge_cubic`], applied to `(E₀₁, E₀₂, E₀₃)`.
pub fn diagonal_cubic(cs: &CoefficientSet) -> CubicPoly {
    cs.diagonal_cubic()
}

struct Tables {
    // denominators
    six_term: IntPoly2,
    d1: IntPoly2,
    d2: IntPoly2,
    quartic: IntPoly2,
    quartic_e21: IntPoly2,
    // numerator factors
    n11: IntPoly2,
    n10: IntPoly2,
    n01: IntPoly2,
    f20a: IntPoly2,
    f20b: IntPoly2,
    n02: IntPoly2,
    f30a: IntPoly2,
    f30b: IntPoly2,
    f03a: IntPoly2,
    f03b: IntPoly2,
    n21: IntPoly2,
    n12: IntPoly2,
}

static TABLES: LazyLock<Tables> = LazyLock::new(|| Tables {
    six_term: IntPoly2::from_terms(&[
        (1, 2, 2),
        (2, 2, 0),
        (-3, 2, 1),
        (1, 0, 1),
        (-1, 1, 2),
        (2, 1, 0),
    ]),
    d1: IntPoly2::from_terms(&[(1, 1, 1), (-1, 0, 0), (-1, 1, 0)]),
    d2: IntPoly2::from_terms(&[(1, 1, 1), (-1, 0, 1), (-2, 1, 0)]),
    quartic: IntPoly2::from_terms(&[
        (1, 2, 4),
        (-6, 2, 3),
        (13, 2, 2),
        (-12, 2, 1),
        (4, 2, 0),
        (1, 0, 2),
    ]),
    quartic_e21: IntPoly2::from_terms(&[
        (1, 2, 4),
        (-6, 2, 3),
        (13, 2, 2),
        (-12, 2, 1),
        (-4, 0, 3),
        (4, 2, 0),
        (1, 0, 2),
    ]),
    // c² + 2 − 4c, times b
    n11: IntPoly2::from_terms(&[(1, 1, 2), (2, 1, 0), (-4, 1, 1)]),
    n10: IntPoly2::from_terms(&[(1, 2, 2), (2, 2, 0), (-3, 2, 1), (-1, 0, 1)]),
    // c² + 2 − 2c, times b
    n01: IntPoly2::from_terms(&[(1, 1, 2), (2, 1, 0), (-2, 1, 1)]),
    f20a: IntPoly2::from_terms(&[(1, 1, 2), (-2, 0, 1), (-2, 1, 0)]),
    f20b: IntPoly2::from_terms(&[(2, 1, 2), (-1, 0, 2), (-6, 1, 1), (2, 0, 0), (4, 1, 0)]),
    n02: IntPoly2::from_terms(&[
        (28, 2, 2),
        (-16, 2, 1),
        (-2, 0, 2),
        (-4, 2, 0),
        (-1, 2, 4),
        (4, 3, 4),
        (-12, 3, 3),
        (4, 1, 3),
        (24, 3, 1),
        (-8, 1, 1),
        (-2, 4, 4),
        (12, 4, 3),
        (-26, 4, 2),
        (-8, 2, 3),
        (24, 4, 1),
        (-16, 3, 0),
        (-8, 4, 0),
    ]),
    f30a: IntPoly2::from_terms(&[(1, 1, 2), (-4, 1, 1), (2, 0, 0), (4, 1, 0)]),
    f30b: IntPoly2::from_terms(&[(2, 1, 2), (-1, 0, 2), (-4, 1, 1), (2, 1, 0)]),
    f03a: IntPoly2::from_terms(&[
        (1, 2, 4),
        (-5, 2, 3),
        (10, 2, 2),
        (-10, 2, 1),
        (4, 2, 0),
        (2, 1, 1),
        (2, 0, 2),
        (-1, 1, 3),
    ]),
    f03b: IntPoly2::from_terms(&[
        (2, 2, 4),
        (-12, 2, 3),
        (26, 2, 2),
        (-24, 2, 1),
        (8, 2, 0),
        (-1, 1, 4),
        (3, 1, 3),
        (-6, 1, 1),
        (4, 1, 0),
        (1, 0, 3),
        (-2, 0, 2),
        (2, 0, 1),
    ]),
    n21: IntPoly2::from_terms(&[
        (5, 1, 6),
        (-2, 2, 6),
        (52, 2, 5),
        (-16, 1, 5),
        (-2, 2, 7),
        (2, 4, 8),
        (-26, 4, 7),
        (-426, 4, 5),
        (-61, 3, 6),
        (100, 3, 5),
        (14, 3, 7),
        (-1, 3, 8),
        (-20, 1, 2),
        (-8, 2, 2),
        (-16, 2, 1),
        (-128, 2, 4),
        (-200, 3, 3),
        (244, 3, 2),
        (32, 1, 3),
        (768, 4, 4),
        (-852, 4, 3),
        (568, 4, 2),
        (104, 2, 3),
        (-208, 4, 1),
        (8, 0, 4),
        (16, 3, 0),
        (-112, 3, 1),
        (142, 4, 6),
        (32, 4, 0),
        (-2, 0, 5),
    ]),
    n12: IntPoly2::from_terms(&[
        (16, 6, 0),
        (32, 5, 0),
        (-6, 2, 5),
        (2, 1, 5),
        (-62, 5, 6),
        (62, 6, 6),
        (16, 4, 0),
        (-180, 6, 5),
        (-1, 3, 7),
        (18, 5, 7),
        (-12, 6, 7),
        (-2, 5, 8),
        (1, 6, 8),
        (248, 5, 2),
        (248, 6, 2),
        (-96, 6, 1),
        (321, 6, 4),
        (-180, 5, 3),
        (-144, 5, 1),
        (-360, 6, 3),
        (1, 4, 8),
        (8, 4, 6),
        (-6, 4, 7),
        (18, 4, 5),
        (7, 3, 6),
        (90, 5, 5),
        (-14, 3, 5),
        (17, 2, 4),
        (32, 4, 2),
        (28, 3, 3),
        (-28, 3, 2),
        (-4, 1, 3),
        (8, 3, 1),
        (-57, 4, 4),
        (36, 4, 3),
        (-12, 2, 3),
        (-48, 4, 1),
        (-1, 0, 4),
    ]),
});

/// Per-point evaluator. Shared denominator factors are evaluated once.
///
/// Construction does not check singularity; callers classify first.
pub struct Evaluator {
    params: Params,
    pw: PointPowers,
    /// `(bc − 1 − b)² (bc − c − 2b)²`
    d12_sq: Rational,
    quartic: Rational,
}

fn half() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(2))
}

impl Evaluator {
    pub fn new(params: &Params) -> Self {
        let t = &*TABLES;
        let pw = PointPowers::new(&params.b, &params.c, 6, 8);
        let d1 = t.d1.eval_at(&pw);
        let d2 = t.d2.eval_at(&pw);
        let d12 = d1 * d2;
        Self {
            params: params.clone(),
            quartic: t.quartic.eval_at(&pw),
            d12_sq: &d12 * &d12,
            pw,
        }
    }

    fn v(&self, p: &IntPoly2) -> Rational {
        p.eval_at(&self.pw)
    }

    fn b(&self) -> &Rational {
        &self.params.b
    }

    fn c(&self) -> &Rational {
        &self.params.c
    }

    pub fn e11(&self) -> Rational {
        -self.v(&TABLES.n11) / self.v(&TABLES.six_term)
    }

    pub fn e10(&self) -> Rational {
        -self.v(&TABLES.n10) / self.v(&TABLES.six_term)
    }

    pub fn e01(&self) -> Rational {
        -self.v(&TABLES.n01) / self.v(&TABLES.six_term)
    }

    pub fn e20(&self) -> Rational {
        let t = &*TABLES;
        half() * self.b() * self.v(&t.f20a) * self.v(&t.f20b) / &self.d12_sq
    }

    pub fn e02(&self) -> Rational {
        half() * self.v(&TABLES.n02) / &self.d12_sq
    }

    pub fn e30(&self) -> Rational {
        let t = &*TABLES;
        let one = Rational::from_integer(1.into());
        let two = Rational::from_integer(2.into());
        let (b, c) = (self.b(), self.c());
        c * b * b * (&one - c) * (c - &two) * self.v(&t.f30a) * self.v(&t.f30b)
            / &self.quartic
            / &self.d12_sq
    }

    pub fn e03(&self) -> Rational {
        let t = &*TABLES;
        half() * self.b() * self.v(&t.f03a) * self.v(&t.f03b) / &self.quartic / &self.d12_sq
    }

    pub fn e21(&self, form: E21Form) -> Result<Rational, CoefficientError> {
        let t = &*TABLES;
        let den = match form {
            E21Form::Printed => self.v(&t.quartic_e21),
            E21Form::Common => self.quartic.clone(),
        };
        if den.is_zero() {
            return Err(CoefficientError::E21PrintedPole(Box::new(
                self.params.clone(),
            )));
        }
        Ok(half() * self.b() * self.v(&t.n21) / den / &self.d12_sq)
    }

    pub fn e12(&self) -> Rational {
        self.v(&TABLES.n12) / &self.quartic / &self.d12_sq
    }
}

/// All nine coefficients at a nonsingular point.
///
/// Under [`E21Form::Printed`] the `E₂₁` denominator has rational zeros off
/// the singular locus (for example `(2/3, 1/2)`); those points report
/// [`CoefficientError::E21PrintedPole`].
pub fn eval_coefficients(p: &Params, form: E21Form) -> Result<CoefficientSet, CoefficientError> {
    let class = classify(p);
    if !class.is_empty() {
        return Err(CoefficientError::SingularPoint(class));
    }
    let ev = Evaluator::new(p);
    Ok(CoefficientSet {
        e10: ev.e10(),
        e20: ev.e20(),
        e30: ev.e30(),
        e01: ev.e01(),
        e02: ev.e02(),
        e03: ev.e03(),
        e21: ev.e21(form)?,
        e11: ev.e11(),
        e12: ev.e12(),
    })
}

/// The extra `−4c³` quartic used by the printed `E₂₁` formula.
pub fn printed_e21_quartic_poly() -> &'static IntPoly2 {
    &TABLES.quartic_e21
}
