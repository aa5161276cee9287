//! Monic rational cubics and their full splitting over ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::factor::divisors;
use crate::rational::{Frac, Rational};

/// The monic cubic `x³ + c2·x² + c1·x + c0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicPoly {
    pub c2: Rational,
    pub c1: Rational,
    pub c0: Rational,
}

impl CubicPoly {
    pub fn new(c2: Rational, c1: Rational, c0: Rational) -> Self {
        Self { c2, c1, c0 }
    }

    /// Monic cubic with the given roots.
    pub fn from_roots(r: &[Rational; 3]) -> Self {
        let e1 = &r[0] + &r[1] + &r[2];
        let e2 = &r[0] * &r[1] + &r[1] * &r[2] + &r[2] * &r[0];
        let e3 = &r[0] * &r[1] * &r[2];
        Self::new(-e1, e2, -e3)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        ((x + &self.c2) * x + &self.c1) * x + &self.c0
    }

    /// `18·c2·c1·c0 − 4·c2³·c0 + c2²·c1² − 4·c1³ − 27·c0²`.
    pub fn discriminant(&self) -> Rational {
        let (a, b, c) = (&self.c2, &self.c1, &self.c0);
        let n = |k: i64| Rational::from_integer(BigInt::from(k));
        n(18) * a * b * c - n(4) * a * a * a * c + a * a * b * b - n(4) * b * b * b - n(27) * c * c
    }

    /// Primitive integer multiple `[a3, a2, a1, a0]` with `a3 > 0`.
    pub fn primitive_integer_coefficients(&self) -> [BigInt; 4] {
        let l = self.c2.denom().lcm(self.c1.denom()).lcm(self.c0.denom());
        let scale = |r: &Rational| r.numer() * (&l / r.denom());
        let mut coeffs = [l.clone(), scale(&self.c2), scale(&self.c1), scale(&self.c0)];
        let g = coeffs.iter().fold(BigInt::zero(), |acc, k| acc.gcd(k));
        for k in coeffs.iter_mut() {
            *k /= &g;
        }
        coeffs
    }
}

impl fmt::Display for CubicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x^3 + ({})x^2 + ({})x + ({})",
            Frac(&self.c2),
            Frac(&self.c1),
            Frac(&self.c0)
        )
    }
}

/// Three rational roots, sorted ascending, repeated roots included.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RootTriple(#[serde(with = "crate::rational::serde_frac::triple")] [Rational; 3]);

impl RootTriple {
    pub fn new(mut roots: [Rational; 3]) -> Self {
        roots.sort();
        Self(roots)
    }

    pub fn roots(&self) -> &[Rational; 3] {
        &self.0
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|r| r.is_positive())
    }
}

impl std::ops::Deref for RootTriple {
    type Target = [Rational; 3];

    fn deref(&self) -> &[Rational; 3] {
        &self.0
    }
}

impl fmt::Display for RootTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {}, {}",
            Frac(&self.0[0]),
            Frac(&self.0[1]),
            Frac(&self.0[2])
        )
    }
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Nonnegative rational square root, if `r` is the square of a rational.
pub fn is_rational_square(r: &Rational) -> Option<Rational> {
    let p = integer_sqrt_exact(r.numer())?;
    let q = integer_sqrt_exact(r.denom())?;
    Some(Rational::new(p, q))
}

/// Candidates `±p/q` with `p | a0`, `q | a3`, coprime, ordered by height
/// `max(p, q)` and then by value. `a0 ≠ 0`.
fn root_candidates(a3: &BigInt, a0: &BigInt) -> Vec<Rational> {
    let ps = divisors(a0);
    let qs = divisors(a3);
    let mut out: Vec<(BigInt, Rational)> = Vec::with_capacity(2 * ps.len() * qs.len());
    for p in &ps {
        for q in &qs {
            if !p.gcd(q).is_one() {
                continue;
            }
            let h = p.max(q).clone();
            let r = Rational::new(p.clone(), q.clone());
            out.push((h.clone(), r.clone()));
            out.push((h, -r));
        }
    }
    out.sort();
    out.into_iter().map(|(_, r)| r).collect()
}

fn integer_cubic_vanishes(a: &[BigInt; 4], x: &Rational) -> bool {
    let (p, q) = (x.numer(), x.denom());
    let p2 = p * p;
    let q2 = q * q;
    let v = &a[0] * &p2 * p + &a[1] * &p2 * q + &a[2] * p * &q2 + &a[3] * &q2 * q;
    v.is_zero()
}

/// One rational root of the cubic via the rational root theorem.
fn find_rational_root(q: &CubicPoly) -> Option<Rational> {
    if q.c0.is_zero() {
        return Some(Rational::zero());
    }
    let a = q.primitive_integer_coefficients();
    root_candidates(&a[0], &a[3])
        .into_iter()
        .find(|x| integer_cubic_vanishes(&a, x))
}

/// All three roots if the cubic splits completely over ℚ.
///
/// Rejects first unless the discriminant is a rational square, which every
/// fully split cubic satisfies since it equals `∏(rᵢ − rⱼ)²`.
pub fn rational_roots(q: &CubicPoly) -> Option<RootTriple> {
    is_rational_square(&q.discriminant())?;
    split_after_prefilter(q)
}

/// Root extraction without the discriminant prefilter.
pub(crate) fn split_after_prefilter(q: &CubicPoly) -> Option<RootTriple> {
    let r = find_rational_root(q)?;
    // x³ + c2x² + c1x + c0 = (x − r)(x² + e·x + f)
    let e = &q.c2 + &r;
    let f = &q.c1 + &r * &e;
    let disc = &e * &e - Rational::from_integer(BigInt::from(4)) * &f;
    let s = is_rational_square(&disc)?;
    let two = Rational::from_integer(BigInt::from(2));
    let r1 = (-&e - &s) / &two;
    let r2 = (-&e + &s) / &two;
    Some(RootTriple::new([r, r1, r2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn cubic(c2: Rational, c1: Rational, c0: Rational) -> CubicPoly {
        CubicPoly::new(c2, c1, c0)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(cubic(int(-6), int(11), int(-6)).discriminant(), int(4));
        assert_eq!(cubic(int(0), int(0), int(0)).discriminant(), int(0));
        assert_eq!(cubic(int(0), int(-1), int(0)).discriminant(), int(4));
    }

    #[test]
    fn rational_square_examples() {
        assert_eq!(is_rational_square(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(is_rational_square(&int(2)), None);
        assert_eq!(is_rational_square(&int(0)), Some(int(0)));
        assert_eq!(is_rational_square(&ratio(-1, 4)), None);
        assert_eq!(is_rational_square(&ratio(4, 3)), None);
    }

    #[test]
    fn splits_vieta_example() {
        let q = cubic(ratio(-13, 12), ratio(3, 8), ratio(-1, 24));
        let roots = rational_roots(&q).unwrap();
        assert_eq!(roots.roots(), &[ratio(1, 4), ratio(1, 3), ratio(1, 2)]);
    }

    #[test]
    fn non_splitting_examples() {
        assert_eq!(rational_roots(&cubic(int(0), int(0), int(-2))), None);
        // (x - 1)(x^2 + 1)
        let q = cubic(int(-1), int(1), int(-1));
        assert_eq!(rational_roots(&q), None);
        assert!(find_rational_root(&q).is_some());
        assert_eq!(split_after_prefilter(&q), None);
    }

    #[test]
    fn repeated_and_zero_roots() {
        assert_eq!(
            rational_roots(&cubic(int(0), int(0), int(0)))
                .unwrap()
                .roots(),
            &[int(0), int(0), int(0)]
        );
        let q = cubic(int(-3), int(3), int(-1));
        assert_eq!(
            rational_roots(&q).unwrap().roots(),
            &[int(1), int(1), int(1)]
        );
        let q = CubicPoly::from_roots(&[int(0), ratio(-2, 3), ratio(-2, 3)]);
        assert_eq!(
            rational_roots(&q).unwrap().roots(),
            &[ratio(-2, 3), ratio(-2, 3), int(0)]
        );
    }

    #[test]
    fn primitive_coefficients() {
        let q = cubic(ratio(-13, 12), ratio(3, 8), ratio(-1, 24));
        let a = q.primitive_integer_coefficients();
        assert_eq!(a, [24, -26, 9, -1].map(BigInt::from));
    }

    #[test]
    fn candidates_ordered_by_height() {
        let c = root_candidates(&BigInt::from(2), &BigInt::from(3));
        assert_eq!(
            c,
            vec![
                int(-1),
                int(1),
                ratio(-1, 2),
                ratio(1, 2),
                int(-3),
                ratio(-3, 2),
                ratio(3, 2),
                int(3)
            ]
        );
    }
}
