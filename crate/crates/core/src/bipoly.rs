//! Bivariate polynomials over ℤ in the parameters `b` and `c`.
//!
//! Terms live in a `BTreeMap` keyed by `(deg_b, deg_c)`. Zero coefficients
//! are never stored, so two polynomials are equal exactly when their maps
//! are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Peekable;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::{CharIndices, FromStr};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

/// Exponent pair `(deg_b, deg_c)`.
pub type Exponents = (u32, u32);

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly2 {
    terms: BTreeMap<Exponents, BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected degree 2 in b, found degree {found:?}")]
pub struct DegreeError {
    /// `None` for the zero polynomial.
    pub found: Option<u32>,
}

impl IntPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(k: impl Into<BigInt>) -> Self {
        Self::monomial(k, 0, 0)
    }

    pub fn monomial(k: impl Into<BigInt>, deg_b: u32, deg_c: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((deg_b, deg_c), k.into());
        p
    }

    /// The polynomial `b`.
    pub fn b() -> Self {
        Self::monomial(1, 1, 0)
    }

    /// The polynomial `c`.
    pub fn c() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// Builds a polynomial from `(coefficient, deg_b, deg_c)` triples.
    /// Repeated exponents are summed.
    pub fn from_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut p = Self::zero();
        for &(k, i, j) in terms {
            p.add_term((i, j), BigInt::from(k));
        }
        p
    }

    fn add_term(&mut self, e: Exponents, k: BigInt) {
        if k.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(k);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += k;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &BigInt)> {
        self.terms.iter().map(|(&e, k)| (e, k))
    }

    pub fn coefficient(&self, deg_b: u32, deg_c: u32) -> BigInt {
        self.terms
            .get(&(deg_b, deg_c))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Degree in `b`; `None` for the zero polynomial.
    pub fn degree_in_b(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    /// Degree in `c`; `None` for the zero polynomial.
    pub fn degree_in_c(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Coefficient of `b^k`, as a polynomial in `c` alone.
    pub fn coeff_in_b(&self, k: u32) -> IntPoly2 {
        IntPoly2 {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0 == k)
                .map(|(e, v)| ((0, e.1), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> IntPoly2 {
        let mut acc = IntPoly2::constant(1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `B² − 4AC` for `p = A(c)·b² + B(c)·b + C(c)`.
    pub fn discriminant_in_b(&self) -> Result<IntPoly2, DegreeError> {
        match self.degree_in_b() {
            Some(2) => {}
            found => return Err(DegreeError { found }),
        }
        let a = self.coeff_in_b(2);
        let b = self.coeff_in_b(1);
        let c = self.coeff_in_b(0);
        Ok(&(&b * &b) - &(&IntPoly2::constant(4) * &(&a * &c)))
    }

    /// Exact value at `(b, c)`.
    pub fn eval(&self, b: &Rational, c: &Rational) -> Rational {
        let (db, dc) = self.degrees();
        self.eval_at(&PointPowers::new(b, c, db, dc))
    }

    fn degrees(&self) -> (u32, u32) {
        (
            self.degree_in_b().unwrap_or(0),
            self.degree_in_c().unwrap_or(0),
        )
    }

    /// Exact value using precomputed powers of the point.
    pub fn eval_at(&self, pw: &PointPowers) -> Rational {
        let (num, den) = self.eval_cleared(pw);
        Rational::new(num, den)
    }

    /// Numerator of the value after clearing `q^deg_b · s^deg_c`, where
    /// `b = p/q`, `c = r/s`. The sign and vanishing of the value follow the
    /// numerator because the denominator is positive.
    pub fn eval_cleared(&self, pw: &PointPowers) -> (BigInt, BigInt) {
        let (db, dc) = self.degrees();
        let mut num = BigInt::zero();
        for (&(i, j), k) in &self.terms {
            num += k * pw.b_num(i) * pw.b_den(db - i) * pw.c_num(j) * pw.c_den(dc - j);
        }
        (num, pw.b_den(db) * pw.c_den(dc))
    }

    /// True when the polynomial vanishes at the point.
    pub fn vanishes_at(&self, pw: &PointPowers) -> bool {
        self.eval_cleared(pw).0.is_zero()
    }
}

/// Powers of the numerators and denominators of a point `(p/q, r/s)`.
///
/// Built once per point and shared by every polynomial evaluated there.
#[derive(Debug, Clone)]
pub struct PointPowers {
    b_num: Vec<BigInt>,
    b_den: Vec<BigInt>,
    c_num: Vec<BigInt>,
    c_den: Vec<BigInt>,
}

fn powers(x: &BigInt, n: u32) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(BigInt::one());
    for k in 0..n as usize {
        let next = &v[k] * x;
        v.push(next);
    }
    v
}

impl PointPowers {
    pub fn new(b: &Rational, c: &Rational, max_deg_b: u32, max_deg_c: u32) -> Self {
        Self {
            b_num: powers(b.numer(), max_deg_b),
            b_den: powers(b.denom(), max_deg_b),
            c_num: powers(c.numer(), max_deg_c),
            c_den: powers(c.denom(), max_deg_c),
        }
    }

    fn b_num(&self, k: u32) -> &BigInt {
        self.b_num
            .get(k as usize)
            .expect("point powers too short in b")
    }

    fn b_den(&self, k: u32) -> &BigInt {
        self.b_den
            .get(k as usize)
            .expect("point powers too short in b")
    }

    fn c_num(&self, k: u32) -> &BigInt {
        self.c_num
            .get(k as usize)
            .expect("point powers too short in c")
    }

    fn c_den(&self, k: u32) -> &BigInt {
        self.c_den
            .get(k as usize)
            .expect("point powers too short in c")
    }
}

impl Add<&IntPoly2> for &IntPoly2 {
    type Output = IntPoly2;

    fn add(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = self.clone();
        for (&e, k) in &rhs.terms {
            out.add_term(e, k.clone());
        }
        out
    }
}

impl Sub<&IntPoly2> for &IntPoly2 {
    type Output = IntPoly2;

    fn sub(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = self.clone();
        for (&e, k) in &rhs.terms {
            out.add_term(e, -k);
        }
        out
    }
}

impl Mul<&IntPoly2> for &IntPoly2 {
    type Output = IntPoly2;

    fn mul(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = IntPoly2::zero();
        for (&(i1, j1), k1) in &self.terms {
            for (&(i2, j2), k2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), k1 * k2);
            }
        }
        out
    }
}

impl Neg for &IntPoly2 {
    type Output = IntPoly2;

    fn neg(self) -> IntPoly2 {
        IntPoly2 {
            terms: self.terms.iter().map(|(&e, k)| (e, -k)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<IntPoly2> for IntPoly2 {
            type Output = IntPoly2;
            fn $m(self, rhs: IntPoly2) -> IntPoly2 { (&self).$m(&rhs) }
        }
        impl $tr<&IntPoly2> for IntPoly2 {
            type Output = IntPoly2;
            fn $m(self, rhs: &IntPoly2) -> IntPoly2 { (&self).$m(rhs) }
        }
        impl $tr<IntPoly2> for &IntPoly2 {
            type Output = IntPoly2;
            fn $m(self, rhs: IntPoly2) -> IntPoly2 { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPoly2 {
    type Output = IntPoly2;

    fn neg(self) -> IntPoly2 {
        -&self
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, name: char, deg: u32, first: &mut bool) -> fmt::Result {
    if deg == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str("*")?;
    }
    *first = false;
    if deg == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{deg}")
    }
}

impl fmt::Display for IntPoly2 {
    /// Terms by descending total degree, then descending degree in `b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        for (n, e) in keys.iter().enumerate() {
            let k = &self.terms[e];
            let neg = k.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = k.abs();
            let mut first = true;
            if !mag.is_one() || *e == (0, 0) {
                write!(f, "{mag}")?;
                first = false;
            }
            write_var(f, 'b', e.0, &mut first)?;
            write_var(f, 'c', e.1, &mut first)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial parse error at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

/// Recursive-descent parser for expressions such as
/// `(b c - 1 - b)^2 * (2b^2c^4 - c^2)`. Multiplication may be written with
/// `*` or by juxtaposition; `^` takes a non-negative integer exponent.
struct Parser<'a> {
    src: &'a str,
    it: Peekable<CharIndices<'a>>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            it: src.char_indices().peekable(),
        }
    }

    fn err<T>(&mut self, msg: impl Into<String>) -> Result<T, PolyParseError> {
        let pos = self.it.peek().map_or(self.src.len(), |&(i, _)| i);
        Err(PolyParseError {
            pos,
            msg: msg.into(),
        })
    }

    fn peek(&mut self) -> Option<char> {
        while let Some(&(_, ch)) = self.it.peek() {
            if ch.is_whitespace() {
                self.it.next();
            } else {
                return Some(ch);
            }
        }
        None
    }

    fn expr(&mut self) -> Result<IntPoly2, PolyParseError> {
        let mut acc = IntPoly2::zero();
        let mut sign = match self.peek() {
            Some('-') => {
                self.it.next();
                -1
            }
            Some('+') => {
                self.it.next();
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            sign = match self.peek() {
                Some('+') => 1,
                Some('-') => -1,
                _ => return Ok(acc),
            };
            self.it.next();
        }
    }

    fn term(&mut self) -> Result<IntPoly2, PolyParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.it.next();
                }
                Some(ch) if ch == '(' || ch == 'b' || ch == 'c' || ch.is_ascii_digit() => {}
                _ => return Ok(acc),
            }
            let f = self.factor()?;
            acc = &acc * &f;
        }
    }

    fn factor(&mut self) -> Result<IntPoly2, PolyParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.it.next();
            self.peek();
            let n = self.uint()?;
            let n = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt, PolyParseError> {
        let mut digits = String::new();
        while let Some(&(_, ch)) = self.it.peek() {
            if ch.is_ascii_digit() {
                digits.push(ch);
                self.it.next();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return self.err("expected integer");
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<IntPoly2, PolyParseError> {
        match self.peek() {
            Some('b') => {
                self.it.next();
                Ok(IntPoly2::b())
            }
            Some('c') => {
                self.it.next();
                Ok(IntPoly2::c())
            }
            Some('(') => {
                self.it.next();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected `)`");
                }
                self.it.next();
                Ok(inner)
            }
            Some(ch) if ch.is_ascii_digit() => Ok(IntPoly2::constant(self.uint()?)),
            Some(ch) => self.err(format!("unexpected `{ch}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for IntPoly2 {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let out = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}
