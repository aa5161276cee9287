//! Independent oracles shared by the integration tests and the acceptance
//! runner. Nothing here calls into the coefficient tables or the cubic
//! solver of the library.
#![allow(dead_code)]

use cuboid::bipoly::IntPoly2;
use cuboid::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Literal, plain-text transcription of the nine coefficient formulas.
/// Each entry is (scalar numerator, scalar denominator, numerator factors,
/// denominator factors with exponents).
pub struct Formula {
    pub name: &'static str,
    pub scale: (i64, i64),
    pub num: &'static [&'static str],
    pub den: &'static [(&'static str, u32)],
}

const SIX: &str = "b^2c^2+2b^2-3b^2c+c-bc^2+2b";
const D1: &str = "bc-1-b";
const D2: &str = "bc-c-2b";
const D2_ALT: &str = "-c+bc-2b";
const Q: &str = "b^2c^4-6b^2c^3+13b^2c^2-12b^2c+4b^2+c^2";
const Q_E21: &str = "b^2c^4-6b^2c^3+13b^2c^2-12b^2c-4c^3+4b^2+c^2";

const E21_NUM: &str = "5c^6b-2c^6b^2+52c^5b^2-16c^5b-2c^7b^2+2b^4c^8-26b^4c^7-426b^4c^5\
-61b^3c^6+100b^3c^5+14c^7b^3-c^8b^3-20bc^2-8b^2c^2-16b^2c-128b^2c^4-200b^3c^3+244b^3c^2\
+32bc^3+768b^4c^4-852b^4c^3+568b^4c^2+104b^2c^3-208b^4c+8c^4+16b^3-112b^3c+142b^4c^6\
+32b^4-2c^5";

pub const FORMULAS: [Formula; 9] = [
    Formula {
        name: "e11",
        scale: (-1, 1),
        num: &["b", "c^2+2-4c"],
        den: &[(SIX, 1)],
    },
    Formula {
        name: "e10",
        scale: (-1, 1),
        num: &["b^2c^2+2b^2-3b^2c-c"],
        den: &[(SIX, 1)],
    },
    Formula {
        name: "e01",
        scale: (-1, 1),
        num: &["b", "c^2+2-2c"],
        den: &[(SIX, 1)],
    },
    Formula {
        name: "e20",
        scale: (1, 2),
        num: &["b", "bc^2-2c-2b", "2bc^2-c^2-6bc+2+4b"],
        den: &[(D1, 2), (D2, 2)],
    },
    Formula {
        name: "e02",
        scale: (1, 2),
        num: &[
            "28b^2c^2-16b^2c-2c^2-4b^2-b^2c^4+4b^3c^4-12b^3c^3+4bc^3+24b^3c-8bc\
-2b^4c^4+12b^4c^3-26b^4c^2-8b^2c^3+24b^4c-16b^3-8b^4",
        ],
        den: &[(D1, 2), (D2, 2)],
    },
    Formula {
        name: "e30",
        scale: (1, 1),
        num: &[
            "c",
            "b^2",
            "1-c",
            "c-2",
            "bc^2-4bc+2+4b",
            "2bc^2-c^2-4bc+2b",
        ],
        den: &[(Q, 1), (D1, 2), (D2_ALT, 2)],
    },
    Formula {
        name: "e03",
        scale: (1, 2),
        num: &[
            "b",
            "b^2c^4-5b^2c^3+10b^2c^2-10b^2c+4b^2+2bc+2c^2-bc^3",
            "2b^2c^4-12b^2c^3+26b^2c^2-24b^2c+8b^2-c^4b+3bc^3-6bc+4b+c^3-2c^2+2c",
        ],
        den: &[(Q, 1), (D1, 2), (D2_ALT, 2)],
    },
    Formula {
        name: "e21",
        scale: (1, 2),
        num: &["b", E21_NUM],
        den: &[(Q_E21, 1), (D1, 2), (D2, 2)],
    },
    Formula {
        name: "e12",
        scale: (1, 1),
        num: &[
            "16b^6+32b^5-6c^5b^2+2c^5b-62b^5c^6+62b^6c^6+16b^4-180b^6c^5-c^7b^3\
+18b^5c^7-12b^6c^7-2b^5c^8+b^6c^8+248b^5c^2+248b^6c^2-96b^6c+321b^6c^4-180b^5c^3-144b^5c\
-360b^6c^3+b^4c^8+8b^4c^6-6b^4c^7+18b^4c^5+7b^3c^6+90b^5c^5-14b^3c^5+17b^2c^4+32b^4c^2\
+28b^3c^3-28b^3c^2-4bc^3+8b^3c-57b^4c^4+36b^4c^3-12b^2c^3-48b^4c-c^4",
        ],
        den: &[(Q, 1), (D1, 2), (D2, 2)],
    },
];

/// The E21 formula with the denominator quartic replaced by the plain one.
pub const E21_COMMON: Formula = Formula {
    name: "e21",
    scale: (1, 2),
    num: &["b", E21_NUM],
    den: &[(Q, 1), (D1, 2), (D2, 2)],
};

fn poly(s: &str) -> IntPoly2 {
    s.parse()
        .unwrap_or_else(|e| panic!("oracle literal {s:?}: {e:?}"))
}

impl Formula {
    /// Value at (b, c), or `None` when a denominator factor vanishes.
    pub fn eval(&self, b: &Rational, c: &Rational) -> Option<Rational> {
        let mut num = Rational::new(self.scale.0.into(), self.scale.1.into());
        for f in self.num {
            num *= poly(f).eval(b, c);
        }
        let mut den = Rational::one();
        for (f, e) in self.den {
            let v = poly(f).eval(b, c);
            if v.is_zero() {
                return None;
            }
            for _ in 0..*e {
                den *= &v;
            }
        }
        Some(num / den)
    }
}

pub fn formula(name: &str) -> &'static Formula {
    FORMULAS
        .iter()
        .find(|f| f.name == name)
        .expect("known formula")
}

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Random reduced rational with |numerator| ≤ h and 1 ≤ denominator ≤ h.
pub fn random_rational<R: Rng>(rng: &mut R, h: i64) -> Rational {
    r(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

fn naive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

fn eval_int(a: &[BigInt], x: &Rational) -> Rational {
    a.iter().fold(Rational::zero(), |acc, k| {
        acc * x + Rational::from_integer(k.clone())
    })
}

/// Synthetic division of `a` (leading coefficient first) by (x − root).
fn deflate(a: &[Rational], root: &Rational) -> Vec<Rational> {
    let mut out = Vec::with_capacity(a.len() - 1);
    let mut carry = Rational::zero();
    for k in &a[..a.len() - 1] {
        carry = carry * root + k;
        out.push(carry.clone());
    }
    out
}

/// All rational roots of x³ + c2·x² + c1·x + c0 with multiplicity, found by
/// trying every rational-root-theorem candidate at each of the three
/// positions. `None` unless the cubic splits completely.
pub fn brute_force_roots(c2: &Rational, c1: &Rational, c0: &Rational) -> Option<Vec<Rational>> {
    let mut poly: Vec<Rational> = vec![Rational::one(), c2.clone(), c1.clone(), c0.clone()];
    let mut roots = Vec::new();
    while poly.len() > 1 {
        let lcm = poly.iter().fold(BigInt::one(), |acc, k| acc.lcm(k.denom()));
        let ints: Vec<BigInt> = poly
            .iter()
            .map(|k| (k * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let lead = ints[0].clone();
        let tail = ints.last().unwrap().clone();
        let root = if tail.is_zero() {
            Some(Rational::zero())
        } else {
            let ps = naive_divisors(&tail);
            let qs = naive_divisors(&lead);
            let mut found = None;
            'outer: for p in &ps {
                for q in &qs {
                    for s in [1, -1] {
                        let x = Rational::new(p * s, q.clone());
                        if eval_int(&ints, &x).is_zero() {
                            found = Some(x);
                            break 'outer;
                        }
                    }
                }
            }
            found
        };
        let root = root?;
        let lead_r = poly[0].clone();
        let monic: Vec<Rational> = poly.iter().map(|k| k / &lead_r).collect();
        poly = deflate(&monic, &root);
        roots.push(root);
    }
    roots.sort();
    Some(roots)
}
