//! Integer factorization and divisor enumeration for the rational root
//! search.
//!
//! Trial division by the primes below 10⁶, then Miller–Rabin and Brent's
//! variant of Pollard's rho on whatever cofactor survives.

use std::sync::LazyLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_BOUND: u64 = 1_000_000;

static SMALL_PRIMES: LazyLock<Vec<u64>> = LazyLock::new(|| {
    let n = TRIAL_BOUND as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
});

/// Witness bases for Miller–Rabin. Deterministic below 3.3·10²⁴.
const MR_BASES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

pub fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial factor of an odd composite `n`.
fn brent_rho(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut seed = 1u64;
    loop {
        let c = BigInt::from(seed);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(seed + 1);
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        seed += 1;
    }
}

fn push_factor(out: &mut Vec<(BigInt, u32)>, p: BigInt) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += 1,
        None => out.push((p, 1)),
    }
}

fn split_large(n: BigInt, out: &mut Vec<(BigInt, u32)>) {
    if n.is_one() {
        return;
    }
    // no prime factor below TRIAL_BOUND remains, so anything below its square is prime
    if n < BigInt::from(TRIAL_BOUND) * BigInt::from(TRIAL_BOUND) || is_probable_prime(&n) {
        push_factor(out, n);
        return;
    }
    let d = brent_rho(&n);
    let rest = &n / &d;
    split_large(d, out);
    split_large(rest, out);
}

/// Prime factorization of `|n|` as `(prime, exponent)` pairs in increasing
/// order of prime. Returns an empty list for `|n| ≤ 1`.
///
/// # Panics
///
/// Panics on `n = 0`.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out = Vec::new();
    let mut m = n.abs();
    if let Some(mut small) = m.to_u64() {
        for &p in SMALL_PRIMES.iter() {
            if p * p > small {
                break;
            }
            if small % p == 0 {
                let mut e = 0;
                while small % p == 0 {
                    small /= p;
                    e += 1;
                }
                out.push((BigInt::from(p), e));
            }
        }
        m = BigInt::from(small);
    } else {
        for &p in SMALL_PRIMES.iter() {
            let bp = BigInt::from(p);
            if &bp * &bp > m {
                break;
            }
            if (&m % &bp).is_zero() {
                let mut e = 0;
                while (&m % &bp).is_zero() {
                    m /= &bp;
                    e += 1;
                }
                out.push((bp, e));
            }
        }
    }
    split_large(m, &mut out);
    out.sort();
    out
}

/// All positive divisors of `|n|`, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let base = divs.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(base.iter().map(|d| d * &pk));
        }
    }
    divs.sort();
    divs
}
