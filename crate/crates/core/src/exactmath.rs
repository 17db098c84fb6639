//! Integer and rational primitives shared by the other modules.
//!
//! Arbitrary precision comes from `num-bigint` / `num-rational`; this module adds
//! the small number-theoretic pieces on top: residue rings, modular inverses, the
//! Kronecker symbol, pentagonal numbers and square classes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::{Error, Rational, Result};

/// Greatest common divisor, always non-negative; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> u64 {
    (a as i128).gcd(&(b as i128)) as u64
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// `ℤ/mℤ` for `m ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    modulus: u64,
}

impl ResidueRing {
    pub fn new(modulus: u64) -> Option<Self> {
        (modulus >= 1).then_some(Self { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Least non-negative representative.
    pub fn reduce(&self, a: i64) -> u64 {
        (a as i128).rem_euclid(self.modulus as i128) as u64
    }

    pub fn mul(&self, a: i64, b: i64) -> u64 {
        let m = self.modulus as i128;
        ((a as i128).rem_euclid(m) * (b as i128).rem_euclid(m) % m) as u64
    }

    pub fn pow(&self, base: i64, mut exp: u64) -> u64 {
        let m = self.modulus as u128;
        let mut acc = 1u128 % m;
        let mut b = self.reduce(base) as u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            exp >>= 1;
        }
        acc as u64
    }

    pub fn inverse(&self, a: i64) -> Result<u64> {
        let m = self.modulus as i128;
        let ext = (a as i128).rem_euclid(m).extended_gcd(&m);
        if ext.gcd != 1 {
            return Err(Error::NotInvertible {
                a,
                modulus: self.modulus as i64,
            });
        }
        Ok(ext.x.rem_euclid(m) as u64)
    }
}

/// `x ∈ [0, m)` with `a·x ≡ 1 (mod m)`.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64> {
    ResidueRing::new(m)
        .ok_or(Error::NotInvertible { a, modulus: 0 })?
        .inverse(a)
}

/// Kronecker symbol `(a/n)` for arbitrary integers, including negative and even `n`.
pub fn kronecker(a: i64, n: i64) -> i8 {
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol for odd positive n.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Generalized pentagonal number `j(3j−1)/2`.
pub fn pentagonal(j: i64) -> i64 {
    j * (3 * j - 1) / 2
}

/// Exponents and signs of `∏_{n≥1}(1 − qⁿ) = Σ_j (−1)^j q^{j(3j−1)/2}` below `limit`,
/// sorted by exponent.
pub fn pentagonal_terms(limit: usize) -> Vec<(usize, i8)> {
    let mut terms = Vec::new();
    let mut j: i64 = 0;
    loop {
        let mut any = false;
        for jj in if j == 0 { vec![0] } else { vec![j, -j] } {
            let e = pentagonal(jj) as usize;
            if e < limit {
                terms.push((e, if jj % 2 == 0 { 1 } else { -1 }));
                any = true;
            }
        }
        if !any {
            break;
        }
        j += 1;
    }
    terms.sort_unstable_by_key(|t| t.0);
    terms
}

/// Smallest prime factor of `n ≥ 2`, by trial division.
pub fn smallest_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_factor(n) == n
}

/// Validates a level `p > 3` prime, returning it as `u64`.
pub fn require_prime(p: i64) -> Result<u64> {
    if p > 3 && is_prime(p as u64) {
        return Ok(p as u64);
    }
    let witness = (p >= 4).then(|| smallest_factor(p as u64) as i64);
    Err(Error::NotAValidPrime { n: p, witness })
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Squarefree part of a non-zero integer, keeping the sign: `−44 ↦ −11`.
pub fn squarefree_core(n: i64) -> i64 {
    assert!(n != 0, "squarefree core of 0");
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut core = 1u64;
    let mut d = 2;
    while d * d <= m {
        let mut parity = false;
        while m.is_multiple_of(d) {
            m /= d;
            parity = !parity;
        }
        if parity {
            core *= d;
        }
        d += 1;
    }
    core *= m;
    sign * core as i64
}

pub fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

pub fn ceil_div(a: i64, b: i64) -> i64 {
    -Integer::div_floor(&-a, &b)
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The value as `i64` when it is an integer in range.
pub fn as_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

pub fn big_to_i64(n: &BigInt) -> Result<i64> {
    n.to_i64().ok_or_else(|| Error::Overflow(n.to_string()))
}

/// Parity of an integral rational, `None` if not integral.
pub fn parity(q: &Rational) -> Option<bool> {
    q.is_integer().then(|| q.to_integer().is_odd())
}

pub fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
