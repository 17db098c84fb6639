//! Eta-quotients `f(z) = ∏_{δ|N} η(δz)^{r_δ}` and their invariants.
//!
//! Exponents are rational so that "roots" of eta-quotients can be represented;
//! operations that only make sense for integral exponents refuse the others.
//!
//! Cusp labelling for prime level `p`: `v_infinity = (r₁ + p·r_p)/24` is the
//! leading exponent of the `q`-expansion at `i∞`, and `v_zero = (p·r₁ + r_p)/24`
//! is the order at the cusp `0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactmath::{
    divisors, gcd, is_prime, kronecker, lcm_of_denominators, pentagonal_terms, rational_int,
    smallest_factor,
};
use crate::qseries::{div_euler_in_place, eta_series, mul_euler_in_place, Q24Series};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EtaQuotient {
    level: u64,
    /// One entry per positive divisor of `level`, zero when the factor is absent.
    exponents: BTreeMap<u64, Rational>,
}

/// Orders of vanishing at the two cusps of `Γ₀(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CuspOrders {
    pub v_infinity: Rational,
    pub v_zero: Rational,
}

impl CuspOrders {
    pub fn new(v_infinity: Rational, v_zero: Rational) -> Self {
        Self { v_infinity, v_zero }
    }

    pub fn from_integers(v_infinity: i64, v_zero: i64) -> Self {
        Self::new(rational_int(v_infinity), rational_int(v_zero))
    }

    pub fn sum(&self) -> Rational {
        &self.v_infinity + &self.v_zero
    }

    pub fn is_holomorphic(&self) -> bool {
        !self.v_infinity.is_negative() && !self.v_zero.is_negative()
    }

    pub fn is_cuspidal(&self) -> bool {
        self.v_infinity.is_positive() && self.v_zero.is_positive()
    }
}

/// The character `n ↦ (D/n)` attached to an eta-quotient; `D = 1` is trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NebentypusCharacter {
    pub discriminant_core: i64,
}

impl NebentypusCharacter {
    pub fn is_trivial(&self) -> bool {
        self.discriminant_core == 1
    }

    pub fn value(&self, n: i64) -> i8 {
        kronecker(self.discriminant_core, n)
    }
}

impl EtaQuotient {
    /// Builds a quotient of the given level; every key must divide the level.
    /// Repeated divisors accumulate.
    pub fn new(level: u64, exponents: impl IntoIterator<Item = (u64, Rational)>) -> Result<Self> {
        if level == 0 {
            return Err(Error::NotADivisor { delta: 0, level });
        }
        let mut map: BTreeMap<u64, Rational> = divisors(level)
            .into_iter()
            .map(|d| (d, Rational::zero()))
            .collect();
        for (delta, r) in exponents {
            let slot = map
                .get_mut(&delta)
                .ok_or(Error::NotADivisor { delta, level })?;
            *slot += r;
        }
        Ok(Self {
            level,
            exponents: map,
        })
    }

    pub fn from_integers(level: u64, exponents: &[(u64, i64)]) -> Result<Self> {
        Self::new(level, exponents.iter().map(|&(d, r)| (d, rational_int(r))))
    }

    /// `η(z)^{r₁} η(pz)^{r_p}`.
    pub fn prime_level(p: u64, r1: i64, rp: i64) -> Result<Self> {
        Self::prime_level_rational(p, rational_int(r1), rational_int(rp))
    }

    pub fn prime_level_rational(p: u64, r1: Rational, rp: Rational) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::LevelNotPrime(p));
        }
        Self::new(p, [(1, r1), (p, rp)])
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponent(&self, delta: u64) -> Rational {
        self.exponents
            .get(&delta)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `(δ, r_δ)` for every divisor δ of the level, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.exponents.iter().map(|(d, r)| (*d, r))
    }

    pub fn is_integral(&self) -> bool {
        self.exponents.values().all(|r| r.is_integer())
    }

    fn integer_exponents(&self) -> Result<Vec<(u64, i64)>> {
        self.exponents
            .iter()
            .map(|(d, r)| {
                if !r.is_integer() {
                    return Err(Error::FractionalExponents);
                }
                r.to_integer()
                    .to_i64()
                    .map(|r| (*d, r))
                    .ok_or_else(|| Error::Overflow(r.to_string()))
            })
            .collect()
    }

    /// `k = ½ Σ r_δ`.
    pub fn weight(&self) -> Rational {
        self.exponents.values().sum::<Rational>() / rational_int(2)
    }

    pub fn integer_weight(&self) -> Result<i64> {
        let k = self.weight();
        if !k.is_integer() {
            return Err(Error::NonIntegralWeight(k));
        }
        k.to_integer()
            .to_i64()
            .ok_or_else(|| Error::Overflow(k.to_string()))
    }

    /// Exponent of the leading `q`-power at `i∞`: `Σ δ·r_δ / 24`.
    pub fn order_at_infinity(&self) -> Rational {
        self.exponents
            .iter()
            .map(|(d, r)| r * rational_int(*d as i64))
            .sum::<Rational>()
            / rational_int(24)
    }

    /// `Σ δ·r_δ ≡ 0` and `Σ (N/δ)·r_δ ≡ 0 (mod 24)`.
    pub fn check_congruences(&self) -> Result<bool> {
        let ex = self.integer_exponents()?;
        let n = self.level as i128;
        let (mut at_inf, mut at_zero) = (0i128, 0i128);
        for (d, r) in ex {
            at_inf += d as i128 * r as i128;
            at_zero += (n / d as i128) * r as i128;
        }
        Ok(at_inf % 24 == 0 && at_zero % 24 == 0)
    }

    /// Order of vanishing at the cusp `c/d` for a divisor `d` of the level:
    /// `(N/24) Σ_δ gcd(d,δ)² r_δ / (gcd(d, N/d) · d · δ)`.
    pub fn cusp_order(&self, d: u64) -> Result<Rational> {
        let n = self.level;
        if d == 0 || !n.is_multiple_of(d) {
            return Err(Error::NotADivisor { delta: d, level: n });
        }
        let width_gcd = gcd(d as i64, (n / d) as i64) as i64;
        let mut sum = Rational::zero();
        for (&delta, r) in &self.exponents {
            if r.is_zero() {
                continue;
            }
            let g = gcd(d as i64, delta as i64) as i64;
            let den = width_gcd * d as i64 * delta as i64;
            sum += r * Rational::new(BigInt::from(g * g), BigInt::from(den));
        }
        Ok(sum * Rational::new(BigInt::from(n), BigInt::from(24)))
    }

    /// Prime-level orders `v_infinity = (r₁ + p r_p)/24`, `v_zero = (p r₁ + r_p)/24`.
    pub fn cusp_orders_prime(&self) -> Result<CuspOrders> {
        let p = self.level;
        if !is_prime(p) {
            return Err(Error::LevelNotPrime(p));
        }
        let pr = rational_int(p as i64);
        let r1 = self.exponent(1);
        let rp = self.exponent(p);
        let t = rational_int(24);
        Ok(CuspOrders {
            v_infinity: (&r1 + &pr * &rp) / &t,
            v_zero: (&pr * &r1 + &rp) / &t,
        })
    }

    /// Holomorphic at every cusp (orders from [`cusp_order`](Self::cusp_order) all `≥ 0`).
    pub fn is_holomorphic(&self) -> bool {
        divisors(self.level).into_iter().all(|d| {
            self.cusp_order(d)
                .map(|v| !v.is_negative())
                .unwrap_or(false)
        })
    }

    /// Vanishes at every cusp.
    pub fn is_cusp_form(&self) -> bool {
        divisors(self.level)
            .into_iter()
            .all(|d| self.cusp_order(d).map(|v| v.is_positive()).unwrap_or(false))
    }

    /// Character `χ(n) = ((−1)^k s / n)`, `s = ∏ δ^{r_δ}`, reduced to its square class.
    pub fn character(&self) -> Result<NebentypusCharacter> {
        let ex = self.integer_exponents()?;
        let k = self.integer_weight()?;
        if !self.check_congruences()? {
            return Err(Error::CongruenceViolation);
        }
        let mut odd_primes: BTreeMap<u64, bool> = BTreeMap::new();
        for (delta, r) in ex {
            if r % 2 == 0 {
                continue;
            }
            let mut m = delta;
            while m > 1 {
                let q = smallest_factor(m);
                m /= q;
                let e = odd_primes.entry(q).or_insert(false);
                *e = !*e;
            }
        }
        let core: i64 = odd_primes
            .into_iter()
            .filter(|(_, odd)| *odd)
            .map(|(q, _)| q as i64)
            .product();
        let sign = if k.is_odd() { -1 } else { 1 };
        Ok(NebentypusCharacter {
            discriminant_core: sign * core,
        })
    }

    /// Exact expansion at `i∞` to absolute precision `prec24` (in 24ths of a `q`-power).
    pub fn q_expansion(&self, prec24: i64) -> Result<Q24Series> {
        Ok(expand_family(std::slice::from_ref(self), prec24)?.remove(0))
    }

    /// Same expansion, formed as `∏ pow_int(rescale(eta_series, δ), r_δ)` with dense
    /// products. Much slower; kept as an independent route for cross-checks.
    pub fn q_expansion_by_powers(&self, prec24: i64) -> Result<Q24Series> {
        let ex = self.integer_exponents()?;
        let offset: i64 = ex.iter().map(|&(d, r)| d as i64 * r).sum();
        let relative = (prec24 - offset).max(1);
        let mut acc = Q24Series::one(relative);
        for (d, r) in ex {
            if r == 0 {
                continue;
            }
            let eta_prec = (relative + d as i64 - 1) / d as i64 + 1;
            let factor = eta_series(eta_prec).rescale(d).pow_int(r)?;
            acc = acc.mul(&factor);
        }
        Ok(acc.truncate(prec24))
    }

    /// Exponent-wise sum; both quotients must have the same level.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::MixedFamily);
        }
        Self::new(
            self.level,
            self.exponents
                .iter()
                .chain(other.exponents.iter())
                .map(|(d, r)| (*d, r.clone())),
        )
    }

    /// `f^m`.
    pub fn power(&self, m: &Rational) -> Self {
        Self {
            level: self.level,
            exponents: self.exponents.iter().map(|(d, r)| (*d, r * m)).collect(),
        }
    }

    /// Smallest `m ≥ 1` with `f^m` integral, together with `f^m`.
    pub fn clear_denominators(&self) -> (BigInt, Self) {
        let m = lcm_of_denominators(self.exponents.values());
        let g = self.power(&Rational::from_integer(m.clone()));
        (m, g)
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (d, r) in &self.exponents {
            if r.is_zero() {
                continue;
            }
            if any {
                write!(f, " ")?;
            }
            any = true;
            let arg = if *d == 1 {
                "z".to_string()
            } else {
                format!("{d}z")
            };
            if r.is_one() {
                write!(f, "η({arg})")?;
            } else if r.is_integer() {
                write!(f, "η({arg})^{r}")?;
            } else {
                write!(f, "η({arg})^({r})")?;
            }
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Solves `24·v_zero = p r₁ + r_p`, `24·v_infinity = r₁ + p r_p` for `(r₁, r_p)`.
///
/// Fails if the orders do not lie on the line `v_zero + v_infinity = k(p+1)/12`.
pub fn solve_exponents(p: u64, k: i64, orders: &CuspOrders) -> Result<(Rational, Rational)> {
    if p <= 3 || !is_prime(p) {
        return Err(Error::NotAValidPrime {
            n: p as i64,
            witness: (p >= 4).then(|| smallest_factor(p) as i64),
        });
    }
    let expected = Rational::new(BigInt::from(k) * BigInt::from(p + 1), BigInt::from(12));
    if orders.sum() != expected {
        return Err(Error::WeightMismatch {
            sum: Box::new(orders.sum()),
            expected: Box::new(expected),
        });
    }
    let pr = rational_int(p as i64);
    let det = &pr * &pr - Rational::one();
    let t = rational_int(24);
    let r1 = &t * (&pr * &orders.v_zero - &orders.v_infinity) / &det;
    let rp = &t * (&pr * &orders.v_infinity - &orders.v_zero) / &det;
    Ok((r1, rp))
}

/// Expands several integral quotients of one level to absolute precision `prec24`.
///
/// Quotients are visited in exponent order and each product part is obtained from
/// the previous one by multiplying or dividing by single Euler factors
/// `∏(1 − q^{δn})`, each of which is sparse. For a family whose exponents differ
/// by small steps this is far cheaper than expanding every member from scratch.
pub fn expand_family(fs: &[EtaQuotient], prec24: i64) -> Result<Vec<Q24Series>> {
    let Some(first) = fs.first() else {
        return Ok(Vec::new());
    };
    let level = first.level;
    if fs.iter().any(|f| f.level != level) {
        return Err(Error::MixedFamily);
    }
    let exps: Vec<Vec<(u64, i64)>> = fs
        .iter()
        .map(|f| f.integer_exponents())
        .collect::<Result<_>>()?;
    let offsets: Vec<i64> = exps
        .iter()
        .map(|ex| ex.iter().map(|&(d, r)| d as i64 * r).sum())
        .collect();
    let len = offsets
        .iter()
        .map(|&o| {
            if prec24 > o {
                ((prec24 - o + 23) / 24) as usize
            } else {
                0
            }
        })
        .max()
        .unwrap_or(0);

    let euler: BTreeMap<u64, Vec<(usize, i8)>> = divisors(level)
        .into_iter()
        .map(|d| (d, pentagonal_terms(len.div_ceil(d as usize))))
        .collect();

    let mut order: Vec<usize> = (0..fs.len()).collect();
    order.sort_by(|&a, &b| exps[a].cmp(&exps[b]));

    let mut current = vec![BigInt::zero(); len];
    if len > 0 {
        current[0] = BigInt::one();
    }
    let mut state: Vec<(u64, i64)> = divisors(level).into_iter().map(|d| (d, 0)).collect();
    let mut out: Vec<Option<Q24Series>> = vec![None; fs.len()];
    for idx in order {
        for (slot, &(d, target)) in state.iter_mut().zip(&exps[idx]) {
            let terms = &euler[&d];
            while slot.1 < target {
                mul_euler_in_place(&mut current, d as usize, terms);
                slot.1 += 1;
            }
            while slot.1 > target {
                div_euler_in_place(&mut current, d as usize, terms);
                slot.1 -= 1;
            }
        }
        out[idx] = Some(Q24Series::new(offsets[idx], current.clone(), prec24));
    }
    Ok(out
        .into_iter()
        .map(|s| s.expect("every index visited"))
        .collect())
}
