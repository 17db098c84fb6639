//! Truncated power series in `q^{1/24}` with exact integer coefficients.
//!
//! A [`Q24Series`] is `q^{offset24/24} · Σ_{n≥0} c_n qⁿ`: the leading exponent is
//! tracked in 24ths, the coefficient vector is dense in integer steps of `q`.
//! This covers every eta-quotient expansion (and its rescalings) with a single
//! representation. Terms with exponent `≥ prec24/24` are unknown.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactmath::pentagonal_terms;
use crate::{Error, Result};

/// Number of integer-step terms `offset + 24n < prec` that are known.
fn known_terms(offset24: i64, prec24: i64) -> usize {
    if prec24 <= offset24 {
        0
    } else {
        ((prec24 - offset24 + 23) / 24) as usize
    }
}

/// Coefficient-level multiplication routine used by [`Q24Series::mul_with`].
pub trait MulStrategy {
    /// First `len` coefficients of the product of two integer power series.
    fn product(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt>;
}

/// Plain `O(n²)` Cauchy product.
pub struct Schoolbook;

impl MulStrategy for Schoolbook {
    fn product(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); len];
        for (i, ai) in a.iter().enumerate().take(len) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(len - i) {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Q24Series {
    offset24: i64,
    coeffs: Vec<BigInt>,
    prec24: i64,
}

impl Q24Series {
    /// Builds `q^{offset24/24} Σ coeffs[n] qⁿ + O(q^{prec24/24})`.
    ///
    /// Coefficients past the precision are dropped; missing known ones are zero.
    /// Leading zeros are absorbed into the offset.
    pub fn new(offset24: i64, mut coeffs: Vec<BigInt>, prec24: i64) -> Self {
        let known = known_terms(offset24, prec24);
        coeffs.resize(known, BigInt::zero());
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(known);
        coeffs.drain(..lead);
        Self {
            offset24: offset24 + 24 * lead as i64,
            coeffs,
            prec24,
        }
    }

    /// A series whose known coefficients are exactly `coeffs`.
    pub fn from_coefficients(offset24: i64, coeffs: Vec<BigInt>) -> Self {
        let prec24 = offset24 + 24 * coeffs.len() as i64;
        Self::new(offset24, coeffs, prec24)
    }

    pub fn one(prec24: i64) -> Self {
        Self::new(0, vec![BigInt::one()], prec24)
    }

    pub fn zero(prec24: i64) -> Self {
        Self::new(0, Vec::new(), prec24)
    }

    /// Leading exponent in 24ths. For a series that is zero to working precision
    /// this is only a lower bound on the true valuation.
    pub fn offset24(&self) -> i64 {
        self.offset24
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn prec24(&self) -> i64 {
        self.prec24
    }

    /// Precision measured from the leading exponent.
    pub fn relative_prec24(&self) -> i64 {
        self.prec24 - self.offset24
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Coefficient of `q^{exp24/24}`; `None` when that term is beyond the precision.
    pub fn coefficient(&self, exp24: i64) -> Option<BigInt> {
        if exp24 >= self.prec24 {
            return None;
        }
        let shift = exp24 - self.offset24;
        if shift < 0 || shift % 24 != 0 {
            return Some(BigInt::zero());
        }
        Some(
            self.coeffs
                .get((shift / 24) as usize)
                .cloned()
                .unwrap_or_default(),
        )
    }

    /// Coefficient of the integer power `qⁿ`.
    pub fn coefficient_of_q(&self, n: i64) -> Option<BigInt> {
        self.coefficient(24 * n)
    }

    /// Lowers the precision to `prec24` (no-op if already lower).
    pub fn truncate(&self, prec24: i64) -> Self {
        if prec24 >= self.prec24 {
            return self.clone();
        }
        Self::new(self.offset24, self.coeffs.clone(), prec24)
    }

    /// Truncated product; the result is known exactly as far as both inputs allow.
    pub fn mul_with<S: MulStrategy>(&self, other: &Self) -> Self {
        let offset24 = self.offset24 + other.offset24;
        let prec24 = (self.prec24 + other.offset24).min(other.prec24 + self.offset24);
        let len = known_terms(offset24, prec24);
        Self::new(
            offset24,
            S::product(&self.coeffs, &other.coeffs, len),
            prec24,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with::<Schoolbook>(other)
    }

    /// Multiplicative inverse; requires a leading coefficient of `±1`.
    pub fn invert(&self) -> Result<Self> {
        let lead = self.leading_coefficient().ok_or(Error::ZeroSeries)?;
        if !lead.abs().is_one() {
            return Err(Error::NonUnitLeadingCoefficient(lead.clone()));
        }
        let lead = lead.clone();
        let n = self.coeffs.len();
        let mut inv: Vec<BigInt> = Vec::with_capacity(n);
        inv.push(lead.clone());
        for m in 1..n {
            let mut acc = BigInt::zero();
            for (i, a) in self.coeffs.iter().enumerate().take(m + 1).skip(1) {
                if !a.is_zero() {
                    acc += a * &inv[m - i];
                }
            }
            // lead² = 1, so dividing by lead is multiplying by it.
            inv.push(-(acc * &lead));
        }
        Ok(Self::new(
            -self.offset24,
            inv,
            self.prec24 - 2 * self.offset24,
        ))
    }

    /// Integer power by repeated squaring; negative powers go through [`invert`](Self::invert).
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(self.relative_prec24()));
        }
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut sq = base;
        loop {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            sq = sq.mul(&sq);
        }
        Ok(acc.expect("non-zero exponent"))
    }

    /// Substitutes `q ↦ q^d`.
    pub fn rescale(&self, d: u64) -> Self {
        assert!(d >= 1, "rescale factor must be positive");
        let d = d as i64;
        let offset24 = self.offset24 * d;
        let prec24 = self.prec24 * d;
        let mut coeffs = vec![BigInt::zero(); known_terms(offset24, prec24)];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n * d as usize] = c.clone();
        }
        Self::new(offset24, coeffs, prec24)
    }

    /// Multiplies by `∏_{n≥1}(1 − q^{dn})` in place of a dense product.
    pub fn mul_euler(&mut self, d: usize) {
        let terms = pentagonal_terms(self.coeffs.len().div_ceil(d.max(1)));
        mul_euler_in_place(&mut self.coeffs, d, &terms);
    }

    /// Divides by `∏_{n≥1}(1 − q^{dn})`.
    pub fn div_euler(&mut self, d: usize) {
        let terms = pentagonal_terms(self.coeffs.len().div_ceil(d.max(1)));
        div_euler_in_place(&mut self.coeffs, d, &terms);
    }
}

/// `f ← f · ∏(1 − q^{dn})` on a dense integer series, using the sparse pentagonal
/// expansion. `terms` must list the pentagonal exponents in increasing order.
pub fn mul_euler_in_place(coeffs: &mut [BigInt], d: usize, terms: &[(usize, i8)]) {
    for n in (0..coeffs.len()).rev() {
        let (head, tail) = coeffs.split_at_mut(n);
        let target = &mut tail[0];
        for &(e, sign) in terms.iter().skip(1) {
            let shift = e * d;
            if shift > n {
                break;
            }
            let src = &head[n - shift];
            if sign > 0 {
                *target += src;
            } else {
                *target -= src;
            }
        }
    }
}

/// `f ← f / ∏(1 − q^{dn})`, solving the triangular system term by term.
pub fn div_euler_in_place(coeffs: &mut [BigInt], d: usize, terms: &[(usize, i8)]) {
    for n in 0..coeffs.len() {
        let (head, tail) = coeffs.split_at_mut(n);
        let target = &mut tail[0];
        for &(e, sign) in terms.iter().skip(1) {
            let shift = e * d;
            if shift > n {
                break;
            }
            let src = &head[n - shift];
            if sign > 0 {
                *target -= src;
            } else {
                *target += src;
            }
        }
    }
}

/// Expansion of `η(z) = q^{1/24} ∏(1 − qⁿ)` from the pentagonal number theorem.
pub fn eta_series(prec24: i64) -> Q24Series {
    let n = known_terms(1, prec24);
    let mut coeffs = vec![BigInt::zero(); n];
    for (e, sign) in pentagonal_terms(n) {
        coeffs[e] = BigInt::from(sign);
    }
    Q24Series::new(1, coeffs, prec24)
}

impl Mul for &Q24Series {
    type Output = Q24Series;

    fn mul(self, rhs: &Q24Series) -> Q24Series {
        Q24Series::mul(self, rhs)
    }
}

impl fmt::Display for Q24Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset24 != 0 && !self.is_zero() {
            if self.offset24 % 24 == 0 {
                write!(f, "q^{} * ", self.offset24 / 24)?;
            } else {
                write!(f, "q^({}/24) * ", self.offset24)?;
            }
        }
        write!(f, "(")?;
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        let rel = self.relative_prec24();
        if rel % 24 == 0 {
            write!(f, " + O(q^{}))", rel / 24)
        } else {
            write!(f, " + O(q^({rel}/24)))")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// `∏_{n=1}^{m} (1 − qⁿ)^{power}` truncated to `len` terms by repeated
    /// multiplication with binomials, independent of the pentagonal expansion.
    fn naive_euler_power(len: usize, power: usize) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); len];
        acc[0] = BigInt::one();
        for _ in 0..power {
            for n in 1..len {
                for i in (n..len).rev() {
                    let prev = acc[i - n].clone();
                    acc[i] -= prev;
                }
            }
        }
        acc
    }

    #[test]
    fn eta_matches_brute_force_product() {
        let eta = eta_series(24 * 8);
        assert_eq!(eta.offset24(), 1);
        assert_eq!(eta.coeffs(), ints(&[1, -1, -1, 0, 0, 1, 0, 1]).as_slice());
        assert_eq!(eta.coeffs(), naive_euler_power(8, 1).as_slice());
        assert_eq!(eta.coefficient(24 * 5 + 1), Some(BigInt::one()));
    }

    #[test]
    fn eta_minimal_precision() {
        let eta = eta_series(2);
        assert_eq!(eta.offset24(), 1);
        assert_eq!(eta.coeffs(), ints(&[1]).as_slice());
        assert_eq!(eta.coefficient(25), None);
    }

    #[test]
    fn eta_agrees_with_naive_product_to_200_terms() {
        let eta = eta_series(24 * 200);
        assert_eq!(eta.len(), 200);
        assert_eq!(eta.coeffs(), naive_euler_power(200, 1).as_slice());
    }

    #[test]
    fn euler_function_is_sparse() {
        let eta = eta_series(24 * 201);
        let pent: Vec<usize> = (-20i64..=20)
            .map(crate::exactmath::pentagonal)
            .filter(|&e| e <= 200)
            .map(|e| e as usize)
            .collect();
        for (n, c) in eta.coeffs().iter().enumerate() {
            if pent.contains(&n) {
                assert!(c.abs().is_one(), "q^{n} has {c}");
            } else {
                assert!(c.is_zero(), "q^{n} has {c}");
            }
        }
    }

    #[test]
    fn multiplicative_identity() {
        let a = Q24Series::from_coefficients(5, ints(&[3, -1, 4, 1, -5]));
        let one = Q24Series::one(24 * 10);
        assert_eq!(a.mul(&one), a);
    }

    #[test]
    fn telescoping_geometric() {
        let one_minus_q = Q24Series::new(0, ints(&[1, -1]), 24 * 10);
        let geometric = Q24Series::new(0, vec![BigInt::one(); 10], 24 * 10);
        assert_eq!(one_minus_q.mul(&geometric), Q24Series::one(24 * 10));
        assert_eq!(one_minus_q.invert().unwrap(), geometric);
    }

    #[test]
    fn eta_squared_leading_terms() {
        let eta = eta_series(24 * 6);
        let sq = &eta * &eta;
        assert_eq!(sq.offset24(), 2);
        let expected = naive_euler_power(5, 2);
        assert_eq!(&sq.coeffs()[..5], expected.as_slice());
        assert_eq!(&sq.coeffs()[..4], ints(&[1, -2, -1, 2]).as_slice());
    }

    #[test]
    fn inverse_and_identity() {
        let one = Q24Series::one(24 * 7);
        assert_eq!(one.invert().unwrap(), one);
        let eta = eta_series(24 * 30 + 1);
        let prod = eta.mul(&eta.invert().unwrap());
        assert_eq!(prod, Q24Series::one(24 * 30));
    }

    #[test]
    fn invert_rejects_non_units() {
        let a = Q24Series::from_coefficients(0, ints(&[2, 1]));
        assert_eq!(
            a.invert(),
            Err(Error::NonUnitLeadingCoefficient(BigInt::from(2)))
        );
        assert_eq!(Q24Series::zero(48).invert(), Err(Error::ZeroSeries));
        assert!(a.pow_int(-2).is_err());
    }

    #[test]
    fn eta_to_the_24th() {
        let eta = eta_series(24 * 12 + 1);
        let delta = eta.pow_int(24).unwrap();
        assert_eq!(delta.offset24(), 24);
        let expected = naive_euler_power(4, 24);
        assert_eq!(&delta.coeffs()[..4], expected.as_slice());
        assert_eq!(&delta.coeffs()[..4], ints(&[1, -24, 252, -1472]).as_slice());
    }

    #[test]
    fn pow_edge_cases() {
        let eta = eta_series(24 * 10 + 1);
        assert_eq!(eta.pow_int(0).unwrap(), Q24Series::one(24 * 10));
        assert_eq!(eta.pow_int(-1).unwrap(), eta.invert().unwrap());
        assert_eq!(eta.pow_int(1).unwrap(), eta);
        assert_eq!(
            eta.pow_int(-3).unwrap().mul(&eta.pow_int(3).unwrap()),
            Q24Series::one(24 * 10)
        );
    }

    #[test]
    fn rescale_examples() {
        let a = Q24Series::from_coefficients(3, ints(&[1, 2, 3]));
        assert_eq!(a.rescale(1), a);
        assert_eq!(eta_series(48).rescale(11).offset24(), 11);
        let one_minus_q = Q24Series::from_coefficients(0, ints(&[1, -1]));
        assert_eq!(
            one_minus_q.rescale(2),
            Q24Series::from_coefficients(0, ints(&[1, 0, -1, 0]))
        );
    }

    #[test]
    fn sparse_euler_updates_match_dense_products() {
        let prec = 24 * 60;
        let eta11 = eta_series(prec).rescale(11);
        let base = Q24Series::new(0, ints(&[1, 3, -2, 7, 0, 1]), prec);
        let dense = base.mul(&Q24Series::new(0, eta11.coeffs().to_vec(), prec * 11));
        let mut sparse = base.clone();
        sparse.mul_euler(11);
        assert_eq!(sparse, dense);
        sparse.div_euler(11);
        assert_eq!(sparse, base);
    }

    #[test]
    fn display_is_readable() {
        let s = Q24Series::from_coefficients(24, ints(&[1, -2, 0, 5]));
        assert_eq!(s.to_string(), "q^1 * (1 - 2*q + 5*q^3 + O(q^4))");
        assert_eq!(eta_series(49).to_string(), "q^(1/24) * (1 - q + O(q^2))");
        assert_eq!(
            eta_series(48).to_string(),
            "q^(1/24) * (1 - q + O(q^(47/24)))"
        );
    }

    fn arb_series() -> impl Strategy<Value = Q24Series> {
        (
            -48i64..48,
            prop::collection::vec(-20i64..20, 1..12),
            0i64..240,
        )
            .prop_map(|(off, c, extra)| Q24Series::new(off, ints(&c), off + extra))
    }

    proptest! {
        #[test]
        fn mul_commutes(a in arb_series(), b in arb_series()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn mul_associates(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn inverse_roundtrip(mut c in prop::collection::vec(-9i64..9, 1..15), off in -30i64..30, neg: bool) {
            c[0] = if neg { -1 } else { 1 };
            let a = Q24Series::from_coefficients(off, ints(&c));
            let inv = a.invert().unwrap();
            prop_assert_eq!(inv.offset24(), -off);
            prop_assert_eq!(a.mul(&inv), Q24Series::one(24 * c.len() as i64));
        }
    }
}
