//! The eta multiplier system: `η(γz) = ε(γ)(cz+d)^{1/2} η(z)` for `γ ∈ SL₂(ℤ)`,
//! with `ε(γ)` an exact 24th root of unity, plus a floating-point harness that
//! checks the law numerically.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::exactmath::{gcd, kronecker, pentagonal_terms};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl UnimodularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a as i128 * d as i128 - b as i128 * c as i128 != 1 {
            return Err(Error::InvalidMatrix { a, b, c, d });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self {
            a: 1,
            b: 0,
            c: 0,
            d: 1,
        }
    }

    /// `z ↦ z + 1`.
    pub fn t() -> Self {
        Self {
            a: 1,
            b: 1,
            c: 0,
            d: 1,
        }
    }

    /// `z ↦ −1/z`.
    pub fn s() -> Self {
        Self {
            a: 0,
            b: -1,
            c: 1,
            d: 0,
        }
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.d)
    }

    /// Every matrix with bottom row `(c, d)` and `|a|, |b| ≤ bound`.
    pub fn completions(c: i64, d: i64, bound: i64) -> Vec<Self> {
        if gcd(c, d) != 1 {
            return Vec::new();
        }
        if c == 0 {
            return (-bound..=bound).map(|b| Self { a: d, b, c, d }).collect();
        }
        (-bound..=bound)
            .filter(|&a| (a * d - 1) % c == 0)
            .map(|a| Self {
                a,
                b: (a * d - 1) / c,
                c,
                d,
            })
            .filter(|m| m.b.abs() <= bound)
            .collect()
    }

    /// Möbius action on the upper half-plane.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z * self.a as f64 + self.b as f64) / (z * self.c as f64 + self.d as f64)
    }

    /// Automorphy factor `cz + d`.
    pub fn automorphy(&self, z: Complex64) -> Complex64 {
        Complex64::new(self.c as f64 * z.re + self.d as f64, self.c as f64 * z.im)
    }
}

impl Mul for UnimodularMatrix {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// `sign · e^{2πi·exponent24/24}`, kept in the canonical form `sign = +1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root24 {
    sign: i8,
    exponent24: u8,
}

impl Root24 {
    pub fn new(sign: i8, exponent24: i64) -> Self {
        let shift = if sign < 0 { 12 } else { 0 };
        Self {
            sign: 1,
            exponent24: (exponent24 + shift).rem_euclid(24) as u8,
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn exponent24(&self) -> u8 {
        self.exponent24
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.sign as f64, 2.0 * PI * self.exponent24 as f64 / 24.0)
    }
}

impl Mul for Root24 {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        Root24::new(
            self.sign * o.sign,
            self.exponent24 as i64 + o.exponent24 as i64,
        )
    }
}

fn sgn(x: i64) -> i64 {
    if x < 0 {
        -1
    } else {
        1
    }
}

fn quadratic_part(g: &UnimodularMatrix) -> i128 {
    let (a, b, c, d) = (g.a as i128, g.b as i128, g.c as i128, g.d as i128);
    (a + d) * c - b * d * (c * c - 1)
}

fn multiplier_with(g: &UnimodularMatrix, even_symbol: impl Fn(i64, i64) -> i8) -> Root24 {
    let (c, d) = (g.c, g.d);
    let base = quadratic_part(g);
    if c.rem_euclid(2) == 1 {
        let e = base - 3 * c as i128;
        Root24::new(kronecker(d, c.abs()), e.rem_euclid(24) as i64)
    } else {
        let sign_flip = if (sgn(c) - 1) * (sgn(d) - 1) / 4 != 0 {
            -1
        } else {
            1
        };
        let e = base + 3 * d as i128 - 3 - 3 * c as i128 * d as i128;
        Root24::new(sign_flip * even_symbol(c, d), e.rem_euclid(24) as i64)
    }
}

/// `ε(γ)`. For even `c` the symbol is `(c/|d|)`, and `sgn 0` is taken as `+1`.
pub fn eta_multiplier(g: &UnimodularMatrix) -> Root24 {
    multiplier_with(g, |c, d| kronecker(c, d.abs()))
}

/// Variant whose even-`c` branch uses `(d/|c|)` like the odd branch. Wrong for
/// some matrices (e.g. `(−1 0; 6 −1)`); kept so the discrepancy stays testable.
pub fn eta_multiplier_as_printed(g: &UnimodularMatrix) -> Root24 {
    multiplier_with(g, |c, d| kronecker(d, c.abs()))
}

fn check_upper(z: Complex64) -> Result<()> {
    if z.im > 0.0 && z.im.is_finite() && z.re.is_finite() {
        Ok(())
    } else {
        Err(Error::NotInUpperHalfPlane { re: z.re, im: z.im })
    }
}

/// `η(z)` from the pentagonal series, using the `q`-powers below `q^{prec24/24}`.
pub fn numeric_eta(z: Complex64, prec24: i64) -> Result<Complex64> {
    check_upper(z)?;
    let terms = (prec24.max(24) / 24) as usize;
    let two_pi_i_z = Complex64::new(0.0, 2.0 * PI) * z;
    let sum: Complex64 = pentagonal_terms(terms)
        .into_iter()
        .map(|(n, s)| (two_pi_i_z * n as f64).exp() * s as f64)
        .sum();
    Ok((two_pi_i_z / 24.0).exp() * sum)
}

/// Terms needed so the tail of the pentagonal series at `z` is below `1e−17`.
fn terms_for(z: Complex64) -> i64 {
    (40.0 / (2.0 * PI * z.im)).ceil() as i64 + 1
}

/// `|η(γz) − ε(γ)(cz+d)^{1/2} η(z)|` with the principal square root.
///
/// `γz` can sit much closer to the real axis than `z`, so its expansion length is
/// raised as needed beyond `prec24`.
pub fn verify_transformation(g: &UnimodularMatrix, z: Complex64, prec24: i64) -> Result<f64> {
    check_upper(z)?;
    let gz = g.apply(z);
    let lhs = numeric_eta(gz, prec24.max(24 * terms_for(gz)))?;
    let rhs = eta_multiplier(g).to_complex() * g.automorphy(z).sqrt() * numeric_eta(z, prec24)?;
    Ok((lhs - rhs).norm())
}
