//! Dimensions of `S_k(Γ₀(p))` with trivial and quadratic character.
//!
//! The trivial-character dimension comes both from the genus formula and from a
//! cell table indexed by `(k mod 12, p mod 12)`; the quadratic one only from a
//! cell table indexed by `(k mod 12, p mod 24)`. Table cells are stored as the
//! constant `c` in `((k−1)(p+1) + c)/12`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::enumeration::{count_cusp_etaquotients, h_of};
use crate::exactmath::{kronecker, rational, rational_int, require_prime};
use crate::{Error, Rational, Result};

/// Numbers of elliptic points of order 2 and 3 on `X₀(p)`.
pub fn elliptic_counts(p: u64) -> Result<(u8, u8)> {
    let p = require_prime(p as i64)?;
    let mu2 = if p % 4 == 3 { 0 } else { 2 };
    let mu3 = if p % 3 == 2 { 0 } else { 2 };
    Ok((mu2, mu3))
}

/// Genus of `X₀(p)`, `(p+1)/12 − μ₂/4 − μ₃/3`.
pub fn genus(p: u64) -> Result<u64> {
    let (mu2, mu3) = elliptic_counts(p)?;
    let g = rational(p as i64 + 1, 12) - rational(mu2 as i64, 4) - rational(mu3 as i64, 3);
    if !g.is_integer() || g.is_negative() {
        return Err(Error::NonIntegralGenus(g));
    }
    Ok(g.to_integer().to_u64().expect("small genus"))
}

/// `dim S_k(Γ₀(p))`: 0 for odd or non-positive `k`, the genus for `k = 2`, and
/// `(k−1)(g−1) + (k−2) + μ₂⌊k/4⌋ + μ₃⌊k/3⌋` for even `k ≥ 4`.
pub fn dim_cusp_trivial(p: u64, k: i64) -> Result<u64> {
    let g = genus(p)? as i64;
    if k <= 0 || k % 2 != 0 {
        return Ok(0);
    }
    if k == 2 {
        return Ok(g as u64);
    }
    let (mu2, mu3) = elliptic_counts(p)?;
    let d = (k - 1) * (g - 1) + (k - 2) + mu2 as i64 * (k / 4) + mu3 as i64 * (k / 3);
    Ok(d as u64)
}

/// `dim E_k(Γ₀(p))` for even `k ≥ 2`; 0 otherwise.
pub fn dim_eisenstein_trivial(k: i64) -> u64 {
    match k {
        2 => 1,
        k if k >= 4 && k % 2 == 0 => 2,
        _ => 0,
    }
}

/// Residue classes of `p mod 12` heading the trivial-character table.
pub const TRIVIAL_TABLE_COLUMNS: [u64; 4] = [1, 5, 7, 11];

/// Constant `c` per even row `k mod 12 ∈ {0,2,…,10}` and column; odd rows are 0.
const TRIVIAL_TABLE: [[i64; 4]; 6] = [
    [2, -6, -4, -12],
    [-26, -18, -20, -12],
    [-6, -6, -12, -12],
    [-10, -18, -4, -12],
    [-14, -6, -20, -12],
    [-18, -18, -12, -12],
];

fn trivial_cell(p_mod: u64, k_mod: i64) -> Option<i64> {
    if k_mod % 2 != 0 {
        return None;
    }
    let col = TRIVIAL_TABLE_COLUMNS.iter().position(|&c| c == p_mod)?;
    Some(TRIVIAL_TABLE[(k_mod / 2) as usize][col])
}

/// Trivial-character dimension read from the cell table (meaningful for `k ≥ 4`).
pub fn dim_cusp_trivial_from_table(p: u64, k: i64) -> Result<Rational> {
    let p = require_prime(p as i64)?;
    Ok(match trivial_cell(p % 12, k.rem_euclid(12)) {
        Some(c) => rational((k - 1) * (p as i64 + 1) + c, 12),
        None => rational_int(0),
    })
}

/// Residue classes of `p mod 24` heading the quadratic-character table.
pub const QUADRATIC_TABLE_COLUMNS: [u64; 8] = [1, 5, 7, 11, 13, 17, 19, 23];

const N: Option<i64> = None;

/// Constant `c` per row `k mod 12` and column; `None` marks a cell that is 0.
const QUADRATIC_TABLE: [[Option<i64>; 12]; 8] = [
    [
        Some(8),
        N,
        Some(-20),
        N,
        Some(0),
        N,
        Some(-4),
        N,
        Some(-4),
        N,
        Some(-12),
        N,
    ],
    [
        Some(-12),
        N,
        Some(0),
        N,
        Some(-12),
        N,
        Some(0),
        N,
        Some(-12),
        N,
        Some(0),
        N,
    ],
    [
        N,
        Some(0),
        N,
        Some(2),
        N,
        Some(-14),
        N,
        Some(0),
        N,
        Some(2),
        N,
        Some(-14),
    ],
    [
        N,
        Some(-6),
        N,
        Some(-6),
        N,
        Some(-6),
        N,
        Some(-6),
        N,
        Some(-6),
        N,
        Some(-6),
    ],
    [
        Some(-4),
        N,
        Some(-8),
        N,
        Some(-12),
        N,
        Some(8),
        N,
        Some(-20),
        N,
        Some(0),
        N,
    ],
    [
        Some(0),
        N,
        Some(-12),
        N,
        Some(0),
        N,
        Some(-12),
        N,
        Some(0),
        N,
        Some(-12),
        N,
    ],
    [
        N,
        Some(0),
        N,
        Some(2),
        N,
        Some(-14),
        N,
        Some(0),
        N,
        Some(2),
        N,
        Some(-14),
    ],
    [
        N,
        Some(-6),
        N,
        Some(-6),
        N,
        Some(-6),
        N,
        Some(-6),
        N,
        Some(-6),
        N,
        Some(-6),
    ],
];

fn quadratic_cell(p_mod: u64, k_mod: i64) -> Option<i64> {
    let col = QUADRATIC_TABLE_COLUMNS.iter().position(|&c| c == p_mod)?;
    QUADRATIC_TABLE[col][k_mod as usize]
}

/// The quadratic-character table cell evaluated exactly, integral or not.
pub fn quadratic_table_value(p: u64, k: i64) -> Result<Rational> {
    let p = require_prime(p as i64)?;
    Ok(match quadratic_cell(p % 24, k.rem_euclid(12)) {
        Some(c) => rational((k - 1) * (p as i64 + 1) + c, 12),
        None => rational_int(0),
    })
}

/// `dim S_k(Γ₀(p), (·/p))` from the cell table. Non-integral cells are errors
/// carrying the exact value; nothing is rounded.
pub fn dim_cusp_quadratic(p: u64, k: i64) -> Result<u64> {
    if k <= 0 {
        require_prime(p as i64)?;
        return Err(Error::DimensionUnavailable {
            p,
            k,
            reason: "table covers positive weights only".into(),
        });
    }
    let value = quadratic_table_value(p, k)?;
    if !value.is_integer() {
        return Err(Error::NonIntegralTableValue { p, k, value });
    }
    if value.is_negative() {
        return Err(Error::DimensionUnavailable {
            p,
            k,
            reason: format!("table cell evaluates to negative {value}"),
        });
    }
    Ok(value.to_integer().to_u64().expect("fits"))
}

/// `Σ_{x² + 1 ≡ 0 (p)} (x/p)`.
pub fn char_sum_a4(p: u64) -> i64 {
    match p {
        2 => 1,
        _ if p % 4 == 3 => 0,
        _ if p % 8 == 1 => 2,
        _ => -2,
    }
}

/// `Σ_{x² + x + 1 ≡ 0 (p)} (x/p)`.
pub fn char_sum_a3(p: u64) -> i64 {
    match p {
        3 => 1,
        _ if p % 3 == 2 => 0,
        _ => 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSet {
    /// Roots of `x² + 1`.
    FourthRoots,
    /// Roots of `x² + x + 1`.
    CubeRoots,
}

/// Sums `(x/p)` over the root set by scanning every residue.
pub fn char_sum_oracle(p: u64, set: RootSet) -> i64 {
    (0..p)
        .filter(|&x| {
            let x = x as u128;
            let v = match set {
                RootSet::FourthRoots => x * x + 1,
                RootSet::CubeRoots => x * x + x + 1,
            };
            v % p as u128 == 0
        })
        .map(|x| kronecker(x as i64, p as i64) as i64)
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionReport {
    pub p: u64,
    pub k: i64,
    pub dim_cusp_trivial: Option<u64>,
    pub dim_cusp_quadratic: Option<u64>,
    /// Exact table value when the quadratic dimension is undefined.
    pub quadratic_diagnostic: Option<String>,
    pub dim_eisenstein_trivial: u64,
    pub genus: u64,
    pub mu2: u8,
    pub mu3: u8,
}

pub fn dimension_report(p: u64, k: i64) -> Result<DimensionReport> {
    let (mu2, mu3) = elliptic_counts(p)?;
    let (dim_cusp_quadratic, quadratic_diagnostic) = match dim_cusp_quadratic(p, k) {
        Ok(d) => (Some(d), None),
        Err(e @ (Error::NonIntegralTableValue { .. } | Error::DimensionUnavailable { .. })) => {
            (None, Some(e.to_string()))
        }
        Err(e) => return Err(e),
    };
    Ok(DimensionReport {
        p,
        k,
        dim_cusp_trivial: Some(dim_cusp_trivial(p, k)?),
        dim_cusp_quadratic,
        quadratic_diagnostic,
        dim_eisenstein_trivial: dim_eisenstein_trivial(k),
        genus: genus(p)?,
        mu2,
        mu3,
    })
}

/// Dimension(s) the cusp count of weight `k` is compared against.
fn span_denominator(p: u64, k: i64) -> Result<u64> {
    let d = if p % 4 == 3 {
        if k % 2 != 0 {
            dim_cusp_quadratic(p, k)?
        } else {
            dim_cusp_trivial(p, k)?
        }
    } else {
        dim_cusp_trivial(p, k)? + dim_cusp_quadratic(p, k)?
    };
    if d == 0 {
        return Err(Error::DimensionUnavailable {
            p,
            k,
            reason: "denominator dimension is zero".into(),
        });
    }
    Ok(d)
}

/// Number of cusp-form eta-quotients over the dimension of the space(s) they lie in.
pub fn eta_span_ratio(p: u64, k: i64) -> Result<Rational> {
    let count = count_cusp_etaquotients(p, k)?.count;
    let den = span_denominator(p, k)?;
    Ok(Rational::new(BigInt::from(count), BigInt::from(den)))
}

/// Limit of [`eta_span_ratio`] as `k → ∞`: `2h/(p−1)` for `p ≡ 3 (mod 4)`,
/// `h/(p−1)` otherwise.
pub fn limit_ratio(p: u64) -> Result<Rational> {
    let h = h_of(p)? as i64;
    let num = if p % 4 == 3 { 2 * h } else { h };
    Ok(rational(num, p as i64 - 1))
}

fn cell_formula(c: Option<i64>) -> String {
    match c {
        None => "0".into(),
        Some(0) => "((k-1)(p+1))/12".into(),
        Some(c) if c > 0 => format!("((k-1)(p+1)+{c})/12"),
        Some(c) => format!("((k-1)(p+1)-{})/12", -c),
    }
}

/// Trivial-character table as formula strings: header row then one row per `k mod 12`.
pub fn trivial_table_layout() -> Vec<Vec<String>> {
    let mut rows = vec![std::iter::once("k mod 12".to_string())
        .chain(
            TRIVIAL_TABLE_COLUMNS
                .iter()
                .map(|c| format!("p = {c} mod 12")),
        )
        .collect()];
    for k in 0..12 {
        rows.push(
            std::iter::once(k.to_string())
                .chain(
                    TRIVIAL_TABLE_COLUMNS
                        .iter()
                        .map(|&c| cell_formula(trivial_cell(c, k))),
                )
                .collect(),
        );
    }
    rows
}

/// Quadratic-character table as formula strings, columns `p mod 24`.
pub fn quadratic_table_layout() -> Vec<Vec<String>> {
    let mut rows = vec![std::iter::once("k mod 12".to_string())
        .chain(
            QUADRATIC_TABLE_COLUMNS
                .iter()
                .map(|c| format!("p = {c} mod 24")),
        )
        .collect()];
    for k in 0..12 {
        rows.push(
            std::iter::once(k.to_string())
                .chain(
                    QUADRATIC_TABLE_COLUMNS
                        .iter()
                        .map(|&c| cell_formula(quadratic_cell(c, k))),
                )
                .collect(),
        );
    }
    rows
}
