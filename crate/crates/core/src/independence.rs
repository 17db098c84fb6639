//! Coefficient matrices of eta-quotient families and their exact rank.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::enumeration::{list_cusp_etaquotients, noncusp_etaquotients, weight_admissible};
use crate::etaquotient::{expand_family, EtaQuotient};
use crate::{Error, Result};

/// `⌊pk/12⌋ + 1`.
pub fn sturm_bound(p: u64, k: i64) -> u64 {
    (p as i64 * k).div_euclid(12) as u64 + 1
}

/// Rows are `q`-expansions up to `q^bound`, sorted by increasing order at `i∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientMatrix {
    pub rows: Vec<Vec<BigInt>>,
    pub bound: u64,
    /// Order at `i∞` of the quotient behind each row.
    pub leading_exponents: Vec<i64>,
    pub quotients: Vec<EtaQuotient>,
}

impl CoefficientMatrix {
    /// The same matrix restricted to columns `0..=bound`.
    pub fn truncated(&self, bound: u64) -> Self {
        let cols = (bound.min(self.bound) + 1) as usize;
        Self {
            rows: self.rows.iter().map(|r| r[..cols].to_vec()).collect(),
            bound: bound.min(self.bound),
            leading_exponents: self.leading_exponents.clone(),
            quotients: self.quotients.clone(),
        }
    }

    pub fn leading_exponents_distinct(&self) -> bool {
        self.leading_exponents.windows(2).all(|w| w[0] != w[1])
    }
}

pub fn coefficient_matrix(fs: &[EtaQuotient], bound: u64) -> Result<CoefficientMatrix> {
    if let Some(first) = fs.first() {
        let (level, weight) = (first.level(), first.weight());
        if fs
            .iter()
            .any(|f| f.level() != level || f.weight() != weight)
        {
            return Err(Error::MixedFamily);
        }
    }
    let mut keyed = Vec::with_capacity(fs.len());
    for f in fs {
        if !f.is_integral() {
            return Err(Error::FractionalExponents);
        }
        let v = f.order_at_infinity();
        if !v.is_integer() {
            return Err(Error::NonIntegralOrder(v));
        }
        let v = v
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Overflow(v.to_string()))?;
        keyed.push((v, f.clone()));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let (leading_exponents, quotients): (Vec<i64>, Vec<EtaQuotient>) = keyed.into_iter().unzip();
    let series = expand_family(&quotients, 24 * (bound as i64 + 1))?;
    let rows = series
        .iter()
        .map(|s| {
            (0..=bound as i64)
                .map(|j| s.coefficient_of_q(j).unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect();
    Ok(CoefficientMatrix {
        rows,
        bound,
        leading_exponents,
        quotients,
    })
}

/// Rank over `ℚ` by fraction-free (Bareiss) elimination.
pub fn rank_exact(m: &CoefficientMatrix) -> usize {
    rank_of_rows(m.rows.clone())
}

pub fn rank_of_rows(mut a: Vec<Vec<BigInt>>) -> usize {
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(piv) = (rank..n_rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let pivot = a[rank][col].clone();
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            if factor.is_zero() && pivot == prev {
                continue;
            }
            for j in col..n_cols {
                let v = &pivot * &row[j] - &factor * &prow[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub p: u64,
    pub k: i64,
    pub quotient_count: usize,
    pub sturm_bound: u64,
    /// Largest possible leading exponent `k(p+1)/12`, or the Sturm bound if larger.
    pub full_bound: u64,
    pub rank_at_sturm: usize,
    pub rank_at_full: usize,
    pub leading_exponents_distinct: bool,
}

impl IndependenceReport {
    pub fn independent(&self) -> bool {
        self.rank_at_full == self.quotient_count
    }

    /// The Sturm-bound truncation alone already certifies independence.
    pub fn certified_at_sturm(&self) -> bool {
        self.rank_at_sturm == self.quotient_count
    }
}

/// Every holomorphic eta-quotient of weight `k` on `Γ₀(p)`, cusp forms first.
pub fn all_etaquotients(p: u64, k: i64) -> Result<Vec<EtaQuotient>> {
    let mut fs = list_cusp_etaquotients(p, k)?;
    fs.extend(noncusp_etaquotients(p, k)?);
    Ok(fs)
}

pub fn independence_report(p: u64, k: i64) -> Result<IndependenceReport> {
    let rep = weight_admissible(p, k)?;
    if !rep.admissible {
        return Err(Error::InadmissibleWeight { p, k, h: rep.h });
    }
    let fs = all_etaquotients(p, k)?;
    let sturm = sturm_bound(p, k);
    let line = (k.max(0) * (p as i64 + 1) / 12) as u64;
    let full = sturm.max(line);
    let m = coefficient_matrix(&fs, full)?;
    Ok(IndependenceReport {
        p,
        k,
        quotient_count: fs.len(),
        sturm_bound: sturm,
        full_bound: full,
        rank_at_sturm: rank_exact(&m.truncated(sturm)),
        rank_at_full: rank_exact(&m),
        leading_exponents_distinct: m.leading_exponents_distinct(),
    })
}

/// Whether all holomorphic eta-quotients of weight `k` are linearly independent.
pub fn verify_independence(p: u64, k: i64) -> Result<bool> {
    Ok(independence_report(p, k)?.independent())
}

/// Partitions quotients by the discriminant of their character.
pub fn group_by_character(fs: &[EtaQuotient]) -> Result<BTreeMap<i64, Vec<EtaQuotient>>> {
    let mut out: BTreeMap<i64, Vec<EtaQuotient>> = BTreeMap::new();
    for f in fs {
        out.entry(f.character()?.discriminant_core)
            .or_default()
            .push(f.clone());
    }
    Ok(out)
}
