//! Serializable report records. Exact quantities are integers or `{num, den}`
//! pairs; series coefficients are decimal strings.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use etaq::dimensions::DimensionReport;
use etaq::independence::IndependenceReport;
use etaq::{Error, EtaQuotient, Q24Series, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRecord {
    pub num: i64,
    pub den: i64,
}

impl TryFrom<&Rational> for RationalRecord {
    type Error = Error;

    fn try_from(q: &Rational) -> Result<Self> {
        let overflow = || Error::Overflow(q.to_string());
        Ok(Self {
            num: q.numer().to_i64().ok_or_else(overflow)?,
            den: q.denom().to_i64().ok_or_else(overflow)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentRecord {
    pub delta: u64,
    pub num: i64,
    pub den: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaQuotientRecord {
    pub level: u64,
    pub weight: RationalRecord,
    pub exponents: Vec<ExponentRecord>,
    pub v_infinity: RationalRecord,
    pub v_zero: RationalRecord,
    pub character_discriminant: i64,
    pub is_cusp: bool,
}

impl EtaQuotientRecord {
    pub fn from_quotient(f: &EtaQuotient) -> Result<Self> {
        let orders = f.cusp_orders_prime()?;
        let exponents = f
            .exponents()
            .map(|(delta, r)| {
                let r = RationalRecord::try_from(r)?;
                Ok(ExponentRecord {
                    delta,
                    num: r.num,
                    den: r.den,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            level: f.level(),
            weight: (&f.weight()).try_into()?,
            exponents,
            v_infinity: (&orders.v_infinity).try_into()?,
            v_zero: (&orders.v_zero).try_into()?,
            character_discriminant: f.character()?.discriminant_core,
            is_cusp: orders.is_cuspidal(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub p: u64,
    pub k: i64,
    pub h: u64,
    pub cusp_count: u64,
    pub noncusp_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub quotient: EtaQuotientRecord,
    pub offset24: i64,
    pub prec24: i64,
    /// Coefficients of `q^0, q^1, …` below the precision.
    pub coefficients: Vec<String>,
}

impl ExpansionRecord {
    pub fn new(quotient: EtaQuotientRecord, series: &Q24Series, terms: i64) -> Self {
        Self {
            quotient,
            offset24: series.offset24(),
            prec24: series.prec24(),
            coefficients: (0..terms)
                .map(|n| {
                    series
                        .coefficient_of_q(n)
                        .map(|c| c.to_string())
                        .unwrap_or_default()
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRecord {
    pub p: u64,
    pub k: i64,
    pub dim_cusp_trivial: Option<u64>,
    pub dim_cusp_quadratic: Option<u64>,
    pub quadratic_diagnostic: Option<String>,
    pub dim_eisenstein_trivial: u64,
    pub genus: u64,
    pub mu2: u8,
    pub mu3: u8,
}

impl From<DimensionReport> for DimensionRecord {
    fn from(d: DimensionReport) -> Self {
        Self {
            p: d.p,
            k: d.k,
            dim_cusp_trivial: d.dim_cusp_trivial,
            dim_cusp_quadratic: d.dim_cusp_quadratic,
            quadratic_diagnostic: d.quadratic_diagnostic,
            dim_eisenstein_trivial: d.dim_eisenstein_trivial,
            genus: d.genus,
            mu2: d.mu2,
            mu3: d.mu3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceRecord {
    pub p: u64,
    pub k: i64,
    pub quotient_count: usize,
    pub sturm_bound: u64,
    pub full_bound: u64,
    pub rank_at_sturm: usize,
    pub rank_at_full: usize,
    pub leading_exponents_distinct: bool,
    pub independent: bool,
}

impl From<&IndependenceReport> for IndependenceRecord {
    fn from(r: &IndependenceReport) -> Self {
        Self {
            p: r.p,
            k: r.k,
            quotient_count: r.quotient_count,
            sturm_bound: r.sturm_bound,
            full_bound: r.full_bound,
            rank_at_sturm: r.rank_at_sturm,
            rank_at_full: r.rank_at_full,
            leading_exponents_distinct: r.leading_exponents_distinct,
            independent: r.independent(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub tag: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub p: u64,
    pub k: i64,
    pub h: u64,
    pub admissible: bool,
    pub cusp_count: u64,
    pub noncusp_count: u64,
    pub quotients: Vec<EtaQuotientRecord>,
    pub dims: DimensionRecord,
    pub independence_verified: bool,
    pub oracle_agrees: bool,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub matrix: [i64; 4],
    pub z: [f64; 2],
    pub exponent24: u8,
    pub residual: f64,
}
