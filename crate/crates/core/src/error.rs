use num_bigint::BigInt;

use crate::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{a} has no inverse modulo {modulus}")]
    NotInvertible { a: i64, modulus: i64 },

    #[error("series leading coefficient {0} is not a unit")]
    NonUnitLeadingCoefficient(BigInt),

    #[error("cannot invert a series that is zero to working precision")]
    ZeroSeries,

    #[error("eta-quotient has non-integral exponents")]
    FractionalExponents,

    #[error("eta-quotient violates the mod-24 congruences")]
    CongruenceViolation,

    #[error("eta-quotient has non-integral weight {0}")]
    NonIntegralWeight(Rational),

    #[error("{delta} does not divide the level {level}")]
    NotADivisor { delta: u64, level: u64 },

    #[error("level {0} is not prime")]
    LevelNotPrime(u64),

    #[error("{n} is not a prime greater than 3{}", witness_note(*.witness))]
    NotAValidPrime { n: i64, witness: Option<i64> },

    #[error("weight {k} is not divisible by h = {h} for p = {p}")]
    InadmissibleWeight { p: u64, k: i64, h: u64 },

    #[error("cusp orders sum to {sum}, expected k(p+1)/12 = {expected}")]
    WeightMismatch {
        sum: Box<Rational>,
        expected: Box<Rational>,
    },

    #[error("genus formula gave non-integral value {0}")]
    NonIntegralGenus(Rational),

    #[error("table cell for p = {p}, k = {k} evaluates to non-integral {value}")]
    NonIntegralTableValue { p: u64, k: i64, value: Rational },

    #[error("no dimension available for p = {p}, k = {k}: {reason}")]
    DimensionUnavailable { p: u64, k: i64, reason: String },

    #[error("matrix ({a} {b}; {c} {d}) does not have determinant 1")]
    InvalidMatrix { a: i64, b: i64, c: i64, d: i64 },

    #[error("point {re} + {im}i is not in the upper half-plane")]
    NotInUpperHalfPlane { re: f64, im: f64 },

    #[error("quotients must share level and weight")]
    MixedFamily,

    #[error("eta-quotient has non-integral order {0} at infinity")]
    NonIntegralOrder(Rational),

    #[error("integer {0} does not fit the requested range")]
    Overflow(String),
}

fn witness_note(witness: Option<i64>) -> String {
    match witness {
        Some(w) => format!(" (divisible by {w})"),
        None => String::new(),
    }
}
