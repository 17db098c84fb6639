//! Counting and listing eta-quotients `η(z)^{r₁} η(pz)^{r_p}` of prime level.
//!
//! A quotient of weight `k` is determined by its order `v = v_zero` at the cusp
//! `0`: `r₁ = (24v − 2k)/(p−1)` and `r_p = 2k − r₁`. The orders satisfy
//! `v_zero + v_infinity = L = k(p+1)/12`, so holomorphic quotients are lattice
//! points on `0 ≤ v ≤ L`, cusp forms the interior ones. The congruence conditions
//! cut these down to one residue class modulo `M = (p−1)/(2h)`.

use num_traits::{Signed, Zero};

use crate::etaquotient::EtaQuotient;
use crate::exactmath::{ceil_div, floor_div, gcd, mod_inverse, require_prime};
use crate::{Error, Result};

/// `h = gcd(p−1, 24)/2`: weights carrying eta-quotients are the multiples of `h`.
pub fn h_of(p: u64) -> Result<u64> {
    let p = require_prime(p as i64)?;
    Ok(gcd(p as i64 - 1, 24) / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub p: u64,
    pub k: i64,
    pub h: u64,
    /// `k/h` when admissible.
    pub k_prime: Option<i64>,
    pub admissible: bool,
}

pub fn weight_admissible(p: u64, k: i64) -> Result<AdmissibilityReport> {
    let h = h_of(p)?;
    let admissible = k % h as i64 == 0;
    Ok(AdmissibilityReport {
        p,
        k,
        h,
        k_prime: admissible.then(|| k / h as i64),
        admissible,
    })
}

/// Modulus `M = (p−1)/(2h)` of the residue class of admissible `v_zero`.
pub fn residue_modulus(p: u64) -> Result<u64> {
    Ok((p - 1) / (2 * h_of(p)?))
}

fn require_admissible(p: u64, k: i64) -> Result<AdmissibilityReport> {
    let rep = weight_admissible(p, k)?;
    if !rep.admissible {
        return Err(Error::InadmissibleWeight { p, k, h: rep.h });
    }
    Ok(rep)
}

/// Least non-negative residue of `(24/2h)⁻¹·k′` modulo `(p−1)/(2h)`; every
/// quotient of weight `k` has `v_zero` in this class.
pub fn cusp_v_residue(p: u64, k: i64) -> Result<u64> {
    let rep = require_admissible(p, k)?;
    let m = (p - 1) / (2 * rep.h);
    let step = 24 / (2 * rep.h);
    let inv = mod_inverse(step as i64, m)?;
    let kp = rep.k_prime.expect("admissible") as i128;
    Ok(((kp * inv as i128).rem_euclid(m as i128)) as u64)
}

/// `L = k(p+1)/12`, integral for admissible `k`.
pub fn line_length(p: u64, k: i64) -> i64 {
    let num = k * (p as i64 + 1);
    debug_assert_eq!(num % 12, 0, "k(p+1)/12 integral for admissible k");
    num / 12
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// The residue lands exactly on the far endpoint `v = L`.
    Boundary,
    /// The last residue-class block fits strictly inside `(0, L)`.
    ExtraPoint,
    NoExtraPoint,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Boundary => "boundary",
            CaseTag::ExtraPoint => "extra_point",
            CaseTag::NoExtraPoint => "no_extra_point",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CuspCountReport {
    pub count: u64,
    /// `None` for `k ≤ 0`, where there is nothing to count.
    pub case_tag: Option<CaseTag>,
    pub residue_c: u64,
    pub modulus: u64,
    /// `L − ⌊L/M⌋·M`.
    pub boundary_gap: i64,
    pub line_length: i64,
}

/// Number of cusp-form eta-quotients of weight `k` on `Γ₀(p)` (any character).
pub fn count_cusp_etaquotients(p: u64, k: i64) -> Result<CuspCountReport> {
    let residue = cusp_v_residue(p, k)?;
    let m = residue_modulus(p)? as i64;
    if k <= 0 {
        return Ok(CuspCountReport {
            count: 0,
            case_tag: None,
            residue_c: residue,
            modulus: m as u64,
            boundary_gap: 0,
            line_length: line_length(p, k),
        });
    }
    let l = line_length(p, k);
    let gap = l.rem_euclid(m);
    let c = residue as i64;
    let c_eff = if c > 0 { c } else { m };
    let (tag, count) = if c == gap {
        (CaseTag::Boundary, ceil_div(l, m) - 1)
    } else if c_eff < gap {
        (CaseTag::ExtraPoint, ceil_div(l, m))
    } else {
        (CaseTag::NoExtraPoint, floor_div(l, m))
    };
    Ok(CuspCountReport {
        count: count.max(0) as u64,
        case_tag: Some(tag),
        residue_c: residue,
        modulus: m as u64,
        boundary_gap: gap,
        line_length: l,
    })
}

fn from_v_zero(p: u64, k: i64, v: i64) -> EtaQuotient {
    let r1 = (24 * v - 2 * k) / (p as i64 - 1);
    EtaQuotient::prime_level(p, r1, 2 * k - r1).expect("p validated prime")
}

/// The cusp-form quotients, ordered by increasing `v_zero`.
pub fn list_cusp_etaquotients(p: u64, k: i64) -> Result<Vec<EtaQuotient>> {
    let report = count_cusp_etaquotients(p, k)?;
    if k <= 0 {
        return Ok(Vec::new());
    }
    let m = report.modulus as i64;
    let start = if report.residue_c == 0 {
        m
    } else {
        report.residue_c as i64
    };
    Ok((start..report.line_length)
        .step_by(m as usize)
        .map(|v| from_v_zero(p, k, v))
        .collect())
}

/// The two quotients vanishing at exactly one cusp, present iff `(p−1)/2 | k`
/// and `k > 0`: `η(pz)^{pm}/η(z)^m` and `η(z)^{pm}/η(pz)^m` with `m = 2k/(p−1)`.
pub fn noncusp_etaquotients(p: u64, k: i64) -> Result<Vec<EtaQuotient>> {
    let p = require_prime(p as i64)?;
    let half = (p as i64 - 1) / 2;
    if k <= 0 || k % half != 0 {
        return Ok(Vec::new());
    }
    let m = k / half;
    let pm = p as i64 * m;
    Ok(vec![
        EtaQuotient::prime_level(p, -m, pm)?,
        EtaQuotient::prime_level(p, pm, -m)?,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExistenceReport {
    /// Some non-constant holomorphic eta-quotient of weight `k` exists.
    pub exists: bool,
    /// `h | k` and `(p−1)/(2h) ≤ k(p+1)/12`, read literally.
    pub literal_criterion: bool,
}

impl ExistenceReport {
    pub fn agrees(&self) -> bool {
        self.exists == self.literal_criterion
    }
}

pub fn exists_in_mk(p: u64, k: i64) -> Result<ExistenceReport> {
    let rep = weight_admissible(p, k)?;
    let literal_criterion = rep.admissible && {
        let m = (p - 1) as i128 / (2 * rep.h as i128);
        12 * m <= k as i128 * (p as i128 + 1)
    };
    let cusp = if rep.admissible {
        count_cusp_etaquotients(p, k)?.count
    } else {
        0
    };
    let noncusp = noncusp_etaquotients(p, k)?.len() as u64;
    Ok(ExistenceReport {
        exists: cusp + noncusp > 0,
        literal_criterion,
    })
}

/// Holomorphic quotients found by scanning every integer `v_zero ∈ [0, ⌊k(p+1)/12⌋]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleListing {
    /// Both cusp orders positive, ascending `v_zero`.
    pub interior: Vec<EtaQuotient>,
    /// One cusp order zero, ascending `v_zero`.
    pub endpoints: Vec<EtaQuotient>,
}

/// Exhaustive search that only uses the congruence test and the cusp-order
/// formulas; it shares no counting logic with the closed forms above.
pub fn brute_force_enumerate(p: u64, k: i64) -> Result<OracleListing> {
    let p = require_prime(p as i64)?;
    let mut out = OracleListing::default();
    if k < 0 {
        return Ok(out);
    }
    let top = floor_div(k * (p as i64 + 1), 12);
    for v in 0..=top {
        let num = 24 * v - 2 * k;
        if num % (p as i64 - 1) != 0 {
            continue;
        }
        let r1 = num / (p as i64 - 1);
        let rp = 2 * k - r1;
        if r1 == 0 && rp == 0 {
            continue;
        }
        let f = EtaQuotient::prime_level(p, r1, rp)?;
        if !f.check_congruences()? {
            continue;
        }
        let orders = f.cusp_orders_prime()?;
        if orders.v_infinity.is_negative() || orders.v_zero.is_negative() {
            continue;
        }
        if orders.v_infinity.is_zero() || orders.v_zero.is_zero() {
            out.endpoints.push(f);
        } else {
            out.interior.push(f);
        }
    }
    Ok(out)
}

/// Whether some `(r₁, 2k − r₁)` with `|r₁| ≤ bound` satisfies both congruences,
/// ignoring holomorphy.
pub fn weakly_modular_exists(p: u64, k: i64, bound: i64) -> Result<bool> {
    let p = require_prime(p as i64)?;
    for r1 in -bound..=bound {
        if EtaQuotient::prime_level(p, r1, 2 * k - r1)?.check_congruences()? {
            return Ok(true);
        }
    }
    Ok(false)
}
