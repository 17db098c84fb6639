//! Per-cell reports and the parallel grid sweep.

use rayon::prelude::*;

use etaq::dimensions::{dim_cusp_quadratic, dim_cusp_trivial, dimension_report};
use etaq::enumeration::{
    brute_force_enumerate, count_cusp_etaquotients, exists_in_mk, list_cusp_etaquotients,
    noncusp_etaquotients, weight_admissible,
};
use etaq::exactmath::primes_in;
use etaq::independence::independence_report;
use etaq::Result;

use crate::records::{CellReport, Discrepancy, EtaQuotientRecord};

fn note(tag: &str, note: String) -> Discrepancy {
    Discrepancy {
        tag: tag.to_string(),
        note,
    }
}

pub fn cell_report(p: u64, k: i64) -> Result<CellReport> {
    let adm = weight_admissible(p, k)?;
    let mut discrepancies = Vec::new();

    let (cusp, count) = if adm.admissible {
        (
            list_cusp_etaquotients(p, k)?,
            count_cusp_etaquotients(p, k)?.count,
        )
    } else {
        (Vec::new(), 0)
    };
    let noncusp = noncusp_etaquotients(p, k)?;
    let oracle = brute_force_enumerate(p, k)?;
    let oracle_agrees = count as usize == oracle.interior.len()
        && cusp == oracle.interior
        && noncusp == oracle.endpoints;
    if !oracle_agrees {
        discrepancies.push(note(
            "oracle_mismatch",
            format!(
                "closed form lists {} cusp and {} non-cusp, search finds {} and {}",
                cusp.len(),
                noncusp.len(),
                oracle.interior.len(),
                oracle.endpoints.len()
            ),
        ));
    }

    let existence = exists_in_mk(p, k)?;
    if !existence.agrees() {
        discrepancies.push(note(
            "existence_criterion",
            format!(
                "literal criterion gives {}, enumeration gives {}",
                existence.literal_criterion, existence.exists
            ),
        ));
    }

    let mut independence_verified = true;
    if adm.admissible && !(cusp.is_empty() && noncusp.is_empty()) {
        let r = independence_report(p, k)?;
        independence_verified = r.independent() && r.leading_exponents_distinct;
        if !r.certified_at_sturm() {
            discrepancies.push(note(
                "sturm_rank_defect",
                format!(
                    "rank {} of {} at bound {}, {} at bound {}",
                    r.rank_at_sturm, r.quotient_count, r.sturm_bound, r.rank_at_full, r.full_bound
                ),
            ));
        }
        if !independence_verified {
            discrepancies.push(note(
                "dependent",
                format!("rank {} of {}", r.rank_at_full, r.quotient_count),
            ));
        }
    }

    let p_star = if p % 4 == 1 { p as i64 } else { -(p as i64) };
    let (mut trivial, mut quadratic) = (0u64, 0u64);
    for f in &cusp {
        match f.character()?.discriminant_core {
            1 => trivial += 1,
            d if d == p_star => quadratic += 1,
            d => discrepancies.push(note(
                "unexpected_character",
                format!("{f} has discriminant {d}"),
            )),
        }
    }
    let trivial_dim = dim_cusp_trivial(p, k)?;
    if trivial > trivial_dim {
        discrepancies.push(note(
            "dimension_bound",
            format!("{trivial} trivial-character quotients exceed dimension {trivial_dim}"),
        ));
    }
    if let Ok(d) = dim_cusp_quadratic(p, k) {
        if quadratic > d {
            discrepancies.push(note(
                "dimension_bound",
                format!("{quadratic} quadratic-character quotients exceed dimension {d}"),
            ));
        }
    }

    let quotients = cusp
        .iter()
        .chain(&noncusp)
        .map(EtaQuotientRecord::from_quotient)
        .collect::<Result<_>>()?;
    Ok(CellReport {
        p,
        k,
        h: adm.h,
        admissible: adm.admissible,
        cusp_count: count,
        noncusp_count: noncusp.len() as u64,
        quotients,
        dims: dimension_report(p, k)?.into(),
        independence_verified,
        oracle_agrees,
        discrepancies,
    })
}

/// Reports for primes `5 ≤ p ≤ max_prime` and weights `1 ≤ k ≤ max_weight`, in
/// `(p, k)` order regardless of `jobs`.
pub fn sweep(max_prime: u64, max_weight: i64, jobs: usize) -> Result<Vec<CellReport>> {
    let cells: Vec<(u64, i64)> = primes_in(5, max_prime)
        .into_iter()
        .flat_map(|p| (1..=max_weight).map(move |k| (p, k)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| cells.par_iter().map(|&(p, k)| cell_report(p, k)).collect())
}
