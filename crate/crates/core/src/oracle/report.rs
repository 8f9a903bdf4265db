use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use super::max_code_exact_capped;
use crate::aec;
use crate::code::{CodeMode, CodeParams};
use crate::error::Result;
use crate::{uec, ued, vt};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

/// One row of the bounds table. Counts are decimal strings; the rational
/// lower bound is written `num/den`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub params: CodeParams,
    pub bounds: BTreeMap<String, String>,
    pub sizes: BTreeMap<String, String>,
    pub checks: Vec<Check>,
}

impl BoundReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Closed-form bounds, the best construction of each family, and the exact
/// maxima when `q^n <= oracle_cap`, with the inequalities between them.
pub fn bound_report(params: &CodeParams, oracle_cap: usize) -> Result<BoundReport> {
    let a_a = aec::capacity(params);
    let la = vt::la_u_bounds(params)?;

    let constant_sum = uec::count_constant_sum(params, uec::jstar(params))?;
    let two_level = uec::build_two_level(params)
        .ok()
        .map(|c| BigUint::from(c.len()));
    let coeffs = vt::power_coeffs(params)?;
    let vt_best = vt::best_constant_scan(params, &coeffs)?.size;
    let (_, ued_best) = ued::best_ca(params)?;

    let exact = |mode| -> Result<Option<BigUint>> {
        if params.space_size().is_none_or(|s| s > oracle_cap as u128) {
            return Ok(None);
        }
        Ok(Some(BigUint::from(
            max_code_exact_capped(params, mode, oracle_cap)?.0,
        )))
    };
    let exact_aec = exact(CodeMode::Aec)?;
    let exact_uec = exact(CodeMode::Uec)?;
    let exact_ued = exact(CodeMode::Ued)?;

    let mut bounds = BTreeMap::new();
    bounds.insert("aec_optimal".to_string(), a_a.to_string());
    bounds.insert("la_u_lower".to_string(), rational_string(&la.lower));
    bounds.insert("la_u_upper".to_string(), la.upper.to_string());

    let mut sizes = BTreeMap::new();
    sizes.insert("uec_constant_sum".to_string(), constant_sum.to_string());
    if let Some(t) = &two_level {
        sizes.insert("uec_two_level".to_string(), t.to_string());
    }
    sizes.insert("vt_best".to_string(), vt_best.to_string());
    sizes.insert("ued_best_union".to_string(), ued_best.to_string());
    for (name, v) in [
        ("exact_aec", &exact_aec),
        ("exact_uec", &exact_uec),
        ("exact_ued", &exact_ued),
    ] {
        if let Some(v) = v {
            sizes.insert(name.to_string(), v.to_string());
        }
    }

    let mut uec_constructions = vec![constant_sum.clone(), vt_best.clone()];
    uec_constructions.extend(two_level.clone());
    let best_uec = uec_constructions.iter().max().cloned().unwrap_or_default();

    let mut checks = Vec::new();
    let mut check = |name: &str, pass: bool| {
        checks.push(Check {
            name: name.to_string(),
            pass,
        })
    };
    check("uec_constructions_le_aec_optimal", best_uec <= a_a);
    check("vt_best_le_la_u_upper", vt_best <= la.upper);
    check(
        "la_u_lower_le_vt_best",
        la.lower <= BigRational::from_integer(BigInt::from(vt_best.clone())),
    );
    check("ued_union_ge_one", ued_best >= BigUint::from(1u8));
    if let Some(e) = &exact_aec {
        check("exact_aec_eq_aec_optimal", *e == a_a);
    }
    if let Some(e) = &exact_uec {
        check("uec_constructions_le_exact_uec", best_uec <= *e);
        check("exact_uec_le_aec_optimal", *e <= a_a);
    }
    if let (Some(u), Some(a)) = (&exact_uec, &exact_aec) {
        check("exact_uec_le_exact_aec", u <= a);
    }
    if let Some(e) = &exact_ued {
        check("ued_union_le_exact_ued", ued_best <= *e);
        if let Some(u) = &exact_uec {
            check("exact_uec_le_exact_ued", u <= e);
        }
    }

    Ok(BoundReport {
        params: *params,
        bounds,
        sizes,
        checks,
    })
}
