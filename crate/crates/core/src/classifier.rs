//! Classification of orbit representatives: when is restriction of
//! invariants onto the subspace surjective?
//!
//! Three independent routes are computed per case: the closed-form
//! criterion on the partition, the conjunction of the arrangement and
//! exponent conditions, and the Jacobian-determinant check on actual
//! polynomials.  Their agreement is an assertion of the survey, not an
//! assumption.

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::invariants::jacobian_surjectivity;
use crate::lattice::{
    orbit_representatives, restricted_arrangement, restricted_count_formula, standard_subspace,
    PartitionIndex,
};
use crate::reftype::multiset_subset;
use crate::stabilizer::{
    bruteforce_stabilizers, cx_index, cx_order_formula, cx_ref_type, z_order_formula,
};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Frozen schema tag for emitted records.
pub const RECORD_SCHEMA: &str = "reflekt/classification/1";

/// Does the restricted arrangement equal the reflection arrangement of
/// C_X on X?  True iff lambda has at most one distinct part, except for
/// the case p = r, k = n, gcd(r,i) = 1, i > 1 (with r > 1; for r = 1
/// there are no phase-mismatch restrictions and equality always holds
/// for a single distinct part).
pub fn arrangement_equal(spec: &GroupSpec, lambda: &[u32]) -> bool {
    let idx = PartitionIndex::new(lambda.to_vec(), 0);
    let parts = idx.distinct_parts();
    if parts.len() > 1 {
        return false;
    }
    let Some(&(i, _)) = parts.first() else {
        return true; // X = {0}
    };
    let k: u32 = lambda.iter().sum();
    !(spec.p == spec.r
        && spec.r > 1
        && k as usize == spec.n
        && spec.r.gcd(&i) == 1
        && i > 1)
}

/// Multiset inclusion of the exponents of the reflection subgroup of C_X
/// in the exponents of the group.
pub fn exp_subset(spec: &GroupSpec, lambda: &[u32]) -> bool {
    multiset_subset(
        &cx_ref_type(spec, lambda).exponents(),
        &spec.exponents(),
    )
}

/// Closed form: surjective iff lambda = (i^m) and one of im < n, p | i,
/// or i | p holds.
pub fn surjective_closed_form(spec: &GroupSpec, lambda: &[u32]) -> bool {
    let idx = PartitionIndex::new(lambda.to_vec(), 0);
    let parts = idx.distinct_parts();
    if parts.len() > 1 {
        return false;
    }
    let Some(&(i, m)) = parts.first() else {
        return true;
    };
    i * m < spec.n as u32 || i % spec.p == 0 || spec.p % i == 0
}

/// Everything the classifier knows about one case, in emission order.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub schema: String,
    pub r: u32,
    pub p: u32,
    pub n: u32,
    pub lambda: Vec<u32>,
    pub u: u32,
    pub arrangement_equal: bool,
    pub exp_subset: bool,
    pub cx_is_reflection: bool,
    pub surjective_closed_form: bool,
    pub surjective_jacobian: bool,
    pub witnesses: Witnesses,
    pub oracle: Option<OracleBlock>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Witnesses {
    pub group_exponents: Vec<u64>,
    pub cx_ref_type: String,
    pub cx_ref_exponents: Vec<u64>,
    pub cx_order: u64,
    pub cx_index: u64,
    pub restricted_count: u64,
    pub jacobian_subset_degrees: Option<Vec<u64>>,
    pub jacobian_reason: Option<String>,
    pub jacobian_det_leading_term: Option<String>,
}

/// Brute-force cross-checks, present when the group order is within the
/// oracle bound.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OracleBlock {
    pub n_order: u64,
    pub z_order: u64,
    pub c_order: u64,
    pub cx_ref_order: u64,
    pub cx_ref_degrees: Vec<u64>,
    pub cx_ref_hyperplanes: u64,
    pub restricted_count: u64,
}

/// Classify one orbit representative.  `oracle_bound` caps the group
/// order for which the brute-force block is filled in; `None` disables it.
pub fn classify(
    spec: &GroupSpec,
    idx: &PartitionIndex,
    oracle_bound: Option<u128>,
) -> Result<ClassificationRecord> {
    idx.validate(spec)?;
    let x = standard_subspace(spec, idx)?;
    let lambda = &idx.lambda;
    let arr = arrangement_equal(spec, lambda);
    let exps = exp_subset(spec, lambda);
    let closed = surjective_closed_form(spec, lambda);
    if closed != (arr && exps) {
        return Err(Error::Internal(format!(
            "closed form {closed} disagrees with arrangement {arr} && exponents {exps} \
             at ({},{},{}) lambda={lambda:?}",
            spec.r, spec.p, spec.n
        )));
    }
    let jac = jacobian_surjectivity(spec, idx)?;
    let cxt = cx_ref_type(spec, lambda);
    let index = cx_index(spec, lambda);
    let witnesses = Witnesses {
        group_exponents: spec.exponents(),
        cx_ref_type: cxt.to_string(),
        cx_ref_exponents: cxt.exponents(),
        cx_order: cx_order_formula(spec, lambda),
        cx_index: index,
        restricted_count: restricted_count_formula(spec, lambda),
        jacobian_subset_degrees: jac.subset_degrees.clone(),
        jacobian_reason: jac.reason.clone(),
        jacobian_det_leading_term: jac.det_leading_term.clone(),
    };
    let oracle = match oracle_bound {
        Some(bound) if spec.order() <= bound => {
            let rep = bruteforce_stabilizers(spec, &x, bound)?;
            Some(OracleBlock {
                n_order: rep.n_order,
                z_order: rep.z_order,
                c_order: rep.c_order,
                cx_ref_order: rep.cx_ref_order,
                cx_ref_degrees: rep.cx_ref_degrees,
                cx_ref_hyperplanes: rep.cx_ref_hyperplanes,
                restricted_count: restricted_arrangement(spec, &x).len() as u64,
            })
        }
        _ => None,
    };
    Ok(ClassificationRecord {
        schema: RECORD_SCHEMA.into(),
        r: spec.r,
        p: spec.p,
        n: spec.n as u32,
        lambda: lambda.clone(),
        u: idx.u,
        arrangement_equal: arr,
        exp_subset: exps,
        cx_is_reflection: index == 1,
        surjective_closed_form: closed,
        surjective_jacobian: jac.surjective,
        witnesses,
        oracle,
    })
}

/// Consistency violations of a finished record; empty means clean.
pub fn validate_record(rec: &ClassificationRecord) -> Vec<String> {
    let mut v = Vec::new();
    let claim = |cond: bool, msg: &str, v: &mut Vec<String>| {
        if !cond {
            v.push(format!(
                "({},{},{}) lambda={:?} u={}: {msg}",
                rec.r, rec.p, rec.n, rec.lambda, rec.u
            ));
        }
    };
    claim(
        rec.surjective_closed_form == (rec.arrangement_equal && rec.exp_subset),
        "closed form must equal arrangement && exponents",
        &mut v,
    );
    claim(
        rec.surjective_closed_form == rec.surjective_jacobian,
        "closed form must equal the Jacobian verdict",
        &mut v,
    );
    claim(
        !(rec.arrangement_equal || rec.exp_subset) || rec.cx_is_reflection,
        "arrangement or exponent condition must force a reflection group",
        &mut v,
    );
    if let Some(o) = &rec.oracle {
        claim(
            o.c_order == rec.witnesses.cx_order,
            "brute-force |C_X| must match the closed form",
            &mut v,
        );
        claim(
            o.c_order / o.cx_ref_order == rec.witnesses.cx_index,
            "brute-force index must match the closed form",
            &mut v,
        );
        claim(
            o.n_order == o.z_order * o.c_order,
            "|N_X| = |Z_X| |C_X|",
            &mut v,
        );
        claim(
            o.restricted_count == rec.witnesses.restricted_count,
            "brute-force restricted arrangement size must match the formula",
            &mut v,
        );
    }
    v
}

/// The (spec, representative) grid for a survey, in deterministic order.
pub fn survey_cases(r_max: u32, n_max: u32) -> Vec<(GroupSpec, PartitionIndex)> {
    let mut out = Vec::new();
    for r in 1..=r_max {
        for p in 1..=r {
            if r % p != 0 {
                continue;
            }
            for n in 1..=n_max {
                let spec = GroupSpec::new(r, p, n).unwrap();
                for idx in orbit_representatives(&spec) {
                    out.push((spec, idx));
                }
            }
        }
    }
    out
}

/// Survey configuration.
#[derive(Clone, Debug)]
pub struct SurveyConfig {
    pub r_max: u32,
    pub n_max: u32,
    /// Cap on group order for brute-force blocks; None disables oracles.
    pub order_bound: Option<u128>,
}

/// Counts of the four (arrangement, exponents) cells.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct SharpnessCells {
    pub arr_and_exp: u64,
    pub arr_not_exp: u64,
    pub exp_not_arr: u64,
    pub neither: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurveySummary {
    pub schema: String,
    pub r_max: u32,
    pub n_max: u32,
    pub cases: u64,
    pub surjective: u64,
    pub cells: SharpnessCells,
    pub violations: Vec<String>,
}

/// Run a survey serially.  Callers wanting parallelism can map
/// `survey_cases` themselves and fold with `summarize`.
pub fn run_survey(cfg: &SurveyConfig) -> Result<(Vec<ClassificationRecord>, SurveySummary)> {
    let mut records = Vec::new();
    for (spec, idx) in survey_cases(cfg.r_max, cfg.n_max) {
        records.push(classify(&spec, &idx, cfg.order_bound)?);
    }
    let summary = summarize(cfg, &records);
    Ok((records, summary))
}

pub fn summarize(cfg: &SurveyConfig, records: &[ClassificationRecord]) -> SurveySummary {
    let mut cells = SharpnessCells::default();
    let mut violations = Vec::new();
    let mut surjective = 0;
    for rec in records {
        match (rec.arrangement_equal, rec.exp_subset) {
            (true, true) => cells.arr_and_exp += 1,
            (true, false) => cells.arr_not_exp += 1,
            (false, true) => cells.exp_not_arr += 1,
            (false, false) => cells.neither += 1,
        }
        if rec.surjective_closed_form {
            surjective += 1;
        }
        violations.extend(validate_record(rec));
    }
    SurveySummary {
        schema: "reflekt/survey-summary/1".into(),
        r_max: cfg.r_max,
        n_max: cfg.n_max,
        cases: records.len() as u64,
        surjective,
        cells,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: u32, p: u32, n: u32) -> GroupSpec {
        GroupSpec::new(r, p, n).unwrap()
    }

    #[test]
    fn arrangement_examples() {
        assert!(!arrangement_equal(&spec(2, 2, 6), &[3, 3]));
        assert!(arrangement_equal(&spec(4, 2, 4), &[2, 2]));
        assert!(!arrangement_equal(&spec(3, 1, 4), &[2, 1]));
        // r = 1: a single distinct part always gives equality
        assert!(arrangement_equal(&spec(1, 1, 4), &[2, 2]));
    }

    #[test]
    fn exp_subset_examples() {
        // (4,2,6), lambda = (2,2,2): {3,7,11} inside {3,7,11,11,15,19}
        assert!(exp_subset(&spec(4, 2, 6), &[2, 2, 2]));
        assert!(!exp_subset(&spec(2, 2, 4), &[3, 1]));
        assert!(exp_subset(&spec(4, 2, 3), &[1, 1, 1]));
    }

    #[test]
    fn closed_form_examples() {
        assert!(surjective_closed_form(&spec(4, 2, 6), &[2, 2, 2])); // i | p
        assert!(surjective_closed_form(&spec(2, 1, 4), &[2, 2])); // p | i
        assert!(!surjective_closed_form(&spec(3, 3, 2), &[2]));
    }

    #[test]
    fn classify_examples() {
        let rec = classify(
            &spec(2, 1, 4),
            &PartitionIndex::new(vec![2, 2], 0),
            Some(1 << 20),
        )
        .unwrap();
        assert!(rec.arrangement_equal);
        assert!(rec.exp_subset);
        assert!(rec.cx_is_reflection);
        assert!(rec.surjective_closed_form);
        assert!(rec.surjective_jacobian);
        assert!(validate_record(&rec).is_empty());

        let rec = classify(
            &spec(2, 2, 6),
            &PartitionIndex::new(vec![3, 3], 0),
            Some(100_000),
        )
        .unwrap();
        assert!(!rec.arrangement_equal);
        assert!(!rec.surjective_closed_form);
        assert!(validate_record(&rec).is_empty());
        // delta_{(3,3),2} = 1, so u = 0 is the only index
        assert!(classify(&spec(2, 2, 6), &PartitionIndex::new(vec![3, 3], 1), None).is_err());

        // X = V
        let rec = classify(&spec(3, 3, 3), &PartitionIndex::new(vec![1, 1, 1], 0), None).unwrap();
        assert!(rec.surjective_closed_form && rec.surjective_jacobian);
    }

    #[test]
    fn records_round_trip_as_json() {
        let rec = classify(&spec(4, 2, 2), &PartitionIndex::new(vec![2], 1), Some(1 << 16))
            .unwrap();
        let line = serde_json::to_string(&rec).unwrap();
        let back: ClassificationRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(rec, back);
    }

    #[test]
    fn small_survey_is_clean() {
        let cfg = SurveyConfig {
            r_max: 3,
            n_max: 3,
            order_bound: Some(100_000),
        };
        let (records, summary) = run_survey(&cfg).unwrap();
        assert_eq!(summary.cases as usize, records.len());
        assert!(summary.violations.is_empty(), "{:?}", summary.violations);
        // the r = 1 slice is the symmetric-group family
        let cfg1 = SurveyConfig {
            r_max: 1,
            n_max: 3,
            order_bound: None,
        };
        let (records, _) = run_survey(&cfg1).unwrap();
        assert!(records.iter().all(|rec| rec.r == 1));
        assert!(records.iter().all(|rec| rec.surjective_closed_form
            == (rec.arrangement_equal && rec.exp_subset)));
    }
}
