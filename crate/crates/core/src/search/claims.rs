//! Structural claims checked over every triple of a desk-scale range.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_triples_u64, SearchRange};
use crate::arith::isqrt;
use crate::error::Result;
use crate::pell::{
    enumerate_classes_a, enumerate_classes_b, find_intersections, gen_terms, growth_sandwich_holds,
    IntersectionSolution, PellClass,
};
use crate::reduction::{bd_campaign, z_limit_for_index};
use crate::tuples::{
    classify_quadruple, d_plus, make_quadruple, make_triple, satisfies_c_gap, D4Triple, RegularityTag,
};

/// Largest index checked by the growth sandwich.
pub const GROWTH_MAX_INDEX: u32 = 7;
/// `k` in `d > k·b^{n−1.5}·c^{n−0.5}` for `z >= w_n`, `n = 4..=7`.
const W_LOWER_COEFFICIENTS: [f64; 4] = [0.249979, 0.249974, 0.249969, 0.249965];

/// Triples `c <= c_max` violating `c = a + b + 2r` or
/// `c > max{ab + a + b, 4b}`.
pub fn c_gap_violations(c_max: u64, chunk: u64) -> (u64, Vec<(u64, u64, u64)>) {
    let triples = enumerate_triples_u64(c_max, chunk);
    let bad = triples
        .par_iter()
        .filter(|&&(a, b, c)| {
            let t = make_triple(&a.into(), &b.into(), &c.into()).expect("enumerated triple is valid");
            !satisfies_c_gap(&t)
        })
        .copied()
        .collect();
    (triples.len() as u64, bad)
}

/// A common term whose indices break `n − 1 <= m <= 2n + 1`.
#[derive(Debug, Clone, Serialize)]
pub struct IndexViolation {
    pub triple: (u64, u64, u64),
    pub m: u64,
    pub n: u64,
    #[serde(with = "crate::json::int")]
    pub d: BigInt,
}

/// A term outside `(c/(2x))(u − 1)^{k−1} < term_k < c·x·u^{k−1}`.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthViolation {
    pub triple: (u64, u64, u64),
    pub class: PellClass,
    pub index: u32,
    pub regular_triple: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ClaimsReport {
    pub range: Option<SearchRange>,
    pub triples_checked: u64,
    pub c_gap_violations: Vec<(u64, u64, u64)>,
    pub intersections_checked: u64,
    /// Violations among extensions `d > c`.
    pub index_violations: Vec<IndexViolation>,
    /// Violations among the remaining common terms (`d < c`, `d ∈ {0, a, b}`).
    pub index_violations_small: Vec<IndexViolation>,
    pub quadruples_found: u64,
    pub irregular_quadruples: Vec<(u64, u64, u64, String)>,
    /// Solutions above `d₊`, where the `d` lower bounds apply.
    pub above_d_plus: u64,
    pub d_lower_bound_violations: Vec<(u64, u64, u64, String)>,
    /// Common terms with `(m, n) = (11, 7)` above `d₊`.
    pub v11_w7_solutions: u64,
    pub growth_terms_checked: u64,
    pub growth_violations: Vec<GrowthViolation>,
}

impl ClaimsReport {
    pub fn growth_violations_on_regular_triples_only(&self) -> bool {
        self.growth_violations.iter().all(|v| v.regular_triple)
    }

    /// Every checked claim holds with zero violations.
    pub fn all_hold(&self) -> bool {
        self.c_gap_violations.is_empty()
            && self.index_violations.is_empty()
            && self.irregular_quadruples.is_empty()
            && self.d_lower_bound_violations.is_empty()
            && self.v11_w7_solutions == 0
            && self.growth_violations.is_empty()
    }

    fn merge(&mut self, other: ClaimsReport) {
        self.triples_checked += other.triples_checked;
        self.c_gap_violations.extend(other.c_gap_violations);
        self.intersections_checked += other.intersections_checked;
        self.index_violations.extend(other.index_violations);
        self.index_violations_small.extend(other.index_violations_small);
        self.quadruples_found += other.quadruples_found;
        self.irregular_quadruples.extend(other.irregular_quadruples);
        self.above_d_plus += other.above_d_plus;
        self.d_lower_bound_violations.extend(other.d_lower_bound_violations);
        self.v11_w7_solutions += other.v11_w7_solutions;
        self.growth_terms_checked += other.growth_terms_checked;
        self.growth_violations.extend(other.growth_violations);
    }
}

fn index_violation(key: (u64, u64, u64), s: &IntersectionSolution) -> Option<IndexViolation> {
    (!s.index_relation_holds()).then(|| IndexViolation {
        triple: key,
        m: s.m,
        n: s.n,
        d: s.d.clone(),
    })
}

/// `d > k·b^{n−1.5}·c^{n−0.5}` for every `n` in `4..=7` with `z >= w_n` of
/// the solution's own side-B class.
fn d_lower_bounds_hold(t: &D4Triple, s: &IntersectionSolution) -> bool {
    let (b, c) = (t.b.to_f64().unwrap_or(f64::MAX), t.c.to_f64().unwrap_or(f64::MAX));
    let d = s.d.to_f64().unwrap_or(f64::MAX);
    let Ok(w) = gen_terms(t, &s.class_b, 8) else {
        return false;
    };
    (4..=7).all(|n| {
        if s.z < w[n] {
            return true;
        }
        let k = W_LOWER_COEFFICIENTS[n - 4];
        d > k * b.powf(n as f64 - 1.5) * c.powf(n as f64 - 0.5)
    })
}

fn check_triple(key: (u64, u64, u64), d_max: u64) -> Result<ClaimsReport> {
    let (a, b, c) = key;
    let t = make_triple(&a.into(), &b.into(), &c.into())?;
    let mut report = ClaimsReport {
        triples_checked: 1,
        ..ClaimsReport::default()
    };
    if !satisfies_c_gap(&t) {
        report.c_gap_violations.push(key);
    }
    let z_max = isqrt(&(&t.c * BigInt::from(d_max) + 4))?;
    let found = find_intersections(&t, &z_max)?;
    let dp = d_plus(&t);
    for s in &found.main {
        report.intersections_checked += 1;
        report.index_violations.extend(index_violation(key, s));
        let quad = make_quadruple([&t.a, &t.b, &t.c, &s.d])?;
        report.quadruples_found += 1;
        let tag = classify_quadruple(&quad);
        if tag == RegularityTag::Irregular {
            report.irregular_quadruples.push((a, b, c, s.d.to_string()));
        }
        if s.d > dp {
            report.above_d_plus += 1;
            if !d_lower_bounds_hold(&t, s) {
                report.d_lower_bound_violations.push((a, b, c, s.d.to_string()));
            }
            if (s.m, s.n) == (11, 7) {
                report.v11_w7_solutions += 1;
            }
        }
    }
    for s in &found.small {
        report.intersections_checked += 1;
        report.index_violations_small.extend(index_violation(key, s));
    }
    let regular = t.is_regular();
    for class in enumerate_classes_a(&t).into_iter().chain(enumerate_classes_b(&t)) {
        if !class.in_range {
            continue;
        }
        let terms = gen_terms(&t, &class, GROWTH_MAX_INDEX as usize + 1)?;
        for index in 1..=GROWTH_MAX_INDEX {
            report.growth_terms_checked += 1;
            if !growth_sandwich_holds(&t, &class, index, &terms[index as usize]) {
                report.growth_violations.push(GrowthViolation {
                    triple: key,
                    class: class.clone(),
                    index,
                    regular_triple: regular,
                });
            }
        }
    }
    Ok(report)
}

/// Checks, for every triple with `c <= range.c_max` and extensions up to
/// `range.d_max`: the c-gap lemma, the index relation, regularity of every
/// quadruple, the `d` lower bounds above `d₊`, the absence of `(m, n) =
/// (11, 7)` solutions, and the growth sandwich for range-flagged classes.
pub fn verify_theorem_claims(range: &SearchRange) -> Result<ClaimsReport> {
    range.validate()?;
    let triples = enumerate_triples_u64(range.c_max, range.chunk);
    let parts: Vec<ClaimsReport> = triples
        .par_iter()
        .map(|&key| check_triple(key, range.d_max))
        .collect::<Result<_>>()?;
    let mut report = ClaimsReport {
        range: Some(*range),
        ..ClaimsReport::default()
    };
    for part in parts {
        report.merge(part);
    }
    Ok(report)
}

/// Extensions of a triple found up to `z_max`, split by regularity.
#[derive(Debug, Clone, Serialize)]
pub struct NCount {
    pub triple: D4Triple,
    #[serde(with = "crate::json::int")]
    pub z_max: BigInt,
    /// Extensions `d > c` found, ascending, with their classification.
    pub extensions: Vec<(String, RegularityTag)>,
    pub n_regular: u64,
    pub n_irregular_found: u64,
    /// A completed reduction campaign bounds every index below the
    /// searched range, so the list is complete.
    pub certified: bool,
    /// The campaign's final index bound, when one was run.
    #[serde(serialize_with = "serialize_opt_int")]
    pub index_bound: Option<BigInt>,
}

fn serialize_opt_int<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(n) => s.serialize_str(&n.to_string()),
        None => s.serialize_none(),
    }
}

/// Counts the extensions `d > c` with `√(cd + 4) <= z_max`; with
/// `certify`, also runs the reduction campaign and reports whether its
/// index bound lies inside the searched range.
pub fn count_n(t: &D4Triple, z_max: &BigInt, certify: bool, prec: usize) -> Result<NCount> {
    let found = find_intersections(t, z_max)?;
    let mut extensions = Vec::new();
    for s in &found.main {
        let quad = make_quadruple([&t.a, &t.b, &t.c, &s.d])?;
        extensions.push((s.d.to_string(), classify_quadruple(&quad)));
    }
    let n_regular = extensions.iter().filter(|(_, tag)| tag.is_regular()).count() as u64;
    let (certified, index_bound) = if certify {
        let report = bd_campaign(t, None, None, prec)?;
        let covered = &z_limit_for_index(t, &report.final_bound)? <= z_max;
        (report.all_reduced() && covered, Some(report.final_bound))
    } else {
        (false, None)
    };
    Ok(NCount {
        triple: t.clone(),
        z_max: z_max.clone(),
        n_irregular_found: extensions.len() as u64 - n_regular,
        n_regular,
        extensions,
        certified,
        index_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DEFAULT_PRECISION;
    use crate::tuples::triple;

    #[test]
    fn claims_hold_on_small_range_except_regular_growth() {
        let report = verify_theorem_claims(&SearchRange::new(300, 300, 1_000_000)).unwrap();
        assert!(report.triples_checked > 0);
        assert!(report.c_gap_violations.is_empty());
        assert!(report.index_violations.is_empty());
        assert!(report.irregular_quadruples.is_empty());
        assert_eq!(report.above_d_plus, 0);
        assert!(report.growth_violations_on_regular_triples_only());
    }

    #[test]
    fn c_gap_has_no_violations() {
        let (count, bad) = c_gap_violations(20_000, 1000);
        assert!(count > 1000);
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn count_for_small_triple() {
        let t = triple(1, 5, 12).unwrap();
        let n = count_n(&t, &BigInt::from(10u64.pow(12)), true, DEFAULT_PRECISION).unwrap();
        assert_eq!(n.n_irregular_found, 0);
        assert!(n.n_regular <= 3);
        assert_eq!(n.extensions[0].0, "96");
        assert!(n.certified);
    }

    #[test]
    fn regular_triples_have_at_most_three_extensions() {
        for (a, b) in [(1u64, 5u64), (1, 12), (2, 6), (3, 7), (1, 21)] {
            let pair = crate::tuples::D4Pair::new(a as i64, b as i64).unwrap();
            let t = crate::tuples::regular_triple(&pair);
            let n = count_n(&t, &BigInt::from(10u64.pow(15)), false, DEFAULT_PRECISION).unwrap();
            assert!(n.n_regular + n.n_irregular_found <= 3, "{a},{b}: {:?}", n.extensions);
        }
    }
}
