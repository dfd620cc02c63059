//! Catalog of threshold solves: each entry pits a lower bound on the index
//! `n` against an upper bound, substitutes `c` at the lower end of its
//! range, and finds by bisection where the inequality stops being
//! satisfiable.
//!
//! The reported `computed` value is the first integer at which the
//! inequality fails, i.e. the published statement reads "b < computed".
//! An entry passes when it is within ±1 of the published value (or of one
//! of the listed readings of it).

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Real, MAX_PRECISION};
use crate::error::{Error, Result};

/// How the computed value is compared with the published one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// Within ±1 (bisection endpoint convention).
    Exact,
    /// The inequality must already fail at or below the published value.
    AtMost,
}

/// `coef · b^(bn/bd) · c^(cn/cd)`.
#[derive(Debug, Clone, Copy)]
struct Monomial {
    coef: &'static str,
    b_exp: (i64, i64),
    c_exp: (i64, i64),
}

impl Monomial {
    fn eval(&self, b: &Real, c: &Real) -> Real {
        let p = b.precision();
        let mut v = Real::lit(self.coef, p);
        if self.b_exp.0 != 0 {
            v = v * b.pow_ratio(self.b_exp.0, self.b_exp.1);
        }
        if self.c_exp.0 != 0 {
            v = v * c.pow_ratio(self.c_exp.0, self.c_exp.1);
        }
        v
    }
}

const fn mono(coef: &'static str, b_exp: (i64, i64), c_exp: (i64, i64)) -> Monomial {
    Monomial { coef, b_exp, c_exp }
}

/// Upper bounds on `n` used by the catalog.
#[derive(Debug, Clone, Copy)]
enum Upper {
    /// `factor·log(first)·log(second) / (log(bc)·log(third))`: the Rickert
    /// bounds after the case's estimates of `a`, `a'` and `b − a`.
    Reduced {
        factor: i64,
        first: Monomial,
        second: Monomial,
        third: Monomial,
    },
    /// The second Rickert bound with an explicit value of `a`.
    FullRickertII { a: i64 },
}

impl Upper {
    fn eval(&self, b: &Real, c: &Real) -> Real {
        let p = b.precision();
        match self {
            Upper::Reduced {
                factor,
                first,
                second,
                third,
            } => {
                Real::from_i64(*factor, p) * first.eval(b, c).ln() * second.eval(b, c).ln()
                    / ((b * c).ln() * third.eval(b, c).ln())
            }
            Upper::FullRickertII { a } => {
                let a = Real::from_i64(*a, p);
                let four = Real::from_i64(4, p);
                let gap = b - &a;
                let ap = (&four * &a).max(&(&four * &gap));
                let first = (Real::lit("8.40335e13", p) * (&a * &ap).sqrt() * b * b * c).ln();
                let second = (Real::lit("0.20533", p) * (&a * b).sqrt() * c / &gap).ln();
                let fourth = (Real::lit("0.016858", p) * &a * c / (&ap * b * &gap * &gap)).ln();
                Real::from_i64(8, p) * first * second / ((b * c).ln() * fourth)
            }
        }
    }
}

// The two Rickert-I estimate families of the b >= 2a and b < 2a cases.
const RI_2A: Upper = Upper::Reduced {
    factor: 2,
    first: mono("35.0627", (6, 1), (2, 1)),
    second: mono("0.052", (0, 1), (2, 1)),
    third: mono("0.0022397", (-3, 1), (1, 1)),
};
const RI_LT2A: Upper = Upper::Reduced {
    factor: 2,
    first: mono("128.08", (6, 1), (2, 1)),
    second: mono("0.0000081", (2, 1), (2, 1)),
    third: mono("0.00325", (-3, 1), (1, 1)),
};

const fn rickert2_reduced(c_power: i64, third_coef: &'static str) -> Upper {
    Upper::Reduced {
        factor: 8,
        first: mono("8.40335e13", (3, 1), (1, 1)),
        second: mono("0.002579", (0, 1), (c_power, 1)),
        third: mono(third_coef, (-4, 1), (1, 1)),
    }
}

const THM15_III_ALTERNATES: &[(&str, Upper)] = &[("displayed: log(0.002579c^2)", rickert2_reduced(2, "0.0042145"))];

// 0.0042145·42 = 0.177009.
const THM15_III_AUX_ALTERNATES: &[(&str, Upper)] = &[
    ("a0 = 42, log(0.002579c^2)", rickert2_reduced(2, "0.177009")),
    ("a0 = 42, log(0.002579c)", rickert2_reduced(1, "0.177009")),
];

const N_LOWER_ODD_LARGE_C: Monomial = mono("0.5348", (-3, 4), (1, 4));

/// What a case evaluates.
// Lives only in a static table, so the variant size difference is free.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, Copy)]
enum Kind {
    /// `lower(b, c) < upper(b, c)` at `c = c_coef · b^c_exp`, variable `b`.
    IndexBound {
        lower: Monomial,
        upper: Upper,
        c_coef: &'static str,
        c_exp: (i64, i64),
    },
    /// `m2 / log(38.92(m2+1)) < k·log c·log(c/2)` with
    /// `m2 = 1.999·c⁸·log √c`, variable `c`.
    MatveevCount,
    /// `c⁵ / log(38.92(c⁵+1)) < 2.7717·10¹²·log² c`, variable `c`.
    MatveevOkazaki,
}

/// One catalog entry.
#[derive(Debug, Clone)]
pub struct CaseSpec {
    pub id: &'static str,
    pub description: &'static str,
    pub variable: &'static str,
    pub paper_value: u64,
    /// Alternative readings of the published value.
    pub readings: &'static [u64],
    pub relation: Relation,
    /// Whether the value is one of the headline thresholds of the
    /// acceptance suite.
    pub headline: bool,
    /// A value of the variable at which the inequality is known to hold.
    search_from: u64,
    kind: Kind,
    /// Other readings of the formula, evaluated for the report.
    alternates: &'static [(&'static str, Upper)],
}

/// Identifier of a catalog entry.
pub type CaseId = &'static str;

#[allow(clippy::too_many_arguments)]
const fn index_case(
    id: &'static str,
    description: &'static str,
    paper_value: u64,
    lower: Monomial,
    upper: Upper,
    c_coef: &'static str,
    c_exp: (i64, i64),
    search_from: u64,
) -> CaseSpec {
    CaseSpec {
        id,
        description,
        variable: "b",
        paper_value,
        readings: &[],
        relation: Relation::Exact,
        headline: true,
        search_from,
        kind: Kind::IndexBound {
            lower,
            upper,
            c_coef,
            c_exp,
        },
        alternates: &[],
    }
}

/// All catalog entries in report order.
pub fn cases() -> Vec<CaseSpec> {
    let ee_lower = mono("0.45273", (-9, 28), (5, 28));
    let f1 = mono("0.50799", (9, 16), (0, 1));
    let f2 = mono("0.17888", (23, 56), (0, 1));
    let f1_lt = mono("0.35921", (9, 16), (0, 1));
    let odd_lower = mono("0.30921", (-3, 4), (1, 4));
    vec![
        index_case(
            "prop_d+_ee_b221a",
            "even indices, b >= 2.21a, c > 2.3b^5, first Rickert bound",
            19289,
            ee_lower,
            Upper::Reduced {
                factor: 2,
                first: mono("57.955", (6, 1), (2, 1)),
                second: mono("0.0393", (0, 1), (2, 1)),
                third: mono("0.0008125", (-4, 1), (1, 1)),
            },
            "2.3",
            (5, 1),
            1000,
        ),
        index_case(
            "prop_d+_2a_f1",
            "even indices, 2a < b < 2.21a, first lower bound",
            722,
            f1,
            RI_2A,
            "1.1",
            (15, 2),
            10,
        ),
        index_case(
            "prop_d+_2a_f2",
            "even indices, 2a < b < 2.21a, second lower bound",
            81874,
            f2,
            RI_2A,
            "1.1",
            (15, 2),
            10,
        ),
        index_case(
            "prop_d+_lt2a_f1",
            "even indices, b < 2a, first lower bound",
            1396,
            f1_lt,
            RI_LT2A,
            "1.1",
            (15, 2),
            10,
        ),
        index_case(
            "prop_d+_lt2a_f2",
            "even indices, b < 2a, second lower bound",
            98413,
            f2,
            RI_LT2A,
            "1.1",
            (15, 2),
            10,
        ),
        index_case(
            "prop_d+_oo_bge2a",
            "odd indices, b >= 2a, c > 2.3b^5",
            97144,
            odd_lower,
            Upper::Reduced {
                factor: 2,
                first: mono("64.04", (6, 1), (2, 1)),
                second: mono("0.052", (0, 1), (2, 1)),
                third: mono("0.0008125", (-4, 1), (1, 1)),
            },
            "2.3",
            (5, 1),
            1000,
        ),
        index_case(
            "prop_d+_oo_blt2a",
            "odd indices, b < 2a, c > 1.1b^7.5",
            48,
            odd_lower,
            RI_LT2A,
            "1.1",
            (15, 2),
            10,
        ),
        index_case(
            "thm15_i",
            "b < 2a, c >= 890b^4",
            99887,
            N_LOWER_ODD_LARGE_C,
            RI_LT2A,
            "890",
            (4, 1),
            10,
        ),
        index_case(
            "thm15_ii",
            "2a <= b <= 12a, c >= 1613b^4",
            99949,
            N_LOWER_ODD_LARGE_C,
            Upper::Reduced {
                factor: 2,
                first: mono("58.71", (6, 1), (2, 1)),
                second: mono("0.052", (0, 1), (2, 1)),
                third: mono("0.000087903", (-3, 1), (1, 1)),
            },
            "1613",
            (4, 1),
            100,
        ),
        CaseSpec {
            alternates: THM15_III_ALTERNATES,
            ..index_case(
                "thm15_iii",
                "b > 12a, c >= 52761b^4, second Rickert bound (second log linear in c as in the lemma)",
                99998,
                N_LOWER_ODD_LARGE_C,
                rickert2_reduced(1, "0.0042145"),
                "52761",
                (4, 1),
                10,
            )
        },
        CaseSpec {
            alternates: THM15_III_AUX_ALTERNATES,
            ..index_case(
                "thm15_iii_aux",
                "b > 12a, a >= 2, 39247b^4 < c < 52761b^4; third log scaled by a0 = 2",
                73454,
                N_LOWER_ODD_LARGE_C,
                rickert2_reduced(1, "0.008429"),
                "39247",
                (4, 1),
                10,
            )
        },
        CaseSpec {
            readings: &[99994],
            headline: false,
            ..index_case(
                "thm15_iii_a1",
                "b > 12a, a = 1, 39247b^4 < c < 52761b^4; full second Rickert bound",
                999994,
                N_LOWER_ODD_LARGE_C,
                Upper::FullRickertII { a: 1 },
                "39247",
                (4, 1),
                100,
            )
        },
        CaseSpec {
            id: "nprime_minus_t",
            description: "three solutions of class (-t, -s): m2 > 1.999c^8 log sqrt(c) against the index bound",
            variable: "c",
            paper_value: 56,
            readings: &[],
            relation: Relation::Exact,
            headline: false,
            search_from: 3,
            kind: Kind::MatveevCount,
            alternates: &[],
        },
        CaseSpec {
            id: "okazaki_m0",
            description: "m0 > 2 in one class: m2 > c^5 against the index bound fails for c > 10^5",
            variable: "c",
            paper_value: 100_000,
            readings: &[],
            relation: Relation::AtMost,
            headline: false,
            search_from: 3,
            kind: Kind::MatveevOkazaki,
            alternates: &[],
        },
    ]
}

fn substituted_c(b: &Real, c_coef: &str, c_exp: (i64, i64)) -> Real {
    Real::lit(c_coef, b.precision()) * b.pow_ratio(c_exp.0, c_exp.1)
}

fn matveev_lhs_real(m: &Real) -> Real {
    let p = m.precision();
    m / (Real::lit("38.92", p) * (m + Real::from_i64(1, p))).ln()
}

impl CaseSpec {
    /// `upper − lower` at integer `x`, optionally with another reading of
    /// the upper bound; the inequality holds iff positive.
    fn margin_with(&self, x: u64, prec: usize, upper_override: Option<&Upper>) -> Real {
        let v = Real::from_i64(x as i64, prec);
        match &self.kind {
            Kind::IndexBound {
                lower,
                upper,
                c_coef,
                c_exp,
            } => {
                let c = substituted_c(&v, c_coef, *c_exp);
                upper_override.unwrap_or(upper).eval(&v, &c) - lower.eval(&v, &c)
            }
            Kind::MatveevCount => {
                let m2 = Real::lit("1.999", prec) * v.powi(8) * v.sqrt().ln();
                Real::lit("2.81e12", prec) * v.ln() * (&v / Real::from_i64(2, prec)).ln() - matveev_lhs_real(&m2)
            }
            Kind::MatveevOkazaki => {
                let lc = v.ln();
                Real::lit("2.7717e12", prec) * &lc * &lc - matveev_lhs_real(&v.powi(5))
            }
        }
    }

    /// Certified truth of the inequality at `x`, escalating precision as
    /// needed.
    fn holds(&self, x: u64, prec: usize, upper: Option<&Upper>) -> Result<bool> {
        let mut p = prec;
        loop {
            match self.margin_with(x, p, upper).certified_sign() {
                Some(o) => return Ok(o.is_gt()),
                None if p < MAX_PRECISION => p *= 2,
                None => {
                    return Err(Error::PrecisionExhausted {
                        bits: p,
                        what: format!("{} at {x}", self.id),
                    })
                }
            }
        }
    }

    /// First value at which the inequality fails, searching upward from
    /// `search_from`.
    fn first_failure(&self, prec: usize, upper: Option<&Upper>) -> Result<u64> {
        let mut lo = self.search_from;
        if !self.holds(lo, prec, upper)? {
            return Err(Error::Consistency(format!(
                "{}: inequality fails at the search start {lo}",
                self.id
            )));
        }
        let mut hi = lo.saturating_mul(2);
        while self.holds(hi, prec, upper)? {
            lo = hi;
            hi = hi
                .checked_mul(2)
                .ok_or_else(|| Error::Consistency(format!("{}: no failure found", self.id)))?;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.holds(mid, prec, upper)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(hi)
    }

    /// Whether the truth pattern on a log-spaced grid is "holds, then
    /// fails" with the switch at `threshold`.
    fn single_switch(&self, threshold: u64, prec: usize) -> Result<bool> {
        let mut grid: Vec<u64> = Vec::new();
        let mut x = self.search_from as f64;
        while x < threshold as f64 * 100.0 {
            grid.push(x as u64);
            x *= 1.25;
        }
        grid.extend([threshold - 1, threshold, threshold + 1]);
        grid.sort_unstable();
        grid.dedup();
        for x in grid {
            if self.holds(x, prec, None)? != (x < threshold) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the upper bound decreases in `c` from the substituted value
    /// upward (checked at the threshold on a log-spaced grid in `c`).
    fn decreasing_in_c(&self, b: u64, prec: usize) -> Option<bool> {
        let Kind::IndexBound {
            upper, c_coef, c_exp, ..
        } = &self.kind
        else {
            return None;
        };
        let br = Real::from_i64(b as i64, prec);
        let c0 = substituted_c(&br, c_coef, *c_exp);
        let step = Real::lit("1.5", prec);
        let mut c = c0;
        let mut previous = upper.eval(&br, &c);
        for _ in 0..40 {
            c = &c * &step;
            let next = upper.eval(&br, &c);
            if next.certified_lt(&previous) != Some(true) {
                return Some(false);
            }
            previous = next;
        }
        Some(true)
    }
}

/// Outcome of one catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdResult {
    pub case_id: String,
    pub description: String,
    pub variable: String,
    pub paper_value: u64,
    pub readings: Vec<u64>,
    pub relation: Relation,
    pub headline: bool,
    /// First value at which the inequality fails ("variable < computed").
    pub computed_value: u64,
    /// Which published reading the computation matches, if any.
    pub matched_reading: Option<u64>,
    pub predicate_monotone: bool,
    pub decreasing_in_c: Option<bool>,
    /// Values obtained under the alternative formula readings.
    pub alternates: Vec<(String, u64)>,
    pub pass: bool,
}

/// Solves one case by id.
pub fn threshold_solve(case_id: &str, prec: usize) -> Result<ThresholdResult> {
    let case = cases()
        .into_iter()
        .find(|c| c.id == case_id)
        .ok_or_else(|| Error::UnknownCase(case_id.to_string()))?;
    solve(&case, prec)
}

fn solve(case: &CaseSpec, prec: usize) -> Result<ThresholdResult> {
    let computed = case.first_failure(prec, None)?;
    let predicate_monotone = case.single_switch(computed, prec)?;
    let decreasing_in_c = case.decreasing_in_c(computed, prec);
    let alternates = case
        .alternates
        .iter()
        .map(|(label, upper)| Ok((label.to_string(), case.first_failure(prec, Some(upper))?)))
        .collect::<Result<Vec<_>>>()?;
    let matched_reading = match case.relation {
        Relation::Exact => std::iter::once(case.paper_value)
            .chain(case.readings.iter().copied())
            .find(|&v| computed.abs_diff(v) <= 1),
        Relation::AtMost => (computed <= case.paper_value).then_some(case.paper_value),
    };
    let pass = matched_reading.is_some() && predicate_monotone && decreasing_in_c != Some(false);
    Ok(ThresholdResult {
        case_id: case.id.to_string(),
        description: case.description.to_string(),
        variable: case.variable.to_string(),
        paper_value: case.paper_value,
        readings: case.readings.to_vec(),
        relation: case.relation,
        headline: case.headline,
        computed_value: computed,
        matched_reading,
        predicate_monotone,
        decreasing_in_c,
        alternates,
        pass,
    })
}

/// Solves every case, in parallel, in catalog order.
pub fn catalog(prec: usize) -> Result<Vec<ThresholdResult>> {
    cases().par_iter().map(|c| solve(c, prec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DEFAULT_PRECISION as P;

    #[test]
    fn unknown_case_is_an_error() {
        assert!(matches!(threshold_solve("no_such_case", P), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn small_thresholds() {
        let r = threshold_solve("prop_d+_oo_blt2a", P).unwrap();
        assert_eq!(r.computed_value, 48);
        assert!(r.pass);
        let r = threshold_solve("prop_d+_2a_f1", P).unwrap();
        assert_eq!(r.computed_value, 722);
        assert!(r.pass);
    }

    #[test]
    fn monomial_evaluation() {
        let b = Real::from_i64(16, P);
        let c = Real::from_i64(81, P);
        let v = mono("2", (1, 2), (-1, 4)).eval(&b, &c);
        assert!((v.to_f64() - 2.0 * 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = cases().iter().map(|c| c.id).collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }
}
