//! The finite check closing the odd-index case with `|z0| = t`, `|z1| = s`
//! and `k = 0`.
//!
//! For each pair `(a, b)` with `4 <= a <= 12` and
//! `10⁵ <= b <= ⌊169.169·a⁵⌋`, an extension `c` in this case would be a
//! root of `A·c² + B·c + D = 0` with `A = r²`, `B = −(13b − 29a)·r²` and
//! `D = 4((6b − 15a)² − r²)`. The check lists every integral root that
//! also extends the pair; none is expected.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_perfect_square, isqrt_u128};

/// The range of `a` examined by [`case_check_prop_mn9_k0`].
pub const CASE_MN9_A_RANGE: (u64, u64) = (4, 12);

const B_MIN: u64 = 100_000;

/// An integral root `c` of the quadratic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseSurvivor {
    pub a: u64,
    pub b: u64,
    #[serde(with = "crate::json::int")]
    pub c: BigInt,
    /// `ac + 4` and `bc + 4` are both squares.
    pub extends_pair: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseCheckReport {
    pub case_id: String,
    pub a_range: (u64, u64),
    pub pairs_scanned: u64,
    /// Pairs whose discriminant `B² − 4AD` is non-negative.
    pub real_roots: u64,
    /// Integral positive roots, whether or not they extend the pair.
    pub integral_roots: Vec<CaseSurvivor>,
    /// Integral roots that extend the pair: counterexamples to the claim.
    pub survivors: Vec<CaseSurvivor>,
    pub elapsed_ms: u128,
}

impl CaseCheckReport {
    /// The claim holds: no pair in range admits such an extension.
    pub fn claim_reproduced(&self) -> bool {
        self.survivors.is_empty()
    }
}

/// `⌊169.169·a⁵⌋`, computed exactly.
pub fn b_upper(a: u64) -> u64 {
    (169_169u128 * (a as u128).pow(5) / 1000) as u64
}

struct PairOutcome {
    real: bool,
    roots: Vec<CaseSurvivor>,
}

fn examine(a: u64, b: u64, r: u64) -> PairOutcome {
    let (ab, bb, rb) = (BigInt::from(a), BigInt::from(b), BigInt::from(r));
    let r2 = &rb * &rb;
    let quad = r2.clone();
    let slope: BigInt = 13 * &bb - 29 * &ab;
    let lin: BigInt = -slope * &r2;
    let lead_gap: BigInt = 6 * &bb - 15 * &ab;
    let constant: BigInt = 4 * (&lead_gap * &lead_gap - &r2);
    let disc: BigInt = &lin * &lin - 4 * &quad * &constant;
    let mut out = PairOutcome {
        real: !disc.is_negative(),
        roots: Vec::new(),
    };
    if disc.is_negative() {
        return out;
    }
    let (exact, root) = is_perfect_square(&disc);
    if !exact {
        return out;
    }
    let denom: BigInt = 2 * &quad;
    for numer in [-&lin + &root, -&lin - &root] {
        let (c, rem) = numer.div_rem(&denom);
        if rem.is_zero() && c.is_positive() {
            let extends_pair = is_perfect_square(&(&ab * &c + 4)).0 && is_perfect_square(&(&bb * &c + 4)).0;
            let entry = CaseSurvivor { a, b, c, extends_pair };
            if !out.roots.contains(&entry) {
                out.roots.push(entry);
            }
        }
    }
    out
}

/// Runs the check for `a` in `a_range` (inclusive).
pub fn case_check_prop_mn9_k0(a_range: (u64, u64)) -> CaseCheckReport {
    let start = Instant::now();
    let pairs: Vec<(u64, u64, u64)> = (a_range.0.max(1)..=a_range.1)
        .flat_map(|a| {
            let b_hi = b_upper(a);
            let r_lo = isqrt_u128(a as u128 * B_MIN as u128 + 4) as u64;
            let r_hi = isqrt_u128(a as u128 * b_hi as u128 + 4) as u64;
            (r_lo..=r_hi).filter_map(move |r| {
                let num = r * r - 4;
                let b = num / a;
                (num % a == 0 && (B_MIN..=b_hi).contains(&b) && b > a).then_some((a, b, r))
            })
        })
        .collect();
    let outcomes: Vec<PairOutcome> = pairs.par_iter().map(|&(a, b, r)| examine(a, b, r)).collect();
    let integral_roots: Vec<CaseSurvivor> = outcomes.iter().flat_map(|o| o.roots.iter().cloned()).collect();
    CaseCheckReport {
        case_id: "prop_mn9_k0".into(),
        a_range,
        pairs_scanned: pairs.len() as u64,
        real_roots: outcomes.iter().filter(|o| o.real).count() as u64,
        survivors: integral_roots.iter().filter(|s| s.extends_pair).cloned().collect(),
        integral_roots,
        elapsed_ms: start.elapsed().as_millis(),
    }
}
