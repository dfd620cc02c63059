//! Exhaustive desk-scale searches and brute-force oracles.
//!
//! Pairs are generated from the factorisation `ab = (r − 2)(r + 2)`, which
//! needs one smallest-prime-factor sieve and touches each `r` once.
//! Triples are read off the pair list: `{a, b, c}` is a triple exactly when
//! `(a, c)`, `(b, c)` and `(a, b)` are all pairs. Work is split into
//! fixed-size chunks of `r`, processed in parallel and concatenated in
//! chunk order, so the output never depends on the thread count.

mod case_check;
mod claims;
mod family;

pub use case_check::{case_check_prop_mn9_k0, CaseCheckReport, CaseSurvivor, CASE_MN9_A_RANGE};
pub use claims::{
    c_gap_violations, count_n, verify_theorem_claims, ClaimsReport, GrowthViolation, IndexViolation, NCount,
};
pub use family::{pair_extensions, pair_family_check, FamilyReport, FAMILY_RATIO_LIMIT};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_perfect_square, is_square_u128};
use crate::error::{Error, Result};
use crate::tuples::{make_triple, D4Pair, D4Triple};

/// Default number of `r` values per work chunk.
pub const DEFAULT_CHUNK: u64 = 4096;

/// Bounds for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchRange {
    /// Largest `b` when enumerating pairs.
    pub b_max: u64,
    /// Largest `c` when enumerating triples.
    pub c_max: u64,
    /// Largest `d` when extending triples.
    pub d_max: u64,
    /// Work-chunk size; affects scheduling only, never results.
    pub chunk: u64,
}

impl SearchRange {
    pub fn new(b_max: u64, c_max: u64, d_max: u64) -> Self {
        SearchRange {
            b_max,
            c_max,
            d_max,
            chunk: DEFAULT_CHUNK,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.b_max < 2 || self.c_max < 2 || self.d_max < 1 {
            return Err(Error::Domain(
                "search bounds must be at least 2 (d_max at least 1)".into(),
            ));
        }
        if self.chunk == 0 {
            return Err(Error::Domain("chunk size must be positive".into()));
        }
        Ok(())
    }
}

/// Smallest prime factor of every integer up to `n`.
fn spf_sieve(n: u64) -> Vec<u32> {
    let n = n as usize;
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

fn add_factors(mut n: u64, spf: &[u32], factors: &mut Vec<(u64, u32)>) {
    while n > 1 {
        let p = spf[n as usize] as u64;
        n /= p;
        match factors.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => factors.push((p, 1)),
        }
    }
}

/// Pairs `(a, b, r)` with `r` in `[r_lo, r_hi)`.
fn pairs_for_r(r_lo: u64, r_hi: u64, b_max: u64, spf: &[u32]) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    let mut factors = Vec::new();
    let mut divisors = Vec::new();
    for r in r_lo..r_hi {
        factors.clear();
        add_factors(r - 2, spf, &mut factors);
        add_factors(r + 2, spf, &mut factors);
        let n = r * r - 4;
        divisors.clear();
        divisors.push(1u64);
        for &(p, e) in &factors {
            let len = divisors.len();
            let mut power = 1;
            for _ in 0..e {
                power *= p;
                for i in 0..len {
                    divisors.push(divisors[i] * power);
                }
            }
        }
        for &a in &divisors {
            if (a as u128) * (a as u128) < n as u128 {
                let b = n / a;
                if b <= b_max {
                    out.push((a, b, r));
                }
            }
        }
    }
    out
}

/// Pairs `(a, b, r)` with `b <= b_max`, sorted by `(a, b)`.
pub fn enumerate_pairs_u64(b_max: u64, chunk: u64) -> Vec<(u64, u64, u64)> {
    if b_max < 2 {
        return Vec::new();
    }
    // a < b <= b_max gives r² = ab + 4 <= (b − 1)b + 4 <= b_max² once
    // b >= 4 (and r <= 3 below that), so r <= b_max.
    let r_end = b_max + 1;
    let spf = spf_sieve(r_end + 2);
    let chunk = chunk.max(1);
    let starts: Vec<u64> = (3..r_end).step_by(chunk as usize).collect();
    let mut pairs: Vec<(u64, u64, u64)> = starts
        .par_iter()
        .map(|&lo| pairs_for_r(lo, (lo + chunk).min(r_end), b_max, &spf))
        .flatten_iter()
        .collect();
    pairs.sort_unstable();
    pairs
}

/// All D(4)-pairs `a < b <= b_max`, sorted by `(a, b)`.
pub fn enumerate_pairs(b_max: u64) -> Vec<D4Pair> {
    enumerate_pairs_u64(b_max, DEFAULT_CHUNK)
        .into_iter()
        .map(|(a, b, r)| D4Pair {
            a: a.into(),
            b: b.into(),
            r: r.into(),
        })
        .collect()
}

/// Triples `(a, b, c)` with `c <= c_max`, sorted.
pub fn enumerate_triples_u64(c_max: u64, chunk: u64) -> Vec<(u64, u64, u64)> {
    let pairs = enumerate_pairs_u64(c_max, chunk);
    let mut partners: Vec<Vec<u64>> = vec![Vec::new(); c_max as usize + 1];
    for &(a, b, _) in &pairs {
        partners[b as usize].push(a);
    }
    let mut triples: Vec<(u64, u64, u64)> = partners
        .par_iter()
        .enumerate()
        .flat_map_iter(|(c, smaller)| {
            let mut found = Vec::new();
            for (j, &b) in smaller.iter().enumerate() {
                for &a in &smaller[..j] {
                    let (a, b) = if a < b { (a, b) } else { (b, a) };
                    if is_square_u128(a as u128 * b as u128 + 4).is_some() {
                        found.push((a, b, c as u64));
                    }
                }
            }
            found
        })
        .collect();
    triples.sort_unstable();
    triples
}

/// All D(4)-triples `a < b < c <= c_max`, sorted.
pub fn enumerate_triples(c_max: u64) -> Vec<D4Triple> {
    enumerate_triples_u64(c_max, DEFAULT_CHUNK)
        .into_iter()
        .map(|(a, b, c)| make_triple(&a.into(), &b.into(), &c.into()).expect("enumerated triple is valid"))
        .collect()
}

/// Every `d <= d_max`, `d ∉ {a, b, c}`, with `ad + 4`, `bd + 4`, `cd + 4`
/// all squares, ascending. Scans the square roots `x = √(ad + 4)` directly,
/// independently of the Pell machinery.
pub fn brute_force_extensions(t: &D4Triple, d_max: &BigInt) -> Vec<BigInt> {
    let small = (t.a.to_u64(), t.b.to_u64(), t.c.to_u64(), d_max.to_u64());
    if let (Some(a), Some(b), Some(c), Some(d_max)) = small {
        let fits = (c as u128)
            .checked_mul(d_max as u128)
            .is_some_and(|v| v < u128::MAX / 2);
        if fits {
            return brute_force_u64(a, b, c, d_max).into_iter().map(BigInt::from).collect();
        }
    }
    brute_force_big(t, d_max)
}

fn brute_force_u64(a: u64, b: u64, c: u64, d_max: u64) -> Vec<u64> {
    let is_extension = |d: u64| {
        d != a
            && d != b
            && d != c
            && is_square_u128(b as u128 * d as u128 + 4).is_some()
            && is_square_u128(c as u128 * d as u128 + 4).is_some()
    };
    let top = a as u128 * d_max as u128 + 4;
    let mut out = Vec::new();
    if let Some(top) = top.to_u64() {
        // Machine-word loop for the common desk-scale case.
        let x_max = top.isqrt();
        for x in 3..=x_max {
            let num = x * x - 4;
            if num % a == 0 && is_extension(num / a) {
                out.push(num / a);
            }
        }
    } else {
        let x_max = crate::arith::isqrt_u128(top);
        let mut x: u128 = 3;
        while x <= x_max {
            let num = x * x - 4;
            if num.is_multiple_of(a as u128) {
                if let Some(d) = (num / a as u128).to_u64().filter(|&d| is_extension(d)) {
                    out.push(d);
                }
            }
            x += 1;
        }
    }
    out
}

fn brute_force_big(t: &D4Triple, d_max: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::from(1);
    while &d <= d_max {
        if d != t.a && d != t.b && d != t.c && [&t.a, &t.b, &t.c].iter().all(|e| is_perfect_square(&(*e * &d + 4)).0) {
            out.push(d.clone());
        }
        d += 1;
    }
    out
}
