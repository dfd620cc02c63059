//! Extensions of a pair and their membership in the `c_ν^±` family.
//!
//! The extensions `c` of a pair `(a, b)` are the solutions of
//! `b·s² − a·t² = 4(b − a)` with `s² = ac + 4`, `t² = bc + 4`. Each class
//! has a fundamental solution with `1 <= s0 < √(r + 2)`, and the values of
//! `t` in a class follow `t_{k+1} = r·t_k − t_{k−1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::is_perfect_square;
use crate::error::{Error, Result};
use crate::tuples::{c_family_index, Branch, D4Pair};

/// Pairs with `b < 6.85·a` have only family extensions.
pub const FAMILY_RATIO_LIMIT: (u64, u64) = (685, 100);

/// Every `c` with `b < c <= c_max` extending the pair, ascending.
pub fn pair_extensions(pair: &D4Pair, c_max: &BigInt) -> Vec<BigInt> {
    let (a, b, r) = (&pair.a, &pair.b, &pair.r);
    let rhs: BigInt = 4 * (b - a);
    let limit: BigInt = r + 2;
    let mut out = Vec::new();
    let mut s0 = BigInt::from(1);
    while &s0 * &s0 < limit {
        let num: BigInt = b * &s0 * &s0 - &rhs;
        if !num.is_negative() && (&num % a).is_zero() {
            let (ok, t0) = is_perfect_square(&(&num / a));
            if ok {
                for start in [t0.clone(), -t0.clone()] {
                    collect_class(pair, &start, &s0, c_max, &mut out);
                }
            }
        }
        s0 += 1;
    }
    out.sort();
    out.dedup();
    out
}

fn collect_class(pair: &D4Pair, t0: &BigInt, s0: &BigInt, c_max: &BigInt, out: &mut Vec<BigInt>) {
    let (b, r) = (&pair.b, &pair.r);
    // bc + 4 = t² bounds t by √(b·c_max + 4).
    let t_limit: BigInt = b * c_max + 4;
    let mut prev = t0.clone();
    let mut cur: BigInt = (r * t0 + b * s0) / 2;
    let mut consider = |t: &BigInt| {
        let square: BigInt = t * t - 4;
        let (c, rem) = square.div_rem(b);
        if rem.is_zero() && &c > b && &c <= c_max {
            out.push(c);
        }
    };
    consider(&prev);
    while &cur * &cur <= t_limit {
        consider(&cur);
        let next = r * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyMember {
    #[serde(with = "crate::json::int")]
    pub c: BigInt,
    /// `(ν, τ)` with `c = c_ν^τ`, if any.
    pub family: Option<(u32, Branch)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub pair: D4Pair,
    #[serde(with = "crate::json::int")]
    pub c_max: BigInt,
    /// `b < 6.85·a`, where every extension is expected in the family.
    pub in_scope: bool,
    pub extensions: Vec<FamilyMember>,
    /// Extensions outside the family.
    #[serde(with = "crate::json::ints")]
    pub non_family: Vec<BigInt>,
    pub all_family: bool,
}

impl FamilyReport {
    /// The family claim is violated: a pair in scope has a non-family
    /// extension.
    pub fn counterexample(&self) -> bool {
        self.in_scope && !self.all_family
    }
}

/// Lists the extensions up to `c_max` and locates each in the family.
pub fn pair_family_check(pair: &D4Pair, c_max: &BigInt) -> Result<FamilyReport> {
    if &pair.a * &pair.b + 4 != &pair.r * &pair.r || pair.a >= pair.b {
        return Err(Error::NotAPair {
            a: pair.a.to_string(),
            b: pair.b.to_string(),
        });
    }
    let (num, den) = FAMILY_RATIO_LIMIT;
    let in_scope = &pair.b * den < &pair.a * num;
    let extensions: Vec<FamilyMember> = pair_extensions(pair, c_max)
        .into_iter()
        .map(|c| FamilyMember {
            family: c_family_index(pair, &c),
            c,
        })
        .collect();
    let non_family: Vec<BigInt> = extensions
        .iter()
        .filter(|m| m.family.is_none())
        .map(|m| m.c.clone())
        .collect();
    Ok(FamilyReport {
        pair: pair.clone(),
        c_max: c_max.clone(),
        in_scope,
        all_family: non_family.is_empty(),
        extensions,
        non_family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_square_u64;
    use crate::tuples::{c_family, make_triple};
    use num_traits::ToPrimitive;

    fn naive(a: u64, b: u64, c_max: u64) -> Vec<BigInt> {
        (b + 1..=c_max)
            .filter(|c| is_square_u64(a * c + 4).is_some() && is_square_u64(b * c + 4).is_some())
            .map(BigInt::from)
            .collect()
    }

    #[test]
    fn extensions_match_naive_scan() {
        for (a, b) in [(1, 5), (1, 12), (2, 6), (3, 7), (5, 12), (1, 32), (12, 32), (7, 27)] {
            let Ok(pair) = D4Pair::new(a, b) else { continue };
            let (a, b) = (pair.a.to_u64().unwrap(), pair.b.to_u64().unwrap());
            assert_eq!(
                pair_extensions(&pair, &BigInt::from(200_000)),
                naive(a, b, 200_000),
                "({a}, {b})"
            );
        }
    }

    #[test]
    fn family_pairs_have_only_family_extensions() {
        let pair = D4Pair::new(1, 5).unwrap();
        let report = pair_family_check(&pair, &BigInt::from(1_000_000_000u64)).unwrap();
        assert!(report.in_scope);
        assert!(report.all_family, "{:?}", report.non_family);
        assert!(report
            .extensions
            .iter()
            .any(|m| m.c == c_family(&pair, 1, Branch::Plus)));
    }

    #[test]
    fn sharpness_example_is_outside_the_family() {
        let pair = D4Pair::new(4620, 31680).unwrap();
        let c = BigInt::from(146_434_197u64);
        assert!(make_triple(&pair.a, &pair.b, &c).is_ok());
        let report = pair_family_check(&pair, &BigInt::from(200_000_000u64)).unwrap();
        assert!(!report.in_scope);
        assert!(report.non_family.contains(&c));
        assert!(!report.counterexample());
    }

    #[test]
    fn rejects_non_pairs() {
        let bogus = D4Pair {
            a: 1.into(),
            b: 3.into(),
            r: 2.into(),
        };
        assert!(pair_family_check(&bogus, &BigInt::from(100)).is_err());
    }
}
