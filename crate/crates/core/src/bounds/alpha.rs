//! The constant `α` in the lower bound `m > α·b^{−1/2}·c^{1/2}` for even
//! indices with `|z0| = |z1| = 2`.
//!
//! `α` must satisfy
//!
//! * `α² + (1 + 2/(b0·c0))·α <= 1`, and
//! * `4(1 − 1/L²)α² + α(b0(λ + ρ^{−1/2}) + 2/c0·(λ + ρ^{1/2})) <= b0`,
//!   with `λ = √((a0 + 4)/(ρ·a0 + 4))`.
//!
//! Both left-hand sides increase with `α >= 0`, so the admissible set is an
//! interval `[0, α*]` and `α*` is found by bisection.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::arith::{Rational, Real};
use crate::error::{Error, Result};

const BISECTION_STEPS: usize = 100;

/// Whether `alpha` satisfies both constraints; uncertified comparisons
/// count as violations so the returned `α` is always admissible.
fn admissible(alpha: &Real, a0: &Real, b0: &Real, c0: &Real, rho: &Real, l: &Real) -> bool {
    let p = alpha.precision();
    let one = Real::from_i64(1, p);
    let two = Real::from_i64(2, p);
    let first = alpha * alpha + (&one + &two / (b0 * c0)) * alpha;
    if one.certified_lt(&first) != Some(false) {
        return false;
    }
    let four = Real::from_i64(4, p);
    let lambda = ((a0 + &four) / (rho * a0 + &four)).sqrt();
    let root = rho.sqrt();
    let second = &four * (&one - (l * l).recip()) * alpha * alpha
        + alpha * (b0 * (&lambda + root.recip()) + &two / c0 * (&lambda + &root));
    b0.certified_lt(&second) == Some(false)
}

/// Largest `α` (to about 2⁻¹⁰⁰) satisfying both constraints.
pub fn alpha_gap(a0: &BigInt, b0: &BigInt, c0: &BigInt, rho: &Real, l: &Real) -> Result<Real> {
    let p = rho.precision();
    for (name, v) in [("a0", a0), ("b0", b0), ("c0", c0)] {
        if v < &BigInt::one() {
            return Err(Error::Domain(format!("{name} must be at least 1")));
        }
    }
    let one = Real::from_i64(1, p);
    if one.certified_lt(rho) != Some(true) {
        return Err(Error::Domain(format!("ρ = {rho} must exceed 1")));
    }
    if one.certified_lt(l) != Some(true) {
        return Err(Error::Domain(format!("L = {l} must exceed 1")));
    }
    let (a0, b0, c0) = (Real::from_int(a0, p), Real::from_int(b0, p), Real::from_int(c0, p));
    // Dyadic bisection points are exact, so the returned value is itself
    // an admissible point.
    let mut lo = Rational::from_integer(BigInt::from(0));
    let mut hi = Rational::from_integer(BigInt::one());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..BISECTION_STEPS {
        let mid = (&lo + &hi) * &half;
        if admissible(&Real::from_rational(&mid, p), &a0, &b0, &c0, rho, l) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Real::from_rational(&lo, p))
}

/// One parameter choice tried by [`alpha_parameter_search`].
#[derive(Debug, Clone, Serialize)]
pub struct AlphaChoice {
    pub a0: u64,
    pub b0: u64,
    /// `c0 = b0^c0_exponent`.
    pub c0_exponent: u32,
    pub rho: String,
    pub l: String,
    pub alpha: f64,
}

/// Searches a small grid of `(a0, b0, c0, ρ, L)` for a choice achieving
/// `α >= target`, trying the parameters closest to the downstream use
/// (`b0 = 10⁵`, `c0 = b0⁴`, `L = 1.4`) first.
pub fn alpha_parameter_search(target: &Real) -> Result<(Option<AlphaChoice>, Vec<AlphaChoice>)> {
    let p = target.precision();
    let mut tried = Vec::new();
    for l in ["1.4", "1.25", "1.1"] {
        for rho in ["1.01", "1.1", "1.5", "2", "2.21", "4"] {
            for a0 in [1u64, 2, 45_249] {
                let b0 = 100_000u64;
                let c0 = num_traits::pow(BigInt::from(b0), 4);
                let alpha = alpha_gap(
                    &BigInt::from(a0),
                    &BigInt::from(b0),
                    &c0,
                    &Real::lit(rho, p),
                    &Real::lit(l, p),
                )?;
                let choice = AlphaChoice {
                    a0,
                    b0,
                    c0_exponent: 4,
                    rho: rho.into(),
                    l: l.into(),
                    alpha: alpha.to_f64(),
                };
                let hit = alpha.certified_lt(target) == Some(false);
                tried.push(choice.clone());
                if hit {
                    return Ok((Some(choice), tried));
                }
            }
        }
    }
    Ok((None, tried))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DEFAULT_PRECISION as P;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn golden_ratio_limit() {
        // Large b0, c0 and L: only the first constraint binds, α² + α <= 1.
        let huge = num_traits::pow(big(10), 30);
        let alpha = alpha_gap(&big(1), &huge, &huge, &Real::lit("100", P), &Real::lit("1e6", P)).unwrap();
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert!((alpha.to_f64() - golden).abs() < 1e-12);
    }

    #[test]
    fn result_is_admissible_and_tight() {
        let (a0, b0, c0) = (big(1), big(100_000), num_traits::pow(big(100_000), 4));
        let (rho, l) = (Real::lit("2", P), Real::lit("1.4", P));
        let alpha = alpha_gap(&a0, &b0, &c0, &rho, &l).unwrap();
        let (ar, br, cr) = (Real::from_int(&a0, P), Real::from_int(&b0, P), Real::from_int(&c0, P));
        assert!(admissible(&alpha, &ar, &br, &cr, &rho, &l));
        let above = &alpha + Real::lit("1e-20", P);
        assert!(!admissible(&above, &ar, &br, &cr, &rho, &l));
    }

    #[test]
    fn rejects_bad_parameters() {
        let one = big(1);
        assert!(alpha_gap(&one, &one, &one, &Real::lit("1", P), &Real::lit("2", P)).is_err());
        assert!(alpha_gap(&one, &one, &one, &Real::lit("2", P), &Real::lit("0.5", P)).is_err());
        assert!(alpha_gap(&big(0), &one, &one, &Real::lit("2", P), &Real::lit("2", P)).is_err());
    }

    #[test]
    fn nondecreasing_in_rho() {
        let (a0, b0, c0) = (big(1), big(100_000), num_traits::pow(big(100_000), 4));
        let l = Real::lit("1.4", P);
        let mut previous = 0.0;
        for rho in ["1.01", "1.1", "1.5", "2", "3", "5", "10", "100"] {
            let alpha = alpha_gap(&a0, &b0, &c0, &Real::lit(rho, P), &l).unwrap().to_f64();
            assert!(alpha >= previous, "ρ = {rho}");
            previous = alpha;
        }
    }
}
