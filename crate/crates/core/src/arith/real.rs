//! Interval reals with a configurable working precision.
//!
//! Every `Real` is a closed interval `[lo, hi]` of binary floating-point
//! numbers that is guaranteed to contain the exact value of the expression
//! it was computed from. Each primitive is evaluated with round-to-nearest
//! and then pushed outward by a relative `2^(3-p)`, which dominates the
//! half-ulp rounding error of the backend. Transcendentals are evaluated
//! with 64 guard bits before the outward push.
//!
//! A comparison between two intervals is *certified* only when the
//! intervals are disjoint; otherwise the caller is expected to retry at a
//! higher precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign, INF_NEG, INF_POS};
use num_bigint::{BigInt, Sign as BigSign};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::cf::Rational;

/// Working precision used when nothing else is configured.
pub const DEFAULT_PRECISION: usize = 256;
/// Smallest precision a `Real` may be created with.
pub const MIN_PRECISION: usize = 64;
/// Precision escalation stops here.
pub const MAX_PRECISION: usize = 16384;
/// Environment variable that overrides [`DEFAULT_PRECISION`].
pub const PRECISION_ENV: &str = "D4LAB_PRECISION";

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
    static NUDGE: RefCell<HashMap<usize, (BigFloat, BigFloat)>> = RefCell::new(HashMap::new());
}

/// Default precision in bits, honouring `D4LAB_PRECISION` when it parses to
/// a value of at least [`MIN_PRECISION`].
pub fn default_precision() -> usize {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&p| (MIN_PRECISION..=MAX_PRECISION).contains(&p))
        .unwrap_or(DEFAULT_PRECISION)
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// `(1 - 2^(3-p), 1 + 2^(3-p))`, both exact at precision `p`.
fn nudge_factors(p: usize) -> (BigFloat, BigFloat) {
    NUDGE.with(|cache| {
        cache
            .borrow_mut()
            .entry(p)
            .or_insert_with(|| {
                let one = BigFloat::from_word(1, p);
                let two = BigFloat::from_word(2, p);
                let delta = one.div(&two.powi(p - 3, p, RM), p, RM);
                (one.sub(&delta, p, RM), one.add(&delta, p, RM))
            })
            .clone()
    })
}

fn push_down(x: BigFloat, p: usize) -> BigFloat {
    if x.is_zero() || x.is_inf() || x.is_nan() {
        return x;
    }
    let (minus, plus) = nudge_factors(p);
    if x.is_positive() {
        x.mul(&minus, p, RM)
    } else {
        x.mul(&plus, p, RM)
    }
}

fn push_up(x: BigFloat, p: usize) -> BigFloat {
    if x.is_zero() || x.is_inf() || x.is_nan() {
        return x;
    }
    let (minus, plus) = nudge_factors(p);
    if x.is_positive() {
        x.mul(&plus, p, RM)
    } else {
        x.mul(&minus, p, RM)
    }
}

fn lt(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(c) if c < 0)
}

fn bf_min(a: BigFloat, b: BigFloat) -> BigFloat {
    if a.is_nan() || b.is_nan() {
        return INF_NEG;
    }
    if lt(&b, &a) {
        b
    } else {
        a
    }
}

fn bf_max(a: BigFloat, b: BigFloat) -> BigFloat {
    if a.is_nan() || b.is_nan() {
        return INF_POS;
    }
    if lt(&a, &b) {
        b
    } else {
        a
    }
}

/// Exact conversion of an integer to a binary float.
fn bigint_to_bf(n: &BigInt) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_word(0, MIN_PRECISION);
    }
    let (sign, digits) = n.to_u64_digits();
    let bits = n.bits() as usize;
    let p = bits.div_ceil(64).max(1) * 64;
    let s = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
    let mut f = BigFloat::from_words(&digits, s, 0);
    // from_words normalises the mantissa; restore the integer exponent.
    f.set_exponent(bits as i32);
    debug_assert!(f.precision().unwrap_or(p) >= bits);
    f
}

/// Exact conversion of an integral binary float to an integer.
fn bf_to_bigint(x: &BigFloat) -> Option<BigInt> {
    if x.is_zero() {
        return Some(BigInt::zero());
    }
    let (words, _, sign, exp, _) = x.as_raw_parts()?;
    let mut mag = num_bigint::BigUint::zero();
    for w in words.iter().rev() {
        mag = (mag << 64u32) + num_bigint::BigUint::from(*w);
    }
    let shift = exp as i64 - 64 * words.len() as i64;
    let mag = if shift >= 0 {
        mag << (shift as u64)
    } else {
        mag >> ((-shift) as u64)
    };
    let v = BigInt::from(mag);
    Some(if sign == Sign::Neg { -v } else { v })
}

fn bf_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, exp, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *words.last().unwrap_or(&0) as f64;
    let v = top * 2f64.powi(exp - 64);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// A certified enclosure `[lo, hi]` of a real number.
#[derive(Clone)]
pub struct Real {
    lo: BigFloat,
    hi: BigFloat,
    prec: usize,
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real[{:e}, {:e}; {} bits]", self.lo_f64(), self.hi_f64(), self.prec)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl Real {
    fn from_bounds(lo: BigFloat, hi: BigFloat, prec: usize) -> Self {
        Real { lo, hi, prec }
    }

    /// The whole real line; produced by undefined operations.
    pub fn everything(prec: usize) -> Self {
        Real::from_bounds(INF_NEG, INF_POS, prec)
    }

    /// Exact integer.
    pub fn from_int(n: &BigInt, prec: usize) -> Self {
        let x = bigint_to_bf(n);
        Real::from_bounds(x.clone(), x, prec.max(MIN_PRECISION))
    }

    pub fn from_i64(n: i64, prec: usize) -> Self {
        Real::from_int(&BigInt::from(n), prec)
    }

    /// Exact value of a binary64 number.
    pub fn from_f64(v: f64, prec: usize) -> Self {
        let x = BigFloat::from_f64(v, 64);
        Real::from_bounds(x.clone(), x, prec.max(MIN_PRECISION))
    }

    /// A decimal literal such as `"0.45273"`, `"-2.5"` or `"8.40335e13"`.
    ///
    /// The literal is converted to an exact rational first, so the
    /// enclosure is a single point whenever the value is dyadic.
    pub fn dec(s: &str, prec: usize) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid decimal literal `{s}`"));
        let t = s.trim();
        let (mant, exp) = match t.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i64>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
        let digits = format!("{int_part}{frac_part}");
        if digits.trim_start_matches(['-', '+']).is_empty() || !frac_part.chars().all(|ch| ch.is_ascii_digit()) {
            return Err(bad());
        }
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let scale = exp - frac_part.len() as i64;
        let ten = BigInt::from(10);
        let q = if scale >= 0 {
            Rational::from_integer(num * num_traits::pow(ten, scale as usize))
        } else {
            Rational::new(num, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(Real::from_rational(&q, prec))
    }

    /// Enclosure of an exact rational; a point when the denominator is a
    /// power of two.
    pub fn from_rational(q: &Rational, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let num = Real::from_int(q.numer(), prec);
        let den = q.denom();
        if den.magnitude().count_ones() == 1 {
            let p = (q.numer().bits() as usize).div_ceil(64).max(1) * 64;
            let d = bigint_to_bf(den);
            let x = num.lo.div(&d, p, RM);
            return Real::from_bounds(x.clone(), x, prec);
        }
        num / Real::from_int(den, prec)
    }

    /// Decimal literal known at compile time; panics on malformed input.
    pub fn lit(s: &str, prec: usize) -> Self {
        Real::dec(s, prec).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `num / den` with an integer numerator and positive denominator.
    pub fn ratio(num: i64, den: i64, prec: usize) -> Self {
        Real::from_i64(num, prec) / Real::from_i64(den, prec)
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// The same enclosure, relabelled with a different working precision.
    pub fn with_precision(&self, prec: usize) -> Self {
        Real::from_bounds(self.lo.clone(), self.hi.clone(), prec.max(MIN_PRECISION))
    }

    pub fn lo_f64(&self) -> f64 {
        bf_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        bf_to_f64(&self.hi)
    }

    /// Midpoint rounded to binary64.
    pub fn to_f64(&self) -> f64 {
        let (l, h) = (self.lo_f64(), self.hi_f64());
        if l.is_finite() && h.is_finite() {
            l + (h - l) / 2.0
        } else if l == h {
            l
        } else {
            f64::NAN
        }
    }

    /// Both endpoints coincide: the value is known exactly.
    pub fn is_point(&self) -> bool {
        matches!(self.lo.cmp(&self.hi), Some(0))
    }

    pub fn is_finite(&self) -> bool {
        !(self.lo.is_inf() || self.hi.is_inf() || self.lo.is_nan() || self.hi.is_nan())
    }

    pub fn contains_zero(&self) -> bool {
        !self.certainly_positive() && !self.certainly_negative()
    }

    pub fn certainly_positive(&self) -> bool {
        self.lo.is_positive() && !self.lo.is_zero() && !self.lo.is_nan()
    }

    pub fn certainly_negative(&self) -> bool {
        self.hi.is_negative() && !self.hi.is_zero() && !self.hi.is_nan()
    }

    /// `Some(true)` if `self < other` for every pair of points,
    /// `Some(false)` if `self >= other` for every pair, `None` otherwise.
    pub fn certified_lt(&self, other: &Real) -> Option<bool> {
        if lt(&self.hi, &other.lo) {
            Some(true)
        } else if !self.lo.is_nan() && !other.hi.is_nan() && !lt(&self.lo, &other.hi) {
            Some(false)
        } else {
            None
        }
    }

    /// Certified ordering of two disjoint enclosures.
    pub fn certified_cmp(&self, other: &Real) -> Option<Ordering> {
        if lt(&self.hi, &other.lo) {
            Some(Ordering::Less)
        } else if lt(&other.hi, &self.lo) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Certified sign.
    pub fn certified_sign(&self) -> Option<Ordering> {
        if self.certainly_positive() {
            Some(Ordering::Greater)
        } else if self.certainly_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `floor(x)` when both endpoints agree on it.
    pub fn floor_certified(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        let a = bf_to_bigint(&self.lo.floor())?;
        let b = bf_to_bigint(&self.hi.floor())?;
        (a == b).then_some(a)
    }

    /// Nearest integer to the midpoint, with the enclosure's distance to it
    /// certified below `1/2`.
    pub fn round_certified(&self) -> Option<BigInt> {
        let half = Real::ratio(1, 2, self.prec);
        (self + &half).floor_certified()
    }

    /// Relative width `(hi - lo) / |mid|` as binary64.
    pub fn relative_width(&self) -> f64 {
        let (l, h) = (self.lo_f64(), self.hi_f64());
        let m = (l.abs() + h.abs()) / 2.0;
        if m == 0.0 {
            h - l
        } else {
            (h - l) / m
        }
    }

    fn combine_prec(&self, other: &Real) -> usize {
        self.prec.max(other.prec)
    }

    pub fn add_ref(&self, o: &Real) -> Real {
        let p = self.combine_prec(o);
        Real::from_bounds(
            push_down(self.lo.add(&o.lo, p, RM), p),
            push_up(self.hi.add(&o.hi, p, RM), p),
            p,
        )
    }

    pub fn sub_ref(&self, o: &Real) -> Real {
        let p = self.combine_prec(o);
        Real::from_bounds(
            push_down(self.lo.sub(&o.hi, p, RM), p),
            push_up(self.hi.sub(&o.lo, p, RM), p),
            p,
        )
    }

    pub fn mul_ref(&self, o: &Real) -> Real {
        let p = self.combine_prec(o);
        let prods = [
            self.lo.mul(&o.lo, p, RM),
            self.lo.mul(&o.hi, p, RM),
            self.hi.mul(&o.lo, p, RM),
            self.hi.mul(&o.hi, p, RM),
        ];
        // 0 * inf yields NaN; treat as unbounded.
        let mut lo = INF_POS;
        let mut hi = INF_NEG;
        for x in prods {
            if x.is_nan() {
                return Real::everything(p);
            }
            lo = bf_min(lo, x.clone());
            hi = bf_max(hi, x);
        }
        Real::from_bounds(push_down(lo, p), push_up(hi, p), p)
    }

    pub fn div_ref(&self, o: &Real) -> Real {
        let p = self.combine_prec(o);
        if o.contains_zero() {
            return Real::everything(p);
        }
        let inv = Real::from_bounds(
            push_down(BigFloat::from_word(1, p).div(&o.hi, p, RM), p),
            push_up(BigFloat::from_word(1, p).div(&o.lo, p, RM), p),
            p,
        );
        self.mul_ref(&inv)
    }

    pub fn recip(&self) -> Real {
        Real::from_i64(1, self.prec).div_ref(self)
    }

    pub fn abs(&self) -> Real {
        if self.certainly_negative() {
            -self
        } else if self.certainly_positive() {
            self.clone()
        } else {
            let a = self.lo.abs();
            let b = self.hi.abs();
            Real::from_bounds(BigFloat::from_word(0, self.prec), bf_max(a, b), self.prec)
        }
    }

    pub fn max(&self, o: &Real) -> Real {
        let p = self.combine_prec(o);
        Real::from_bounds(
            bf_max(self.lo.clone(), o.lo.clone()),
            bf_max(self.hi.clone(), o.hi.clone()),
            p,
        )
    }

    pub fn min(&self, o: &Real) -> Real {
        let p = self.combine_prec(o);
        Real::from_bounds(
            bf_min(self.lo.clone(), o.lo.clone()),
            bf_min(self.hi.clone(), o.hi.clone()),
            p,
        )
    }

    pub fn sqrt(&self) -> Real {
        let p = self.prec;
        let q = p + GUARD_BITS;
        if self.certainly_negative() {
            return Real::everything(p);
        }
        let lo = if self.lo.is_positive() && !self.lo.is_zero() {
            push_down(self.lo.sqrt(q, RM), p)
        } else {
            BigFloat::from_word(0, p)
        };
        let hi = push_up(self.hi.sqrt(q, RM), p);
        Real::from_bounds(lo, hi, p)
    }

    /// Natural logarithm.
    pub fn ln(&self) -> Real {
        let p = self.prec;
        let q = p + GUARD_BITS;
        if !self.certainly_positive() {
            if self.certainly_negative() {
                return Real::everything(p);
            }
            let hi = if self.hi.is_positive() && !self.hi.is_zero() {
                push_up(with_consts(|cc| self.hi.ln(q, RM, cc)), p)
            } else {
                INF_NEG
            };
            return Real::from_bounds(INF_NEG, hi, p);
        }
        let lo = push_down(with_consts(|cc| self.lo.ln(q, RM, cc)), p);
        let hi = push_up(with_consts(|cc| self.hi.ln(q, RM, cc)), p);
        Real::from_bounds(lo, hi, p)
    }

    pub fn exp(&self) -> Real {
        let p = self.prec;
        let q = p + GUARD_BITS;
        let lo = push_down(with_consts(|cc| self.lo.exp(q, RM, cc)), p);
        let hi = push_up(with_consts(|cc| self.hi.exp(q, RM, cc)), p);
        // exp is positive; clamp a pushed-down tiny value.
        let lo = if lo.is_negative() {
            BigFloat::from_word(0, p)
        } else {
            lo
        };
        Real::from_bounds(lo, hi, p)
    }

    /// `self^y` for positive `self`.
    pub fn pow(&self, y: &Real) -> Real {
        (y * &self.ln()).exp()
    }

    /// `self^(num/den)` for positive `self`.
    pub fn pow_ratio(&self, num: i64, den: i64) -> Real {
        self.pow(&Real::ratio(num, den, self.prec))
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64) -> Real {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut result = Real::from_i64(1, self.prec);
        let mut base = self.clone();
        let mut e = n as u64;
        // Even powers of an interval straddling zero need the absolute value.
        if n % 2 == 0 && self.contains_zero() {
            base = self.abs();
        }
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `e`.
    pub fn e(prec: usize) -> Real {
        Real::from_i64(1, prec).exp()
    }

    /// Distance to the nearest integer, `||x||`.
    pub fn dist_to_nearest_int(&self) -> Option<Real> {
        let n = self.round_certified()?;
        Some((self - &Real::from_int(&n, self.prec)).abs())
    }

    /// Lower endpoint converted to an integer by flooring.
    pub fn floor_lo(&self) -> Option<BigInt> {
        bf_to_bigint(&self.lo.floor())
    }

    /// Upper endpoint converted to an integer by ceiling.
    pub fn ceil_hi(&self) -> Option<BigInt> {
        bf_to_bigint(&self.hi.ceil())
    }

    pub fn to_i64_floor(&self) -> Option<i64> {
        self.floor_certified().and_then(|v| v.to_i64())
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::from_bounds(-self.hi.clone(), -self.lo.clone(), self.prec)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                self.$inner(rhs)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$inner(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$inner(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_round_trip_is_exact() {
        for v in [
            "0",
            "1",
            "-7",
            "18446744073709551617",
            "-340282366920938463463374607431768211457",
        ] {
            let n: BigInt = v.parse().unwrap();
            let r = Real::from_int(&n, 128);
            assert_eq!(r.floor_certified(), Some(n.clone()), "{v}");
        }
    }

    #[test]
    fn sqrt2_encloses_truth() {
        let r = Real::from_i64(2, 256).sqrt();
        let sq = &r * &r;
        assert!(sq.certified_lt(&Real::lit("2.0000001", 256)) == Some(true));
        assert!(Real::lit("1.9999999", 256).certified_lt(&sq) == Some(true));
        assert!(r.relative_width() < 1e-70);
        assert!((r.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ln_exp_agree() {
        let x = Real::lit("3.25", 192);
        let y = x.ln().exp();
        assert!((y.to_f64() - 3.25).abs() < 1e-14);
        assert!(y.relative_width() < 1e-50);
        let l2 = Real::from_i64(2, 128).ln();
        assert!((l2.to_f64() - std::f64::consts::LN_2).abs() < 1e-16);
    }

    #[test]
    fn division_by_interval_with_zero_is_unbounded() {
        let z = Real::from_i64(0, 64);
        let q = Real::from_i64(1, 64) / z;
        assert!(!q.is_finite());
        assert_eq!(q.certified_lt(&Real::from_i64(0, 64)), None);
    }

    #[test]
    fn floor_is_uncertified_across_integer() {
        let x = Real::from_i64(3, 64);
        assert_eq!(x.floor_certified(), Some(BigInt::from(3)));
        let y = Real::from_i64(1, 64).sqrt() * Real::from_i64(3, 64);
        // 3 * sqrt(1) straddles 3 after widening.
        assert_eq!(y.floor_certified(), None);
    }

    #[test]
    fn exact_decimals_stay_points() {
        let twelve = Real::lit("12", 128);
        assert_eq!(twelve.certified_lt(&Real::from_i64(12, 128)), Some(false));
        assert_eq!(Real::lit("1.5", 128).floor_certified(), Some(BigInt::from(1)));
        let tenth = Real::lit("0.1", 128);
        assert!(!tenth.is_point());
        assert!(twelve.is_point());
        assert!(tenth.relative_width() < 1e-30);
    }

    #[test]
    fn powers_and_env_default() {
        let x = Real::lit("1.5", 128);
        assert!((x.powi(5).to_f64() - 7.59375).abs() < 1e-12);
        assert!((x.pow_ratio(1, 2).to_f64() - 1.5f64.sqrt()).abs() < 1e-14);
        assert!((x.powi(-2).to_f64() - 1.0 / 2.25).abs() < 1e-14);
        assert!(default_precision() >= MIN_PRECISION);
    }
}
