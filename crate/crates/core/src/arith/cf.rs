//! Simple continued fractions of certified reals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::real::{Real, MAX_PRECISION};
use crate::error::{Error, Result};

/// Exact rational in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// The first `depth` partial quotients of `x > 0`.
///
/// Each quotient is the certified floor of the current complete quotient;
/// if an enclosure straddles an integer the expansion aborts with
/// [`Error::PrecisionExhausted`]. An expansion that terminates exactly
/// (the fractional part is certified zero) returns fewer quotients.
pub fn continued_fraction(x: &Real, depth: usize) -> Result<Vec<BigInt>> {
    if depth == 0 {
        return Err(Error::Domain("continued fraction depth must be at least 1".into()));
    }
    if !x.certainly_positive() {
        return Err(Error::Domain("continued fraction of a non-positive number".into()));
    }
    let prec = x.precision();
    let mut quotients = Vec::with_capacity(depth);
    let mut current = x.clone();
    while quotients.len() < depth {
        let a = current.floor_certified().ok_or_else(|| Error::PrecisionExhausted {
            bits: prec,
            what: format!("partial quotient #{}", quotients.len()),
        })?;
        let frac = &current - &Real::from_int(&a, prec);
        quotients.push(a);
        if quotients.len() == depth {
            break;
        }
        if frac.certified_sign() == Some(std::cmp::Ordering::Equal) {
            break;
        }
        if !frac.certainly_positive() {
            return Err(Error::PrecisionExhausted {
                bits: prec,
                what: format!("fractional part after quotient #{}", quotients.len() - 1),
            });
        }
        current = frac.recip();
    }
    Ok(quotients)
}

/// Expands a number given as a function of the working precision,
/// doubling the precision until `depth` quotients are certified or
/// [`MAX_PRECISION`] is exceeded.
pub fn continued_fraction_escalating<F>(make: F, depth: usize, start_bits: usize) -> Result<Vec<BigInt>>
where
    F: Fn(usize) -> Real,
{
    let mut bits = start_bits.max(super::real::MIN_PRECISION);
    loop {
        match continued_fraction(&make(bits), depth) {
            Err(Error::PrecisionExhausted { .. }) if bits < MAX_PRECISION => bits *= 2,
            other => return other,
        }
    }
}

/// Convergents `p_k / q_k` of a list of partial quotients.
pub fn convergents(quotients: &[BigInt]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(quotients.len());
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    for a in quotients {
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push(Rational::new_raw(p.clone(), q.clone()));
    }
    out
}

/// `|x - p/q| * q²`, used to check the convergent approximation property.
pub fn scaled_error(x: &Real, conv: &Rational) -> Real {
    let prec = x.precision();
    let p = Real::from_int(conv.numer(), prec);
    let q = Real::from_int(conv.denom(), prec);
    let diff = (x - &(&p / &q)).abs();
    &diff * &(&q * &q)
}

/// True if `conv` has a positive denominator and is in lowest terms.
pub fn is_normalised(conv: &Rational) -> bool {
    use num_integer::Integer;
    conv.denom().is_positive() && conv.numer().gcd(conv.denom()).is_one()
}
