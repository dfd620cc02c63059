//! Exact integer primitives and certified real arithmetic.

pub mod cf;
pub mod real;

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use cf::{continued_fraction, continued_fraction_escalating, convergents, Rational};
pub use real::{default_precision, Real, DEFAULT_PRECISION, MAX_PRECISION, MIN_PRECISION};

/// Arbitrary-precision signed integer used throughout the crate.
pub type Integer = BigInt;

/// `floor(sqrt(n))` for `n >= 0`.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.sign() == Sign::Minus {
        return Err(Error::Domain(format!("isqrt of negative number {n}")));
    }
    Ok(n.sqrt())
}

/// `floor(sqrt(n))` for machine integers.
pub fn isqrt_u128(n: u128) -> u128 {
    n.isqrt()
}

// Moduli whose product is 64·63·65·11; a square must be a quadratic
// residue modulo each of them.
const FILTER_MODULI: [u32; 4] = [64, 63, 65, 11];
const FILTER_PRODUCT: u32 = 64 * 63 * 65 * 11;

struct ResidueFilter {
    tables: [Vec<bool>; 4],
}

impl ResidueFilter {
    fn new() -> Self {
        let tables = FILTER_MODULI.map(|m| {
            let mut t = vec![false; m as usize];
            for x in 0..m {
                t[((x * x) % m) as usize] = true;
            }
            t
        });
        ResidueFilter { tables }
    }

    fn may_be_square(&self, r: u32) -> bool {
        FILTER_MODULI
            .iter()
            .zip(&self.tables)
            .all(|(&m, t)| t[(r % m) as usize])
    }
}

fn filter() -> &'static ResidueFilter {
    static FILTER: std::sync::OnceLock<ResidueFilter> = std::sync::OnceLock::new();
    FILTER.get_or_init(ResidueFilter::new)
}

/// `(true, root)` if `n = root²` with `root >= 0`, otherwise `(false, 0)`.
pub fn is_perfect_square(n: &BigInt) -> (bool, BigInt) {
    if n.sign() == Sign::Minus {
        return (false, BigInt::zero());
    }
    let r = (n % FILTER_PRODUCT).to_u32().expect("residue fits in u32");
    if !filter().may_be_square(r) {
        return (false, BigInt::zero());
    }
    let root = n.sqrt();
    if &root * &root == *n {
        (true, root)
    } else {
        (false, BigInt::zero())
    }
}

/// Machine-word variant of [`is_perfect_square`].
pub fn is_square_u128(n: u128) -> Option<u128> {
    if !filter().may_be_square((n % FILTER_PRODUCT as u128) as u32) {
        return None;
    }
    let root = n.isqrt();
    (root * root == n).then_some(root)
}

/// Machine-word variant of [`is_perfect_square`].
pub fn is_square_u64(n: u64) -> Option<u64> {
    if !filter().may_be_square((n % FILTER_PRODUCT as u64) as u32) {
        return None;
    }
    let root = n.isqrt();
    (root * root == n).then_some(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&big(0)).unwrap(), big(0));
        assert_eq!(isqrt(&big(10)).unwrap(), big(3));
        assert_eq!(isqrt(&big(146361604)).unwrap(), big(12098));
        assert_eq!(big(12098) * big(12098), big(146361604));
        assert!(matches!(isqrt(&big(-1)), Err(Error::Domain(_))));
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(is_perfect_square(&big(9)), (true, big(3)));
        assert_eq!(is_perfect_square(&big(8)), (false, big(0)));
        assert_eq!(is_perfect_square(&big(4620 * 31680 + 4)), (true, big(12098)));
        assert_eq!(is_perfect_square(&big(-4)), (false, big(0)));
        assert_eq!(is_perfect_square(&big(0)), (true, big(0)));
    }

    #[test]
    fn filter_never_rejects_a_square() {
        for x in 0u32..FILTER_PRODUCT {
            let sq = (x as u64 * x as u64) % FILTER_PRODUCT as u64;
            assert!(filter().may_be_square(sq as u32));
        }
    }

    proptest! {
        #[test]
        fn isqrt_brackets(n in any::<u128>()) {
            let n = BigInt::from(n);
            let r = isqrt(&n).unwrap();
            prop_assert!(&r * &r <= n);
            let r1 = &r + 1;
            prop_assert!(n < &r1 * &r1);
        }

        #[test]
        fn square_flag_is_exact(root in any::<u64>(), delta in 0u64..3) {
            let n = BigInt::from(root) * BigInt::from(root) + BigInt::from(delta);
            let (flag, r) = is_perfect_square(&n);
            prop_assert_eq!(flag, delta == 0 || (root == 0 && delta == 1));
            if flag {
                prop_assert_eq!(&r * &r, n);
            } else {
                prop_assert_eq!(r, BigInt::zero());
            }
        }

        #[test]
        fn machine_variants_agree(n in any::<u64>()) {
            let (flag, r) = is_perfect_square(&BigInt::from(n));
            prop_assert_eq!(is_square_u64(n).map(BigInt::from), flag.then_some(r.clone()));
            prop_assert_eq!(is_square_u128(n as u128).map(BigInt::from), flag.then_some(r));
        }
    }
}
