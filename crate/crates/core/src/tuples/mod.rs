//! D(4)-pairs, triples and quadruples, their regular extensions and the
//! two-parameter family `c_ν^±` of extensions of a fixed pair.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_perfect_square, Real};
use crate::error::{Error, Result};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn sq_plus_four_root(x: &BigInt, y: &BigInt) -> Option<BigInt> {
    let (ok, root) = is_perfect_square(&(x * y + 4));
    ok.then_some(root)
}

/// A pair `a < b` with `ab + 4 = r²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct D4Pair {
    #[serde(with = "crate::json::int")]
    pub a: BigInt,
    #[serde(with = "crate::json::int")]
    pub b: BigInt,
    #[serde(with = "crate::json::int")]
    pub r: BigInt,
}

/// A triple `a < b < c` with `ac + 4 = s²` and `bc + 4 = t²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct D4Triple {
    #[serde(with = "crate::json::int")]
    pub a: BigInt,
    #[serde(with = "crate::json::int")]
    pub b: BigInt,
    #[serde(with = "crate::json::int")]
    pub c: BigInt,
    #[serde(with = "crate::json::int")]
    pub r: BigInt,
    #[serde(with = "crate::json::int")]
    pub s: BigInt,
    #[serde(with = "crate::json::int")]
    pub t: BigInt,
}

/// A quadruple `a < b < c < d` with `ad+4 = x²`, `bd+4 = y²`, `cd+4 = z²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct D4Quadruple {
    pub triple: D4Triple,
    #[serde(with = "crate::json::int")]
    pub d: BigInt,
    #[serde(with = "crate::json::int")]
    pub x: BigInt,
    #[serde(with = "crate::json::int")]
    pub y: BigInt,
    #[serde(with = "crate::json::int")]
    pub z: BigInt,
}

/// Whether a quadruple arises from the regular construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularityTag {
    RegularPlus,
    RegularMinus,
    Irregular,
}

impl RegularityTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RegularityTag::RegularPlus => "regular_plus",
            RegularityTag::RegularMinus => "regular_minus",
            RegularityTag::Irregular => "irregular",
        }
    }

    pub fn is_regular(self) -> bool {
        self != RegularityTag::Irregular
    }
}

impl std::fmt::Display for RegularityTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sign `τ` selecting one of the two branches `c_ν^+` / `c_ν^-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }
}

/// Builds a pair from two positive integers in either order.
pub fn make_pair(a: &BigInt, b: &BigInt) -> Result<D4Pair> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    if !a.is_positive() || a == b {
        return Err(Error::Domain(format!(
            "pair elements must be distinct and positive, got {a}, {b}"
        )));
    }
    let r = sq_plus_four_root(a, b).ok_or_else(|| Error::NotAPair {
        a: a.to_string(),
        b: b.to_string(),
    })?;
    Ok(D4Pair {
        a: a.clone(),
        b: b.clone(),
        r,
    })
}

/// Builds a triple from three positive integers in any order.
pub fn make_triple(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<D4Triple> {
    let mut v = [a.clone(), b.clone(), c.clone()];
    v.sort();
    let [a, b, c] = v;
    let pair = make_pair(&a, &b)?;
    if b == c {
        return Err(Error::NotATuple(format!("repeated element {c}")));
    }
    let s = sq_plus_four_root(&a, &c).ok_or_else(|| Error::NotATuple(format!("{a}*{c}+4 is not a square")))?;
    let t = sq_plus_four_root(&b, &c).ok_or_else(|| Error::NotATuple(format!("{b}*{c}+4 is not a square")))?;
    Ok(D4Triple {
        a,
        b,
        c,
        r: pair.r,
        s,
        t,
    })
}

/// Convenience constructor from machine integers.
pub fn triple(a: i64, b: i64, c: i64) -> Result<D4Triple> {
    make_triple(&big(a), &big(b), &big(c))
}

/// Builds a quadruple from four positive integers in any order.
pub fn make_quadruple(elems: [&BigInt; 4]) -> Result<D4Quadruple> {
    let mut v: Vec<BigInt> = elems.iter().map(|x| (*x).clone()).collect();
    v.sort();
    let triple = make_triple(&v[0], &v[1], &v[2])?;
    let d = v[3].clone();
    if d == triple.c {
        return Err(Error::NotATuple(format!("repeated element {d}")));
    }
    let root =
        |e: &BigInt| sq_plus_four_root(e, &d).ok_or_else(|| Error::NotATuple(format!("{e}*{d}+4 is not a square")));
    let x = root(&triple.a)?;
    let y = root(&triple.b)?;
    let z = root(&triple.c)?;
    Ok(D4Quadruple { triple, d, x, y, z })
}

impl D4Pair {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        make_pair(&big(a), &big(b))
    }
}

impl D4Triple {
    pub fn pair(&self) -> D4Pair {
        D4Pair {
            a: self.a.clone(),
            b: self.b.clone(),
            r: self.r.clone(),
        }
    }

    pub fn elements(&self) -> [BigInt; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    /// `c = a + b + 2r`.
    pub fn is_regular(&self) -> bool {
        self.c == regular_triple_c(&self.pair())
    }

    /// `(cr - st) / 2`, the third distinguished value of `|z0|`, `|z1|`.
    pub fn half_gap(&self) -> BigInt {
        (&self.c * &self.r - &self.s * &self.t) / 2
    }
}

impl D4Quadruple {
    pub fn elements(&self) -> [BigInt; 4] {
        [
            self.triple.a.clone(),
            self.triple.b.clone(),
            self.triple.c.clone(),
            self.d.clone(),
        ]
    }
}

/// True iff the elements are distinct, positive, and every pairwise product
/// plus 4 is a perfect square.
pub fn verify_tuple(elems: &[BigInt]) -> bool {
    if elems.iter().any(|x| !x.is_positive()) {
        return false;
    }
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i + 1..] {
            if x == y || !is_perfect_square(&(x * y + 4)).0 {
                return false;
            }
        }
    }
    true
}

/// The smallest extension `c = a + b + 2r` of a pair.
pub fn regular_triple_c(pair: &D4Pair) -> BigInt {
    &pair.a + &pair.b + 2 * &pair.r
}

/// The regular triple `{a, b, a+b+2r}`.
pub fn regular_triple(pair: &D4Pair) -> D4Triple {
    let c = regular_triple_c(pair);
    make_triple(&pair.a, &pair.b, &c).expect("a+b+2r always extends a D(4)-pair")
}

fn d_regular(t: &D4Triple, sign: i64) -> BigInt {
    let abc = &t.a * &t.b * &t.c;
    let rst = &t.r * &t.s * &t.t;
    let num = abc + sign * rst;
    debug_assert!(num.is_even(), "abc ± rst is always even for D(4)-triples");
    &t.a + &t.b + &t.c + num / 2
}

/// `d₊ = a + b + c + (abc + rst)/2`.
pub fn d_plus(t: &D4Triple) -> BigInt {
    d_regular(t, 1)
}

/// `d₋ = a + b + c + (abc - rst)/2`; zero exactly for regular triples.
pub fn d_minus(t: &D4Triple) -> BigInt {
    d_regular(t, -1)
}

/// `c_ν^τ` by the integer recurrence
/// `c_{ν+1} = (ab+2)c_ν − c_{ν−1} + 2(a+b)` with `c_0 = 0`, `c_1 = a+b+2τr`.
pub fn c_family(pair: &D4Pair, nu: u32, branch: Branch) -> BigInt {
    let step = &pair.a * &pair.b + 2;
    let shift = 2 * (&pair.a + &pair.b);
    let mut prev = BigInt::zero();
    let mut cur = &pair.a + &pair.b + 2 * branch.sign() * &pair.r;
    if nu == 0 {
        return prev;
    }
    for _ in 1..nu {
        let next = &step * &cur - &prev + &shift;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The closed form
/// `c_ν^τ = 4/(ab)·{((√b+τ√a)/2)²·α^{2ν} + ((√b−τ√a)/2)²·α^{−2ν} − (a+b)/2}`
/// with `α = (r + √(ab))/2`, evaluated in interval arithmetic.
pub fn c_family_closed_form(pair: &D4Pair, nu: u32, branch: Branch, prec: usize) -> Real {
    let a = Real::from_int(&pair.a, prec);
    let b = Real::from_int(&pair.b, prec);
    let r = Real::from_int(&pair.r, prec);
    let ab = &a * &b;
    let two = Real::from_i64(2, prec);
    let tau = Real::from_i64(branch.sign(), prec);
    let sa = a.sqrt();
    let sb = b.sqrt();
    let alpha = (&r + &ab.sqrt()) / &two;
    let alpha2 = alpha.powi(2 * nu as i64);
    let lead = ((&sb + &(&tau * &sa)) / &two).powi(2);
    let tail = ((&sb - &(&tau * &sa)) / &two).powi(2);
    let inner = &lead * &alpha2 + &tail / &alpha2 - (&a + &b) / &two;
    Real::from_i64(4, prec) / ab * inner
}

/// Locates `c` in the family of the pair: `Some((ν, τ))` with
/// `c = c_ν^τ`, preferring `τ = +` when both branches coincide.
pub fn c_family_index(pair: &D4Pair, c: &BigInt) -> Option<(u32, Branch)> {
    for branch in [Branch::Plus, Branch::Minus] {
        let step = &pair.a * &pair.b + 2;
        let shift = 2 * (&pair.a + &pair.b);
        let mut prev = BigInt::zero();
        let mut cur = &pair.a + &pair.b + 2 * branch.sign() * &pair.r;
        let mut nu = 1u32;
        while &cur <= c {
            if &cur == c {
                return Some((nu, branch));
            }
            let next = &step * &cur - &prev + &shift;
            prev = std::mem::replace(&mut cur, next);
            nu += 1;
        }
    }
    None
}

/// The two thresholds that appear in the `c_ν^τ` case analysis when
/// both `s'` and `t'` are large: `c ≥ c_5^-`, and `c ≥ c_4^-` with `a ≥ 35`.
/// Callers combine them as their argument requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyThresholds {
    pub at_least_c5_minus: bool,
    pub at_least_c4_minus_and_a_ge_35: bool,
}

pub fn family_thresholds(pair: &D4Pair, c: &BigInt) -> FamilyThresholds {
    FamilyThresholds {
        at_least_c5_minus: c >= &c_family(pair, 5, Branch::Minus),
        at_least_c4_minus_and_a_ge_35: c >= &c_family(pair, 4, Branch::Minus) && pair.a >= big(35),
    }
}

/// Where the descended element `c'` lies relative to the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DescentPosition {
    Zero,
    BetweenZeroAndB,
    EqualsB,
    AboveB,
}

/// Result of one descent step `{a, b, c} → {a, b, c'}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentStep {
    #[serde(with = "crate::json::int")]
    pub s_prime: BigInt,
    #[serde(with = "crate::json::int")]
    pub t_prime: BigInt,
    #[serde(with = "crate::json::int")]
    pub c_prime: BigInt,
    pub position: DescentPosition,
}

/// `s' = (rs − at)/2`, `t' = (rt − bs)/2`, `c' = (s'² − 4)/a`.
pub fn pair_descent_step(t: &D4Triple) -> Result<DescentStep> {
    let s_num = &t.r * &t.s - &t.a * &t.t;
    let t_num = &t.r * &t.t - &t.b * &t.s;
    if s_num.is_odd() || t_num.is_odd() {
        return Err(Error::Consistency(format!(
            "descent parity violated for {{{}, {}, {}}}",
            t.a, t.b, t.c
        )));
    }
    let s_prime = s_num / 2;
    let t_prime = t_num / 2;
    let num: BigInt = &s_prime * &s_prime - 4;
    let (c_prime, rem) = num.div_rem(&t.a);
    if !rem.is_zero() {
        return Err(Error::Consistency(format!(
            "descent element not integral for {{{}, {}, {}}}",
            t.a, t.b, t.c
        )));
    }
    // The companion relation b·c' + 4 = t'² must hold as well.
    if &t.b * &c_prime + 4 != &t_prime * &t_prime {
        return Err(Error::Consistency("descent companion square mismatch".into()));
    }
    let position = if c_prime.is_zero() {
        DescentPosition::Zero
    } else if c_prime.is_negative() {
        return Err(Error::Consistency(format!("negative descent element {c_prime}")));
    } else if c_prime < t.b {
        DescentPosition::BetweenZeroAndB
    } else if c_prime == t.b {
        DescentPosition::EqualsB
    } else {
        DescentPosition::AboveB
    };
    Ok(DescentStep {
        s_prime,
        t_prime,
        c_prime,
        position,
    })
}

/// Compares `d` (the largest element) and every other element against the
/// regular extensions of the complementary sub-triple.
pub fn classify_quadruple(q: &D4Quadruple) -> RegularityTag {
    let e = q.elements();
    let mut minus = false;
    for skip in (0..4).rev() {
        let rest: Vec<&BigInt> = (0..4).filter(|&i| i != skip).map(|i| &e[i]).collect();
        let Ok(sub) = make_triple(rest[0], rest[1], rest[2]) else {
            continue;
        };
        let x = &e[skip];
        if x == &d_plus(&sub) {
            return RegularityTag::RegularPlus;
        }
        let dm = d_minus(&sub);
        if !dm.is_zero() && x == &dm {
            minus = true;
        }
    }
    if minus {
        RegularityTag::RegularMinus
    } else {
        RegularityTag::Irregular
    }
}

/// `max{ab + a + b, 4b}`, the lower bound on non-regular extensions.
pub fn c_gap_floor(pair: &D4Pair) -> BigInt {
    let p = &pair.a * &pair.b + &pair.a + &pair.b;
    let q = 4 * &pair.b;
    p.max(q)
}

/// `c = a + b + 2r` or `c > max{ab + a + b, 4b}`.
pub fn satisfies_c_gap(t: &D4Triple) -> bool {
    t.is_regular() || t.c > c_gap_floor(&t.pair())
}
