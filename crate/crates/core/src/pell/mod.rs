//! Fundamental solutions of the Pellian system attached to a D(4)-triple,
//! the binary recurrences they generate, and their common terms.
//!
//! Extending `{a, b, c}` by `d` amounts to solving
//!
//! ```text
//! c·x² − a·z² = 4(c − a),    c·y² − b·z² = 4(c − b)
//! ```
//!
//! simultaneously. Every solution of the first equation is
//! `z = v_m` for a class `(z0, x0)` and the recurrence
//! `v_0 = z0, v_1 = (s·z0 + c·x0)/2, v_{m+2} = s·v_{m+1} − v_m`;
//! the second equation gives `w_n` in the same way with `t`, `(z1, y1)`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_perfect_square, Real};
use crate::error::{Error, Result};
use crate::tuples::{d_plus, D4Triple};

/// Which of the two equations a class solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    /// `c·x² − a·z² = 4(c − a)`, sequence `v_m`, unit trace `s`.
    A,
    /// `c·y² − b·z² = 4(c − b)`, sequence `w_n`, unit trace `t`.
    B,
}

/// A fundamental solution `(z0, x0)` (side A) or `(z1, y1)` (side B).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PellClass {
    pub side: Side,
    #[serde(with = "crate::json::int")]
    pub z: BigInt,
    /// `x0` on side A, `y1` on side B.
    #[serde(with = "crate::json::int")]
    pub x: BigInt,
    /// `|z| < sqrt(c·sqrt(c)/sqrt(e))` with `e` the side's element; the
    /// `x` range `1 <= x < sqrt(unit + 2)` holds for every enumerated class.
    pub in_range: bool,
}

impl PellClass {
    pub fn new(side: Side, z: i64, x: i64) -> Self {
        PellClass {
            side,
            z: BigInt::from(z),
            x: BigInt::from(x),
            in_range: true,
        }
    }
}

/// `(element, unit trace)` for a side: `(a, s)` or `(b, t)`.
fn side_data(t: &D4Triple, side: Side) -> (&BigInt, &BigInt) {
    match side {
        Side::A => (&t.a, &t.s),
        Side::B => (&t.b, &t.t),
    }
}

/// Checks `c·x² − e·z² = 4(c − e)` for the class.
pub fn satisfies_equation(t: &D4Triple, class: &PellClass) -> bool {
    let (e, _) = side_data(t, class.side);
    &t.c * &class.x * &class.x - e * &class.z * &class.z == 4 * (&t.c - e)
}

fn enumerate_classes(t: &D4Triple, side: Side) -> Vec<PellClass> {
    let (e, unit) = side_data(t, side);
    let limit = unit + 2;
    let rhs = 4 * (&t.c - e);
    // |z|⁴·e < c³  ⇔  |z| < sqrt(c·sqrt(c)/sqrt(e))
    let c3 = &t.c * &t.c * &t.c;
    let mut out = Vec::new();
    let mut x = BigInt::from(1);
    while &x * &x < limit {
        let num: BigInt = &t.c * &x * &x - &rhs;
        if !num.is_negative() && (&num % e).is_zero() {
            let (ok, z) = is_perfect_square(&(&num / e));
            if ok {
                let z4 = &z * &z * &z * &z;
                let in_range = z4 * e < c3;
                if z.is_zero() {
                    out.push(PellClass {
                        side,
                        z,
                        x: x.clone(),
                        in_range,
                    });
                } else {
                    out.push(PellClass {
                        side,
                        z: -&z,
                        x: x.clone(),
                        in_range,
                    });
                    out.push(PellClass {
                        side,
                        z,
                        x: x.clone(),
                        in_range,
                    });
                }
            }
        }
        x += 1;
    }
    out.sort_by(|p, q| (&p.x, &p.z).cmp(&(&q.x, &q.z)));
    out
}

/// All `(z0, x0)` with `1 <= x0 < sqrt(s+2)`, both signs of `z0`.
pub fn enumerate_classes_a(t: &D4Triple) -> Vec<PellClass> {
    enumerate_classes(t, Side::A)
}

/// All `(z1, y1)` with `1 <= y1 < sqrt(t+2)`, both signs of `z1`.
pub fn enumerate_classes_b(t: &D4Triple) -> Vec<PellClass> {
    enumerate_classes(t, Side::B)
}

/// One clause of the classification of `(z0, z1)` by the parities of the
/// indices of a common term `v_m = w_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassCase {
    /// `m, n` even, `z0 = z1`, `|z0| = 2`.
    EeZ2,
    /// `m, n` even, `z0 = z1`, `|z0| = (cr − st)/2`.
    EeHalf,
    /// `m` odd, `n` even: `|z0| = t`, `|z1| = (cr − st)/2`, `z0·z1 < 0`.
    Oe,
    /// `m` even, `n` odd: `|z1| = s`, `|z0| = (cr − st)/2`, `z0·z1 < 0`.
    Eo,
    /// `m, n` odd: `|z0| = t`, `|z1| = s`, `z0·z1 > 0`.
    Oo,
}

impl ClassCase {
    /// Parities `(m odd, n odd)` the clause belongs to.
    pub fn parities(self) -> (bool, bool) {
        match self {
            ClassCase::EeZ2 | ClassCase::EeHalf => (false, false),
            ClassCase::Oe => (true, false),
            ClassCase::Eo => (false, true),
            ClassCase::Oo => (true, true),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClassCase::EeZ2 => "ee_z2",
            ClassCase::EeHalf => "ee_half",
            ClassCase::Oe => "oe",
            ClassCase::Eo => "eo",
            ClassCase::Oo => "oo",
        }
    }
}

/// Every clause matched by the pair of classes; empty means unclassified.
/// Tiny triples can match several clauses because `(cr − st)/2` may
/// coincide with `2`, `s` or `t`.
pub fn classify_case(class_a: &PellClass, class_b: &PellClass, t: &D4Triple) -> Vec<ClassCase> {
    let h = t.half_gap();
    let z0 = &class_a.z;
    let z1 = &class_b.z;
    let a0 = z0.abs();
    let a1 = z1.abs();
    let prod_sign = (z0 * z1).signum();
    let two = BigInt::from(2);
    let mut out = Vec::new();
    if z0 == z1 && a0 == two {
        out.push(ClassCase::EeZ2);
    }
    if z0 == z1 && a0 == h {
        out.push(ClassCase::EeHalf);
    }
    if a0 == t.t && a1 == h && prod_sign.is_negative() {
        out.push(ClassCase::Oe);
    }
    if a1 == t.s && a0 == h && prod_sign.is_negative() {
        out.push(ClassCase::Eo);
    }
    if a0 == t.t && a1 == t.s && prod_sign.is_positive() {
        out.push(ClassCase::Oo);
    }
    out
}

fn first_two(t: &D4Triple, class: &PellClass) -> Result<(BigInt, BigInt)> {
    let (_, unit) = side_data(t, class.side);
    let num = unit * &class.z + &t.c * &class.x;
    if num.is_odd() {
        return Err(Error::Consistency(format!(
            "odd first step for class ({}, {}) on {{{}, {}, {}}}",
            class.z, class.x, t.a, t.b, t.c
        )));
    }
    Ok((class.z.clone(), num / 2))
}

/// The first `count` terms of the class's recurrence.
pub fn gen_terms(t: &D4Triple, class: &PellClass, count: usize) -> Result<Vec<BigInt>> {
    let (_, unit) = side_data(t, class.side);
    let (v0, v1) = first_two(t, class)?;
    let mut out = Vec::with_capacity(count);
    out.push(v0);
    out.push(v1);
    while out.len() < count {
        let k = out.len();
        let next = unit * &out[k - 1] - &out[k - 2];
        out.push(next);
    }
    out.truncate(count.max(1));
    Ok(out)
}

/// `v_0, …, v_{count−1}` for a side-A class.
pub fn gen_v(t: &D4Triple, class_a: &PellClass, count: usize) -> Result<Vec<BigInt>> {
    debug_assert_eq!(class_a.side, Side::A);
    gen_terms(t, class_a, count)
}

/// `w_0, …, w_{count−1}` for a side-B class.
pub fn gen_w(t: &D4Triple, class_b: &PellClass, count: usize) -> Result<Vec<BigInt>> {
    debug_assert_eq!(class_b.side, Side::B);
    gen_terms(t, class_b, count)
}

/// Terms `(index, value)` with `value <= z_max`; the sequence is strictly
/// increasing from index 1 on, so generation stops at the first overshoot.
fn terms_up_to(t: &D4Triple, class: &PellClass, z_max: &BigInt) -> Result<Vec<(u64, BigInt)>> {
    let (_, unit) = side_data(t, class.side);
    let (v0, v1) = first_two(t, class)?;
    let mut out = Vec::new();
    if &v0 <= z_max {
        out.push((0, v0.clone()));
    }
    let (mut prev, mut cur, mut idx) = (v0, v1, 1u64);
    while &cur <= z_max {
        out.push((idx, cur.clone()));
        let next = unit * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
        idx += 1;
    }
    Ok(out)
}

/// A common term `z = v_m = w_n` and the extension it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionSolution {
    pub m: u64,
    pub n: u64,
    #[serde(with = "crate::json::int")]
    pub z: BigInt,
    #[serde(with = "crate::json::int")]
    pub d: BigInt,
    pub class_a: PellClass,
    pub class_b: PellClass,
    pub cases: Vec<ClassCase>,
}

impl IntersectionSolution {
    /// `n − 1 <= m <= 2n + 1`.
    pub fn index_relation_holds(&self) -> bool {
        self.m + 1 >= self.n && self.m <= 2 * self.n + 1
    }

    /// Some matched clause agrees with the parities of `(m, n)`.
    pub fn parity_consistent(&self) -> bool {
        let p = (self.m % 2 == 1, self.n % 2 == 1);
        self.cases.iter().any(|c| c.parities() == p)
    }
}

/// Common terms split into genuine extensions (`d > c`) and the rest
/// (`d = 0`, `d ∈ {a, b}`, or `d < c`).
#[derive(Debug, Clone, Default, Serialize)]
pub struct Intersections {
    pub main: Vec<IntersectionSolution>,
    pub small: Vec<IntersectionSolution>,
}

impl Intersections {
    pub fn d_values(&self) -> Vec<BigInt> {
        self.main.iter().map(|s| s.d.clone()).collect()
    }

    /// Every `d > 0` found, distinct from `a, b, c`, ascending.
    pub fn all_extensions(&self, t: &D4Triple) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = self
            .main
            .iter()
            .chain(&self.small)
            .map(|s| s.d.clone())
            .filter(|d| d.is_positive() && d != &t.a && d != &t.b && d != &t.c)
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

fn merge_class_pair(t: &D4Triple, ca: &PellClass, cb: &PellClass, z_max: &BigInt) -> Result<Vec<IntersectionSolution>> {
    let two = BigInt::from(2);
    let vs = terms_up_to(t, ca, z_max)?;
    let ws = terms_up_to(t, cb, z_max)?;
    let cases = classify_case(ca, cb, t);
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < vs.len() && j < ws.len() {
        match vs[i].1.cmp(&ws[j].1) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let z = &vs[i].1;
                if z >= &two {
                    let (d, rem) = (z * z - 4u32).div_rem(&t.c);
                    if rem.is_zero() {
                        out.push(IntersectionSolution {
                            m: vs[i].0,
                            n: ws[j].0,
                            z: z.clone(),
                            d,
                            class_a: ca.clone(),
                            class_b: cb.clone(),
                            cases: cases.clone(),
                        });
                    }
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ok(out)
}

/// All common terms `2 <= z = v_m = w_n <= z_max` over every pair of
/// classes, deduplicated by `z` (first class pair in sorted order wins).
/// Class pairs are processed in parallel and merged deterministically.
pub fn find_intersections(t: &D4Triple, z_max: &BigInt) -> Result<Intersections> {
    let classes_a = enumerate_classes_a(t);
    let classes_b = enumerate_classes_b(t);
    let pairs: Vec<(&PellClass, &PellClass)> = classes_a
        .iter()
        .flat_map(|ca| classes_b.iter().map(move |cb| (ca, cb)))
        .collect();
    let per_pair: Vec<Vec<IntersectionSolution>> = if pairs.len() > 8 {
        pairs
            .par_iter()
            .map(|(ca, cb)| merge_class_pair(t, ca, cb, z_max))
            .collect::<Result<_>>()?
    } else {
        pairs
            .iter()
            .map(|(ca, cb)| merge_class_pair(t, ca, cb, z_max))
            .collect::<Result<_>>()?
    };
    let mut all: Vec<IntersectionSolution> = per_pair.into_iter().flatten().collect();
    all.sort_by(|p, q| p.z.cmp(&q.z));
    all.dedup_by(|later, earlier| later.z == earlier.z);
    let mut result = Intersections::default();
    for sol in all {
        let is_main = sol.d > t.c;
        if is_main {
            result.main.push(sol);
        } else {
            result.small.push(sol);
        }
    }
    Ok(result)
}

/// `(ε+1)/(0.999ε)·n + 1.5 − 0.4·(ε+1)/(0.999ε)`: the bound on `m` when
/// `c > b^ε`.
pub fn index_upper_bound(eps: &Real, n: u64) -> Result<Real> {
    let p = eps.precision();
    let one = Real::from_i64(1, p);
    let twelve = Real::from_i64(12, p);
    if eps.certified_lt(&one) == Some(true) || eps.certified_lt(&twelve) == Some(false) {
        return Err(Error::Domain(format!("ε = {eps} outside [1, 12)")));
    }
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let ratio = (eps + &one) / (Real::lit("0.999", p) * eps);
    let n = Real::from_i64(n as i64, p);
    Ok(&ratio * &n + Real::lit("1.5", p) - Real::lit("0.4", p) * &ratio)
}

/// Parities of a candidate index pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexParity {
    BothEven,
    BothOdd,
    Mixed,
}

/// Residues of both sides of the modular constraints on `(m, n)`.
///
/// For `v_{2M} = w_{2N}`:
/// `a·z0·M² − b·z1·N² ≡ t·y1·N − s·x0·M (mod c)`.
/// For `v_{2M+1} = w_{2N+1}`:
/// `±2t(a·M(M+1) − b·N(N+1)) ≡ 2rs(N − M)` and
/// `±2s(a·M(M+1) − b·N(N+1)) ≡ 2rt(N − M) (mod c)`.
/// Mixed parities carry no constraint here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceRecord {
    pub parity: IndexParity,
    pub half_m: u64,
    pub half_n: u64,
    /// Left and right residues (even case), or `(lhs, rhs)` of the first
    /// odd congruence with the `+` sign.
    #[serde(with = "crate::json::ints")]
    pub lhs: Vec<BigInt>,
    #[serde(with = "crate::json::ints")]
    pub rhs: Vec<BigInt>,
    /// `None` when the parities impose no congruence.
    pub satisfied: Option<bool>,
}

pub fn congruence_residues(t: &D4Triple, class_a: &PellClass, class_b: &PellClass, m: u64, n: u64) -> CongruenceRecord {
    let c = &t.c;
    let md = |x: BigInt| x.mod_floor(c);
    let parity = match (m % 2, n % 2) {
        (0, 0) => IndexParity::BothEven,
        (1, 1) => IndexParity::BothOdd,
        _ => IndexParity::Mixed,
    };
    let hm = BigInt::from(m / 2);
    let hn = BigInt::from(n / 2);
    match parity {
        IndexParity::BothEven => {
            let lhs = md(&t.a * &class_a.z * &hm * &hm - &t.b * &class_b.z * &hn * &hn);
            let rhs = md(&t.t * &class_b.x * &hn - &t.s * &class_a.x * &hm);
            CongruenceRecord {
                parity,
                half_m: m / 2,
                half_n: n / 2,
                satisfied: Some(lhs == rhs),
                lhs: vec![lhs],
                rhs: vec![rhs],
            }
        }
        IndexParity::BothOdd => {
            let core = &t.a * &hm * (&hm + 1) - &t.b * &hn * (&hn + 1);
            let diff = &hn - &hm;
            let l8 = md(2 * &t.t * &core);
            let r8 = md(2 * &t.r * &t.s * &diff);
            let l9 = md(2 * &t.s * &core);
            let r9 = md(2 * &t.r * &t.t * &diff);
            let holds = |l: &BigInt, r: &BigInt| l == r || md(-l) == *r;
            let ok = holds(&l8, &r8) && holds(&l9, &r9);
            CongruenceRecord {
                parity,
                half_m: m / 2,
                half_n: n / 2,
                satisfied: Some(ok),
                lhs: vec![l8, l9],
                rhs: vec![r8, r9],
            }
        }
        IndexParity::Mixed => CongruenceRecord {
            parity,
            half_m: m / 2,
            half_n: n / 2,
            lhs: vec![],
            rhs: vec![],
            satisfied: None,
        },
    }
}

/// Candidate index pairs `(m, n)` with `n <= max_n`, `n − 1 <= m <= 2n + 1`,
/// whose parities match a clause of the class pair and which pass the
/// modular constraints.
pub fn congruence_filter(t: &D4Triple, class_a: &PellClass, class_b: &PellClass, max_n: u64) -> Vec<(u64, u64)> {
    let cases = classify_case(class_a, class_b, t);
    let mut out = Vec::new();
    for n in 0..=max_n {
        for m in n.saturating_sub(1)..=2 * n + 1 {
            let p = (m % 2 == 1, n % 2 == 1);
            if !cases.is_empty() && !cases.iter().any(|c| c.parities() == p) {
                continue;
            }
            if congruence_residues(t, class_a, class_b, m, n).satisfied != Some(false) {
                out.push((m, n));
            }
        }
    }
    out
}

/// Direction of a one-step shift of a class along its orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftDirection {
    /// Replace the class by the previous orbit element; old index `m`
    /// becomes `m + 1`.
    Down,
    /// Replace the class by the next orbit element; old index `m`
    /// becomes `m − 1`.
    Up,
}

/// A shifted class and the offset to add to old indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftedClass {
    pub class: PellClass,
    pub offset: i64,
}

/// Moves a class one step along its orbit, so that e.g. the sequence
/// starting at `(cr − st)/2` is the sequence starting at `−t`, shifted by
/// one index. Only classes whose `|z|` is one of the distinguished values
/// (`t` or `(cr − st)/2` on side A, `s` or `(cr − st)/2` on side B) are
/// shiftable.
pub fn shift_class(t: &D4Triple, class: &PellClass, direction: ShiftDirection) -> Result<ShiftedClass> {
    let h = t.half_gap();
    let (e, unit) = side_data(t, class.side);
    let other = match class.side {
        Side::A => &t.t,
        Side::B => &t.s,
    };
    let az = class.z.abs();
    if az != h && &az != other {
        return Err(Error::NotShiftable(format!("|z| = {az} is neither {h} nor {other}")));
    }
    let sign: i64 = match direction {
        ShiftDirection::Down => -1,
        ShiftDirection::Up => 1,
    };
    let z_num = unit * &class.z + sign * &t.c * &class.x;
    let x_num = unit * &class.x + sign * e * &class.z;
    if z_num.is_odd() || x_num.is_odd() {
        return Err(Error::Consistency("shift parity violated".into()));
    }
    let z: BigInt = z_num / 2;
    let x: BigInt = x_num / 2;
    let (ee, _) = side_data(t, class.side);
    let c3 = &t.c * &t.c * &t.c;
    let in_range = x.is_positive() && &x * &x < unit + 2 && &z * &z * &z * &z * ee < c3;
    Ok(ShiftedClass {
        class: PellClass {
            side: class.side,
            z,
            x,
            in_range,
        },
        offset: -sign,
    })
}

/// Exact check of `(c/(2x))(u − 1)^{k−1} < term_k < c·x·u^{k−1}` where
/// `u` is the side's unit trace and `x` the class's `x0` or `y1`.
pub fn growth_sandwich_holds(t: &D4Triple, class: &PellClass, index: u32, term: &BigInt) -> bool {
    let (_, unit) = side_data(t, class.side);
    let k = index.saturating_sub(1);
    let lower = &t.c * num_traits::pow(unit - 1, k as usize);
    let upper = &t.c * &class.x * num_traits::pow(unit.clone(), k as usize);
    lower < 2 * &class.x * term && term < &upper
}

/// Whether clause `Oe` is compatible with `d` (it cannot occur above `d₊`).
pub fn clause_oe_allowed(t: &D4Triple, d: &BigInt) -> bool {
    d <= &d_plus(t)
}

/// `m` as a machine integer for reporting.
pub fn index_u32(m: u64) -> Option<u32> {
    m.to_u32()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::triple;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn pairs(cl: &[PellClass]) -> Vec<(i64, i64)> {
        cl.iter()
            .map(|c| (c.z.to_i64().unwrap(), c.x.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn classes_of_small_triples() {
        let t = triple(1, 5, 12).unwrap();
        assert_eq!(pairs(&enumerate_classes_a(&t)), vec![(-2, 2), (2, 2)]);
        assert_eq!(pairs(&enumerate_classes_b(&t)), vec![(-2, 2), (2, 2), (-4, 3), (4, 3)]);
        let t = triple(1, 12, 21).unwrap();
        assert_eq!(pairs(&enumerate_classes_a(&t)), vec![(-2, 2), (2, 2)]);
        // 21y² − 12z² = 36 with y < sqrt(18): brute force over y.
        let mut want = Vec::new();
        for y in 1i64..=4 {
            let num = 21 * y * y - 36;
            if num >= 0 && num % 12 == 0 {
                let z = ((num / 12) as f64).sqrt() as i64;
                if z * z == num / 12 {
                    if z == 0 {
                        want.push((0, y));
                    } else {
                        want.push((-z, y));
                        want.push((z, y));
                    }
                }
            }
        }
        assert_eq!(pairs(&enumerate_classes_b(&t)), want);
        for c in enumerate_classes_a(&t).iter().chain(&enumerate_classes_b(&t)) {
            assert!(satisfies_equation(&t, c));
        }
    }

    #[test]
    fn recurrences() {
        let t = triple(1, 5, 12).unwrap();
        assert_eq!(
            gen_v(&t, &PellClass::new(Side::A, 2, 2), 4).unwrap(),
            ints(&[2, 16, 62, 232])
        );
        assert_eq!(
            gen_v(&t, &PellClass::new(Side::A, -2, 2), 4).unwrap(),
            ints(&[-2, 8, 34, 128])
        );
        assert_eq!(
            gen_w(&t, &PellClass::new(Side::B, -2, 2), 4).unwrap(),
            ints(&[-2, 4, 34, 268])
        );
        let odd = triple(1, 12, 21).unwrap();
        assert!(gen_v(&odd, &PellClass::new(Side::A, 1, 2), 2).is_err());
    }

    #[test]
    fn classification_of_small_triple() {
        let t = triple(1, 5, 12).unwrap();
        assert_eq!(t.half_gap(), BigInt::from(2));
        let ca = PellClass::new(Side::A, -2, 2);
        let cb = PellClass::new(Side::B, -2, 2);
        let cases = classify_case(&ca, &cb, &t);
        assert!(cases.contains(&ClassCase::EeZ2));
        assert!(cases.contains(&ClassCase::EeHalf));
        let ca = PellClass::new(Side::A, 8, 3);
        let cb = PellClass::new(Side::B, 4, 3);
        assert_eq!(classify_case(&ca, &cb, &t), vec![ClassCase::Oo]);
        let ca = PellClass::new(Side::A, 8, 3);
        let cb = PellClass::new(Side::B, -2, 2);
        assert!(classify_case(&ca, &cb, &t).contains(&ClassCase::Oe));
    }

    #[test]
    fn intersections_of_1_5_12() {
        let t = triple(1, 5, 12).unwrap();
        let res = find_intersections(&t, &BigInt::from(1_000_000)).unwrap();
        let hit = res.main.iter().find(|s| s.d == BigInt::from(96)).unwrap();
        assert_eq!((hit.m, hit.n, hit.z.clone()), (2, 2, BigInt::from(34)));
        assert_eq!(hit.class_a.z, BigInt::from(-2));
        assert_eq!(res.d_values(), ints(&[96]));
        assert!(res.main.iter().all(|s| s.index_relation_holds()));
        assert!(res.small.iter().any(|s| s.d.is_zero()));
        let none = find_intersections(&t, &BigInt::from(30)).unwrap();
        assert!(none.main.is_empty());
    }

    #[test]
    fn index_bound_examples() {
        let p = 256;
        let b = index_upper_bound(&Real::lit("11.99", p), 10).unwrap().to_f64();
        assert!((b - 11.911).abs() < 0.02, "{b}");
        let b = index_upper_bound(&Real::lit("1", p), 10).unwrap().to_f64();
        assert!((b - 20.72).abs() < 0.01, "{b}");
        let b = index_upper_bound(&Real::lit("3.377", p), 4).unwrap();
        assert_eq!(b.certified_lt(&Real::lit("6.1711", p)), Some(true));
        assert!(index_upper_bound(&Real::lit("12", p), 3).is_err());
        assert!(index_upper_bound(&Real::lit("0.5", p), 3).is_err());
    }

    #[test]
    fn congruences_on_known_solution() {
        let t = triple(1, 5, 12).unwrap();
        let ca = PellClass::new(Side::A, -2, 2);
        let cb = PellClass::new(Side::B, -2, 2);
        let rec = congruence_residues(&t, &ca, &cb, 2, 2);
        assert_eq!(rec.satisfied, Some(true));
        let rec = congruence_residues(&t, &ca, &cb, 3, 2);
        assert_eq!(rec.satisfied, None);
        assert!(congruence_filter(&t, &ca, &cb, 3).contains(&(2, 2)));
    }

    #[test]
    fn odd_congruence_rejects_equal_indices_when_a_ne_b() {
        // m = n with z0 = t, z1 = s: the left side reduces to 2t(a − b)M(M+1).
        let t = triple(1, 5, 12).unwrap();
        let ca = PellClass::new(Side::A, 8, 3);
        let cb = PellClass::new(Side::B, 4, 3);
        let rec = congruence_residues(&t, &ca, &cb, 1, 1);
        // M = N = 0: both sides vanish, the congruence holds vacuously.
        assert_eq!(rec.satisfied, Some(true));
        let rec = congruence_residues(&t, &ca, &cb, 3, 3);
        assert_eq!(rec.rhs[0], BigInt::zero());
        assert_ne!(rec.lhs[0], BigInt::zero());
    }

    #[test]
    fn shifting_classes() {
        let t = triple(1, 5, 12).unwrap();
        let base = PellClass::new(Side::A, 2, 2);
        let down = shift_class(&t, &base, ShiftDirection::Down).unwrap();
        assert_eq!(down.class.z, -&t.t);
        assert_eq!(down.offset, 1);
        assert!(satisfies_equation(&t, &down.class));
        let v = gen_v(&t, &base, 6).unwrap();
        let v_shift = gen_v(&t, &down.class, 7).unwrap();
        assert_eq!(&v_shift[1..], &v[..]);
        let back = shift_class(&t, &down.class, ShiftDirection::Up).unwrap();
        assert_eq!(back.class.z, base.z);
        assert_eq!(back.class.x, base.x);
        assert_eq!(down.offset + back.offset, 0);

        let wb = PellClass::new(Side::B, 2, 2);
        let wd = shift_class(&t, &wb, ShiftDirection::Down).unwrap();
        assert_eq!(wd.class.z, -&t.s);
        let w = gen_w(&t, &wb, 5).unwrap();
        let w_shift = gen_w(&t, &wd.class, 6).unwrap();
        assert_eq!(&w_shift[1..], &w[..]);

        assert!(shift_class(&t, &PellClass::new(Side::B, 4, 3), ShiftDirection::Down).is_ok());
        let t2 = triple(1, 12, 21).unwrap();
        assert!(matches!(
            shift_class(&t2, &PellClass::new(Side::A, 7, 9), ShiftDirection::Down),
            Err(Error::NotShiftable(_))
        ));
    }
}
