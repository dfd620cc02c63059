//! Explicit bound formulas: Rickert-type index bounds, Matveev's constant,
//! the linear-form constants `(κ, δ)`, the Okazaki and Padé gap principles,
//! the Laurent application and the threshold catalog.
//!
//! Every formula is evaluated with interval arithmetic; all logarithms are
//! natural logarithms.

pub mod alpha;
pub mod catalog;
pub mod laurent;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::Real;
use crate::error::{Error, Result};
use crate::pell::{PellClass, Side};
use crate::tuples::D4Triple;

pub use alpha::{alpha_gap, alpha_parameter_search, AlphaChoice};
pub use catalog::{cases, catalog, threshold_solve, CaseId, CaseSpec, Relation, ThresholdResult};
pub use laurent::{laurent_apply, LaurentOutcome, LaurentParams, LaurentScenario};

/// Which formula produced a [`BoundReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    RickertI,
    RickertII,
    Pade,
    Laurent,
}

/// A bound together with the inputs it was computed from.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub kind: BoundKind,
    /// Inputs echoed verbatim as decimal strings.
    pub inputs: BTreeMap<String, String>,
    pub precondition_ok: bool,
    pub bound: Real,
    /// Secondary quantities computed alongside the bound.
    pub extras: BTreeMap<String, Real>,
    pub notes: String,
}

impl BoundReport {
    fn new(kind: BoundKind, inputs: &[(&str, &BigInt)], precondition_ok: bool, bound: Real) -> Self {
        BoundReport {
            kind,
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            precondition_ok,
            bound,
            extras: BTreeMap::new(),
            notes: String::new(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let extras: serde_json::Map<String, serde_json::Value> =
            self.extras.iter().map(|(k, v)| (k.clone(), real_json(v))).collect();
        serde_json::json!({
            "kind": self.kind,
            "inputs": self.inputs,
            "precondition_ok": self.precondition_ok,
            "bound": real_json(&self.bound),
            "extras": extras,
            "notes": self.notes,
        })
    }
}

/// `{"value", "lo", "hi"}` rendering of an enclosure.
pub fn real_json(x: &Real) -> serde_json::Value {
    serde_json::json!({ "value": x.to_f64(), "lo": x.lo_f64(), "hi": x.hi_f64() })
}

fn int(v: &BigInt, prec: usize) -> Real {
    Real::from_int(v, prec)
}

fn small(v: i64, prec: usize) -> Real {
    Real::from_i64(v, prec)
}

fn check_ordered(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<()> {
    if !(a.is_positive() && a < b && b < c) {
        return Err(Error::Domain(format!("need 0 < a < b < c, got ({a}, {b}, {c})")));
    }
    Ok(())
}

/// `a' = max{4a, 4(b − a)}`.
pub fn a_prime(a: &BigInt, b: &BigInt) -> BigInt {
    let four_a: BigInt = a * 4u32;
    let four_gap: BigInt = (b - a) * 4u32;
    four_a.max(four_gap)
}

/// First Rickert-type bound on the index `n` of an extension
/// `z = v_m = w_n`, valid when `c > 308.07·a'·b(b − a)²/a`.
pub fn rickert_bound(a: &BigInt, b: &BigInt, c: &BigInt, prec: usize) -> Result<BoundReport> {
    check_ordered(a, b, c)?;
    let ap = a_prime(a, b);
    let gap = b - a;
    let gap2: BigInt = &gap * &gap;
    // c·a > 308.07·a'·b·(b−a)², scaled by 100 to stay in integers.
    let precondition_ok = c * a * 100u32 > BigInt::from(30807) * &ap * b * &gap2;

    let (ar, br, cr, apr, g2) = (
        int(a, prec),
        int(b, prec),
        int(c, prec),
        int(&ap, prec),
        int(&gap2, prec),
    );
    let c2 = &cr * &cr;
    let first = (Real::lit("32.02", prec) * &ar * &apr * br.powi(4) * &c2).ln();
    let second = (Real::lit("0.026", prec) * &ar * &br * &c2 / &g2).ln();
    let third = (Real::lit("0.00325", prec) * &ar * &cr / (&apr * &br * &g2)).ln();
    let bc = (&br * &cr).ln();
    let bound = small(2, prec) * first * second / (third * bc);

    let mut report = BoundReport::new(
        BoundKind::RickertI,
        &[("a", a), ("b", b), ("c", c), ("a_prime", &ap)],
        precondition_ok,
        bound,
    );
    if !precondition_ok {
        report.notes = "c <= 308.07·a'·b(b−a)²/a: bound not applicable".into();
    }
    Ok(report)
}

/// Second Rickert-type bound, valid when `b > 10^5` and
/// `c > 59.488·a'·b(b − a)²/a`.
pub fn rickert2_bound(a: &BigInt, b: &BigInt, c: &BigInt, prec: usize) -> Result<BoundReport> {
    check_ordered(a, b, c)?;
    let ap = a_prime(a, b);
    let gap = b - a;
    let gap2: BigInt = &gap * &gap;
    let range_ok = *b > BigInt::from(100_000);
    let size_ok = c * a * 1000u32 > BigInt::from(59488) * &ap * b * &gap2;
    let precondition_ok = range_ok && size_ok;

    let (ar, br, cr, apr) = (int(a, prec), int(b, prec), int(c, prec), int(&ap, prec));
    let (gr, g2) = (int(&gap, prec), int(&gap2, prec));
    let first = (Real::lit("8.40335e13", prec) * (&ar * &apr).sqrt() * &br * &br * &cr).ln();
    let second = (Real::lit("0.20533", prec) * (&ar * &br).sqrt() * &cr / &gr).ln();
    let bc = (&br * &cr).ln();
    let fourth = (Real::lit("0.016858", prec) * &ar * &cr / (&apr * &br * &g2)).ln();
    let bound = small(8, prec) * first * second / (bc * fourth);

    let mut report = BoundReport::new(
        BoundKind::RickertII,
        &[("a", a), ("b", b), ("c", c), ("a_prime", &ap)],
        precondition_ok,
        bound,
    );
    if !range_ok {
        report.notes = "b <= 10^5: bound not applicable".into();
    } else if !size_ok {
        report.notes = "c <= 59.488·a'·b(b−a)²/a: bound not applicable".into();
    }
    Ok(report)
}

/// Matveev's constant `C(D) = 11796480·e⁴·D²·log(3^5.5·e^20.2·D²·log(eD))`.
pub fn matveev_c(degree: u32, prec: usize) -> Result<Real> {
    if degree == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    let e = Real::e(prec);
    let d = small(degree as i64, prec);
    let d2 = &d * &d;
    let inner = small(3, prec).pow_ratio(11, 2) * Real::lit("20.2", prec).exp() * &d2 * (&e * &d).ln();
    Ok(small(11_796_480, prec) * e.powi(4) * d2 * inner.ln())
}

/// `m / log(38.92(m + 1))`, the left-hand side of the three-logarithm index
/// bound; increasing in `m`.
pub fn matveev_lhs(m: &BigInt, prec: usize) -> Real {
    let mr = int(m, prec);
    let arg = Real::lit("38.92", prec) * (&mr + &small(1, prec));
    mr / arg.ln()
}

/// Largest `m >= 1` with `m / log(38.92(m+1)) < rhs`, by bisection.
///
/// Comparisons that cannot be certified count as satisfied, so the result
/// never under-reports the bound. Returns 0 if no `m >= 1` qualifies.
pub fn matveev_m_bound_for(rhs: &Real) -> BigInt {
    let prec = rhs.precision();
    let holds = |m: &BigInt| matveev_lhs(m, prec).certified_lt(rhs) != Some(false);
    let mut lo = BigInt::one();
    if !holds(&lo) {
        return BigInt::zero();
    }
    let mut hi = BigInt::from(2);
    while holds(&hi) {
        lo = hi.clone();
        hi *= 2u32;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2u32;
        if holds(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `log η` for `η = (t + √(bc))/2`.
pub fn log_eta(t: &D4Triple, prec: usize) -> Real {
    ((int(&t.t, prec) + (int(&t.b, prec) * int(&t.c, prec)).sqrt()) / small(2, prec)).ln()
}

/// `log ξ` for `ξ = (s + √(ac))/2`.
pub fn log_xi(t: &D4Triple, prec: usize) -> Real {
    ((int(&t.s, prec) + (int(&t.a, prec) * int(&t.c, prec)).sqrt()) / small(2, prec)).ln()
}

/// The right-hand side `2.7717·10¹²·log η·log c` of the index bound.
pub fn matveev_rhs(t: &D4Triple, prec: usize) -> Real {
    Real::lit("2.7717e12", prec) * log_eta(t, prec) * int(&t.c, prec).ln()
}

/// Largest index `m` allowed by the three-logarithm bound for a triple.
pub fn matveev_m_bound(t: &D4Triple, prec: usize) -> BigInt {
    matveev_m_bound_for(&matveev_rhs(t, prec))
}

/// The four clauses of the `(κ, δ)` lemma for `0 < Λ < κ·ξ^{−2(m−δ)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaClause {
    /// The fundamental solution lies in its standard range.
    FundamentalRange,
    /// `|z0| = 2`.
    AbsZ0Two,
    /// `z0 = t`.
    Z0PlusT,
    /// `z0 = −t` with `b > 10^5` and `c > ab + a + b`.
    Z0MinusT,
}

/// The constants `(κ, δ)` of one clause.
#[derive(Debug, Clone)]
pub struct KappaDelta {
    pub kappa: Real,
    pub delta: u32,
    pub clause: KappaClause,
}

/// `(κ, δ)` for a clause, after checking its hypothesis against the side-A
/// fundamental solution `class_a`.
pub fn kappa_delta(clause: KappaClause, t: &D4Triple, class_a: &PellClass, prec: usize) -> Result<KappaDelta> {
    if class_a.side != Side::A {
        return Err(Error::Precondition("κ clauses are stated for a side-A class".into()));
    }
    let z0 = &class_a.z;
    let fail = |why: &str| Err(Error::Precondition(format!("clause {clause:?}: {why}")));
    let (a, b, c) = (int(&t.a, prec), int(&t.b, prec), int(&t.c, prec));
    let (kappa, delta) = match clause {
        KappaClause::FundamentalRange => {
            if !class_a.in_range {
                return fail("fundamental solution outside its standard range");
            }
            (Real::lit("2.7", prec) * (a * c).sqrt(), 0)
        }
        KappaClause::AbsZ0Two => {
            if z0.abs() != BigInt::from(2) {
                return fail("|z0| != 2");
            }
            (small(6, prec), 0)
        }
        KappaClause::Z0PlusT => {
            if *z0 != t.t {
                return fail("z0 != t");
            }
            ((small(2, prec) * a * b).recip(), 0)
        }
        KappaClause::Z0MinusT => {
            let big_gap: BigInt = &t.a * &t.b + &t.a + &t.b;
            if *z0 != -&t.t {
                return fail("z0 != -t");
            }
            if t.b <= BigInt::from(100_000) || t.c <= big_gap {
                return fail("needs b > 10^5 and c > ab + a + b");
            }
            (Real::lit("2.0001", prec) * b / c, 1)
        }
    };
    Ok(KappaDelta { kappa, delta, clause })
}

/// Okazaki's gap `m2 − m1 > κ^{−1}(ac)^{m0−δ}·Δ·log η` for three solutions
/// in one class, `Δ` being the index determinant.
pub fn okazaki_gap(m0: u32, kd: &KappaDelta, t: &D4Triple, det: &BigInt, prec: usize) -> Result<Real> {
    if m0 == 0 {
        return Err(Error::Domain("m0 must be at least 1".into()));
    }
    if det < &BigInt::one() {
        return Err(Error::Domain("Δ must be at least 1".into()));
    }
    let exponent = m0 as i64 - kd.delta as i64;
    let ac = int(&t.a, prec) * int(&t.c, prec);
    Ok(ac.powi(exponent) / &kd.kappa * int(det, prec) * log_eta(t, prec))
}

/// Simultaneous-approximation exponent `λ` and coefficient from the Padé
/// construction at `N = abz²`; requires `N >= 10^5·a2`.
pub fn pade_lambda(a: &BigInt, b: &BigInt, c: &BigInt, z: &BigInt, prec: usize) -> Result<BoundReport> {
    check_ordered(a, b, c)?;
    let a1: BigInt = a * (c - b) * 4u32;
    let a2: BigInt = b * (c - a) * 4u32;
    let n: BigInt = a * b * z * z;
    if n < &a2 * 100_000u32 {
        return Err(Error::Precondition(format!("N = abz² = {n} is below 10^5·a2")));
    }
    let (u, v, w) = (c - b, c - a, b - a);
    let a1p = a1.clone().max(&a2 - &a1);
    let core = int(&a1p, prec) * int(&a2, prec) * int(&u, prec) * int(&n, prec) / int(&a1, prec);
    let nr = int(&n, prec);
    let denom =
        int(&a1, prec) * int(&a2, prec) * int(&(&a2 - &a1), prec) * int(&u, prec) * int(&v, prec) * int(&w, prec);
    let num_log = (small(256, prec) * &core).ln();
    let den_log = (Real::lit("0.02636", prec) * &nr * &nr / denom).ln();
    let lambda = small(1, prec) + num_log / den_log;
    let coefficient = (Real::lit("512.01", prec) * &core).recip();

    let mut report = BoundReport::new(
        BoundKind::Pade,
        &[
            ("a", a),
            ("b", b),
            ("c", c),
            ("z", z),
            ("N", &n),
            ("a1", &a1),
            ("a2", &a2),
        ],
        true,
        lambda,
    );
    report.extras.insert("coefficient".into(), coefficient);
    Ok(report)
}

/// Which gap corollary to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapVariant {
    /// Any class, `n1 >= 8`.
    General,
    /// Class `(z0, z1) = (t, s)` with `c > ab + a + b`, `n1 >= 9`.
    TsClass,
}

/// Upper bound on the index `n2` of a second extension given the first
/// index `n1`.
pub fn gap_n2_bound(n1: u64, variant: GapVariant, prec: usize) -> Result<Real> {
    let n = small(n1 as i64, prec);
    let lit = |s: &str| Real::lit(s, prec);
    let (min, shift, slope, offset, dslope, doffset) = match variant {
        GapVariant::General => (
            8,
            lit("1.1"),
            lit("3.5205"),
            lit("4.75675"),
            lit("0.4795"),
            lit("3.82175"),
        ),
        GapVariant::TsClass => (
            9,
            small(1, prec),
            lit("2.5147"),
            lit("5.11467"),
            lit("0.4853"),
            lit("3.85292"),
        ),
    };
    if n1 < min {
        return Err(Error::Domain(format!("n1 = {n1} below {min} for {variant:?}")));
    }
    let denom = &dslope * &n - doffset;
    if !denom.certainly_positive() {
        return Err(Error::Domain("denominator is not positive".into()));
    }
    Ok((&n + &shift) * (slope * &n + offset) / denom - shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DEFAULT_PRECISION as P;
    use crate::tuples::triple;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn close(x: &Real, target: f64, rel: f64) -> bool {
        ((x.to_f64() - target) / target).abs() < rel
    }

    #[test]
    fn rickert_reference_value() {
        let rep = rickert_bound(&big(1), &big(5), &big(1_000_000), P).unwrap();
        assert!(rep.precondition_ok);
        // Independent 100-digit evaluation: 127.98403414508836...
        assert!(close(&rep.bound, 127.984_034_145_088_36, 1e-12));
        assert_eq!(rep.inputs["a_prime"], "16");
    }

    #[test]
    fn rickert_flags_small_c() {
        let rep = rickert_bound(&big(1), &big(5), &big(1000), P).unwrap();
        assert!(!rep.precondition_ok);
        assert!(rickert_bound(&big(5), &big(1), &big(1000), P).is_err());
    }

    #[test]
    fn rickert2_reference_value_and_flags() {
        let c = num_traits::pow(big(10), 30);
        let rep = rickert2_bound(&big(1), &big(100_001), &c, P).unwrap();
        assert!(rep.precondition_ok);
        assert!(close(&rep.bound, 45.594_408_985_186_98, 1e-12));
        assert!(!rickert2_bound(&big(1), &big(5), &c, P).unwrap().precondition_ok);
        assert!(
            !rickert2_bound(&big(1), &big(100_001), &big(100_002), P)
                .unwrap()
                .precondition_ok
        );
    }

    #[test]
    fn rickert_decreasing_in_c_beyond_usage_range() {
        let b = big(100_000);
        let mut previous: Option<Real> = None;
        for k in 0..8 {
            let c = big(890) * num_traits::pow(b.clone(), 4) * num_traits::pow(big(10), k);
            let rep = rickert_bound(&big(60_000), &b, &c, P).unwrap();
            if let Some(p) = previous {
                assert_eq!(rep.bound.certified_lt(&p), Some(true));
            }
            previous = Some(rep.bound);
        }
    }

    #[test]
    fn matveev_constant() {
        let c4 = matveev_c(4, P).unwrap();
        assert!(close(&c4, 3.079_634_791_742_479e11, 1e-12));
        let c1 = matveev_c(1, P).unwrap();
        assert!(c1.certainly_positive());
        assert_eq!(c1.certified_lt(&c4), Some(true));
        assert!(matveev_c(0, P).is_err());
    }

    #[test]
    fn matveev_constant_is_precision_stable() {
        let lo = matveev_c(4, 256).unwrap().to_f64();
        let hi = matveev_c(4, 512).unwrap().to_f64();
        assert!(((lo - hi) / hi).abs() < 1e-6);
    }

    #[test]
    fn matveev_bisection_contract() {
        let rhs = Real::lit("2.7717e12", P) * small(10, P);
        let m = matveev_m_bound_for(&rhs);
        assert_eq!(matveev_lhs(&m, P).certified_lt(&rhs), Some(true));
        assert_eq!(matveev_lhs(&(&m + 1), P).certified_lt(&rhs), Some(false));
    }

    #[test]
    fn matveev_bound_matches_linear_scan() {
        let t = triple(1, 5, 12).unwrap();
        let m = matveev_m_bound(&t, P);
        let rhs = matveev_rhs(&t, P);
        // Scan a window around the answer with an f64-free oracle.
        for delta in -3i64..=3 {
            let cand = &m + delta;
            let holds = matveev_lhs(&cand, P).certified_lt(&rhs) == Some(true);
            assert_eq!(holds, delta <= 0, "m = {cand}");
        }
    }

    #[test]
    fn okazaki_contradiction_for_large_c() {
        // m2 > c^5 against the index bound with log η < log c.
        for c in [100_001i64, 1_000_000, 10_000_000] {
            let cr = big(c);
            let m2 = num_traits::pow(cr.clone(), 5);
            let lc = small(c, P).ln();
            let rhs = Real::lit("2.7717e12", P) * &lc * &lc;
            assert_eq!(matveev_lhs(&m2, P).certified_lt(&rhs), Some(false));
        }
    }

    #[test]
    fn kappa_clauses() {
        let t = triple(1, 5, 12).unwrap();
        let two = PellClass::new(Side::A, 2, 2);
        let kd = kappa_delta(KappaClause::FundamentalRange, &t, &two, P).unwrap();
        assert!(close(&kd.kappa, 2.7 * 12f64.sqrt(), 1e-12));
        assert_eq!(kd.delta, 0);
        let kd = kappa_delta(KappaClause::AbsZ0Two, &t, &two, P).unwrap();
        assert!(close(&kd.kappa, 6.0, 1e-15));

        let t = triple(1, 12, 21).unwrap();
        let plus_t = PellClass::new(Side::A, 16, 4);
        let kd = kappa_delta(KappaClause::Z0PlusT, &t, &plus_t, P).unwrap();
        assert!(close(&kd.kappa, 1.0 / 24.0, 1e-15));
        assert!(kappa_delta(KappaClause::AbsZ0Two, &t, &plus_t, P).is_err());
        // z0 = −t needs b > 10^5.
        let minus_t = PellClass::new(Side::A, -16, 4);
        assert!(kappa_delta(KappaClause::Z0MinusT, &t, &minus_t, P).is_err());
    }

    #[test]
    fn kappa_minus_t_clause_on_large_triple() {
        // {1, 100485} with r = 317, extended by d+ of its regular triple, so
        // that c > ab + a + b.
        let pair = crate::tuples::make_pair(&big(1), &big(100_485)).unwrap();
        let c = crate::tuples::d_plus(&crate::tuples::regular_triple(&pair));
        let t = crate::tuples::make_triple(&pair.a, &pair.b, &c).unwrap();
        let class = PellClass {
            side: Side::A,
            z: -&t.t,
            x: t.r.clone(),
            in_range: false,
        };
        let kd = kappa_delta(KappaClause::Z0MinusT, &t, &class, P).unwrap();
        assert_eq!(kd.delta, 1);
        assert!(close(
            &kd.kappa,
            2.0001 * 100_485.0 / c.to_string().parse::<f64>().unwrap(),
            1e-12
        ));
    }

    #[test]
    fn okazaki_gap_examples() {
        let t = triple(1, 5, 12).unwrap();
        let class = PellClass::new(Side::A, 2, 2);
        let kd = kappa_delta(KappaClause::FundamentalRange, &t, &class, P).unwrap();
        let gap = okazaki_gap(6, &kd, &t, &big(1), P).unwrap();
        let expected = 12f64.powi(6) / (2.7 * 12f64.sqrt()) * log_eta(&t, P).to_f64();
        assert!(close(&gap, expected, 1e-12));

        // |z0| = 2, m0 = 2, Δ = 4: (4/6)(ac)² per unit of log η.
        let kd = kappa_delta(KappaClause::AbsZ0Two, &t, &class, P).unwrap();
        let gap = okazaki_gap(2, &kd, &t, &big(4), P).unwrap() / log_eta(&t, P);
        assert!(close(&gap, 4.0 / 6.0 * 144.0, 1e-12));

        // δ = 1 lowers the exponent by one.
        let shifted = KappaDelta {
            kappa: small(6, P),
            delta: 1,
            clause: KappaClause::Z0MinusT,
        };
        let g1 = okazaki_gap(3, &shifted, &t, &big(1), P).unwrap();
        let g0 = okazaki_gap(2, &kd, &t, &big(1), P).unwrap();
        assert!(close(&g1, g0.to_f64(), 1e-12));
        assert!(okazaki_gap(0, &kd, &t, &big(1), P).is_err());
        assert!(okazaki_gap(2, &kd, &t, &big(0), P).is_err());
    }

    #[test]
    fn pade_lambda_range() {
        // A synthetic instance with large z: λ lies in (1, 2).
        let (a, b, c) = (big(1), big(5), big(12));
        let z = num_traits::pow(big(10), 12);
        let rep = pade_lambda(&a, &b, &c, &z, P).unwrap();
        assert!(rep.bound.certified_lt(&small(1, P)) == Some(false));
        assert_eq!(rep.bound.certified_lt(&small(2, P)), Some(true));
        assert!(rep.extras["coefficient"].certainly_positive());
        assert!(matches!(
            pade_lambda(&a, &b, &c, &big(10), P),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn gap_corollaries() {
        let g8 = gap_n2_bound(8, GapVariant::General, P).unwrap();
        assert_eq!(g8.certified_lt(&small(2628 * 8, P)), Some(true));
        let g9 = gap_n2_bound(9, GapVariant::General, P).unwrap();
        assert_eq!(g9.certified_lt(&small(83 * 9, P)), Some(true));
        let ts9 = gap_n2_bound(9, GapVariant::TsClass, P).unwrap();
        assert_eq!(ts9.certified_lt(&small(60 * 9, P)), Some(true));
        assert!(gap_n2_bound(7, GapVariant::General, P).is_err());
        assert!(gap_n2_bound(8, GapVariant::TsClass, P).is_err());
    }

    proptest! {
        #[test]
        fn pade_lambda_exceeds_one(a in 1i64..50, db in 1i64..50, dc in 1i64..500, z in 10_000i64..1_000_000) {
            let (a, b) = (big(a), big(a + db));
            let c = &b + dc;
            if let Ok(rep) = pade_lambda(&a, &b, &c, &big(z), P) {
                prop_assert_eq!(rep.bound.certified_lt(&small(1, P)), Some(false));
            }
        }

        #[test]
        fn gap_bound_exceeds_n1(n1 in 9u64..10_000) {
            let g = gap_n2_bound(n1, GapVariant::General, P).unwrap();
            prop_assert_eq!(small(n1 as i64, P).certified_lt(&g), Some(true));
        }
    }
}
