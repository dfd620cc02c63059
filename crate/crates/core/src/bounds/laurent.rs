//! Application of Laurent's two-logarithm lower bound to the gap between
//! two solutions in one class.
//!
//! With `X = j / log η` the bound has the shape `coef·X < R(X)` where `R`
//! grows like `log² X`; the largest admissible `X` is the fixed point of
//! `X ↦ R(X)/coef`, which is reached by plain iteration.

use serde::Serialize;

use crate::arith::Real;
use crate::error::{Error, Result};

use super::{real_json, BoundKind, BoundReport};

/// Maximum number of fixed-point iterations.
pub const MAX_ITERATIONS: usize = 64;

/// Relative change below which the iteration is considered stable.
const STABLE: f64 = 1e-12;

/// Parameters of Laurent's theorem for one value of `h`.
#[derive(Debug, Clone)]
pub struct LaurentParams {
    pub rho: Real,
    pub mu: Real,
    pub sigma: Real,
    pub lambda: Real,
    pub h: Real,
    /// `H = h/λ`.
    pub big_h: Real,
    pub omega: Real,
    pub theta: Real,
    /// The constant `C₀'` of the application.
    pub c0: Real,
}

impl LaurentParams {
    /// Derives `σ, λ, H, ω, θ` and `C₀'` from `ρ > 1`, `1/3 <= μ <= 1` and `h`.
    pub fn new(rho: Real, mu: Real, h: Real) -> Result<Self> {
        let p = rho.precision();
        let one = Real::from_i64(1, p);
        let two = Real::from_i64(2, p);
        if one.certified_lt(&rho) != Some(true) {
            return Err(Error::Domain(format!("ρ = {rho} must exceed 1")));
        }
        if mu.certified_lt(&Real::ratio(1, 3, p)) == Some(true) || one.certified_lt(&mu) == Some(true) {
            return Err(Error::Domain(format!("μ = {mu} outside [1/3, 1]")));
        }
        let sigma = (&one + &two * &mu - &mu * &mu) / &two;
        let lambda = &sigma * &rho.ln();
        let big_h = &h / &lambda;
        let root = (&one + (Real::from_i64(4, p) * &big_h * &big_h).recip()).sqrt();
        let omega = &two * (&one + &root);
        let theta = &root + (&two * &big_h).recip();

        let rho3 = &rho + Real::from_i64(3, p);
        let log_1e5 = Real::from_i64(100_000, p).ln();
        let sixteen_lambda = Real::from_i64(16, p) * &lambda;
        let three_rho3 = Real::from_i64(3, p) * &rho3;
        let under = &omega * &omega / Real::from_i64(9, p)
            + &sixteen_lambda * omega.pow_ratio(5, 4) * theta.pow_ratio(1, 4) / (&three_rho3 * big_h.sqrt() * &log_1e5)
            + &sixteen_lambda * &omega / (&three_rho3 * &big_h * &log_1e5);
        let inner = &omega / Real::from_i64(6, p) + under.sqrt() / &two;
        let c0 = &inner * &inner;
        Ok(LaurentParams {
            rho,
            mu,
            sigma,
            lambda,
            h,
            big_h,
            omega,
            theta,
            c0,
        })
    }

    /// The parameters with `ρ = 8.2`, `μ = 0.48` and
    /// `h = 4log(2X + 1) + 4log(λ/(ρ+3)) + 7.06 + log ρ` at `X = j/log η`.
    pub fn at(x: &Real) -> Result<Self> {
        let p = x.precision();
        let rho = Real::lit("8.2", p);
        let mu = Real::lit("0.48", p);
        let sigma = (Real::from_i64(1, p) + Real::from_i64(2, p) * &mu - &mu * &mu) / Real::from_i64(2, p);
        let lambda = &sigma * &rho.ln();
        let four = Real::from_i64(4, p);
        let h = &four * (Real::from_i64(2, p) * x + Real::from_i64(1, p)).ln()
            + &four * (&lambda / (&rho + Real::from_i64(3, p))).ln()
            + Real::lit("7.06", p)
            + rho.ln();
        LaurentParams::new(rho, mu, h)
    }

    /// Right-hand side
    /// `C₀'μ/(λ^k σ)(ρ+3)²h² + (2√(ωθ)h + 2log(√(C₀'ωθ)λ^{−3}(ρ+3)²) + 4log h)/log²(10⁵) + additive`.
    pub fn rhs(&self, lambda_power: i64, additive: i64) -> Real {
        let p = self.rho.precision();
        let rho3 = &self.rho + Real::from_i64(3, p);
        let rho3_sq = &rho3 * &rho3;
        let log_1e5 = Real::from_i64(100_000, p).ln();
        let two = Real::from_i64(2, p);
        let main = &self.c0 * &self.mu / (self.lambda.powi(lambda_power) * &self.sigma) * &rho3_sq * &self.h * &self.h;
        let ot = &self.omega * &self.theta;
        let tail = &two * ot.sqrt() * &self.h
            + &two * ((&self.c0 * &ot).sqrt() * self.lambda.powi(-3) * &rho3_sq).ln()
            + Real::from_i64(4, p) * self.h.ln();
        main + tail / (&log_1e5 * &log_1e5) + Real::from_i64(additive, p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rho": real_json(&self.rho), "mu": real_json(&self.mu), "sigma": real_json(&self.sigma),
            "lambda": real_json(&self.lambda), "h": real_json(&self.h), "H": real_json(&self.big_h),
            "omega": real_json(&self.omega), "theta": real_json(&self.theta), "C0": real_json(&self.c0),
        })
    }
}

/// The three ways the application is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LaurentScenario {
    /// Regular triples, two extra solutions of class `(±2, ±2)`:
    /// `j <= 5912·m1`, so `2X/5912 < R(X)` with `λ³` and `+1`.
    CountingCaseI,
    /// Class `(t, s)`, inequality exactly as displayed: `X/f < R(X)` with
    /// `λ²`, `+2` and `f = 4.1818`.
    TsClassDisplayed,
    /// Class `(t, s)`, derived from `m1/log η > X/f − 1` substituted into the
    /// proposition: `2X/f < R(X)` with `λ³` and `+3`.
    TsClassDerived,
}

impl LaurentScenario {
    pub const ALL: [LaurentScenario; 3] = [
        LaurentScenario::CountingCaseI,
        LaurentScenario::TsClassDisplayed,
        LaurentScenario::TsClassDerived,
    ];

    pub fn id(self) -> &'static str {
        match self {
            LaurentScenario::CountingCaseI => "counting_case_i",
            LaurentScenario::TsClassDisplayed => "ts_class_displayed",
            LaurentScenario::TsClassDerived => "ts_class_derived",
        }
    }

    /// The value the published computation reports for this scenario.
    pub fn paper_value(self) -> f64 {
        match self {
            LaurentScenario::CountingCaseI => 5.71e8,
            LaurentScenario::TsClassDisplayed | LaurentScenario::TsClassDerived => 152_184.0,
        }
    }

    /// `(coef, λ power, additive constant)`.
    fn shape(self, p: usize) -> (Real, i64, i64) {
        let f = Real::lit("4.1818", p);
        match self {
            LaurentScenario::CountingCaseI => (Real::ratio(2, 5912, p), 3, 1),
            LaurentScenario::TsClassDisplayed => (f.recip(), 2, 2),
            LaurentScenario::TsClassDerived => (Real::from_i64(2, p) / f, 3, 3),
        }
    }
}

/// Result of [`laurent_apply`].
#[derive(Debug, Clone)]
pub struct LaurentOutcome {
    pub scenario: LaurentScenario,
    /// The fixed point: the largest `X = j/log η` compatible with the bound.
    pub bound: Real,
    pub iterations: usize,
    /// Whether the iterates moved monotonically (certified).
    pub monotone: bool,
    /// Parameters at the fixed point.
    pub params: LaurentParams,
    /// `λ² <= a1·a2` with `a_i = (ρ+3)·log γ_i >= ρ + 3`.
    pub lambda_hypothesis_ok: bool,
}

impl LaurentOutcome {
    pub fn report(&self) -> BoundReport {
        let mut rep = BoundReport {
            kind: BoundKind::Laurent,
            inputs: [("scenario".to_string(), self.scenario.id().to_string())]
                .into_iter()
                .collect(),
            precondition_ok: self.lambda_hypothesis_ok,
            bound: self.bound.clone(),
            extras: Default::default(),
            notes: format!("fixed point after {} iterations", self.iterations),
        };
        for (k, v) in [
            ("lambda", &self.params.lambda),
            ("h", &self.params.h),
            ("C0", &self.params.c0),
        ] {
            rep.extras.insert(k.into(), v.clone());
        }
        rep
    }
}

/// Iterates `X ↦ R(X)/coef` from `seed` until the relative change drops
/// below 10⁻¹², at most [`MAX_ITERATIONS`] times.
pub fn laurent_apply(scenario: LaurentScenario, seed: &Real) -> Result<LaurentOutcome> {
    let p = seed.precision();
    let (coef, lambda_power, additive) = scenario.shape(p);
    if !seed.certainly_positive() {
        return Err(Error::Domain("seed must be positive".into()));
    }
    let mut x = seed.clone();
    let mut direction: Option<bool> = None;
    let mut monotone = true;
    for iteration in 1..=MAX_ITERATIONS {
        let params = LaurentParams::at(&x)?;
        let next = params.rhs(lambda_power, additive) / &coef;
        if let Some(up) = x.certified_lt(&next) {
            match direction {
                None => direction = Some(up),
                Some(d) if d != up => monotone = false,
                _ => {}
            }
        }
        let change = ((next.to_f64() - x.to_f64()) / next.to_f64()).abs();
        x = next;
        if change < STABLE {
            let params = LaurentParams::at(&x)?;
            let rho3 = &params.rho + Real::from_i64(3, p);
            let lambda_hypothesis_ok = params.lambda.powi(2).certified_lt(&(&rho3 * &rho3)) == Some(true);
            return Ok(LaurentOutcome {
                scenario,
                bound: x,
                iterations: iteration,
                monotone,
                params,
                lambda_hypothesis_ok,
            });
        }
    }
    Err(Error::NoConvergence(MAX_ITERATIONS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DEFAULT_PRECISION as P;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn params_satisfy_definitions() {
        let x = Real::lit("1e8", P);
        let lp = LaurentParams::at(&x).unwrap();
        let mu = 0.48f64;
        let sigma = (1.0 + 2.0 * mu - mu * mu) / 2.0;
        assert!(rel(lp.sigma.to_f64(), sigma) < 1e-15);
        assert!(rel(lp.lambda.to_f64(), sigma * 8.2f64.ln()) < 1e-15);
        let hh = lp.big_h.to_f64();
        let root = (1.0 + 1.0 / (4.0 * hh * hh)).sqrt();
        assert!(rel(lp.omega.to_f64(), 2.0 * (1.0 + root)) < 1e-14);
        assert!(rel(lp.theta.to_f64(), root + 1.0 / (2.0 * hh)) < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        let p = P;
        let h = Real::from_i64(30, p);
        assert!(LaurentParams::new(Real::lit("0.9", p), Real::lit("0.5", p), h.clone()).is_err());
        assert!(LaurentParams::new(Real::lit("8.2", p), Real::lit("0.2", p), h.clone()).is_err());
        assert!(LaurentParams::new(Real::lit("8.2", p), Real::lit("1.5", p), h).is_err());
    }

    #[test]
    fn fixed_point_is_seed_independent() {
        for scenario in LaurentScenario::ALL {
            let low = laurent_apply(scenario, &Real::lit("1e3", P)).unwrap();
            let high = laurent_apply(scenario, &Real::lit("1e15", P)).unwrap();
            assert!(rel(low.bound.to_f64(), high.bound.to_f64()) < 1e-6, "{scenario:?}");
            assert!(low.monotone && high.monotone);
            assert!(low.lambda_hypothesis_ok);
        }
    }

    #[test]
    fn fixed_point_is_precision_stable() {
        let a = laurent_apply(LaurentScenario::CountingCaseI, &Real::lit("1e6", 256)).unwrap();
        let b = laurent_apply(LaurentScenario::CountingCaseI, &Real::lit("1e6", 512)).unwrap();
        assert!(rel(a.bound.to_f64(), b.bound.to_f64()) < 1e-6);
    }

    #[test]
    fn fixed_point_is_the_threshold() {
        // Just below the fixed point the inequality holds, just above it fails.
        let out = laurent_apply(LaurentScenario::CountingCaseI, &Real::lit("1e6", P)).unwrap();
        let (coef, k, add) = LaurentScenario::CountingCaseI.shape(P);
        for (factor, holds) in [("0.999", true), ("1.001", false)] {
            let x = &out.bound * Real::lit(factor, P);
            let rhs = LaurentParams::at(&x).unwrap().rhs(k, add);
            assert_eq!((&coef * &x).certified_lt(&rhs), Some(holds));
        }
    }
}
