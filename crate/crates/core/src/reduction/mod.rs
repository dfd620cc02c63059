//! Baker–Davenport reduction of the index bound.
//!
//! A common term `v_m = w_n` of the classes `(z0, x0)` and `(z1, y1)` gives
//! a linear form
//!
//! `0 < m·log ξ − n·log η + log μ < κ0·ξ^{−2m}`
//!
//! with `ξ = (s + √(ac))/2`, `η = (t + √(bc))/2`,
//! `μ = √b(x0√c + z0√a) / (√a(y1√c + z1√b))` and
//! `κ0 = (z0√a − x0√c)² / (2(c − a))`. Dividing by `log η` yields
//!
//! `0 < m·κ − n + μ̂ < A·B^{−m}`, with `κ = log ξ / log η`,
//! `μ̂ = log μ / log η`, `A = κ0 / log η` and `B = ξ²`.
//!
//! If `m <= M`, `q > 6M` is a convergent denominator of `κ` and
//! `ε = ‖q·μ̂‖ − M·‖q·κ‖ > 0`, then every solution has
//! `m < log(A·q/ε) / log B`. Iterating this step shrinks astronomically
//! large bounds (from the three-logarithm estimate) to a handful.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{continued_fraction, convergents, Real, MAX_PRECISION, MIN_PRECISION};
use crate::bounds::matveev_m_bound;
use crate::error::{Error, Result};
use crate::pell::{enumerate_classes_a, enumerate_classes_b, find_intersections, gen_v, PellClass, Side};
use crate::tuples::D4Triple;

/// Number of convergents tried after the first one exceeding `6M`.
pub const CONVERGENT_ATTEMPTS: usize = 10;
/// Largest exponent used when searching for a relation `ξ^i = η^j`.
pub const INDEPENDENCE_EXPONENT: i64 = 20;
/// Upper limit on reduction rounds for one class pair.
pub const MAX_ROUNDS: usize = 64;

/// The inhomogeneous problem `|m·κ − n + μ̂| < A·B^{−m}`, `m <= M`.
#[derive(Debug, Clone)]
pub struct ReductionProblem {
    pub kappa: Real,
    pub mu_hat: Real,
    pub a_coef: Real,
    pub b_base: Real,
    pub m_bound: BigInt,
}

impl ReductionProblem {
    pub fn precision(&self) -> usize {
        self.kappa.precision()
    }

    /// The same problem with a different index bound.
    pub fn with_bound(&self, m_bound: BigInt) -> Self {
        ReductionProblem {
            m_bound,
            ..self.clone()
        }
    }
}

/// Outcome of one reduction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStatus {
    /// `ε > 0` and the new bound is strictly smaller.
    Reduced,
    /// `ε > 0` but the new bound is not smaller: the iteration's fixpoint.
    Stalled,
    /// `ε <= 0` for every convergent tried.
    FailedEpsilon,
    /// Some comparison could not be certified at the working precision.
    PrecisionRetry,
}

/// One reduction step. `new_m` equals `m_in` unless the status is
/// [`ReductionStatus::Reduced`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionResult {
    #[serde(with = "crate::json::int")]
    pub m_in: BigInt,
    #[serde(with = "crate::json::int")]
    pub new_m: BigInt,
    /// Denominator of the convergent that produced a positive `ε` (zero if
    /// none did).
    #[serde(with = "crate::json::int")]
    pub q_used: BigInt,
    /// Midpoint of the certified enclosure of `ε`.
    pub epsilon: f64,
    pub status: ReductionStatus,
    pub precision_bits: usize,
}

fn int(n: &BigInt, prec: usize) -> Real {
    Real::from_int(n, prec)
}

/// `log ξ` and `log η` for a triple.
fn log_units(t: &D4Triple, prec: usize) -> (Real, Real) {
    let two = Real::from_i64(2, prec);
    let xi = (int(&t.s, prec) + (int(&t.a, prec) * int(&t.c, prec)).sqrt()) / &two;
    let eta = (int(&t.t, prec) + (int(&t.b, prec) * int(&t.c, prec)).sqrt()) / &two;
    (xi.ln(), eta.ln())
}

/// Searches for `i·log ξ = j·log η` with `1 <= i, j <= INDEPENDENCE_EXPONENT`.
/// Returns the first relation that cannot be excluded at this precision.
pub fn small_relation(log_xi: &Real, log_eta: &Real) -> Option<(i64, i64)> {
    let prec = log_xi.precision();
    for i in 1..=INDEPENDENCE_EXPONENT {
        for j in 1..=INDEPENDENCE_EXPONENT {
            let form = Real::from_i64(i, prec) * log_xi - Real::from_i64(j, prec) * log_eta;
            if form.contains_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Builds the reduction problem for a class pair with starting bound
/// `m_bound`.
pub fn build_problem(
    t: &D4Triple,
    class_a: &PellClass,
    class_b: &PellClass,
    m_bound: &BigInt,
    prec: usize,
) -> Result<ReductionProblem> {
    if class_a.side != Side::A || class_b.side != Side::B {
        return Err(Error::Domain(
            "build_problem expects a side-A and a side-B class".into(),
        ));
    }
    let (a, b, c) = (int(&t.a, prec), int(&t.b, prec), int(&t.c, prec));
    let (ra, rb, rc) = (a.sqrt(), b.sqrt(), c.sqrt());
    let (z0, x0) = (int(&class_a.z, prec), int(&class_a.x, prec));
    let (z1, y1) = (int(&class_b.z, prec), int(&class_b.x, prec));
    let numerator = &rb * (&x0 * &rc + &z0 * &ra);
    let denominator = &ra * (&y1 * &rc + &z1 * &rb);
    if !numerator.certainly_positive() || !denominator.certainly_positive() {
        return Err(Error::PrecisionExhausted {
            bits: prec,
            what: "sign of the constant μ".into(),
        });
    }
    let mu = numerator / denominator;
    let gap = &z0 * &ra - &x0 * &rc;
    let kappa0 = &gap * &gap / (Real::from_i64(2, prec) * (&c - &a));
    let (log_xi, log_eta) = log_units(t, prec);
    if let Some((i, j)) = small_relation(&log_xi, &log_eta) {
        return Err(Error::Consistency(format!(
            "cannot separate ξ^{i} from η^{j}; log ξ / log η may be rational"
        )));
    }
    let xi = log_xi.exp();
    Ok(ReductionProblem {
        kappa: &log_xi / &log_eta,
        mu_hat: mu.ln() / &log_eta,
        a_coef: kappa0 / &log_eta,
        b_base: &xi * &xi,
        m_bound: m_bound.clone(),
    })
}

/// One reduction step at the problem's own precision.
pub fn bd_reduce(p: &ReductionProblem) -> Result<ReductionResult> {
    let prec = p.precision();
    if !p.m_bound.is_positive() {
        return Err(Error::Domain("the index bound must be positive".into()));
    }
    let retry = || ReductionResult {
        m_in: p.m_bound.clone(),
        new_m: p.m_bound.clone(),
        q_used: BigInt::zero(),
        epsilon: f64::NAN,
        status: ReductionStatus::PrecisionRetry,
        precision_bits: prec,
    };
    let threshold: BigInt = &p.m_bound * 6u32;
    // Grow the expansion until it passes 6M and has room for the following
    // convergents, or terminates.
    let mut depth = 16;
    let (convs, first) = loop {
        let quotients = match continued_fraction(&p.kappa, depth) {
            Ok(q) => q,
            Err(Error::PrecisionExhausted { .. }) => return Ok(retry()),
            Err(e) => return Err(e),
        };
        let terminated = quotients.len() < depth;
        let convs = convergents(&quotients);
        match convs.iter().position(|c| c.denom() > &threshold) {
            Some(first) if terminated || convs.len() >= first + CONVERGENT_ATTEMPTS => break (convs, first),
            None if terminated => {
                return Err(Error::Consistency(
                    "κ is rational: its expansion terminates below 6M".into(),
                ))
            }
            _ => depth *= 2,
        }
    };
    let candidates = &convs[first..convs.len().min(first + CONVERGENT_ATTEMPTS)];
    let m_real = int(&p.m_bound, prec);
    let zero = Real::from_i64(0, prec);
    for conv in candidates {
        let q = int(conv.denom(), prec);
        let (Some(mu_dist), Some(kappa_dist)) = (
            (&q * &p.mu_hat).dist_to_nearest_int(),
            (&q * &p.kappa).dist_to_nearest_int(),
        ) else {
            return Ok(retry());
        };
        let epsilon = mu_dist - &m_real * kappa_dist;
        match zero.certified_lt(&epsilon) {
            None => return Ok(retry()),
            Some(false) => continue,
            Some(true) => {}
        }
        let ratio = (&p.a_coef * &q / &epsilon).ln() / p.b_base.ln();
        let Some(bound) = ratio.floor_certified() else {
            return Ok(retry());
        };
        let bound = bound.max(BigInt::zero());
        let reduced = bound < p.m_bound;
        return Ok(ReductionResult {
            m_in: p.m_bound.clone(),
            new_m: if reduced { bound } else { p.m_bound.clone() },
            q_used: conv.denom().clone(),
            epsilon: epsilon.to_f64(),
            status: if reduced {
                ReductionStatus::Reduced
            } else {
                ReductionStatus::Stalled
            },
            precision_bits: prec,
        });
    }
    Ok(ReductionResult {
        m_in: p.m_bound.clone(),
        new_m: p.m_bound.clone(),
        q_used: BigInt::zero(),
        epsilon: f64::NAN,
        status: ReductionStatus::FailedEpsilon,
        precision_bits: prec,
    })
}

/// Runs [`bd_reduce`] on problems built at increasing precision (doubling
/// from `start_bits`) until no comparison is left uncertified.
pub fn bd_reduce_escalating<F>(build: F, start_bits: usize) -> Result<ReductionResult>
where
    F: Fn(usize) -> Result<ReductionProblem>,
{
    let mut bits = start_bits.max(MIN_PRECISION);
    loop {
        let attempt = match build(bits) {
            Err(Error::PrecisionExhausted { .. }) => None,
            Err(e) => return Err(e),
            Ok(p) => Some(bd_reduce(&p)?),
        };
        match attempt {
            Some(r) if r.status != ReductionStatus::PrecisionRetry => return Ok(r),
            _ if bits >= MAX_PRECISION => {
                return Err(Error::PrecisionExhausted {
                    bits,
                    what: "Baker–Davenport step".into(),
                })
            }
            _ => bits *= 2,
        }
    }
}

/// Iterates reduction steps from `m_start` until the bound stops shrinking.
/// Returns every step taken.
pub fn reduce_to_fixpoint(
    t: &D4Triple,
    class_a: &PellClass,
    class_b: &PellClass,
    m_start: &BigInt,
    prec: usize,
) -> Result<Vec<ReductionResult>> {
    let mut rounds = Vec::new();
    let mut m = m_start.clone();
    for _ in 0..MAX_ROUNDS {
        let step = bd_reduce_escalating(|bits| build_problem(t, class_a, class_b, &m, bits), prec)?;
        let reduced = step.status == ReductionStatus::Reduced && step.new_m.is_positive();
        m = step.new_m.clone();
        rounds.push(step);
        if !reduced {
            return Ok(rounds);
        }
    }
    Err(Error::NoConvergence(MAX_ROUNDS))
}

/// All reduction rounds for one class pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReduction {
    pub class_a: PellClass,
    pub class_b: PellClass,
    pub rounds: Vec<ReductionResult>,
    /// Final bound on `m` for this pair. The input bound of every round is
    /// proven (by the three-logarithm estimate or an earlier round), so a
    /// round that cannot reduce further leaves it standing.
    #[serde(with = "crate::json::int")]
    pub final_bound: BigInt,
}

fn final_bound_of(m_start: &BigInt, rounds: &[ReductionResult]) -> BigInt {
    rounds.last().map_or_else(|| m_start.clone(), |last| last.new_m.clone())
}

/// Reduction over every class pair of a triple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    pub triple: D4Triple,
    #[serde(with = "crate::json::int")]
    pub m_start: BigInt,
    pub pairs: Vec<ClassReduction>,
    /// Maximum of the per-pair bounds.
    #[serde(with = "crate::json::int")]
    pub final_bound: BigInt,
}

impl CampaignReport {
    /// Every class pair was reduced below the starting bound at least once.
    pub fn all_reduced(&self) -> bool {
        self.pairs.iter().all(|p| p.final_bound < self.m_start)
    }
}

/// One line of the checkpoint file.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct CheckpointLine {
    #[serde(with = "crate::json::ints")]
    triple: Vec<BigInt>,
    /// `"z0,x0"` of the side-A class.
    class_a: String,
    /// `"z1,y1"` of the side-B class.
    class_b: String,
    #[serde(with = "crate::json::int")]
    m_start: BigInt,
    rounds: Vec<ReductionResult>,
}

fn class_key(c: &PellClass) -> String {
    format!("{},{}", c.z, c.x)
}

fn load_checkpoint(
    path: &Path,
    t: &D4Triple,
    m_start: &BigInt,
) -> Result<BTreeMap<(String, String), Vec<ReductionResult>>> {
    let mut done = BTreeMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(done),
        Err(e) => return Err(e.into()),
    };
    let elements = t.elements().to_vec();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        // A torn final line from an interrupted run is skipped.
        let Ok(entry) = serde_json::from_str::<CheckpointLine>(&line) else {
            continue;
        };
        if entry.triple == elements && &entry.m_start == m_start {
            done.insert((entry.class_a, entry.class_b), entry.rounds);
        }
    }
    Ok(done)
}

/// Reduces every class pair of `t` from `m_start` (the three-logarithm
/// bound when `None`) to its fixpoint.
///
/// With a checkpoint path, each finished pair is appended as one JSON line;
/// pairs already present (for the same triple and starting bound) are
/// reused instead of recomputed.
pub fn bd_campaign(
    t: &D4Triple,
    m_start: Option<&BigInt>,
    checkpoint: Option<&Path>,
    prec: usize,
) -> Result<CampaignReport> {
    let m_start = match m_start {
        Some(m) => m.clone(),
        None => matveev_m_bound(t, prec),
    };
    let classes_a = enumerate_classes_a(t);
    let classes_b = enumerate_classes_b(t);
    let pairs: Vec<(&PellClass, &PellClass)> = classes_a
        .iter()
        .flat_map(|ca| classes_b.iter().map(move |cb| (ca, cb)))
        .collect();
    let done = match checkpoint {
        Some(path) => load_checkpoint(path, t, &m_start)?,
        None => BTreeMap::new(),
    };
    let writer = match checkpoint {
        Some(path) => Some(Mutex::new(OpenOptions::new().create(true).append(true).open(path)?)),
        None => None,
    };
    let results: Vec<ClassReduction> = pairs
        .par_iter()
        .map(|(ca, cb)| -> Result<ClassReduction> {
            let key = (class_key(ca), class_key(cb));
            let rounds = match done.get(&key) {
                Some(rounds) => rounds.clone(),
                None => {
                    let rounds = reduce_to_fixpoint(t, ca, cb, &m_start, prec)?;
                    if let Some(w) = &writer {
                        let line = CheckpointLine {
                            triple: t.elements().to_vec(),
                            class_a: key.0,
                            class_b: key.1,
                            m_start: m_start.clone(),
                            rounds: rounds.clone(),
                        };
                        let mut text = serde_json::to_string(&line)?;
                        text.push('\n');
                        let mut file = w.lock().expect("checkpoint lock poisoned");
                        file.write_all(text.as_bytes())?;
                        file.flush()?;
                    }
                    rounds
                }
            };
            Ok(ClassReduction {
                class_a: (*ca).clone(),
                class_b: (*cb).clone(),
                final_bound: final_bound_of(&m_start, &rounds),
                rounds,
            })
        })
        .collect::<Result<_>>()?;
    let final_bound = results
        .iter()
        .map(|r| r.final_bound.clone())
        .max()
        .unwrap_or_else(BigInt::zero);
    Ok(CampaignReport {
        triple: t.clone(),
        m_start,
        pairs: results,
        final_bound,
    })
}

/// The largest term `v_m` with `m <= bound` over all side-A classes: every
/// common term with index up to `bound` is at most this value.
pub fn z_limit_for_index(t: &D4Triple, bound: &BigInt) -> Result<BigInt> {
    let count = bound
        .to_usize()
        .and_then(|m| m.checked_add(1))
        .ok_or_else(|| Error::Domain(format!("index bound {bound} is too large to enumerate")))?;
    let mut limit = BigInt::one();
    for class in enumerate_classes_a(t) {
        if let Some(last) = gen_v(t, &class, count)?.last() {
            limit = limit.max(last.abs());
        }
    }
    Ok(limit)
}

/// Runs the campaign and lists every extension `d > c` with index within
/// the final bound. An empty or regular-only list certifies the absence of
/// irregular extensions.
pub fn certify_extensions(
    t: &D4Triple,
    m_start: Option<&BigInt>,
    prec: usize,
) -> Result<(CampaignReport, Vec<BigInt>)> {
    let report = bd_campaign(t, m_start, None, prec)?;
    let z_max = z_limit_for_index(t, &report.final_bound)?;
    let extensions = find_intersections(t, &z_max)?.d_values();
    Ok((report, extensions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DEFAULT_PRECISION as P;
    use crate::tuples::{d_plus, triple};

    fn golden_problem(bits: usize) -> ReductionProblem {
        let five = Real::from_i64(5, bits);
        ReductionProblem {
            kappa: (Real::from_i64(1, bits) + five.sqrt()) / Real::from_i64(2, bits),
            mu_hat: Real::lit("0.123", bits),
            a_coef: Real::from_i64(1000, bits),
            b_base: Real::from_i64(10, bits),
            m_bound: BigInt::from(1_000_000),
        }
    }

    /// `‖m·κ + μ̂‖ < A·B^{−m}` for some `m` in the range, checked directly.
    fn scan_solutions(p: &ReductionProblem, from: u64, to: u64) -> Vec<u64> {
        let kappa = p.kappa.to_f64();
        let mu = p.mu_hat.to_f64();
        let (a, b) = (p.a_coef.to_f64(), p.b_base.to_f64());
        (from..=to)
            .filter(|&m| {
                let x = m as f64 * kappa + mu;
                let dist = (x - x.round()).abs();
                let rhs = a * b.powf(-(m as f64));
                // Values near the threshold are re-examined in high precision.
                if dist > 2.0 * rhs + 1e-9 {
                    return false;
                }
                let exact = (Real::from_i64(m as i64, P) * &p.kappa + &p.mu_hat)
                    .dist_to_nearest_int()
                    .unwrap();
                let rhs = &p.a_coef * p.b_base.powi(-(m as i64));
                exact.certified_lt(&rhs) != Some(false)
            })
            .collect()
    }

    #[test]
    fn golden_ratio_reduction_matches_scan() {
        let p = golden_problem(P);
        let r = bd_reduce(&p).unwrap();
        assert_eq!(r.status, ReductionStatus::Reduced);
        assert!(r.epsilon > 0.0);
        assert!(r.q_used > BigInt::from(6_000_000));
        assert!(r.new_m < BigInt::from(20));
        let new_m = r.new_m.to_u64().unwrap();
        assert!(scan_solutions(&p, new_m + 1, 1_000_000).is_empty());
    }

    #[test]
    fn doubled_precision_agrees() {
        let low = bd_reduce(&golden_problem(P)).unwrap();
        let high = bd_reduce(&golden_problem(2 * P)).unwrap();
        assert_eq!(low.new_m, high.new_m);
        assert_eq!(low.q_used, high.q_used);
    }

    #[test]
    fn homogeneous_form_fails_epsilon() {
        let mut p = golden_problem(P);
        p.mu_hat = Real::from_i64(0, P);
        let r = bd_reduce(&p).unwrap();
        assert_eq!(r.status, ReductionStatus::FailedEpsilon);
        assert_eq!(r.new_m, p.m_bound);
    }

    #[test]
    fn low_precision_requests_retry() {
        let mut p = golden_problem(MIN_PRECISION);
        p.m_bound = num_traits::pow(BigInt::from(10), 30);
        let r = bd_reduce(&p).unwrap();
        assert_eq!(r.status, ReductionStatus::PrecisionRetry);
        let escalated = bd_reduce_escalating(
            |bits| {
                let mut q = golden_problem(bits);
                q.m_bound = num_traits::pow(BigInt::from(10), 30);
                Ok(q)
            },
            MIN_PRECISION,
        )
        .unwrap();
        assert_eq!(escalated.status, ReductionStatus::Reduced);
        assert!(escalated.precision_bits > MIN_PRECISION);
    }

    #[test]
    fn kappa_for_small_triple() {
        let t = triple(1, 5, 12).unwrap();
        let ca = PellClass::new(Side::A, 2, 2);
        let cb = PellClass::new(Side::B, 2, 2);
        let p = build_problem(&t, &ca, &cb, &BigInt::from(100), P).unwrap();
        let expected = (2.0 + 3f64.sqrt()).ln() / ((8.0 + 60f64.sqrt()) / 2.0).ln();
        assert!((p.kappa.to_f64() - expected).abs() < 1e-14);
        assert!((p.kappa.to_f64() - 0.638235).abs() < 1e-6);
    }

    #[test]
    fn rejects_swapped_sides() {
        let t = triple(1, 5, 12).unwrap();
        let ca = PellClass::new(Side::A, 2, 2);
        assert!(build_problem(&t, &ca, &ca, &BigInt::from(10), P).is_err());
    }

    #[test]
    fn campaign_on_small_triple_is_sound() {
        let t = triple(1, 5, 12).unwrap();
        let report = bd_campaign(&t, None, None, P).unwrap();
        assert_eq!(report.m_start, BigInt::from(533_976_352_597_876u64));
        assert!(report.all_reduced());
        let bound = report.final_bound.clone();
        assert!(bound <= BigInt::from(10), "final bound {bound}");
        for pair in &report.pairs {
            let first = &pair.rounds[0];
            assert_eq!(first.status, ReductionStatus::Reduced);
            assert!(first.new_m < BigInt::from(20));
        }
        // Brute force well past the bound finds only the regular extension.
        let z_max = z_limit_for_index(&t, &(&bound + 50u32)).unwrap();
        let found = find_intersections(&t, &z_max).unwrap().d_values();
        assert_eq!(found, vec![d_plus(&t)]);
    }

    #[test]
    fn failed_round_keeps_the_previous_bound() {
        // For this regular triple one class pair reaches M = 3, after which
        // no convergent yields ε > 0; the proven bound 3 stands.
        let t = triple(81, 717, 1280).unwrap();
        let report = bd_campaign(&t, None, None, P).unwrap();
        assert!(report.all_reduced());
        let stuck = report
            .pairs
            .iter()
            .find(|p| p.rounds.last().unwrap().status == ReductionStatus::FailedEpsilon)
            .expect("a pair ends with a failed round");
        assert_eq!(stuck.final_bound, stuck.rounds.last().unwrap().m_in);
        assert!(report.final_bound <= BigInt::from(3));
    }

    #[test]
    fn checkpoint_resume_reproduces_results() {
        let t = triple(1, 5, 12).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("campaign.jsonl");
        let fresh = bd_campaign(&t, None, Some(&path), P).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), fresh.pairs.len());
        // Keep one finished pair and a torn line, as after an interruption.
        let first = text.lines().next().unwrap();
        std::fs::write(&path, format!("{first}\n{{\"triple\":[\"1\"")).unwrap();
        let resumed = bd_campaign(&t, None, Some(&path), P).unwrap();
        assert_eq!(fresh, resumed);
        let reloaded = bd_campaign(&t, None, Some(&path), P).unwrap();
        assert_eq!(fresh, reloaded);
    }
}
