//! Riesz–Thorin bookkeeping: interpolation weights, bound evaluation, and
//! log-convexity checking.
//!
//! The interpolation theorem says `‖A‖_p ≤ ‖A‖_{p0}^{1−θ}·‖A‖_{p1}^θ` when
//! `1/p = (1−θ)/p0 + θ/p1`. Everything here works with reciprocals so that
//! `p = ∞` participates via `1/∞ = 0`.

use crate::error::{Error, Result};
use crate::estimate::NormEstimate;
use crate::exponent::Exponent;

/// Default slack when checking log-convexity of certified intervals; covers
/// compounding of interval widths.
pub const LOGCONVEX_SLACK: f64 = 1e-9;

/// A validated interpolation configuration: `1/p` is a convex combination
/// of `1/p0` and `1/p1` with weight `theta`.
#[derive(Debug, Clone)]
pub struct InterpolationTriple {
    pub p0: Exponent,
    pub p1: Exponent,
    pub p: Exponent,
    pub theta: f64,
}

impl InterpolationTriple {
    pub fn new(p0: Exponent, p1: Exponent, p: Exponent) -> Result<InterpolationTriple> {
        let theta = theta_for(&p0, &p1, &p)?;
        Ok(InterpolationTriple { p0, p1, p, theta })
    }
}

/// The weight θ ∈ [0,1] solving `1/p = (1−θ)/p0 + θ/p1`.
///
/// Rejects `p0 = p1` (the equation is degenerate) and any `p` whose
/// reciprocal lies outside the segment `[1/p0, 1/p1]`.
pub fn theta_for(p0: &Exponent, p1: &Exponent, p: &Exponent) -> Result<f64> {
    let r0 = p0.reciprocal();
    let r1 = p1.reciprocal();
    let r = p.reciprocal();
    if (r0 - r1).abs() <= f64::EPSILON {
        return Err(Error::InvalidArgument(format!(
            "interpolation endpoints must differ, got p0 = {p0}, p1 = {p1}"
        )));
    }
    let (lo, hi) = if r0 < r1 { (r0, r1) } else { (r1, r0) };
    if r < lo - 1e-14 || r > hi + 1e-14 {
        return Err(Error::InvalidArgument(format!(
            "1/{p} is not between 1/{p0} and 1/{p1}"
        )));
    }
    let theta = (r0 - r) / (r0 - r1);
    Ok(theta.clamp(0.0, 1.0))
}

/// The interpolated bound `n0^{1−θ}·n1^θ`.
///
/// A zero endpoint with positive weight forces zero, matching the fact that
/// a vanishing operator norm at one exponent annihilates the bound.
pub fn rt_bound(norm_p0: f64, norm_p1: f64, theta: f64) -> Result<f64> {
    if norm_p0 < 0.0 || norm_p1 < 0.0 {
        return Err(Error::InvalidArgument(
            "norms must be nonnegative".into(),
        ));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "theta = {theta} is outside [0, 1]"
        )));
    }
    // powf follows IEEE 0^0 = 1, so a weight-zero endpoint drops out.
    Ok(norm_p0.powf(1.0 - theta) * norm_p1.powf(theta))
}

/// A failed log-convexity comparison: `lower(p)` exceeded the interpolated
/// bound built from the bracketing samples.
#[derive(Debug, Clone)]
pub struct ConvexityViolation {
    pub p0: Exponent,
    pub p: Exponent,
    pub p1: Exponent,
    pub lower: f64,
    pub bound: f64,
    pub excess: f64,
}

/// Outcome of [`check_logconvex`]: how many bracketing triples were tested
/// and which ones failed.
#[derive(Debug, Clone, Default)]
pub struct ConvexityReport {
    pub triples_checked: usize,
    pub violations: Vec<ConvexityViolation>,
}

impl ConvexityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every bracketing triple of samples for the interpolation
/// inequality `lower(p) ≤ upper(p0)^{1−θ}·upper(p1)^θ + slack`.
///
/// Violations are returned as data, not errors: with valid certified
/// intervals the report should always be clean, so a violation indicates a
/// bound that is not actually certified.
pub fn check_logconvex(
    samples: &[(Exponent, NormEstimate)],
    slack: f64,
) -> Result<ConvexityReport> {
    if samples.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    let mut sorted: Vec<&(Exponent, NormEstimate)> = samples.iter().collect();
    sorted.sort_by(|a, b| {
        b.0.reciprocal()
            .partial_cmp(&a.0.reciprocal())
            .expect("reciprocals are finite")
    });
    for w in sorted.windows(2) {
        if w[0].0.same_exponent(&w[1].0) {
            return Err(Error::InvalidArgument(format!(
                "duplicate exponent {} in samples",
                w[0].0
            )));
        }
    }

    let mut report = ConvexityReport::default();
    for i in 0..sorted.len() {
        for j in (i + 1)..sorted.len() {
            for k in (j + 1)..sorted.len() {
                let (p0, e0) = sorted[i];
                let (p, e) = sorted[j];
                let (p1, e1) = sorted[k];
                let theta = theta_for(p0, p1, p)?;
                let bound = rt_bound(e0.upper, e1.upper, theta)?;
                report.triples_checked += 1;
                if e.lower > bound + slack {
                    report.violations.push(ConvexityViolation {
                        p0: *p0,
                        p: *p,
                        p1: *p1,
                        lower: e.lower,
                        bound,
                        excess: e.lower - bound,
                    });
                }
            }
        }
    }
    Ok(report)
}
