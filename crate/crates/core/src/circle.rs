//! Constructive antipodal points for circle homeomorphisms.
//!
//! A homeomorphism of the circle lifted to a strictly monotone map
//! `h: [0, 2π] → [0, 2π]` always admits a point whose antipode is mapped
//! to the antipode of its image: the function
//! `g(t) = (h(t+π) − h(t))/π` satisfies `g(0) − 1 = −(g(π) − 1)`, so a
//! mean-value argument pins a root of `g − 1`. The solver makes that
//! argument executable: scan, bracket, bisect.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// Orientation of a circle map: whether the lift increases or decreases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Preserving,
    Reversing,
}

/// A strictly monotone lift `[0, 2π] → [0, 2π]` of a circle
/// homeomorphism, with its orientation detected and validated at
/// construction.
pub struct MonotoneCircleMap {
    eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    orientation: Orientation,
}

impl std::fmt::Debug for MonotoneCircleMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MonotoneCircleMap")
            .field("orientation", &self.orientation)
            .finish_non_exhaustive()
    }
}

/// Number of sample points used for monotonicity validation and for the
/// root scan.
const SCAN: usize = 2048;

/// Slack allowed when checking that the lift spans exactly one full turn.
const SPAN_TOL: f64 = 1e-6;

fn validate_samples(samples: &[f64]) -> Result<Orientation> {
    let first = samples[0];
    let last = *samples.last().expect("non-empty sample list");
    let span = last - first;
    if !span.is_finite() {
        return Err(Error::InvalidArgument("map produced non-finite values".into()));
    }
    if (span.abs() - TAU).abs() > SPAN_TOL {
        return Err(Error::InvalidArgument(format!(
            "lift must span one full turn: |h(2π) − h(0)| = {}, expected 2π",
            span.abs()
        )));
    }
    let orientation = if span > 0.0 {
        Orientation::Preserving
    } else {
        Orientation::Reversing
    };
    let mut worst = 0.0f64;
    for w in samples.windows(2) {
        let step = match orientation {
            Orientation::Preserving => w[1] - w[0],
            Orientation::Reversing => w[0] - w[1],
        };
        if step < -worst {
            worst = -step;
        }
    }
    if worst > 1e-9 {
        return Err(Error::NonMonotone(worst));
    }
    Ok(orientation)
}

impl MonotoneCircleMap {
    /// Wraps an evaluator after sampling it to confirm monotonicity and a
    /// full-turn span; the orientation is read off the samples.
    pub fn from_fn<F>(f: F) -> Result<MonotoneCircleMap>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let samples: Vec<f64> = (0..=SCAN).map(|i| f(TAU * i as f64 / SCAN as f64)).collect();
        let orientation = validate_samples(&samples)?;
        Ok(MonotoneCircleMap {
            eval: Box::new(f),
            orientation,
        })
    }

    /// Piecewise-linear map through the given `(t, h(t))` table. The
    /// abscissae must start at 0, end at 2π, and strictly increase; the
    /// ordinates must be monotone.
    pub fn from_table(points: &[(f64, f64)]) -> Result<MonotoneCircleMap> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument(
                "a tabulated map needs at least two points".into(),
            ));
        }
        if points[0].0.abs() > 1e-12 || (points[points.len() - 1].0 - TAU).abs() > 1e-12 {
            return Err(Error::InvalidArgument(
                "table abscissae must run from 0 to 2π".into(),
            ));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidArgument(
                    "table abscissae must strictly increase".into(),
                ));
            }
        }
        for &(t, v) in points {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::InvalidArgument("non-finite table entry".into()));
            }
        }
        let ordinates: Vec<f64> = points.iter().map(|p| p.1).collect();
        let orientation = validate_samples(&ordinates)?;
        let table: Vec<(f64, f64)> = points.to_vec();
        let eval = move |t: f64| -> f64 {
            let t = t.clamp(table[0].0, table[table.len() - 1].0);
            // Index of the segment containing t.
            let idx = match table.binary_search_by(|probe| probe.0.total_cmp(&t)) {
                Ok(i) => return table[i].1,
                Err(0) => 0,
                Err(i) => i - 1,
            };
            let idx = idx.min(table.len() - 2);
            let (t0, v0) = table[idx];
            let (t1, v1) = table[idx + 1];
            v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        };
        Ok(MonotoneCircleMap {
            eval: Box::new(eval),
            orientation,
        })
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Evaluates the lift (domain clamped to `[0, 2π]`).
    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t.clamp(0.0, TAU))
    }
}

/// Finds `t* ∈ [0, π]` whose image and the image of its antipode are
/// antipodal: `|h(t*+π) − h(t*) ∓ π| ≤ tol·π` (sign per orientation).
///
/// Orientation-preserving maps are solved directly; reversing maps are
/// reflected (`t ↦ 2π − t`) into preserving ones, solved, and the root is
/// mapped back. A strict sign change of `g − 1` on the scan is bisected;
/// when no strict sign change exists (the degenerate flat region) the
/// smallest scan point with `|g − 1| ≤ tol` is returned.
pub fn antipodal_point(h: &MonotoneCircleMap, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    match h.orientation {
        Orientation::Preserving => {
            let base = h.eval(0.0);
            solve_preserving(&|t| h.eval(t) - base, tol)
        }
        Orientation::Reversing => {
            // h(2π − t) increases in t; a root t̃ for the reflection gives
            // the antipodal parameter π − t̃ for the original map.
            let base = h.eval(TAU);
            let t = solve_preserving(&|t| h.eval(TAU - t) - base, tol)?;
            Ok(PI - t)
        }
    }
}

fn solve_preserving(h0: &dyn Fn(f64) -> f64, tol: f64) -> Result<f64> {
    let g = |t: f64| (h0(t + PI) - h0(t)) / PI;
    let step = PI / SCAN as f64;
    let gs: Vec<f64> = (0..=SCAN).map(|i| g(i as f64 * step)).collect();

    // A strict sign change brackets a root of g − 1; take the first one.
    // Values within a few ulps of zero do not count as signed — otherwise
    // rounding noise on an exactly-degenerate map (g ≡ 1) would fabricate
    // brackets.
    const SIGN_FLOOR: f64 = 1e-13;
    for i in 0..SCAN {
        let a = gs[i] - 1.0;
        let b = gs[i + 1] - 1.0;
        if a.abs() > SIGN_FLOOR && b.abs() > SIGN_FLOOR && (a > 0.0) != (b > 0.0) {
            return bisect(&g, i as f64 * step, (i + 1) as f64 * step, tol);
        }
    }

    // Degenerate case: g − 1 never strictly changes sign, so it must be
    // flat near 1 somewhere (the endpoints are exact negatives of each
    // other); pick the smallest scan point inside tolerance.
    for (i, v) in gs.iter().enumerate() {
        if (v - 1.0).abs() <= tol {
            return Ok(i as f64 * step);
        }
    }
    Err(Error::Internal(
        "no antipodal bracket found on the scan; the input violates the monotone circle-map invariants"
            .into(),
    ))
}

fn bisect(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut ga = g(a) - 1.0;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let gm = g(m) - 1.0;
        if gm.abs() <= tol || (b - a) <= f64::EPSILON * PI {
            return Ok(m);
        }
        if (ga > 0.0) == (gm > 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    let m = 0.5 * (a + b);
    if (g(m) - 1.0).abs() <= tol {
        Ok(m)
    } else {
        Err(Error::Internal(
            "bisection failed to meet the residual tolerance; the map may be discontinuous".into(),
        ))
    }
}
