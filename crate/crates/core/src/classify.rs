//! The representability trichotomy as an executable oracle, plus a
//! numerical search for elements witnessing that two exponent algebras on
//! a cyclic group are not isometric.
//!
//! The oracle is a verbatim transcription of the classification: the
//! p-convolution algebra of G acts isometrically on an L^q space (q > 1)
//! exactly when G is trivial, or p and q are equidistant from 2 in the
//! reciprocal scale, or p = 2 with G abelian. It performs no numerics;
//! the numerics live in [`witness_search`], which certifies norm gaps for
//! pairs the oracle rejects.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cyclic::{self, CyclicElement};
use crate::error::{Error, Result};
use crate::estimate::{NormBudget, NormEstimate};
use crate::exponent::Exponent;

/// The groups the library implements: the trivial group, finite cyclic
/// groups of order at least two, and the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupDescriptor {
    Trivial,
    CyclicFinite(u64),
    Integers,
}

impl GroupDescriptor {
    /// Cyclic group of the given order; order one collapses to the
    /// trivial group.
    pub fn cyclic(n: u64) -> Result<GroupDescriptor> {
        match n {
            0 => Err(Error::InvalidArgument("cyclic order must be positive".into())),
            1 => Ok(GroupDescriptor::Trivial),
            _ => Ok(GroupDescriptor::CyclicFinite(n)),
        }
    }

    /// Every implemented group is abelian.
    pub fn abelian(&self) -> bool {
        true
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, GroupDescriptor::Trivial)
    }
}

impl std::fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupDescriptor::Trivial => write!(f, "trivial"),
            GroupDescriptor::CyclicFinite(n) => write!(f, "Z{n}"),
            GroupDescriptor::Integers => write!(f, "Z"),
        }
    }
}

/// Whether the p-algebra of G is isometrically representable on an
/// L^q space. Requires finite `p ∈ [1, ∞)` and `q ∈ (1, ∞)`; values of q
/// outside that open interval are outside the classification and are
/// rejected rather than guessed.
pub fn representable(g: &GroupDescriptor, p: &Exponent, q: &Exponent) -> Result<bool> {
    if p.is_infinite() {
        return Err(Error::UnsupportedExponent(
            p.to_string(),
            "the algebra exponent p must lie in [1, inf)",
        ));
    }
    if q.is_one() {
        return Err(Error::UnsupportedExponent(
            q.to_string(),
            "the classification requires q > 1; q = 1 is out of scope",
        ));
    }
    if q.is_infinite() {
        return Err(Error::UnsupportedExponent(
            q.to_string(),
            "the classification covers q in (1, inf); every space embeds isometrically into an L^inf space, so q = inf is out of scope",
        ));
    }
    Ok(g.is_trivial()
        || p.same_distance_to_half(q)
        || (p.is_two() && g.abelian()))
}

/// Whether the p- and q-algebras of G are isometrically isomorphic:
/// exactly when the exponents are equidistant from 2 in the reciprocal
/// scale, or G is trivial. No restriction on q.
pub fn isomorphic_group_algebras(g: &GroupDescriptor, p: &Exponent, q: &Exponent) -> bool {
    g.is_trivial() || p.same_distance_to_half(q)
}

/// An element certifying a norm gap between two exponent algebras.
#[derive(Debug, Clone)]
pub struct Witness {
    pub group: GroupDescriptor,
    pub element: CyclicElement,
    pub p: Exponent,
    pub q: Exponent,
    pub at_p: NormEstimate,
    pub at_q: NormEstimate,
    /// Certified lower bound for |‖x‖_p − ‖x‖_q|: zero when the intervals
    /// overlap.
    pub gap_lower: f64,
}

fn certified_gap(a: &NormEstimate, b: &NormEstimate) -> f64 {
    (a.lower - b.upper).max(b.lower - a.upper).max(0.0)
}

/// Canonical unimodular Gelfand candidates: the quarter-turn pattern
/// `ξ_j = i^j` and the alternating pattern `(1, i, 1, i, …)`.
fn canonical_candidates(n: usize) -> Vec<Vec<Complex64>> {
    let i = Complex64::new(0.0, 1.0);
    let quarter: Vec<Complex64> = (0..n).map(|j| i.powu(j as u32 % 4)).collect();
    let alternating: Vec<Complex64> = (0..n)
        .map(|j| if j % 2 == 0 { Complex64::new(1.0, 0.0) } else { i })
        .collect();
    vec![quarter, alternating]
}

/// Searches unimodular Gelfand vectors on the order-n cyclic group for
/// the largest certified gap between the norms at p and q. Candidates are
/// the canonical patterns plus `trials` seeded random phase vectors;
/// ranking uses interval midpoints, the reported `gap_lower` uses
/// certified interval separation. A zero gap is a result, not an error.
pub fn witness_search(
    n: u64,
    p: &Exponent,
    q: &Exponent,
    trials: usize,
    seed: u64,
    budget: &NormBudget,
) -> Result<Witness> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "witness search needs a cyclic group of order at least 2".into(),
        ));
    }
    let group = GroupDescriptor::CyclicFinite(n);
    if p.is_infinite() || q.is_infinite() {
        return Err(Error::UnsupportedExponent(
            "inf".into(),
            "witness norms are computed at finite exponents",
        ));
    }
    if isomorphic_group_algebras(&group, p, q) {
        return Err(Error::InvalidArgument(format!(
            "the algebras at p = {p} and q = {q} are isometrically isomorphic; no witness exists"
        )));
    }

    let n_us = n as usize;
    let mut candidates = canonical_candidates(n_us);
    candidates.extend(random_phase_vectors(n_us, trials, seed));

    let scored: Vec<Result<(f64, f64, CyclicElement, NormEstimate, NormEstimate)>> = candidates
        .into_par_iter()
        .map(|g| {
            let x = CyclicElement::from_gelfand(n_us, g)?;
            let at_p = cyclic::norm(&x, p, budget)?;
            let at_q = cyclic::norm(&x, q, budget)?;
            let midgap = (at_p.midpoint() - at_q.midpoint()).abs();
            let gap = certified_gap(&at_p, &at_q);
            Ok((midgap, gap, x, at_p, at_q))
        })
        .collect();

    // Deterministic sequential argmax by midpoint gap; earlier candidate
    // wins ties.
    let mut best: Option<(f64, f64, CyclicElement, NormEstimate, NormEstimate)> = None;
    for s in scored {
        let s = s?;
        let better = match &best {
            None => true,
            Some(b) => s.0 > b.0,
        };
        if better {
            best = Some(s);
        }
    }
    let (_, gap_lower, element, at_p, at_q) = best.expect("candidate list is never empty");
    Ok(Witness {
        group,
        element,
        p: *p,
        q: *q,
        at_p,
        at_q,
        gap_lower,
    })
}

fn random_phase_vectors(n: usize, trials: usize, seed: u64) -> Vec<Vec<Complex64>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU))
                .collect()
        })
        .collect()
}
