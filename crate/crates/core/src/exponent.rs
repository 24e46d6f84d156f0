//! Hölder exponents with conjugate-pair semantics.
//!
//! An exponent is a value in `[1, ∞]`. Exponents built from integer
//! fractions keep their rational form, so conjugation and the comparison
//! `|1/p - 1/2| = |1/q - 1/2|` can be decided exactly. This matters because
//! the representability trichotomy is discontinuous in `(p, q)`: a float
//! tolerance alone cannot distinguish a true conjugate pair from a close
//! miss.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Tolerance used when comparing reciprocal distances of non-rational
/// exponents.
pub const RECIPROCAL_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Repr {
    /// num/den in lowest terms, num >= den >= 1.
    Ratio { num: u64, den: u64 },
    /// A finite float >= 1 with no known exact form.
    Value(f64),
    Infinity,
}

/// A Hölder exponent p ∈ [1, ∞].
///
/// `∞` is admitted for matrix norms (it is needed as an interpolation
/// endpoint on `(2, ∞)`); the group-algebra constructors reject it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(Repr);

impl Exponent {
    pub const ONE: Exponent = Exponent(Repr::Ratio { num: 1, den: 1 });
    pub const TWO: Exponent = Exponent(Repr::Ratio { num: 2, den: 1 });
    pub const INFINITY: Exponent = Exponent(Repr::Infinity);

    /// Exponent from a float value in `[1, ∞]`.
    pub fn new(value: f64) -> Result<Exponent> {
        if value.is_nan() || value < 1.0 {
            return Err(Error::InvalidExponent(format!(
                "{value} is outside [1, inf]"
            )));
        }
        if value.is_infinite() {
            return Ok(Exponent::INFINITY);
        }
        // Small integers show up constantly (p = 1, 2, 3, ...); keep them
        // exact so conjugation stays exact.
        if value.fract() == 0.0 && value <= u32::MAX as f64 {
            return Exponent::from_ratio(value as u64, 1);
        }
        Ok(Exponent(Repr::Value(value)))
    }

    /// Exponent `num/den`, kept in exact rational form.
    pub fn from_ratio(num: u64, den: u64) -> Result<Exponent> {
        if den == 0 || num < den {
            return Err(Error::InvalidExponent(format!(
                "{num}/{den} is outside [1, inf)"
            )));
        }
        let g = gcd(num, den);
        Ok(Exponent(Repr::Ratio {
            num: num / g,
            den: den / g,
        }))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Ratio { num: 1, den: 1 })
    }

    pub fn is_two(&self) -> bool {
        matches!(self.0, Repr::Ratio { num: 2, den: 1 })
            || matches!(self.0, Repr::Value(v) if v == 2.0)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.0, Repr::Infinity)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    /// The float value; `f64::INFINITY` for p = ∞.
    pub fn value(&self) -> f64 {
        match self.0 {
            Repr::Ratio { num, den } => num as f64 / den as f64,
            Repr::Value(v) => v,
            Repr::Infinity => f64::INFINITY,
        }
    }

    /// 1/p, with 1/∞ = 0.
    pub fn reciprocal(&self) -> f64 {
        match self.0 {
            Repr::Ratio { num, den } => den as f64 / num as f64,
            Repr::Value(v) => 1.0 / v,
            Repr::Infinity => 0.0,
        }
    }

    /// The conjugate exponent p′ with 1/p + 1/p′ = 1.
    pub fn conjugate(&self) -> Exponent {
        match self.0 {
            Repr::Ratio { num, den } => {
                if num == den {
                    Exponent::INFINITY
                } else {
                    // p = a/b  =>  p' = a/(a-b); gcd(a, a-b) = gcd(a, b) = 1.
                    Exponent(Repr::Ratio {
                        num,
                        den: num - den,
                    })
                }
            }
            Repr::Value(v) => {
                if v == 1.0 {
                    Exponent::INFINITY
                } else {
                    Exponent(Repr::Value(v / (v - 1.0)))
                }
            }
            Repr::Infinity => Exponent::ONE,
        }
    }

    /// |1/p − 1/2|.
    pub fn distance_to_half(&self) -> f64 {
        (self.reciprocal() - 0.5).abs()
    }

    /// Whether `|1/p − 1/2| = |1/q − 1/2|`, decided exactly when both
    /// exponents have rational form and within [`RECIPROCAL_TOL`] otherwise.
    pub fn same_distance_to_half(&self, other: &Exponent) -> bool {
        match (self.ratio_form(), other.ratio_form()) {
            (Some((a, b)), Some((c, d))) => {
                // |1/2 - b/a| = |a - 2b| / (2a), so cross-multiply.
                let lhs = (a as i128 - 2 * b as i128).unsigned_abs() * c as u128;
                let rhs = (c as i128 - 2 * d as i128).unsigned_abs() * a as u128;
                lhs == rhs
            }
            _ => (self.distance_to_half() - other.distance_to_half()).abs() <= RECIPROCAL_TOL,
        }
    }

    /// (num, den) with den = 0 encoding ∞; `None` for float-only exponents.
    fn ratio_form(&self) -> Option<(u64, u64)> {
        match self.0 {
            Repr::Ratio { num, den } => Some((num, den)),
            Repr::Value(_) => None,
            Repr::Infinity => Some((1, 0)),
        }
    }

    /// Exact equality where possible, reciprocal comparison otherwise.
    pub fn same_exponent(&self, other: &Exponent) -> bool {
        match (self.ratio_form(), other.ratio_form()) {
            (Some(a), Some(b)) => a == b,
            _ => (self.reciprocal() - other.reciprocal()).abs() <= RECIPROCAL_TOL,
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Ratio { num, den: 1 } => write!(f, "{num}"),
            Repr::Ratio { num, den } => write!(f, "{num}/{den}"),
            Repr::Value(v) => write!(f, "{v}"),
            Repr::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `"2"`, `"1.7"`, `"4/3"` (exact rational), and `"inf"`.
    fn from_str(s: &str) -> Result<Exponent> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") || s == "∞" {
            return Ok(Exponent::INFINITY);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: u64 = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidExponent(format!("bad numerator in {s:?}")))?;
            let den: u64 = den
                .trim()
                .parse()
                .map_err(|_| Error::InvalidExponent(format!("bad denominator in {s:?}")))?;
            return Exponent::from_ratio(num, den);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::InvalidExponent(format!("cannot parse {s:?}")))?;
        Exponent::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_round_trip_is_exact_for_rationals() {
        for (num, den) in [(1, 1), (2, 1), (4, 3), (3, 2), (7, 5), (100, 99)] {
            let p = Exponent::from_ratio(num, den).unwrap();
            assert_eq!(p.conjugate().conjugate(), p);
            if p.is_finite() && !p.is_one() {
                let sum = p.reciprocal() + p.conjugate().reciprocal();
                assert!((sum - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn conjugate_endpoints() {
        assert_eq!(Exponent::ONE.conjugate(), Exponent::INFINITY);
        assert_eq!(Exponent::INFINITY.conjugate(), Exponent::ONE);
        assert_eq!(Exponent::TWO.conjugate(), Exponent::TWO);
    }

    #[test]
    fn distance_to_half_is_conjugation_invariant() {
        for s in ["1", "4/3", "1.7", "2", "3", "8", "inf"] {
            let p: Exponent = s.parse().unwrap();
            assert!(p.same_distance_to_half(&p.conjugate()), "failed for {s}");
            assert!(
                (p.distance_to_half() - p.conjugate().distance_to_half()).abs() <= 1e-15,
                "failed for {s}"
            );
        }
    }

    #[test]
    fn exact_distance_comparison_distinguishes_near_misses() {
        let p = Exponent::from_ratio(4, 3).unwrap();
        let q = Exponent::from_ratio(4, 1).unwrap();
        assert!(p.same_distance_to_half(&q));

        // 1/1.333333 is within 3e-7 of 3/4 but is not the same reciprocal
        // distance; the float path must reject it and the rational path
        // must never see it.
        let near = Exponent::new(1.333333).unwrap();
        assert!(!near.same_distance_to_half(&q));
    }

    #[test]
    fn parses_fractions_and_floats() {
        assert_eq!(
            "4/3".parse::<Exponent>().unwrap(),
            Exponent::from_ratio(4, 3).unwrap()
        );
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::TWO);
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::INFINITY);
        assert!((("1.7".parse::<Exponent>().unwrap()).value() - 1.7).abs() < 1e-15);
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("2/3".parse::<Exponent>().is_err());
        assert!("nan".parse::<Exponent>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["1", "4/3", "2", "inf"] {
            let p: Exponent = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }
}
