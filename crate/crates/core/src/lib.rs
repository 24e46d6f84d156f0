//! Certified computation of `p→p` operator norms and of norms in the
//! convolution algebras of the cyclic groups and the integers.
//!
//! Every norm query returns a [`NormEstimate`]: a closed interval
//! `[lower, upper]` guaranteed to contain the true value, with tags
//! naming the methods that produced each side. Lower bounds come from
//! explicit vectors (fixed-point ascent, spectral iteration, grid
//! search); upper bounds come from exact formulas at the endpoint
//! exponents, interpolation between them, certified eigenvalue
//! enclosures, and — for 2×2 matrices — branch-and-bound over the unit
//! sphere. Nothing is reported as exact unless the two sides agree to
//! within the certification width.
//!
//! The crate is organized around a small set of modules:
//!
//! - [`matrix`], [`exponent`], [`estimate`]: dense complex matrices,
//!   exact exponent arithmetic (including conjugates `1/p + 1/p′ = 1`),
//!   and the interval type.
//! - [`pnorm`]: induced-norm engines — exact routes at `p ∈ {1, 2, ∞}`,
//!   duality-map ascent for lower bounds, Riesz–Thorin interpolation for
//!   upper bounds, and the refined 2×2 solver.
//! - [`cyclic`]: the order-n cyclic convolution algebra in coefficient
//!   and Gelfand coordinates, its circulant action, automorphisms, and
//!   the isometry classification.
//! - [`zline`]: finitely supported convolution kernels on the integers,
//!   Toeplitz compressions, and symbol bounds.
//! - [`classify`]: the representability oracle and the numerical witness
//!   search separating exponent algebras.
//! - [`circle`]: the constructive antipodal-point solver for circle
//!   homeomorphisms.
//! - [`verify`]: seeded self-check suites behind the `lpgn verify`
//!   command.
//!
//! The `lpgn` binary in this crate exposes the main entry points as
//! subcommands emitting line-delimited JSON and RFC-4180 CSV.

pub mod circle;
pub mod classify;
pub mod cyclic;
pub mod error;
pub mod estimate;
pub mod exponent;
pub mod interp;
pub mod matrix;
pub mod opt;
pub mod pnorm;
pub mod verify;
pub mod zline;

pub use error::{Error, Result};
pub use estimate::{NormBudget, NormEstimate};
pub use exponent::Exponent;
pub use matrix::CMatrix;
