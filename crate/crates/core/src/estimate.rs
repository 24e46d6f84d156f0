//! Certified norm estimates and solver budgets.

use serde::Serialize;

/// A certified two-sided estimate `lower ≤ ‖·‖ ≤ upper`.
///
/// Both endpoints are claims: `lower` is always realized by some witness
/// computation (a concrete vector whose Rayleigh-type ratio was evaluated in
/// floating point), and `upper` comes from a bound with a proof
/// (interpolation, exact closed form, or a branch-and-bound certificate).
#[derive(Debug, Clone, Serialize)]
pub struct NormEstimate {
    pub lower: f64,
    pub upper: f64,
    /// Whether the interval is tight enough to treat as an exact value.
    pub exact: bool,
    /// Which techniques produced the surviving endpoints, e.g. `"boyd"`,
    /// `"interpolation"`, `"svd"`, `"column-sums"`.
    pub method_tags: Vec<String>,
    /// A maximizing (or near-maximizing) input vector realizing `lower`,
    /// stored as interleaved re/im pairs when available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
}

/// Relative width below which an estimate is flagged exact.
pub const EXACT_WIDTH: f64 = 1e-8;

impl NormEstimate {
    /// An exact value with zero-width interval.
    pub fn exact(value: f64, tag: &str) -> NormEstimate {
        NormEstimate {
            lower: value,
            upper: value,
            exact: true,
            method_tags: vec![tag.to_string()],
            witness: None,
        }
    }

    /// An interval estimate; flags `exact` when the relative width is below
    /// [`EXACT_WIDTH`].
    pub fn interval(lower: f64, upper: f64, tag: &str) -> NormEstimate {
        let mut est = NormEstimate {
            lower,
            upper,
            exact: false,
            method_tags: vec![tag.to_string()],
            witness: None,
        };
        est.update_exact();
        est
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Intersect with another certified estimate of the same quantity. Both
    /// intervals contain the true value, so the intersection does too; tags
    /// are kept only for the endpoints that survive.
    pub fn intersect(&mut self, other: &NormEstimate) {
        if other.lower > self.lower {
            self.lower = other.lower;
            self.retag_lower(&other.method_tags);
            if other.witness.is_some() {
                self.witness = other.witness.clone();
            }
        }
        if other.upper < self.upper {
            self.upper = other.upper;
            self.retag_upper(&other.method_tags);
        }
        self.update_exact();
    }

    fn retag_lower(&mut self, tags: &[String]) {
        for t in tags {
            if !self.method_tags.contains(t) {
                self.method_tags.push(t.clone());
            }
        }
    }

    fn retag_upper(&mut self, tags: &[String]) {
        self.retag_lower(tags);
    }

    fn update_exact(&mut self) {
        self.exact = self.width() <= EXACT_WIDTH * self.lower.max(1.0);
    }

    /// Midpoint, a convenient point value for display.
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Effort knobs for the iterative solvers.
///
/// The defaults are sized for interactive use on matrices up to a few
/// hundred rows; [`NormBudget::light`] trades accuracy for speed in sweeps
/// over many matrices.
#[derive(Debug, Clone)]
pub struct NormBudget {
    /// Random starting vectors for the lower-bound iteration, in addition
    /// to the standard basis vectors which are always tried.
    pub starts: usize,
    /// Seed for the deterministic RNG behind the random starts.
    pub seed: u64,
    /// Iteration cap per start.
    pub max_iter: usize,
    /// Relative improvement below which an iteration is considered
    /// converged.
    pub tol: f64,
    /// Grid resolution for parametrized searches (angle grids, sphere
    /// grids).
    pub grid: usize,
    /// Golden-section refinement steps after a grid search.
    pub refine_iters: usize,
    /// Cell budget for branch-and-bound certification of 2x2 norms.
    pub bnb_max_cells: usize,
    /// Interval width at which branch-and-bound stops subdividing.
    pub target_width: f64,
    /// Largest dimension for which the 2-norm uses a full dense
    /// eigendecomposition; above it an iterative bound is used.
    pub p2_dense_eig_max_dim: usize,
    /// Whether 2x2 matrices get the dedicated certified solver.
    pub use_refine2x2: bool,
}

impl Default for NormBudget {
    fn default() -> NormBudget {
        NormBudget {
            starts: 8,
            seed: 0,
            max_iter: 2000,
            tol: 1e-12,
            grid: 64,
            refine_iters: 40,
            bnb_max_cells: 200_000,
            target_width: 1e-9,
            p2_dense_eig_max_dim: 160,
            use_refine2x2: true,
        }
    }
}

impl NormBudget {
    /// Reduced-effort preset for sweeps over many matrices where each
    /// individual estimate only needs a few digits.
    pub fn light() -> NormBudget {
        NormBudget {
            starts: 2,
            max_iter: 400,
            tol: 1e-10,
            grid: 32,
            refine_iters: 25,
            bnb_max_cells: 20_000,
            target_width: 1e-7,
            ..NormBudget::default()
        }
    }
}
