//! Convolution operators on the integer line with finitely supported
//! kernels.
//!
//! A kernel f acts on two-sided sequences by `(f ∗ x)(j) = Σ_k f(k)·x(j−k)`.
//! Its symbol is the trigonometric polynomial `σ(θ) = Σ_k f(k)·e^{ikθ}`;
//! at p = 2 the operator norm is `sup |σ|`, at p = 1 and p = ∞ it is
//! `‖f‖₁`, and in between the norm is bracketed by interpolation from
//! above and by finite Toeplitz compressions from below.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::estimate::{NormBudget, NormEstimate};
use crate::exponent::Exponent;
use crate::interp;
use crate::matrix::{vec_norm, CMatrix};
use crate::opt::golden_max;
use crate::pnorm;

/// A finitely supported function on the integers, stored densely over its
/// support interval. The zero kernel has an empty value list.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    support_lo: i64,
    values: Vec<Complex64>,
}

impl Kernel {
    /// Builds a kernel from (site, value) pairs; repeated sites are summed.
    pub fn from_entries(entries: &[(i64, Complex64)]) -> Result<Kernel> {
        for &(k, v) in entries {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "non-finite kernel value at site {k}"
                )));
            }
        }
        let nonzero: Vec<&(i64, Complex64)> =
            entries.iter().filter(|(_, v)| v.norm() != 0.0).collect();
        if nonzero.is_empty() {
            return Ok(Kernel {
                support_lo: 0,
                values: Vec::new(),
            });
        }
        let lo = nonzero.iter().map(|(k, _)| *k).min().unwrap();
        let hi = nonzero.iter().map(|(k, _)| *k).max().unwrap();
        let len = (hi - lo + 1) as usize;
        let mut values = vec![Complex64::new(0.0, 0.0); len];
        for &&(k, v) in &nonzero {
            values[(k - lo) as usize] += v;
        }
        Ok(Kernel { support_lo: lo, values })
    }

    /// The point mass at a single site.
    pub fn delta(site: i64) -> Kernel {
        Kernel {
            support_lo: site,
            values: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.norm() == 0.0)
    }

    /// Inclusive support interval, or None for the zero kernel.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.values.is_empty() {
            None
        } else {
            Some((
                self.support_lo,
                self.support_lo + self.values.len() as i64 - 1,
            ))
        }
    }

    pub fn value_at(&self, k: i64) -> Complex64 {
        let idx = k - self.support_lo;
        if idx < 0 || idx >= self.values.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[idx as usize]
        }
    }

    /// The stored (site, value) pairs over the support interval.
    pub fn entries(&self) -> Vec<(i64, Complex64)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (self.support_lo + i as i64, *v))
            .collect()
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum()
    }

    /// `Σ_k |k·f(k)|` — a Lipschitz constant for the symbol.
    pub fn weighted_derivative_sum(&self) -> f64 {
        self.entries()
            .iter()
            .map(|(k, v)| (*k as f64).abs() * v.norm())
            .sum()
    }

    /// The symbol `σ(θ) = Σ_k f(k)·e^{ikθ}`.
    pub fn symbol(&self, theta: f64) -> Complex64 {
        self.entries()
            .iter()
            .map(|(k, v)| v * Complex64::from_polar(1.0, *k as f64 * theta))
            .sum()
    }

    /// Convolution product of two kernels.
    pub fn convolve(&self, other: &Kernel) -> Kernel {
        if self.is_zero() || other.is_zero() {
            return Kernel::from_entries(&[]).expect("empty is valid");
        }
        let mut entries = Vec::new();
        for (k, v) in self.entries() {
            for (m, w) in other.entries() {
                entries.push((k + m, v * w));
            }
        }
        Kernel::from_entries(&entries).expect("finite products of finite values")
    }

    /// The reflected kernel `f^#(k) = f(−k)`; its truncations are the
    /// transposes of the truncations of f.
    pub fn sharp(&self) -> Kernel {
        let entries: Vec<(i64, Complex64)> =
            self.entries().iter().map(|(k, v)| (-k, *v)).collect();
        Kernel::from_entries(&entries).expect("reflection preserves finiteness")
    }
}

/// The Toeplitz compression of convolution by f to the window
/// `{−N, …, N}`: a `(2N+1)×(2N+1)` matrix with `T[a][b] = f(a − b)` in
/// window coordinates.
pub fn toeplitz_truncation(f: &Kernel, n: usize) -> CMatrix {
    let dim = 2 * n + 1;
    let mut t = CMatrix::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            t[(a, b)] = f.value_at(a as i64 - b as i64);
        }
    }
    t
}

/// Certified `sup_θ |σ(θ)|` over the circle: grid scan with golden-section
/// refinement for the lower bound, plus a Lipschitz step bound for the
/// upper bound.
pub fn symbol_sup(f: &Kernel, grid: usize) -> NormEstimate {
    if f.is_zero() {
        return NormEstimate::exact(0.0, "symbol");
    }
    if f.values.len() == 1 {
        // A point mass has constant symbol modulus.
        let mut est = NormEstimate::exact(f.values[0].norm(), "symbol");
        est.witness = Some(vec![0.0]);
        return est;
    }
    let (lo, hi) = f.support().expect("nonzero kernel has support");
    let width = (hi - lo + 1) as usize;
    let g = grid.max(4 * width).max(64);
    let h = std::f64::consts::TAU / g as f64;

    let val = |theta: f64| f.symbol(theta).norm();
    let mut grid_max = 0.0f64;
    let mut best_theta = 0.0f64;
    for i in 0..g {
        let t = i as f64 * h;
        let v = val(t);
        if v > grid_max {
            grid_max = v;
            best_theta = t;
        }
    }
    let (_, refined) = golden_max(val, best_theta - h, best_theta + h, 48);
    let lower = refined.max(grid_max);

    // Any θ is within h/2 of a grid point, and |σ| moves at most L per
    // unit of θ.
    let lipschitz = f.l1_norm().max(f.weighted_derivative_sum());
    let upper = (grid_max + lipschitz * h / 2.0).max(lower);

    let mut est = NormEstimate::interval(lower, upper, "symbol");
    est.witness = Some(vec![best_theta]);
    est
}

/// Lower bound for the convolution norm on `ℓ^p(Z)` from the Toeplitz
/// compression to the window `{−N, …, N}`. Compressions never exceed the
/// full operator norm, so any certified lower bound for the matrix is one
/// for the operator.
pub fn norm_lambda_lower(
    f: &Kernel,
    p: &Exponent,
    n: usize,
    budget: &NormBudget,
) -> Result<NormEstimate> {
    norm_lambda_lower_with_starts(f, p, n, budget, &[])
}

fn retag(mut est: NormEstimate) -> NormEstimate {
    est.upper = f64::INFINITY;
    est.exact = false;
    est.method_tags = vec!["toeplitz-compression".to_string()];
    est
}

fn norm_lambda_lower_with_starts(
    f: &Kernel,
    p: &Exponent,
    n: usize,
    budget: &NormBudget,
    extra_starts: &[Vec<Complex64>],
) -> Result<NormEstimate> {
    if p.is_infinite() {
        return Err(Error::UnsupportedExponent(
            p.to_string(),
            "convolution-algebra exponents lie in [1, inf)",
        ));
    }
    if f.is_zero() {
        return Ok(NormEstimate::exact(0.0, "zero"));
    }
    let t = toeplitz_truncation(f, n);
    let est = if p.is_one() {
        pnorm::norm_exact_special(&t, p)?
    } else if p.is_two() {
        pnorm::two_norm_lower_power(&t, budget, extra_starts)
    } else {
        pnorm::norm_lower_boyd_with_starts(&t, p, budget, extra_starts)?
    };
    Ok(retag(est))
}

fn unpack_witness(w: &[f64]) -> Vec<Complex64> {
    w.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

/// Zero-pads a window-`N` vector to window `N'` (centered).
fn pad_center(v: &[Complex64], n_from: usize, n_to: usize) -> Vec<Complex64> {
    let off = n_to - n_from;
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n_to + 1];
    out[off..off + v.len()].copy_from_slice(v);
    out
}

/// Rayleigh-style ratio `‖T x‖_p / ‖x‖_p`, shaved for rounding so it stays
/// a valid lower bound.
fn compression_ratio(t: &CMatrix, x: &[Complex64], p: &Exponent) -> f64 {
    let nx = vec_norm(x, p.value());
    if nx == 0.0 {
        return 0.0;
    }
    let y = t.matvec(x);
    let raw = vec_norm(&y, p.value()) / nx;
    raw * (1.0 - 8.0 * f64::EPSILON * t.rows() as f64)
}

/// Lower-bound sweep over increasing window sizes. Each window reuses the
/// previous maximizer (zero-padded), which makes the reported bounds
/// nondecreasing by construction: padding never shrinks the ratio.
pub fn norm_lambda_lower_sweep(
    f: &Kernel,
    p: &Exponent,
    ns: &[usize],
    budget: &NormBudget,
) -> Result<Vec<(usize, NormEstimate)>> {
    let mut sizes: Vec<usize> = ns.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("empty window list".into()));
    }

    let mut out = Vec::with_capacity(sizes.len());
    let mut prev: Option<(usize, Vec<Complex64>, f64)> = None;
    for &n in &sizes {
        let warm: Vec<Vec<Complex64>> = match &prev {
            Some((n0, w, _)) => vec![pad_center(w, *n0, n)],
            None => Vec::new(),
        };
        let mut est = norm_lambda_lower_with_starts(f, p, n, budget, &warm)?;

        // Evaluate the padded previous witness directly and fold in the
        // previous bound, so the sweep cannot go down.
        if let Some((_, _, prev_lower)) = &prev {
            let t = toeplitz_truncation(f, n);
            let padded_ratio = compression_ratio(&t, &warm[0], p);
            if padded_ratio > est.lower {
                est.lower = padded_ratio;
                est.witness = Some(
                    warm[0]
                        .iter()
                        .flat_map(|z| [z.re, z.im])
                        .collect(),
                );
            }
            est.lower = est.lower.max(*prev_lower);
        }

        let witness = match &est.witness {
            Some(w) => unpack_witness(w),
            None => {
                // Keep the sweep warm even when the solver returned no
                // maximizer (e.g. the exact column-sum route): the center
                // basis vector is always a valid start.
                let dim = 2 * n + 1;
                let mut e = vec![Complex64::new(0.0, 0.0); dim];
                e[dim / 2] = Complex64::new(1.0, 0.0);
                e
            }
        };
        prev = Some((n, witness, est.lower));
        out.push((n, est));
    }
    Ok(out)
}

/// Upper bound for the convolution norm on `ℓ^p(Z)`: exact `‖f‖₁` at
/// p = 1, the symbol sup at p = 2, and the interpolation bound between
/// those anchors elsewhere.
pub fn norm_lambda_upper(f: &Kernel, p: &Exponent, budget: &NormBudget) -> Result<NormEstimate> {
    if p.is_infinite() {
        return Err(Error::UnsupportedExponent(
            p.to_string(),
            "convolution-algebra exponents lie in [1, inf)",
        ));
    }
    if f.is_zero() {
        return Ok(NormEstimate::exact(0.0, "zero"));
    }
    let l1 = f.l1_norm();
    if p.is_one() {
        // Every column of the (infinite) operator has absolute sum ‖f‖₁.
        return Ok(NormEstimate::exact(l1, "column-sums"));
    }
    // The symbol grid is cheap (O(grid · support)), and the Lipschitz slack
    // L·h/2 feeds straight into the interpolated bound, so spend generously.
    let sym = symbol_sup(f, budget.grid.max(65_536));
    if p.is_two() {
        return Ok(sym);
    }
    let one = Exponent::ONE;
    let two = Exponent::TWO;
    let inf = Exponent::INFINITY;
    let bound = if p.value() < 2.0 {
        let theta = interp::theta_for(&one, &two, p)?;
        interp::rt_bound(l1, sym.upper, theta)?
    } else {
        let theta = interp::theta_for(&two, &inf, p)?;
        interp::rt_bound(sym.upper, l1, theta)?
    };
    Ok(NormEstimate::interval(0.0, bound, "interpolation"))
}
