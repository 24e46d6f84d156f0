//! The 2→2 operator norm (largest singular value) with certified bounds.
//!
//! Small matrices get a full complex-Hermitian Jacobi eigendecomposition of
//! the Gram matrix `AᴴA`: the final rotated matrix is numerically diagonal,
//! so Gershgorin discs give a rigorous upper bound on its largest
//! eigenvalue, while the best eigenvector column gives a rigorous lower
//! bound `‖Av‖/‖v‖` evaluated on the original matrix. Large matrices fall
//! back to power iteration on `AᴴA`, which certifies only the lower side;
//! the upper side then comes from cheap norm inequalities.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::estimate::{NormBudget, NormEstimate};
use crate::matrix::{vec_norm, CMatrix};

const EPS: f64 = f64::EPSILON;

/// Certified interval for `‖A‖_{2→2}`.
pub fn two_norm_certified(a: &CMatrix, budget: &NormBudget) -> NormEstimate {
    if a.rows() == 0 || a.cols() == 0 || a.is_zero() {
        return NormEstimate::exact(0.0, "zero");
    }
    if a.rows().min(a.cols()) <= budget.p2_dense_eig_max_dim {
        two_norm_jacobi(a)
    } else {
        let mut est = two_norm_lower_power(a, budget, &[]);
        est.intersect(&cheap_upper(a));
        est
    }
}

/// Dense path: Jacobi eigendecomposition of the smaller Gram matrix.
fn two_norm_jacobi(a: &CMatrix) -> NormEstimate {
    // Work with the smaller of AᴴA (cols×cols) and AAᴴ (rows×rows); the
    // nonzero spectrum is the same.
    let use_left = a.rows() < a.cols();
    let b = if use_left {
        gram(&a.adjoint())
    } else {
        gram(a)
    };
    let n = b.rows();
    let b_fro = b.frobenius_norm();
    let (diag, v, rotations, gersh) = jacobi_eigen(b);

    let (mut best_idx, mut best_val) = (0, f64::NEG_INFINITY);
    for (i, d) in diag.iter().enumerate() {
        if *d > best_val {
            best_val = *d;
            best_idx = i;
        }
    }

    // Rigorous lower bound: evaluate the singular-value quotient on the
    // original matrix with the candidate eigenvector.
    let ev: Vec<Complex64> = (0..n).map(|i| v[(i, best_idx)]).collect();
    let x = if use_left {
        // ev approximates a left singular vector; pull back to input space.
        a.matvec_adjoint(&ev)
    } else {
        ev
    };
    let nx = vec_norm(&x, 2.0);
    let (lower, witness) = if nx == 0.0 {
        (0.0, None)
    } else {
        let ratio = vec_norm(&a.matvec(&x), 2.0) / nx;
        let w: Vec<f64> = x.iter().flat_map(|z| [z.re / nx, z.im / nx]).collect();
        // Shave the evaluation's own rounding so the bound stays a bound.
        (ratio * (1.0 - 8.0 * EPS * a.rows() as f64), Some(w))
    };

    // Rigorous upper bound: Gershgorin on the (numerically diagonal)
    // rotated Gram matrix, plus an allowance for the rounding committed
    // while forming the Gram matrix and applying the rotations.
    let slack = (a.rows() as f64 + 8.0 * rotations as f64) * EPS * b_fro;
    let upper = (gersh + slack).max(0.0).sqrt();

    let mut est = NormEstimate::interval(lower.max(0.0), upper, "svd");
    est.witness = witness;
    est
}

/// B = AᴴA, forced Hermitian.
fn gram(a: &CMatrix) -> CMatrix {
    let n = a.cols();
    let mut b = CMatrix::zeros(n, n);
    for j in 0..n {
        for k in j..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..a.rows() {
                acc += a[(i, j)].conj() * a[(i, k)];
            }
            if j == k {
                b[(j, j)] = Complex64::new(acc.re, 0.0);
            } else {
                b[(j, k)] = acc;
                b[(k, j)] = acc.conj();
            }
        }
    }
    b
}

/// Cyclic Jacobi for a Hermitian matrix. Returns the final diagonal, the
/// accumulated unitary (columns are eigenvector approximations), the number
/// of rotations applied, and the largest Gershgorin row bound of the final
/// matrix.
fn jacobi_eigen(mut b: CMatrix) -> (Vec<f64>, CMatrix, usize, f64) {
    let n = b.rows();
    let mut v = CMatrix::identity(n);
    let scale = b.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut rotations = 0usize;

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += b[(p, q)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = b[(p, q)];
                let gn = g.norm();
                if gn <= 1e-18 * scale {
                    continue;
                }
                let alpha = b[(p, p)].re;
                let beta = b[(q, q)].re;
                let phi = g / gn;
                let tau = (beta - alpha) / (2.0 * gn);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // B ← Jᴴ B J with J the identity outside rows/cols p,q and
                // J[p][p]=c, J[p][q]=s, J[q][p]=−φ̄s, J[q][q]=φ̄c.
                let phi_conj = phi.conj();
                for k in 0..n {
                    let bkp = b[(k, p)];
                    let bkq = b[(k, q)];
                    b[(k, p)] = c * bkp - phi_conj * s * bkq;
                    b[(k, q)] = s * bkp + phi_conj * c * bkq;
                }
                for k in 0..n {
                    let bpk = b[(p, k)];
                    let bqk = b[(q, k)];
                    b[(p, k)] = c * bpk - phi * s * bqk;
                    b[(q, k)] = s * bpk + phi * c * bqk;
                }
                b[(p, q)] = Complex64::new(0.0, 0.0);
                b[(q, p)] = Complex64::new(0.0, 0.0);
                b[(p, p)] = Complex64::new(b[(p, p)].re, 0.0);
                b[(q, q)] = Complex64::new(b[(q, q)].re, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - phi_conj * s * vkq;
                    v[(k, q)] = s * vkp + phi_conj * c * vkq;
                }
                rotations += 1;
            }
        }
    }

    let mut gersh = f64::NEG_INFINITY;
    for i in 0..n {
        let mut row = b[(i, i)].re;
        for j in 0..n {
            if j != i {
                row += b[(i, j)].norm();
            }
        }
        gersh = gersh.max(row);
    }

    let diag: Vec<f64> = (0..n).map(|i| b[(i, i)].re).collect();
    (diag, v, rotations, gersh)
}

/// Power iteration on AᴴA. Every reported value is a true quotient
/// `‖Ax‖/‖x‖`, so the running best is a rigorous lower bound regardless of
/// convergence. `extra_starts` lets callers warm-start (e.g. truncation
/// sweeps that grow a witness from the previous size).
pub fn two_norm_lower_power(
    a: &CMatrix,
    budget: &NormBudget,
    extra_starts: &[Vec<Complex64>],
) -> NormEstimate {
    let n = a.cols();
    let mut starts: Vec<Vec<Complex64>> = Vec::new();
    for s in extra_starts {
        if s.len() == n && vec_norm(s, 2.0) > 0.0 {
            starts.push(s.clone());
        }
    }
    starts.push(vec![Complex64::new(1.0, 0.0); n]);
    let mut rng = ChaCha20Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.starts.min(4) {
        starts.push(
            (0..n)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect(),
        );
    }

    let mut best = 0.0f64;
    let mut best_x: Option<Vec<Complex64>> = None;
    let stop_tol = budget.tol.max(1e-11);
    for start in &starts {
        let mut x = normalize2(start.clone());
        let mut stale = 0usize;
        let mut last = 0.0f64;
        for _ in 0..budget.max_iter {
            let ax = a.matvec(&x);
            let ratio = vec_norm(&ax, 2.0);
            if ratio > best {
                best = ratio;
                best_x = Some(x.clone());
            }
            if ratio == 0.0 {
                break;
            }
            if ratio - last <= stop_tol * ratio {
                stale += 1;
                if stale >= 10 {
                    break;
                }
            } else {
                stale = 0;
            }
            last = ratio;
            x = normalize2(a.matvec_adjoint(&ax));
        }
    }

    let lower = best * (1.0 - 8.0 * EPS * a.rows() as f64);
    let mut est = NormEstimate {
        lower: lower.max(0.0),
        upper: f64::INFINITY,
        exact: false,
        method_tags: vec!["power".to_string()],
        witness: None,
    };
    if let Some(x) = best_x {
        est.witness = Some(x.iter().flat_map(|z| [z.re, z.im]).collect());
    }
    est
}

/// Cheap always-valid upper bounds on the 2-norm.
fn cheap_upper(a: &CMatrix) -> NormEstimate {
    let holder = (a.max_abs_column_sum() * a.max_abs_row_sum()).sqrt();
    let fro = a.frobenius_norm();
    if holder <= fro {
        NormEstimate {
            lower: 0.0,
            upper: holder,
            exact: false,
            method_tags: vec!["l1-linf-geomean".to_string()],
            witness: None,
        }
    } else {
        NormEstimate {
            lower: 0.0,
            upper: fro,
            exact: false,
            method_tags: vec!["frobenius".to_string()],
            witness: None,
        }
    }
}

fn normalize2(mut x: Vec<Complex64>) -> Vec<Complex64> {
    let n = vec_norm(&x, 2.0);
    if n > 0.0 {
        for z in &mut x {
            *z /= n;
        }
    }
    x
}
