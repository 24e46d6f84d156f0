//! Certified `p→p` operator norms of dense complex matrices.
//!
//! Exact closed forms exist at `p ∈ {1, 2, ∞}` (max column sum, largest
//! singular value, max row sum). Elsewhere the certified interval combines
//! a multi-start ascent lower bound ([`norm_lower_boyd`]), a Riesz–Thorin
//! interpolation upper bound ([`norm_upper_interp`]), and — for 2×2
//! matrices — a branch-and-bound solver that usually closes the interval to
//! near machine precision ([`norm2x2_refined`]).

pub mod boyd;
pub mod refine2x2;
pub mod spectral;

pub use boyd::{boyd_trace, norm_lower_boyd, norm_lower_boyd_with_starts};
pub use refine2x2::norm2x2_refined;
pub use spectral::{two_norm_certified, two_norm_lower_power};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::estimate::{NormBudget, NormEstimate};
use crate::exponent::Exponent;
use crate::interp::{rt_bound, theta_for};
use crate::matrix::CMatrix;

/// Exact norm at the closed-form exponents `p ∈ {1, 2, ∞}`.
pub fn norm_exact_special(a: &CMatrix, p: &Exponent) -> Result<NormEstimate> {
    if a.rows() == 0 || a.cols() == 0 || a.is_zero() {
        if p.is_one() || p.is_two() || p.is_infinite() {
            return Ok(NormEstimate::exact(0.0, "zero"));
        }
    }
    if p.is_one() {
        let mut best = (0usize, 0.0f64);
        for j in 0..a.cols() {
            let s: f64 = (0..a.rows()).map(|i| a[(i, j)].norm()).sum();
            if s > best.1 {
                best = (j, s);
            }
        }
        let mut est = NormEstimate::exact(best.1, "column-sums");
        let mut w = vec![0.0; 2 * a.cols()];
        w[2 * best.0] = 1.0;
        est.witness = Some(w);
        Ok(est)
    } else if p.is_infinite() {
        let mut best = (0usize, 0.0f64);
        for i in 0..a.rows() {
            let s: f64 = a.row(i).iter().map(|z| z.norm()).sum();
            if s > best.1 {
                best = (i, s);
            }
        }
        // The aligning input: conjugate phases of the extremal row.
        let mut est = NormEstimate::exact(best.1, "row-sums");
        let w: Vec<f64> = a
            .row(best.0)
            .iter()
            .flat_map(|z| {
                let ph = if z.norm() == 0.0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    (z / z.norm()).conj()
                };
                [ph.re, ph.im]
            })
            .collect();
        est.witness = Some(w);
        Ok(est)
    } else if p.is_two() {
        Ok(spectral::two_norm_certified(a, &NormBudget::default()))
    } else {
        Err(Error::UnsupportedExponent(
            p.to_string(),
            "closed forms exist only at p in {1, 2, inf}",
        ))
    }
}

/// Riesz–Thorin upper bound: interpolates the exact 1- and 2-norms on
/// `(1,2)` and the 2- and ∞-norms on `(2,∞)`. Lower side is left at zero.
pub fn norm_upper_interp(a: &CMatrix, p: &Exponent, budget: &NormBudget) -> Result<NormEstimate> {
    if a.rows() == 0 || a.cols() == 0 || a.is_zero() {
        return Ok(NormEstimate::exact(0.0, "zero"));
    }
    let upper = if p.is_one() {
        a.max_abs_column_sum()
    } else if p.is_infinite() {
        a.max_abs_row_sum()
    } else if p.is_two() {
        spectral::two_norm_certified(a, budget).upper
    } else if p.value() < 2.0 {
        let theta = theta_for(&Exponent::ONE, &Exponent::TWO, p)?;
        let n2 = spectral::two_norm_certified(a, budget).upper;
        rt_bound(a.max_abs_column_sum(), n2, theta)?
    } else {
        let theta = theta_for(&Exponent::TWO, &Exponent::INFINITY, p)?;
        let n2 = spectral::two_norm_certified(a, budget).upper;
        rt_bound(n2, a.max_abs_row_sum(), theta)?
    };
    Ok(NormEstimate {
        lower: 0.0,
        upper,
        exact: false,
        method_tags: vec!["interpolation".to_string()],
        witness: None,
    })
}

/// Dispatcher: the tightest certified interval the solvers can produce.
///
/// Exact at `{1, 2, ∞}`; otherwise intersects the ascent lower bound, the
/// interpolation upper bound and (when the matrix is 2×2) the refined
/// solver.
pub fn norm_certified(a: &CMatrix, p: &Exponent, budget: &NormBudget) -> Result<NormEstimate> {
    if a.rows() == 0 || a.cols() == 0 || a.is_zero() {
        return Ok(NormEstimate::exact(0.0, "zero"));
    }
    if a.rows() == 1 && a.cols() == 1 {
        let mut est = NormEstimate::exact(a[(0, 0)].norm(), "scalar");
        est.witness = Some(vec![1.0, 0.0]);
        return Ok(est);
    }
    if p.is_one() || p.is_two() || p.is_infinite() {
        return norm_exact_special(a, p);
    }

    let mut est = norm_lower_boyd(a, p, budget)?;
    est.intersect(&norm_upper_interp(a, p, budget)?);
    // The refined solver runs a branch-and-bound; skip it when the cheap
    // routes already meet the requested width (e.g. when interpolation is
    // exact, as it is for Gelfand-diagonal matrices).
    let target = budget.target_width * est.lower.max(1.0);
    if a.rows() == 2 && a.cols() == 2 && budget.use_refine2x2 && est.width() > target {
        est.intersect(&norm2x2_refined(a, p, budget)?);
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn exp(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    fn delta_matrix() -> CMatrix {
        CMatrix::from_rows(&[
            vec![c(0.5, 0.5), c(0.5, -0.5)],
            vec![c(0.5, -0.5), c(0.5, 0.5)],
        ])
        .unwrap()
    }

    fn random_matrix(rng: &mut ChaCha20Rng, rows: usize, cols: usize) -> CMatrix {
        let data: Vec<Complex64> = (0..rows * cols)
            .map(|_| c(2.0 * rng.gen::<f64>() - 1.0, 2.0 * rng.gen::<f64>() - 1.0))
            .collect();
        CMatrix::from_rows_vec(rows, cols, data).unwrap()
    }

    #[test]
    fn exact_special_known_values() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(3.0, 0.0), c(4.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(norm_exact_special(&a, &exp("1")).unwrap().lower, 6.0);
        assert_eq!(norm_exact_special(&a, &exp("inf")).unwrap().lower, 7.0);

        let id = CMatrix::identity(2);
        let est = norm_exact_special(&id, &exp("2")).unwrap();
        assert!((est.lower - 1.0).abs() < 1e-12);

        // The Gelfand-(1, i) matrix is unitary, so its 2-norm is 1.
        let est = norm_exact_special(&delta_matrix(), &exp("2")).unwrap();
        assert!((est.lower - 1.0).abs() < 1e-11 && (est.upper - 1.0).abs() < 1e-11);

        assert!(norm_exact_special(&id, &exp("1.5")).is_err());
    }

    #[test]
    fn exact_special_witnesses_are_valid() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 1.0), c(-2.0, 0.0)],
            vec![c(0.0, 3.0), c(0.5, -0.5)],
        ])
        .unwrap();
        for p in ["1", "inf"] {
            let p = exp(p);
            let est = norm_exact_special(&a, &p).unwrap();
            let w = est.witness.as_ref().unwrap();
            let x: Vec<Complex64> = w.chunks(2).map(|pr| c(pr[0], pr[1])).collect();
            let ratio = crate::matrix::vec_norm(&a.matvec(&x), p.value())
                / crate::matrix::vec_norm(&x, p.value());
            assert!(ratio >= est.lower - 1e-12, "p = {p}");
        }
    }

    #[test]
    fn interp_upper_matches_the_closed_form_for_the_delta_matrix() {
        // ‖a‖₁ = √2, ‖a‖₂ = 1, θ = 1/2 at p = 4/3: bound = 2^{1/4},
        // which the paper's element attains exactly.
        let a = delta_matrix();
        let est = norm_upper_interp(&a, &exp("4/3"), &NormBudget::default()).unwrap();
        assert!((est.upper - 2f64.powf(0.25)).abs() < 1e-10);
    }

    #[test]
    fn interp_upper_combines_column_sum_and_singular_value() {
        // [[1,1],[0,1]] at p = 3/2: θ = 2/3, bound = 2^{1/3}·φ^{2/3}.
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let est = norm_upper_interp(&a, &exp("3/2"), &NormBudget::default()).unwrap();
        let phi = ((3.0 + 5f64.sqrt()) / 2.0).sqrt();
        let expected = 2f64.powf(1.0 / 3.0) * phi.powf(2.0 / 3.0);
        assert!((est.upper - expected).abs() < 1e-10);
    }

    #[test]
    fn certified_delta_matrix_interval_collapses() {
        // Lower (ascent / refined) meets the interpolation upper bound.
        let est = norm_certified(&delta_matrix(), &exp("4/3"), &NormBudget::default()).unwrap();
        let target = 2f64.powf(0.25);
        assert!(est.lower <= target + 1e-12 && target <= est.upper + 1e-12);
        assert!(est.width() < 1e-7, "width = {}", est.width());
        assert!(est.method_tags.iter().any(|t| t == "boyd" || t == "refine2x2"));
    }

    #[test]
    fn certified_identity_is_tight_at_fractional_exponents() {
        for n in [2, 3, 5] {
            let est =
                norm_certified(&CMatrix::identity(n), &exp("1.7"), &NormBudget::default())
                    .unwrap();
            assert!((est.lower - 1.0).abs() < 1e-9, "n = {n}");
            assert!((est.upper - 1.0).abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn zero_and_scalar_matrices() {
        let z = CMatrix::zeros(3, 3);
        let est = norm_certified(&z, &exp("1.5"), &NormBudget::default()).unwrap();
        assert_eq!((est.lower, est.upper), (0.0, 0.0));
        assert!(est.exact);

        let s = CMatrix::from_rows(&[vec![c(3.0, -4.0)]]).unwrap();
        let est = norm_certified(&s, &exp("7/5"), &NormBudget::default()).unwrap();
        assert_eq!(est.lower, 5.0);
        assert_eq!(est.upper, 5.0);
    }

    #[test]
    fn transpose_duality_intervals_overlap() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let p = exp("1.4");
        let q = p.conjugate();
        for _ in 0..10 {
            let a = random_matrix(&mut rng, 4, 4);
            let at = a.transpose();
            let ea = norm_certified(&a, &p, &NormBudget::light()).unwrap();
            let eat = norm_certified(&at, &q, &NormBudget::light()).unwrap();
            // Both intervals contain the common true value ‖A‖_p = ‖Aᵀ‖_q.
            assert!(ea.lower <= eat.upper + 1e-9);
            assert!(eat.lower <= ea.upper + 1e-9);
        }
        // At the endpoints the duality is an exact identity.
        let a = random_matrix(&mut rng, 5, 3);
        let n1 = norm_exact_special(&a, &exp("1")).unwrap().lower;
        let ninf = norm_exact_special(&a.transpose(), &exp("inf")).unwrap().lower;
        assert_eq!(n1, ninf);
    }

    #[test]
    fn scaling_and_conjugation_invariance() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 3, 3);
        let p = exp("1.6");
        let est = norm_certified(&a, &p, &NormBudget::light()).unwrap();

        let scaled = a.scale(2.5);
        let est_scaled = norm_certified(&scaled, &p, &NormBudget::light()).unwrap();
        assert!((est_scaled.lower - 2.5 * est.lower).abs() < 1e-9 * est.lower.max(1.0));
        assert!((est_scaled.upper - 2.5 * est.upper).abs() < 1e-9 * est.upper.max(1.0));

        let conj = a.conj();
        let est_conj = norm_certified(&conj, &p, &NormBudget::light()).unwrap();
        assert!(est.lower <= est_conj.upper + 1e-9);
        assert!(est_conj.lower <= est.upper + 1e-9);
    }

    #[test]
    fn submultiplicativity_of_certified_bounds() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let p = exp("1.8");
        for _ in 0..5 {
            let a = random_matrix(&mut rng, 3, 3);
            let b = random_matrix(&mut rng, 3, 3);
            let ab = a.matmul(&b);
            let eab = norm_certified(&ab, &p, &NormBudget::light()).unwrap();
            let ea = norm_certified(&a, &p, &NormBudget::light()).unwrap();
            let eb = norm_certified(&b, &p, &NormBudget::light()).unwrap();
            assert!(eab.lower <= ea.upper * eb.upper + 1e-9);
        }
    }

    #[test]
    fn permutation_and_unimodular_diagonal_invariance() {
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        let a = random_matrix(&mut rng, 3, 3);
        let p = exp("1.3");
        // P D A E Q with P, Q permutations and D, E unimodular diagonal.
        let perm = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let mut d = CMatrix::zeros(3, 3);
        let mut e = CMatrix::zeros(3, 3);
        for i in 0..3 {
            let t1 = rng.gen::<f64>() * std::f64::consts::TAU;
            let t2 = rng.gen::<f64>() * std::f64::consts::TAU;
            d[(i, i)] = c(t1.cos(), t1.sin());
            e[(i, i)] = c(t2.cos(), t2.sin());
        }
        let b = perm.matmul(&d).matmul(&a).matmul(&e).matmul(&perm.transpose());
        let ea = norm_certified(&a, &p, &NormBudget::light()).unwrap();
        let eb = norm_certified(&b, &p, &NormBudget::light()).unwrap();
        assert!(ea.lower <= eb.upper + 1e-9);
        assert!(eb.lower <= ea.upper + 1e-9);
    }
}
