//! Dense complex matrices and the handful of operations the norm solvers
//! need.
//!
//! Storage is row-major `Vec<Complex64>`. Every constructor validates that
//! entries are finite: the certification logic downstream turns arithmetic
//! on entries into claimed bounds, and a NaN silently poisons every
//! comparison it touches.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    /// Matrix from row-major data. Fails if the length does not match or an
    /// entry is not finite.
    pub fn from_rows_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<CMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: if cols == 0 { 0 } else { idx / cols },
                    col: if cols == 0 { 0 } else { idx % cols },
                });
            }
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Matrix from a row-of-rows slice, mostly for tests and literals.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<CMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch(
                    "rows have unequal lengths".into(),
                ));
            }
            data.extend_from_slice(row);
        }
        CMatrix::from_rows_vec(r, c, data)
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> CMatrix {
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of size n.
    pub fn identity(n: usize) -> CMatrix {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// y = A x.
    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols, "matvec dimension mismatch");
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows];
        for (i, yi) in y.iter_mut().enumerate() {
            let row = self.row(i);
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, xj) in row.iter().zip(x) {
                acc += a * xj;
            }
            *yi = acc;
        }
        y
    }

    /// y = Aᵀ x (plain transpose, no conjugation).
    pub fn matvec_transpose(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.rows, "matvec_transpose dimension mismatch");
        let mut y = vec![Complex64::new(0.0, 0.0); self.cols];
        for (i, xi) in x.iter().enumerate() {
            let row = self.row(i);
            for (yj, a) in y.iter_mut().zip(row) {
                *yj += a * xi;
            }
        }
        y
    }

    /// y = Aᴴ x.
    pub fn matvec_adjoint(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.rows, "matvec_adjoint dimension mismatch");
        let mut y = vec![Complex64::new(0.0, 0.0); self.cols];
        for (i, xi) in x.iter().enumerate() {
            let row = self.row(i);
            for (yj, a) in y.iter_mut().zip(row) {
                *yj += a.conj() * xi;
            }
        }
        y
    }

    pub fn transpose(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// C = A B.
    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// max_j Σ_i |a_ij| — the exact 1→1 operator norm.
    pub fn max_abs_column_sum(&self) -> f64 {
        let mut sums = vec![0.0f64; self.cols];
        for i in 0..self.rows {
            for (s, a) in sums.iter_mut().zip(self.row(i)) {
                *s += a.norm();
            }
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// max_i Σ_j |a_ij| — the exact ∞→∞ operator norm.
    pub fn max_abs_row_sum(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|a| a.norm()).sum())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.norm_sqr() == 0.0)
    }

    pub fn scale(&self, s: f64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// ‖x‖_p for finite p ≥ 1 or p = ∞, with ℓ∞-prescaling so `x^p` cannot
/// overflow for extreme entries.
pub fn vec_norm(x: &[Complex64], p: f64) -> f64 {
    let max = x.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    if p.is_infinite() {
        return max;
    }
    if p == 1.0 {
        return x.iter().map(|z| z.norm()).sum();
    }
    if p == 2.0 {
        return x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }
    let sum: f64 = x.iter().map(|z| (z.norm() / max).powf(p)).sum();
    max * sum.powf(1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(f64::NAN, 0.0), c(0.0, 0.0)],
        ])
        .unwrap_err();
        assert!(matches!(
            err,
            crate::error::Error::NonFiniteEntry { row: 1, col: 0 }
        ));
    }

    #[test]
    fn matvec_against_hand_computation() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(2.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let y = a.matvec(&[c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(y, vec![c(1.0, 1.0), c(2.0, 0.0)]);
    }

    #[test]
    fn transpose_and_adjoint_differ_by_conjugation() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(3.0, -1.0)],
            vec![c(0.0, 1.0), c(-2.0, 0.5)],
        ])
        .unwrap();
        assert_eq!(a.transpose().conj(), a.adjoint());
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn row_and_column_sums_match_known_norms() {
        // [[1, -2], [3i, 4]]: column sums (1+3, 2+4), row sums (1+2, 3+4).
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(-2.0, 0.0)],
            vec![c(0.0, 3.0), c(4.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(a.max_abs_column_sum(), 6.0);
        assert_eq!(a.max_abs_row_sum(), 7.0);
        assert_eq!(a.frobenius_norm(), (1.0f64 + 4.0 + 9.0 + 16.0).sqrt());
    }

    #[test]
    fn vec_norm_handles_extreme_scales() {
        let x = [c(1e200, 0.0), c(1e200, 0.0)];
        let n = vec_norm(&x, 4.0);
        assert!((n / 1e200 - 2.0f64.powf(0.25)).abs() < 1e-12);

        let tiny = [c(1e-200, 0.0)];
        assert!((vec_norm(&tiny, 3.0) - 1e-200).abs() < 1e-215);
    }

    #[test]
    fn vec_norm_special_cases_agree_with_generic_path() {
        let x = [c(1.0, 1.0), c(-2.0, 0.5), c(0.0, -3.0)];
        for p in [1.0, 2.0] {
            let generic: f64 = x
                .iter()
                .map(|z| z.norm().powf(p))
                .sum::<f64>()
                .powf(1.0 / p);
            assert!((vec_norm(&x, p) - generic).abs() < 1e-12);
        }
        let max = x.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        assert_eq!(vec_norm(&x, f64::INFINITY), max);
    }

    #[test]
    fn matmul_against_hand_computation() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let b = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, -1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let ab = a.matmul(&b);
        // Row 0: (1*1 + i*(-i), 1*1 + i*0) = (2, 1); row 1: (2*(-i), 0).
        assert_eq!(ab[(0, 0)], c(2.0, 0.0));
        assert_eq!(ab[(0, 1)], c(1.0, 0.0));
        assert_eq!(ab[(1, 0)], c(0.0, -2.0));
        assert_eq!(ab[(1, 1)], c(0.0, 0.0));
    }
}
