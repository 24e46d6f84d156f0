//! The convolution algebra of the cyclic group of order n, acting on
//! `ℓ^p_n`.
//!
//! An element is stored by its convolution coefficients `f(0..n)`; the
//! Gelfand coordinates `ξ_j = Σ_k f(k)·ω^{jk}` (`ω = e^{2πi/n}`) are the
//! eigenvalues of its circulant matrix and are kept cached. The two
//! representations are exchanged by the DFT, and the norm at exponent p is
//! the `p→p` operator norm of the circulant `u·diag(ξ)·u⁻¹`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::estimate::{NormBudget, NormEstimate};
use crate::exponent::Exponent;
use crate::matrix::CMatrix;
use crate::pnorm;
use crate::zline::Kernel;

/// An element of the order-n cyclic convolution algebra, with both the
/// coefficient and Gelfand representations populated.
#[derive(Debug, Clone)]
pub struct CyclicElement {
    n: usize,
    coeffs: Vec<Complex64>,
    gelfand: Vec<Complex64>,
}

fn omega_pow(n: usize, e: i64) -> Complex64 {
    // ω^e with the exponent reduced first so the angle stays small.
    let r = e.rem_euclid(n as i64) as f64;
    Complex64::from_polar(1.0, std::f64::consts::TAU * r / n as f64)
}

fn check_len(n: usize, len: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("group order must be positive".into()));
    }
    if len != n {
        return Err(Error::DimensionMismatch(format!(
            "expected {n} entries for order {n}, got {len}"
        )));
    }
    Ok(())
}

impl CyclicElement {
    /// Element from convolution coefficients.
    pub fn from_coeffs(n: usize, coeffs: Vec<Complex64>) -> Result<CyclicElement> {
        check_len(n, coeffs.len())?;
        let gelfand = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| coeffs[k] * omega_pow(n, (j * k) as i64))
                    .sum()
            })
            .collect();
        Ok(CyclicElement { n, coeffs, gelfand })
    }

    /// Element from Gelfand coordinates (values of the characters).
    pub fn from_gelfand(n: usize, gelfand: Vec<Complex64>) -> Result<CyclicElement> {
        check_len(n, gelfand.len())?;
        let coeffs = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| gelfand[j] * omega_pow(n, -((j * k) as i64)))
                    .sum::<Complex64>()
                    / n as f64
            })
            .collect();
        Ok(CyclicElement { n, coeffs, gelfand })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn gelfand(&self) -> &[Complex64] {
        &self.gelfand
    }

    /// The circulant matrix of convolution by this element, i.e.
    /// `u·diag(gelfand)·u⁻¹` with `u` the DFT matrix.
    pub fn circulant(&self) -> CMatrix {
        let n = self.n;
        let mut m = CMatrix::zeros(n, n);
        for j in 0..n {
            for l in 0..n {
                m[(j, l)] = self.coeffs[(l + n - j) % n];
            }
        }
        m
    }

    /// Cyclic convolution (the algebra product).
    pub fn convolve(&self, other: &CyclicElement) -> Result<CyclicElement> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "orders differ: {} vs {}",
                self.n, other.n
            )));
        }
        let n = self.n;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            for m in 0..n {
                coeffs[(k + m) % n] += self.coeffs[k] * other.coeffs[m];
            }
        }
        CyclicElement::from_coeffs(n, coeffs)
    }

    pub fn sup_gelfand(&self) -> f64 {
        self.gelfand.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn l1_coeffs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).sum()
    }
}

/// The cyclic shift matrix: ones on the subdiagonal plus a one in the
/// top-right corner (the generator of the algebra).
pub fn shift_matrix(n: usize) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("group order must be positive".into()));
    }
    let mut m = CMatrix::zeros(n, n);
    for j in 0..n {
        m[(j, (j + n - 1) % n)] = Complex64::new(1.0, 0.0);
    }
    Ok(m)
}

/// The unitary DFT matrix with entries `ω^{jk}/√n`.
pub fn dft_matrix(n: usize) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("group order must be positive".into()));
    }
    let s = 1.0 / (n as f64).sqrt();
    let mut m = CMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            m[(j, k)] = omega_pow(n, (j * k) as i64) * s;
        }
    }
    Ok(m)
}

/// Certified norm of an element at exponent `p ∈ [1, ∞)`, computed as the
/// operator norm of its circulant matrix.
pub fn norm(x: &CyclicElement, p: &Exponent, budget: &NormBudget) -> Result<NormEstimate> {
    if p.is_infinite() {
        return Err(Error::UnsupportedExponent(
            p.to_string(),
            "group algebra exponents lie in [1, inf)",
        ));
    }
    pnorm::norm_certified(&x.circulant(), p, budget)
}

/// The norm curve of the order-2 element with Gelfand coordinates (1, i) —
/// the element whose norm interpolates strictly between its values at the
/// endpoint exponents.
pub fn delta_curve(
    ts: &[Exponent],
    budget: &NormBudget,
) -> Result<Vec<(Exponent, NormEstimate)>> {
    let x = CyclicElement::from_gelfand(
        2,
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)],
    )?;
    ts.iter()
        .map(|t| Ok((*t, norm(&x, t, budget)?)))
        .collect()
}

/// The closed-form value `2^{|1/t − 1/2|}` that [`delta_curve`] certifies.
pub fn delta_closed_form(t: &Exponent) -> f64 {
    2f64.powf(t.distance_to_half())
}

/// The coordinate-shift automorphism on Gelfand vectors:
/// `τ(ξ₀,…,ξ_{n−1}) = (ξ_{n−1}, ξ₀, …, ξ_{n−2})`.
pub fn shift_auto(x: &CyclicElement) -> CyclicElement {
    let n = x.n;
    let g: Vec<Complex64> = (0..n).map(|j| x.gelfand[(j + n - 1) % n]).collect();
    CyclicElement::from_gelfand(n, g).expect("length preserved")
}

/// The inversion automorphism: `ξ_j ↦ ξ_{−j mod n}` (induced by the group
/// inversion `k ↦ −k`).
pub fn inversion_auto(x: &CyclicElement) -> CyclicElement {
    let n = x.n;
    let g: Vec<Complex64> = (0..n).map(|j| x.gelfand[(n - j) % n]).collect();
    CyclicElement::from_gelfand(n, g).expect("length preserved")
}

/// Entrywise complex conjugation of the Gelfand coordinates.
pub fn conj_auto(x: &CyclicElement) -> CyclicElement {
    let g: Vec<Complex64> = x.gelfand.iter().map(|z| z.conj()).collect();
    CyclicElement::from_gelfand(x.n, g).expect("length preserved")
}

/// Outcome of the invertible-isometry pattern match.
#[derive(Debug, Clone)]
pub struct IsometryClass {
    pub is_isometry: bool,
    /// The unimodular scalar ζ, when matched.
    pub zeta: Option<Complex64>,
    /// The character index k with `ξ_j = ζ·ω^{jk}`, when matched.
    pub k: Option<usize>,
}

/// Decides whether `x` is an invertible isometry of the algebra at
/// exponent `p ≠ 2`: exactly the elements whose Gelfand vector has the
/// form `(ζ, ζω^k, …, ζω^{k(n−1)})` with `ζ ∈ S¹`. Pure pattern match
/// within `tol` in ℓ∞ — no norm computation.
pub fn classify_isometry(x: &CyclicElement, p: &Exponent, tol: f64) -> Result<IsometryClass> {
    if p.is_two() {
        return Err(Error::UnsupportedExponent(
            p.to_string(),
            "at p = 2 every unimodular Gelfand vector is an isometry; the rigid form holds only for p != 2",
        ));
    }
    if p.is_infinite() {
        return Err(Error::UnsupportedExponent(
            p.to_string(),
            "group algebra exponents lie in [1, inf)",
        ));
    }
    let n = x.n;
    let xi = &x.gelfand;
    let no = IsometryClass {
        is_isometry: false,
        zeta: None,
        k: None,
    };

    let m0 = xi[0].norm();
    if (m0 - 1.0).abs() > tol || m0 == 0.0 {
        return Ok(no);
    }
    let zeta = xi[0] / m0;
    if n == 1 {
        return Ok(IsometryClass {
            is_isometry: true,
            zeta: Some(zeta),
            k: Some(0),
        });
    }
    // The candidate character index comes from the first ratio; the full
    // vector is then checked against the exact pattern.
    let r = xi[1] / zeta;
    let step = std::f64::consts::TAU / n as f64;
    let k = (r.arg().rem_euclid(std::f64::consts::TAU) / step).round() as i64;
    let k = (k.rem_euclid(n as i64)) as usize;
    for (j, v) in xi.iter().enumerate() {
        let model = zeta * omega_pow(n, (j * k) as i64);
        if (v - model).norm() > tol {
            return Ok(no);
        }
    }
    Ok(IsometryClass {
        is_isometry: true,
        zeta: Some(zeta),
        k: Some(k),
    })
}

/// ℓ∞ distance from `x`'s Gelfand vector to the set of classified
/// isometries (minimized over ζ on a refined grid and over k exactly).
pub fn distance_to_isometries(x: &CyclicElement, grid: usize) -> f64 {
    let n = x.n;
    let xi = &x.gelfand;
    let mut best = f64::INFINITY;
    for k in 0..n {
        // For fixed k, minimize over ζ ∈ S¹ the sup distance to the points
        // w_j = ξ_j·ω^{−jk}; one-dimensional in the angle of ζ.
        let w: Vec<Complex64> = (0..n)
            .map(|j| xi[j] * omega_pow(n, -((j * k) as i64)))
            .collect();
        let dist = |theta: f64| -> f64 {
            let z = Complex64::from_polar(1.0, theta);
            w.iter().map(|wj| (wj - z).norm()).fold(0.0, f64::max)
        };
        let g = grid.max(16);
        let mut best_theta = (0.0, f64::INFINITY);
        for i in 0..g {
            let t = std::f64::consts::TAU * i as f64 / g as f64;
            let d = dist(t);
            if d < best_theta.1 {
                best_theta = (t, d);
            }
        }
        let h = std::f64::consts::TAU / g as f64;
        let (_, refined) = crate::opt::golden_max(
            |t| -dist(t),
            best_theta.0 - h,
            best_theta.0 + h,
            48,
        );
        best = best.min(-refined);
    }
    best
}

/// Comparison report for the norm-decreasing map between exponents
/// `1 ≤ p ≤ q ≤ 2`: the algebra norm at q never exceeds the one at p.
#[derive(Debug, Clone)]
pub struct GammaReport {
    pub p: Exponent,
    pub q: Exponent,
    pub at_p: NormEstimate,
    pub at_q: NormEstimate,
    pub slack: f64,
    pub ok: bool,
}

/// Certifies `‖x‖_q ≤ ‖x‖_p` (up to interval slack) for `1 ≤ p ≤ q ≤ 2`.
pub fn gamma_check(
    x: &CyclicElement,
    p: &Exponent,
    q: &Exponent,
    budget: &NormBudget,
) -> Result<GammaReport> {
    let slack = 1e-9;
    if !(p.value() <= q.value() + 1e-15 && q.value() <= 2.0 + 1e-15) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= p <= q <= 2, got p = {p}, q = {q}"
        )));
    }
    let at_p = norm(x, p, budget)?;
    let at_q = norm(x, q, budget)?;
    let ok = at_q.lower <= at_p.upper + slack;
    Ok(GammaReport {
        p: *p,
        q: *q,
        at_p,
        at_q,
        slack,
        ok,
    })
}

/// Pushes a finitely supported function on the integers down to the cyclic
/// group: `coeffs(k) = Σ_j f(k + jn)`.
pub fn periodize(f: &Kernel, n: usize) -> Result<CyclicElement> {
    if n == 0 {
        return Err(Error::InvalidArgument("group order must be positive".into()));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for (k, v) in f.entries() {
        coeffs[k.rem_euclid(n as i64) as usize] += v;
    }
    CyclicElement::from_coeffs(n, coeffs)
}
