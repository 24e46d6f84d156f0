//! Self-check suites: each suite exercises one of the library's
//! mathematical invariants on seeded random inputs and reports pass/fail
//! counts with messages for every failure.
//!
//! All suites are deterministic functions of their options (seed
//! included), so two runs with the same configuration produce identical
//! reports.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::circle;
use crate::cyclic::{self, CyclicElement};
use crate::error::{Error, Result};
use crate::estimate::NormBudget;
use crate::exponent::Exponent;
use crate::interp;
use crate::matrix::CMatrix;
use crate::pnorm;
use crate::zline::{self, Kernel};

/// Identifiers of the available suites, in canonical run order.
pub const SUITE_NAMES: [&str; 7] = [
    "shift-invariance",
    "duality",
    "gamma-monotonicity",
    "logconvexity",
    "isometry-classification",
    "toeplitz-convergence",
    "antipodal",
];

/// Options shared by all suites. Fields not used by a given suite are
/// ignored.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    /// Largest group order / matrix dimension exercised.
    pub n: usize,
    /// Number of randomized trials.
    pub trials: usize,
    pub seed: u64,
    /// Exponent grid for the monotonicity/convexity suites.
    pub grid: Vec<Exponent>,
    pub budget: NormBudget,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        let mut budget = NormBudget::light();
        // Overlap-style checks need valid intervals, not tight ones; the
        // branch-and-bound refinement would dominate the runtime.
        budget.use_refine2x2 = false;
        SuiteOptions {
            n: 5,
            trials: 25,
            seed: 0,
            grid: Vec::new(),
            budget,
        }
    }
}

/// Outcome of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub pass: usize,
    pub fail: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            pass: 0,
            fail: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
            self.failures.push(msg());
        }
    }

    pub fn passed(&self) -> bool {
        self.fail == 0
    }
}

/// Resolves a user-supplied suite name (short or long form).
pub fn canonical_suite_name(name: &str) -> Result<&'static str> {
    let found = match name {
        "shift" | "shift-invariance" => "shift-invariance",
        "duality" => "duality",
        "gamma" | "gamma-monotonicity" => "gamma-monotonicity",
        "logconvexity" | "log-convexity" => "logconvexity",
        "isometry" | "isometry-classification" => "isometry-classification",
        "toeplitz" | "toeplitz-convergence" => "toeplitz-convergence",
        "antipodal" => "antipodal",
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite '{other}'; available: {}",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(found)
}

/// Runs one suite by canonical name.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    match canonical_suite_name(name)? {
        "shift-invariance" => suite_shift(opts),
        "duality" => suite_duality(opts),
        "gamma-monotonicity" => suite_gamma(opts),
        "logconvexity" => suite_logconvexity(opts),
        "isometry-classification" => suite_isometry(opts),
        "toeplitz-convergence" => suite_toeplitz(opts),
        "antipodal" => suite_antipodal(opts),
        _ => unreachable!("canonical_suite_name covers all names"),
    }
}

/// Runs every suite in canonical order.
pub fn run_all(opts: &SuiteOptions) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES.iter().map(|n| run_suite(n, opts)).collect()
}

fn random_unimodular(rng: &mut ChaCha20Rng, n: usize) -> CyclicElement {
    let g: Vec<Complex64> = (0..n)
        .map(|_| Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU))
        .collect();
    CyclicElement::from_gelfand(n, g).expect("generated length matches")
}

fn random_matrix(rng: &mut ChaCha20Rng, rows: usize, cols: usize) -> CMatrix {
    let data: Vec<Vec<Complex64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        })
        .collect();
    CMatrix::from_rows(&data).expect("finite random entries")
}

fn random_kernel(rng: &mut ChaCha20Rng, half_width: i64) -> Kernel {
    let entries: Vec<(i64, Complex64)> = (-half_width..=half_width)
        .map(|k| {
            (
                k,
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
        })
        .collect();
    Kernel::from_entries(&entries).expect("finite random entries")
}

/// Norms are invariant under the Gelfand coordinate shift, inversion, and
/// conjugation automorphisms.
fn suite_shift(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("shift-invariance");
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    let ps: Vec<Exponent> = if opts.grid.is_empty() {
        ["1", "1.3", "1.7", "2", "2.5"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect()
    } else {
        opts.grid.clone()
    };
    let widen = 1e-6;
    for trial in 0..opts.trials {
        let n = 2 + (trial % opts.n.saturating_sub(1).max(1));
        let x = random_unimodular(&mut rng, n);
        let p = &ps[trial % ps.len()];
        let ex = cyclic::norm(&x, p, &opts.budget)?;
        let ey = cyclic::norm(&cyclic::shift_auto(&x), p, &opts.budget)?;
        let overlap = ex.lower <= ey.upper + widen && ey.lower <= ex.upper + widen;
        report.check(overlap, || {
            format!(
                "trial {trial}: n = {n}, p = {p}: [{:.12}, {:.12}] vs shifted [{:.12}, {:.12}]",
                ex.lower, ex.upper, ey.lower, ey.upper
            )
        });
    }
    Ok(report)
}

/// Norm intervals at conjugate exponents overlap, and the reflection
/// kernel's truncations are exactly the transposes.
fn suite_duality(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("duality");
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    let ps: Vec<Exponent> = ["1.2", "1.5", "1.8"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let widen = 1e-6;
    for trial in 0..opts.trials {
        let n = 2 + (trial % opts.n.saturating_sub(1).max(1));
        let x = random_unimodular(&mut rng, n);
        let p = &ps[trial % ps.len()];
        let q = p.conjugate();
        let ep = cyclic::norm(&x, p, &opts.budget)?;
        let eq = cyclic::norm(&x, &q, &opts.budget)?;
        let overlap = ep.lower <= eq.upper + widen && eq.lower <= ep.upper + widen;
        report.check(overlap, || {
            format!(
                "trial {trial}: n = {n}, p = {p}: [{:.12}, {:.12}] vs conjugate [{:.12}, {:.12}]",
                ep.lower, ep.upper, eq.lower, eq.upper
            )
        });

        let f = random_kernel(&mut rng, 2);
        let big_n = 2 + trial % 7;
        let t = zline::toeplitz_truncation(&f, big_n);
        let ts = zline::toeplitz_truncation(&f.sharp(), big_n);
        let dim = 2 * big_n + 1;
        let mut worst = 0.0f64;
        for a in 0..dim {
            for b in 0..dim {
                worst = worst.max((ts[(a, b)] - t[(b, a)]).norm());
            }
        }
        report.check(worst <= 1e-8, || {
            format!("trial {trial}: sharp/transpose mismatch {worst:.3e} at window {big_n}")
        });
    }
    Ok(report)
}

/// For 1 ≤ p ≤ q ≤ 2 the norm at q never exceeds the norm at p.
fn suite_gamma(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("gamma-monotonicity");
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    let grid: Vec<Exponent> = if opts.grid.is_empty() {
        ["1", "1.25", "1.5", "1.75", "2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect()
    } else {
        opts.grid.clone()
    };
    for g in &grid {
        if g.is_infinite() || g.value() > 2.0 + 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "gamma suite grid must lie in [1, 2], got {g}"
            )));
        }
    }
    for trial in 0..opts.trials {
        let n = 2 + (trial % opts.n.saturating_sub(1).max(1));
        let x = random_unimodular(&mut rng, n);
        let ests: Vec<_> = grid
            .iter()
            .map(|p| cyclic::norm(&x, p, &opts.budget))
            .collect::<Result<_>>()?;
        for i in 0..grid.len() {
            for j in i..grid.len() {
                let (p, q) = (&grid[i], &grid[j]);
                if p.value() > q.value() {
                    continue;
                }
                let ok = ests[j].lower <= ests[i].upper + 1e-8;
                report.check(ok, || {
                    format!(
                        "trial {trial}: n = {n}: lower at q = {q} is {:.12}, above upper {:.12} at p = {p}",
                        ests[j].lower, ests[i].upper
                    )
                });
            }
        }
    }
    Ok(report)
}

/// Certified lower bounds never breach the Riesz–Thorin log-convexity of
/// upper bounds across any exponent triple.
fn suite_logconvexity(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("logconvexity");
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    let grid: Vec<Exponent> = if opts.grid.is_empty() {
        ["1", "4/3", "3/2", "2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect()
    } else {
        opts.grid.clone()
    };
    for trial in 0..opts.trials {
        let dim = 2 + (trial % opts.n.saturating_sub(1).max(1));
        let a = random_matrix(&mut rng, dim, dim);
        let samples: Vec<(Exponent, crate::estimate::NormEstimate)> = grid
            .iter()
            .map(|p| Ok((*p, pnorm::norm_certified(&a, p, &opts.budget)?)))
            .collect::<Result<_>>()?;
        let convexity = interp::check_logconvex(&samples, 1e-8)?;
        report.check(convexity.is_clean(), || {
            format!(
                "trial {trial}: {}×{dim} matrix: {} convexity violations, first: {:?}",
                dim,
                convexity.violations.len(),
                convexity.violations.first()
            )
        });
    }
    Ok(report)
}

/// Character-pattern Gelfand vectors classify as isometries (with
/// recovered parameters and norm one); perturbed patterns do not.
fn suite_isometry(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("isometry-classification");
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    let p: Exponent = "1.5".parse().unwrap();
    for trial in 0..opts.trials {
        let n = 2 + (trial % opts.n.saturating_sub(1).max(1));
        let zeta = Complex64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU);
        let k = rng.gen_range(0..n);
        let g: Vec<Complex64> = (0..n)
            .map(|j| {
                zeta * Complex64::from_polar(
                    1.0,
                    std::f64::consts::TAU * ((j * k) % n) as f64 / n as f64,
                )
            })
            .collect();
        let x = CyclicElement::from_gelfand(n, g).expect("generated length matches");

        let cls = cyclic::classify_isometry(&x, &p, 1e-9)?;
        report.check(cls.is_isometry && cls.k == Some(k), || {
            format!(
                "trial {trial}: pattern (n = {n}, k = {k}) classified as {:?}",
                cls
            )
        });

        let est = cyclic::norm(&x, &p, &opts.budget)?;
        report.check(
            est.lower <= 1.0 + 1e-6 && 1.0 <= est.upper + 1e-6,
            || {
                format!(
                    "trial {trial}: pattern norm interval [{:.12}, {:.12}] misses 1",
                    est.lower, est.upper
                )
            },
        );

        // Kick the first coordinate off the pattern by 0.05 rad — far
        // beyond the classification tolerance, well inside the gap to the
        // next character.
        let mut g2 = x.gelfand().to_vec();
        g2[1 % n] *= Complex64::from_polar(1.0, 0.05);
        let y = CyclicElement::from_gelfand(n, g2).expect("length preserved");
        let cls2 = cyclic::classify_isometry(&y, &p, 1e-9)?;
        report.check(n == 1 || !cls2.is_isometry, || {
            format!("trial {trial}: perturbed pattern still classified as isometry")
        });
    }
    Ok(report)
}

/// Toeplitz compressions give nondecreasing lower bounds that stay below
/// the symbol-sup upper bound at p = 2.
fn suite_toeplitz(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("toeplitz-convergence");
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    let two: Exponent = "2".parse().unwrap();
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut kernels = vec![
        Kernel::from_entries(&[(0, one), (1, one)]).unwrap(),
        Kernel::from_entries(&[(0, one), (1, one), (2, i)]).unwrap(),
    ];
    kernels.push(random_kernel(&mut rng, 2));
    kernels.push(random_kernel(&mut rng, 3));
    let windows = [2usize, 4, 8, 16, 32];
    for (ki, f) in kernels.iter().enumerate() {
        let sym = zline::symbol_sup(f, 1024);
        let sweep = zline::norm_lambda_lower_sweep(f, &two, &windows, &opts.budget)?;
        for w in sweep.windows(2) {
            report.check(w[1].1.lower >= w[0].1.lower - 1e-12, || {
                format!(
                    "kernel {ki}: sweep decreased between windows {} and {}: {:.12} -> {:.12}",
                    w[0].0, w[1].0, w[0].1.lower, w[1].1.lower
                )
            });
        }
        let last = sweep.last().expect("nonempty sweep").1.lower;
        report.check(last <= sym.upper + 1e-9, || {
            format!(
                "kernel {ki}: compression lower {last:.12} exceeds symbol upper {:.12}",
                sym.upper
            )
        });
        report.check(last >= 0.5 * sym.lower - 1e-9, || {
            format!(
                "kernel {ki}: compression lower {last:.12} implausibly far below symbol {:.12}",
                sym.lower
            )
        });
    }
    Ok(report)
}

/// The antipodal solver meets its residual contract on closed-form and
/// random monotone maps.
fn suite_antipodal(opts: &SuiteOptions) -> Result<SuiteReport> {
    use std::f64::consts::{PI, TAU};
    let mut report = SuiteReport::new("antipodal");
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);

    let ident = circle::MonotoneCircleMap::from_fn(|t| t)?;
    let t = circle::antipodal_point(&ident, 1e-9)?;
    report.check(t == 0.0, || format!("identity returned t = {t}, want 0"));

    let quad = circle::MonotoneCircleMap::from_fn(|t| t * t / TAU)?;
    let t = circle::antipodal_point(&quad, 1e-10)?;
    report.check((t - PI / 2.0).abs() <= 1e-8, || {
        format!("quadratic returned t = {t}, want π/2")
    });

    for trial in 0..opts.trials {
        let pieces = 8 + trial % 5;
        let mut incs: Vec<f64> = (0..pieces).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = incs.iter().sum();
        for v in &mut incs {
            *v *= TAU / total;
        }
        let mut points = vec![(0.0, 0.0)];
        let mut acc = 0.0;
        for (idx, inc) in incs.iter().enumerate() {
            acc += inc;
            let t = TAU * (idx + 1) as f64 / pieces as f64;
            points.push((t, acc));
        }
        points.last_mut().expect("nonempty").0 = TAU;
        points.last_mut().expect("nonempty").1 = TAU;
        let h = circle::MonotoneCircleMap::from_table(&points)?;
        let t = circle::antipodal_point(&h, 1e-9)?;
        let a1 = h.eval(t);
        let a2 = h.eval((t + PI).rem_euclid(TAU));
        let d = (a2 - a1 - PI).rem_euclid(TAU);
        let residual = d.min(TAU - d);
        report.check(residual <= 1e-8, || {
            format!("trial {trial}: residual {residual:.3e} at t = {t}")
        });
    }
    Ok(report)
}
