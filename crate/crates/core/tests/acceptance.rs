//! End-to-end acceptance checks for the library's headline guarantees.
//!
//! One test per criterion; each prints a single `PASS`/`FAIL` line (visible
//! with `--nocapture`) and fails the build on any violated tolerance.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use lpgn_core::circle::{antipodal_point, MonotoneCircleMap};
use lpgn_core::classify::{self, GroupDescriptor};
use lpgn_core::cyclic::{self, CyclicElement};
use lpgn_core::interp;
use lpgn_core::pnorm;
use lpgn_core::zline::{self, Kernel};
use lpgn_core::{CMatrix, Exponent, NormBudget};

fn criterion(name: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {name}: PASS"),
        Err(e) => {
            println!("criterion {name}: FAIL");
            std::panic::resume_unwind(e);
        }
    }
}

fn exp(s: &str) -> Exponent {
    s.parse().unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_gelfand(rng: &mut ChaCha20Rng, n: usize) -> CyclicElement {
    let g: Vec<Complex64> = (0..n)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    CyclicElement::from_gelfand(n, g).unwrap()
}

fn unimodular_gelfand(rng: &mut ChaCha20Rng, n: usize) -> CyclicElement {
    let g: Vec<Complex64> = (0..n)
        .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    CyclicElement::from_gelfand(n, g).unwrap()
}

/// Intervals overlap after widening each by `w`.
fn overlap(a: &lpgn_core::NormEstimate, b: &lpgn_core::NormEstimate, w: f64) -> bool {
    a.lower.max(b.lower) <= a.upper.min(b.upper) + 2.0 * w
}

#[test]
fn c01_delta_curve_certifies_the_closed_form() {
    criterion("01 delta-curve", || {
        let ts: Vec<Exponent> = ["1", "8/7", "4/3", "3/2", "2", "3", "4", "8"]
            .iter()
            .map(|s| exp(s))
            .collect();
        let budget = NormBudget::default();
        for t in &ts {
            let started = Instant::now();
            let points = cyclic::delta_curve(std::slice::from_ref(t), &budget).unwrap();
            let elapsed = started.elapsed().as_secs_f64();
            let (te, est) = &points[0];
            let cf = cyclic::delta_closed_form(te);
            assert!(
                est.lower <= cf + 1e-12 && cf <= est.upper + 1e-12,
                "t = {t}: [{}, {}] misses {cf}",
                est.lower,
                est.upper
            );
            assert!(est.width() <= 1e-6, "t = {t}: width {}", est.width());
            assert!(elapsed <= 1.0, "t = {t}: {elapsed:.2} s");
        }
    });
}

#[test]
fn c02_two_norm_equals_the_gelfand_sup() {
    criterion("02 two-norm = sup", || {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let budget = NormBudget::default();
        for trial in 0..100usize {
            let n = 2 + trial % 7;
            let x = random_gelfand(&mut rng, n);
            let est = cyclic::norm(&x, &Exponent::TWO, &budget).unwrap();
            let sup = x.sup_gelfand();
            assert!(
                (est.lower - sup).abs() <= 1e-10 && (est.upper - sup).abs() <= 1e-10,
                "n = {n}: [{}, {}] vs sup {sup}",
                est.lower,
                est.upper
            );
        }
    });
}

#[test]
fn c03_shift_automorphism_preserves_the_norm() {
    criterion("03 shift invariance", || {
        let ps: Vec<Exponent> = ["1", "1.3", "1.7", "2", "2.5"].iter().map(|s| exp(s)).collect();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let budget = NormBudget::default();
        for trial in 0..100usize {
            let n = 2 + trial % 5;
            let p = &ps[trial % ps.len()];
            let x = random_gelfand(&mut rng, n);
            let y = cyclic::shift_auto(&x);
            let ex = cyclic::norm(&x, p, &budget).unwrap();
            let ey = cyclic::norm(&y, p, &budget).unwrap();
            assert!(
                overlap(&ex, &ey, 1e-6),
                "n = {n}, p = {p}: [{}, {}] vs [{}, {}]",
                ex.lower,
                ex.upper,
                ey.lower,
                ey.upper
            );
        }
    });
}

#[test]
fn c04_gamma_monotonicity_on_the_exponent_grid() {
    criterion("04 gamma monotonicity", || {
        let grid: Vec<Exponent> = ["1", "5/4", "3/2", "7/4", "2"].iter().map(|s| exp(s)).collect();
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let budget = NormBudget::light();
        for n in 2..=5usize {
            for _ in 0..50 {
                let x = random_gelfand(&mut rng, n);
                let ests: Vec<lpgn_core::NormEstimate> = grid
                    .iter()
                    .map(|p| cyclic::norm(&x, p, &budget).unwrap())
                    .collect();
                for i in 0..grid.len() {
                    for j in i..grid.len() {
                        assert!(
                            ests[j].lower <= ests[i].upper + 1e-8,
                            "n = {n}: lower at {} = {} exceeds upper at {} = {}",
                            grid[j],
                            ests[j].lower,
                            grid[i],
                            ests[i].upper
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn c05_duality_between_conjugate_exponents() {
    criterion("05 duality", || {
        let ps: Vec<Exponent> = ["1.2", "1.5", "1.8"].iter().map(|s| exp(s)).collect();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let budget = NormBudget::default();
        for trial in 0..50usize {
            let n = 2 + trial % 4;
            let x = random_gelfand(&mut rng, n);
            for p in &ps {
                let q = p.conjugate();
                let ep = cyclic::norm(&x, p, &budget).unwrap();
                let eq = cyclic::norm(&x, &q, &budget).unwrap();
                assert!(
                    overlap(&ep, &eq, 1e-6),
                    "n = {n}, p = {p}: [{}, {}] vs [{}, {}] at {q}",
                    ep.lower,
                    ep.upper,
                    eq.lower,
                    eq.upper
                );
            }
        }

        // Reflection duality for Toeplitz truncations: the compressions of
        // f^# are exactly the transposes of the compressions of f.
        let mut kernels = vec![
            Kernel::from_entries(&[(0, c(1.0, 0.0)), (1, c(1.0, 0.0)), (2, c(0.0, 1.0))]).unwrap(),
        ];
        for _ in 0..2 {
            let entries: Vec<(i64, Complex64)> = (-3..=3)
                .map(|k| (k, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
                .collect();
            kernels.push(Kernel::from_entries(&entries).unwrap());
        }
        for f in &kernels {
            let fs = f.sharp();
            for n in 1..=64usize {
                let t = zline::toeplitz_truncation(f, n);
                let ts = zline::toeplitz_truncation(&fs, n);
                let dim = 2 * n + 1;
                for a in 0..dim {
                    for b in 0..dim {
                        let d = (ts[(a, b)] - t[(b, a)]).norm();
                        assert!(d <= 1e-8, "window {n}: entry ({a}, {b}) differs by {d}");
                    }
                }
            }
        }
    });
}

#[test]
fn c06_interpolation_log_convexity_is_clean() {
    criterion("06 log-convexity", || {
        let grid: Vec<Exponent> = ["1", "4/3", "3/2", "2"].iter().map(|s| exp(s)).collect();
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let budget = NormBudget::light();
        for trial in 0..100usize {
            let n = 1 + trial % 8;
            let data: Vec<Complex64> = (0..n * n)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let a = CMatrix::from_rows_vec(n, n, data).unwrap();
            let samples: Vec<(Exponent, lpgn_core::NormEstimate)> = grid
                .iter()
                .map(|p| (*p, pnorm::norm_certified(&a, p, &budget).unwrap()))
                .collect();
            let report = interp::check_logconvex(&samples, 1e-8).unwrap();
            assert!(
                report.is_clean(),
                "trial {trial} ({n}x{n}): {} violations",
                report.violations.len()
            );
        }
    });
}

#[test]
fn c07_isometric_patterns_and_their_separation() {
    criterion("07 isometry classification", || {
        let p = exp("3/2");
        let budget = NormBudget::default();
        let mut rng = ChaCha20Rng::seed_from_u64(7);

        // Patterns ξ_j = ζ·ω^{jk} certify norm 1 and classify as isometric.
        for n in 2..=5usize {
            for _ in 0..5 {
                let zeta = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
                let k = rng.gen_range(0..n);
                let g: Vec<Complex64> = (0..n)
                    .map(|j| {
                        zeta * Complex64::from_polar(
                            1.0,
                            std::f64::consts::TAU * ((j * k) % n) as f64 / n as f64,
                        )
                    })
                    .collect();
                let x = CyclicElement::from_gelfand(n, g).unwrap();
                let est = cyclic::norm(&x, &p, &budget).unwrap();
                assert!(
                    est.lower <= 1.0 + 1e-12 && 1.0 <= est.upper + 1e-12,
                    "n = {n}, k = {k}: [{}, {}]",
                    est.lower,
                    est.upper
                );
                assert!(est.width() <= 1e-6, "n = {n}, k = {k}: width {}", est.width());
                let cls = cyclic::classify_isometry(&x, &p, 1e-9).unwrap();
                assert!(cls.is_isometry, "n = {n}, k = {k} not recognized");
            }
        }

        // Unimodular vectors far from every pattern have norm strictly
        // above 1.
        let mut accepted = 0usize;
        let mut attempts = 0usize;
        while accepted < 100 {
            attempts += 1;
            assert!(attempts < 5000, "rejection sampling stalled");
            let n = 2 + attempts % 4;
            let x = unimodular_gelfand(&mut rng, n);
            if cyclic::distance_to_isometries(&x, 512) < 0.1 {
                continue;
            }
            let est = cyclic::norm(&x, &p, &budget).unwrap();
            assert!(
                est.lower > 1.0 + 1e-4,
                "n = {n}: lower {} too close to 1",
                est.lower
            );
            accepted += 1;
        }
    });
}

#[test]
fn c08_toeplitz_compressions_converge_to_the_symbol_sup() {
    criterion("08 toeplitz convergence", || {
        let budget = NormBudget::default();
        let kernels = [
            Kernel::from_entries(&[(0, c(1.0, 0.0)), (1, c(1.0, 0.0))]).unwrap(),
            Kernel::from_entries(&[(0, c(1.0, 0.0)), (1, c(1.0, 0.0)), (2, c(0.0, 1.0))])
                .unwrap(),
        ];
        let windows = [4usize, 8, 16, 32, 64, 128, 256];
        for f in &kernels {
            let sweep =
                zline::norm_lambda_lower_sweep(f, &Exponent::TWO, &windows, &budget).unwrap();
            for w in sweep.windows(2) {
                assert!(
                    w[1].1.lower >= w[0].1.lower,
                    "lower bound decreased between windows {} and {}",
                    w[0].0,
                    w[1].0
                );
            }
            let sym = zline::symbol_sup(f, 65_536);
            let last = sweep.last().unwrap().1.lower;
            assert!(last <= sym.upper + 1e-9, "compression exceeds the symbol sup");
            assert!(
                (sym.lower - last).abs() <= 1e-2,
                "window 256 lower {last} vs symbol sup {}",
                sym.lower
            );
        }
    });
}

#[test]
fn c09_oracle_truth_table() {
    criterion("09 oracle truth table", || {
        let z = |n: u64| GroupDescriptor::cyclic(n).unwrap();
        let trivial = GroupDescriptor::Trivial;
        let line = GroupDescriptor::Integers;

        // representable rows: Some(expected) or None for an out-of-scope
        // rejection.
        let rep_rows: Vec<(GroupDescriptor, &str, &str, Option<bool>)> = vec![
            (trivial, "3/2", "5/2", Some(true)),
            (trivial, "7/5", "9/5", Some(true)),
            (z(2), "4/3", "4", Some(true)),
            (z(2), "4/3", "4/3", Some(true)),
            (z(2), "2", "7/3", Some(true)),
            (line, "2", "5", Some(true)),
            (line, "3", "3/2", Some(true)),
            (z(2), "4/3", "3/2", Some(false)),
            (z(5), "1", "2", Some(false)),
            (line, "3", "5/2", Some(false)),
            (z(2), "1", "4/3", Some(false)),
            (z(2), "1", "1", None),
            (z(3), "3/2", "1", None),
            (z(3), "3/2", "inf", None),
            (z(2), "inf", "2", None),
        ];
        for (g, p, q, want) in &rep_rows {
            let got = classify::representable(g, &exp(p), &exp(q));
            match want {
                Some(b) => assert_eq!(got.unwrap(), *b, "representable({g}, {p}, {q})"),
                None => assert!(got.is_err(), "representable({g}, {p}, {q}) should reject"),
            }
        }

        let iso_rows: Vec<(GroupDescriptor, &str, &str, bool)> = vec![
            (z(2), "1", "inf", true),
            (z(4), "4/3", "4", true),
            (trivial, "1", "7", true),
            (z(6), "2", "2", true),
            (z(4), "4/3", "3/2", false),
        ];
        for (g, p, q, want) in &iso_rows {
            assert_eq!(
                classify::isomorphic_group_algebras(g, &exp(p), &exp(q)),
                *want,
                "isomorphic({g}, {p}, {q})"
            );
        }

        assert_eq!(rep_rows.len() + iso_rows.len(), 20);
        // Exponents below 1 are not representable at all.
        assert!(Exponent::from_ratio(1, 2).is_err());
    });
}

#[test]
fn c10_witness_gaps_via_the_cli() {
    criterion("10 witness soundness", || {
        let exe = env!("CARGO_BIN_EXE_lpgn");
        let run = |p: &str, q: &str| -> f64 {
            let out = Command::new(exe)
                .args(["witness", "--group", "Z2", "--p", p, "--q", q])
                .output()
                .unwrap();
            assert!(out.status.success(), "witness {p} {q} failed: {:?}", out);
            let v: serde_json::Value =
                serde_json::from_str(String::from_utf8(out.stdout).unwrap().trim()).unwrap();
            v["gap_lower"].as_f64().unwrap()
        };
        let gap = run("1", "2");
        assert!(gap >= 2f64.sqrt() - 1.0 - 1e-6, "gap {gap}");
        let gap = run("4/3", "3/2");
        assert!(gap >= 2f64.powf(0.25) - 2f64.powf(1.0 / 6.0) - 1e-6, "gap {gap}");
    });
}

#[test]
fn c11_antipodal_solver() {
    criterion("11 antipodal solver", || {
        use std::f64::consts::{PI, TAU};

        let quad = MonotoneCircleMap::from_fn(|t| t * t / TAU).unwrap();
        let t = antipodal_point(&quad, 1e-9).unwrap();
        assert!((t - PI / 2.0).abs() <= 1e-8, "t = {t}");

        let id = MonotoneCircleMap::from_fn(|t| t).unwrap();
        assert_eq!(antipodal_point(&id, 1e-9).unwrap(), 0.0);

        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for trial in 0..50usize {
            let m = 8 + trial % 24;
            let mut table = Vec::with_capacity(m + 2);
            let gaps_t: Vec<f64> = (0..=m).map(|_| rng.gen_range(0.05..1.0)).collect();
            let gaps_h: Vec<f64> = (0..=m).map(|_| rng.gen_range(0.05..1.0)).collect();
            let (st, sh): (f64, f64) = (gaps_t.iter().sum(), gaps_h.iter().sum());
            let (mut ct, mut ch) = (0.0f64, 0.0f64);
            table.push((0.0, 0.0));
            for i in 0..=m {
                ct += gaps_t[i];
                ch += gaps_h[i];
                table.push((TAU * ct / st, TAU * ch / sh));
            }
            let h = MonotoneCircleMap::from_table(&table).unwrap();
            let t = antipodal_point(&h, 1e-9).unwrap();
            let residual = (h.eval(t + PI) - h.eval(t) - PI).abs();
            assert!(residual <= 1e-8, "trial {trial}: residual {residual}");
        }
    });
}

#[test]
fn c12_verification_runs_are_reproducible() {
    criterion("12 reproducibility", || {
        let exe = env!("CARGO_BIN_EXE_lpgn");
        let run = || {
            Command::new(exe)
                .args(["verify", "--all", "--seed", "7"])
                .output()
                .unwrap()
        };
        let a = run();
        let b = run();
        assert!(a.status.success(), "verify --all failed:\n{:?}", a);
        assert_eq!(a.status.code(), b.status.code());
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "verify output differs between runs");
    });
}
