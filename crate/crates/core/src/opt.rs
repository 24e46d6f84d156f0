//! Small shared numerical search helpers.

/// Golden-section maximization of a unimodal-ish objective on `[lo, hi]`.
///
/// Returns `(x, f(x))` for the best point seen, including the endpoints.
/// On multimodal input this only refines whatever peak the bracket holds,
/// which is how callers use it: a dense grid picks the basin, this polishes
/// it.
pub fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = (c, fc);
    if fd > best.1 {
        best = (d, fd);
    }
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc > best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd > best.1 {
                best = (d, fd);
            }
        }
    }
    // Near a smooth peak f plateaus in floating point, so "best seen" can
    // freeze an early point; the bracket midpoint keeps converging. Prefer
    // it on ties — its value is still an evaluation, never an extrapolation.
    let m = 0.5 * (a + b);
    let fm = f(m);
    if fm >= best.1 {
        best = (m, fm);
    }
    for x in [lo, hi] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}
