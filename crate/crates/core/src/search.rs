//! Deterministic one-dimensional maximization.

/// Result of a scalar maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
}

pub const COARSE_POINTS: usize = 64;
const GOLDEN: f64 = 0.618_033_988_749_894_8; // (sqrt(5) - 1) / 2
const MAX_GOLDEN_ITERS: usize = 200;

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Stops when the bracket is narrower than `xtol`.
pub fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Maximum
where
    F: Fn(f64) -> f64,
{
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..MAX_GOLDEN_ITERS {
        if hi - lo <= xtol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        Maximum { arg: x1, value: f1 }
    } else {
        Maximum { arg: x2, value: f2 }
    }
}

/// Maximize `f` over `(0, upper]`: a `COARSE_POINTS` grid brackets the best
/// sample, then golden-section refines inside the neighbouring cells.
///
/// The left end of the grid is `upper / COARSE_POINTS`, not zero, so probes
/// with a singular normalization at the origin are never evaluated there.
pub fn bracketed_max<F>(f: F, upper: f64, xtol: f64) -> Maximum
where
    F: Fn(f64) -> f64,
{
    let step = upper / COARSE_POINTS as f64;
    let mut best_k = 1;
    let mut best = f64::NEG_INFINITY;
    for k in 1..=COARSE_POINTS {
        let v = f(step * k as f64);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    // the left neighbour of the first grid point is the open end at zero,
    // approached to within a small fraction of one cell
    let lo = if best_k == 1 {
        step * 1e-6
    } else {
        step * (best_k - 1) as f64
    };
    let hi = step * (best_k + 1).min(COARSE_POINTS) as f64;
    let refined = golden_section_max(&f, lo, hi, xtol);
    if refined.value >= best {
        refined
    } else {
        Maximum {
            arg: step * best_k as f64,
            value: best,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn parabola() {
        let m = golden_section_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, -1.0, 1.0, 1e-10);
        // values near a quadratic peak tie in f64, so the argmax is only
        // resolved to about sqrt(eps)
        assert_abs_diff_eq!(m.arg, 0.3, epsilon = 1e-7);
        assert_abs_diff_eq!(m.value, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn bracketed_finds_interior_peak() {
        let m = bracketed_max(|x| (-(x - 1.37f64).powi(2)).exp(), 4.0, 1e-11);
        assert_abs_diff_eq!(m.arg, 1.37, epsilon = 1e-8);
    }

    #[test]
    fn bracketed_peak_at_right_end() {
        let m = bracketed_max(|x| x, 2.0, 1e-11);
        assert_abs_diff_eq!(m.arg, 2.0, epsilon = 1e-9);
    }

    #[test]
    fn bracketed_peak_near_origin() {
        let m = bracketed_max(|x| -(x - 0.01f64).powi(2), 4.0, 1e-12);
        assert_abs_diff_eq!(m.arg, 0.01, epsilon = 1e-8);
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (3.0 * x).sin() / (1.0 + x);
        let a = bracketed_max(f, 3.0, 1e-12);
        let b = bracketed_max(f, 3.0, 1e-12);
        assert_eq!(a, b);
    }
}
