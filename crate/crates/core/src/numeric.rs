//! Small numerical helpers shared across modules: stable trig quotients,
//! Brent root bracketing, and an adaptive log-spaced Simpson quadrature.

/// sin(x·s)/x, continued smoothly through x = 0 (limit s).
pub fn sin_over(x: f64, s: f64) -> f64 {
    let xs = x * s;
    if xs.abs() < 1e-6 {
        s * (1.0 - xs * xs / 6.0)
    } else {
        (x * s).sin() / x
    }
}

/// (1 − cos(x·s))/x, continued smoothly through x = 0 (limit x·s²/2).
pub fn versin_over(x: f64, s: f64) -> f64 {
    let xs = x * s;
    if xs.abs() < 1e-6 {
        x * s * s * 0.5 * (1.0 - xs * xs / 12.0)
    } else {
        (1.0 - xs.cos()) / x
    }
}

/// Brent's method on [a, b]; requires a sign change.
///
/// Converges to machine precision (the tolerance argument is a floor, not
/// the stopping width actually achieved for smooth roots).
pub fn brent_root<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Option<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut mflag = true;
    for _ in 0..max_iter {
        let mut s;
        if fa != fc && fb != fc {
            // inverse quadratic interpolation
            s = a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        let lo = (3.0 * a + b) / 4.0;
        let cond = !((lo.min(b) < s && s < lo.max(b))
            && (!mflag || (s - b).abs() < (b - c).abs() / 2.0)
            && (mflag || (s - b).abs() < d.abs() / 2.0));
        if cond {
            s = (a + b) / 2.0;
            mflag = true;
        } else {
            mflag = false;
        }
        let fs = f(s);
        d = c - b;
        c = b;
        fc = fb;
        if fa.signum() != fs.signum() {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
        let tol = rel_tol * b.abs().max(1.0) + f64::EPSILON;
        if fb == 0.0 || (b - a).abs() < tol.max(4.0 * f64::EPSILON * b.abs()) {
            return Some(b);
        }
    }
    Some(b)
}

/// Integrate `f` over [a, b] (a > 0) on a log-spaced grid with composite
/// Simpson panels, doubling the density until the relative change is below
/// `rel_tol` or the cap is reached. Deterministic by construction.
pub fn integrate_log<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    assert!(a > 0.0 && b > a, "integrate_log needs 0 < a < b");
    // Substitute x = e^u so the panel density follows the decades; the pulse
    // transfer functions oscillate on a linear scale, so the refinement loop
    // carries the accuracy burden.
    let (la, lb) = (a.ln(), b.ln());
    let g = |u: f64| {
        let x = u.exp();
        f(x) * x
    };
    let simpson = |n: usize| {
        let h = (lb - la) / n as f64;
        let mut acc = g(la) + g(lb);
        for i in 1..n {
            let w = if i % 2 == 0 { 2.0 } else { 4.0 };
            acc += w * g(la + i as f64 * h);
        }
        acc * h / 3.0
    };
    let mut n = 4096;
    let mut prev = simpson(n);
    loop {
        n *= 2;
        let cur = simpson(n);
        let scale = cur.abs().max(f64::MIN_POSITIVE);
        if ((cur - prev) / scale).abs() < rel_tol || n >= 1 << 21 {
            return cur;
        }
        prev = cur;
    }
}

/// SplitMix64 step; used to derive independent per-cycle seeds from one
/// master seed so Monte-Carlo sample generation is order-independent.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_simple_root() {
        let r = brent_root(|x| x * x - 2.0, 0.0, 2.0, 1e-12, 100).unwrap();
        assert!((r - 2.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_no_sign_change() {
        assert!(brent_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 100).is_none());
    }

    #[test]
    fn log_integral_of_power_law() {
        // ∫ 1/x dx over [1, e^2] = 2
        let v = integrate_log(|x| 1.0 / x, 1.0, (2.0f64).exp(), 1e-10);
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn sin_over_matches_series_at_zero() {
        assert!((sin_over(0.0, 3.0) - 3.0).abs() < 1e-15);
        assert!((sin_over(1e-9, 3.0) - 3.0).abs() < 1e-12);
        assert!((sin_over(2.0, 3.0) - (6.0f64).sin() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn splitmix_streams_differ() {
        let a = splitmix64(1);
        let b = splitmix64(2);
        assert_ne!(a, b);
        assert_eq!(a, splitmix64(1));
    }
}
