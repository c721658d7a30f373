//! Bracketed scalar root finding: regula falsi with the Illinois correction,
//! falling back to bisection if a step would leave the bracket.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

/// `None` if `f(lo)` and `f(hi)` share a sign.
pub fn bracketed_root<F>(mut f: F, lo: f64, hi: f64, f_tol: f64, max_iter: usize) -> Option<Root>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let (mut fa, mut fb) = (f(a), f(b));
    if fa.abs() < f_tol {
        return Some(Root { x: a, fx: fa, iterations: 0 });
    }
    if fb.abs() < f_tol {
        return Some(Root { x: b, fx: fb, iterations: 0 });
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    let mut best = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
    // which end was replaced last: -1 for `a`, 1 for `b`
    let mut last = 0i8;
    for it in 1..=max_iter {
        let secant = b - fb * (b - a) / (fb - fa);
        let x = if secant.is_finite() && secant > a && secant < b {
            secant
        } else {
            0.5 * (a + b)
        };
        let fx = f(x);
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx.abs() < f_tol || (b - a) <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
            return Some(Root { x: best.0, fx: best.1, iterations: it });
        }
        // Illinois: halve the stale end's value so it cannot stall the secant
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if last == -1 {
                fb *= 0.5;
            }
            last = -1;
        } else {
            b = x;
            fb = fx;
            if last == 1 {
                fa *= 0.5;
            }
            last = 1;
        }
    }
    Some(Root { x: best.0, fx: best.1, iterations: max_iter })
}
