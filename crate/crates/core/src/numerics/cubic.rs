//! Real roots of cubic polynomials by Cardano's method with Newton polish.

use std::f64::consts::PI;

/// Relative tolerance on the discriminant below which two roots are merged.
pub const DOUBLE_ROOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CubicRoots {
    /// Real roots, ascending, repeated according to multiplicity.
    pub roots: Vec<f64>,
    /// True when a repeated real root was detected.
    pub repeated: bool,
}

fn eval(c: &[f64; 4], x: f64) -> f64 {
    ((c[0] * x + c[1]) * x + c[2]) * x + c[3]
}

fn eval_deriv(c: &[f64; 4], x: f64) -> f64 {
    (3.0 * c[0] * x + 2.0 * c[1]) * x + c[2]
}

fn polish(c: &[f64; 4], mut x: f64) -> f64 {
    for _ in 0..4 {
        let d = eval_deriv(c, x);
        if d == 0.0 {
            break;
        }
        let step = eval(c, x) / d;
        let next = x - step;
        if !next.is_finite() || eval(c, next).abs() > eval(c, x).abs() {
            break;
        }
        x = next;
        if step.abs() <= 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// Real roots of `c3 x^3 + c2 x^2 + c1 x + c0` with `c3 != 0`.
pub fn solve(c3: f64, c2: f64, c1: f64, c0: f64) -> CubicRoots {
    assert!(c3 != 0.0, "leading coefficient must be nonzero");
    let coeffs = [c3, c2, c1, c0];
    let (a, b, c) = (c2 / c3, c1 / c3, c0 / c3);
    // x = t - a/3 gives t^3 + p t + q = 0.
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    let disc = 4.0 * p * p * p + 27.0 * q * q;
    let scale = (4.0 * p * p * p).abs() + 27.0 * q * q;

    let mut roots;
    let mut repeated = false;
    if scale == 0.0 {
        roots = vec![-shift; 3];
        repeated = true;
    } else if disc.abs() <= DOUBLE_ROOT_TOL * scale {
        let simple = 3.0 * q / p - shift;
        let double = -1.5 * q / p - shift;
        roots = vec![polish(&coeffs, simple), double, double];
        repeated = true;
    } else if disc < 0.0 {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        roots = (0..3)
            .map(|k| {
                polish(
                    &coeffs,
                    m * (theta - 2.0 * PI * k as f64 / 3.0).cos() - shift,
                )
            })
            .collect();
    } else {
        let s = (disc / 108.0).sqrt();
        // Pick the larger-magnitude term first to avoid cancellation.
        let u = (-q / 2.0 + s.copysign(-q)).cbrt();
        let t = if u == 0.0 { 0.0 } else { u - p / (3.0 * u) };
        roots = vec![polish(&coeffs, t - shift)];
    }
    roots.sort_by(f64::total_cmp);
    CubicRoots { roots, repeated }
}
