//! Fixed-step eighth-order explicit integrator.
//!
//! One step is a Gragg-Bulirsch-Stoer extrapolation of the modified midpoint
//! rule over the substep sequence (2, 4, 6, 8). Four columns of Richardson
//! extrapolation in `h^2` give a local error of order `h^9`.

/// Autonomous vector field on a four-dimensional state space.
pub trait VectorField {
    fn eval(&self, z: &[f64; 4]) -> [f64; 4];
}

impl<F: Fn(&[f64; 4]) -> [f64; 4]> VectorField for F {
    fn eval(&self, z: &[f64; 4]) -> [f64; 4] {
        self(z)
    }
}

const SUBSTEPS: [usize; 4] = [2, 4, 6, 8];

fn axpy(a: f64, x: &[f64; 4], y: &[f64; 4]) -> [f64; 4] {
    [
        y[0] + a * x[0],
        y[1] + a * x[1],
        y[2] + a * x[2],
        y[3] + a * x[3],
    ]
}

fn modified_midpoint<F: VectorField + ?Sized>(
    field: &F,
    z0: &[f64; 4],
    f0: &[f64; 4],
    h: f64,
    n: usize,
) -> [f64; 4] {
    let hs = h / n as f64;
    let mut prev = *z0;
    let mut cur = axpy(hs, f0, z0);
    for _ in 1..n {
        let next = axpy(2.0 * hs, &field.eval(&cur), &prev);
        prev = cur;
        cur = next;
    }
    let fc = field.eval(&cur);
    let mut out = [0.0; 4];
    for i in 0..4 {
        out[i] = 0.5 * (cur[i] + prev[i] + hs * fc[i]);
    }
    out
}

/// Advances `z` by one step of size `h`.
pub fn step<F: VectorField + ?Sized>(field: &F, z: &[f64; 4], h: f64) -> [f64; 4] {
    let f0 = field.eval(z);
    let mut table = [[[0.0; 4]; 4]; 4];
    for (j, &n) in SUBSTEPS.iter().enumerate() {
        table[j][0] = modified_midpoint(field, z, &f0, h, n);
        for k in 1..=j {
            let ratio = n as f64 / SUBSTEPS[j - k] as f64;
            let denom = ratio * ratio - 1.0;
            let (newer, older) = (table[j][k - 1], table[j - 1][k - 1]);
            table[j][k] = std::array::from_fn(|i| newer[i] + (newer[i] - older[i]) / denom);
        }
    }
    table[3][3]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_is_eighth_order() {
        let field = |z: &[f64; 4]| [z[2], z[3], -z[0], -z[1]];
        let run = |steps: usize| {
            let h = 1.0 / steps as f64;
            let mut z = [1.0, 0.0, 0.0, 1.0];
            for _ in 0..steps {
                z = step(&field, &z, h);
            }
            (z[0] - 1f64.cos()).abs()
        };
        let coarse = run(2);
        let fine = run(4);
        let order = (coarse / fine).log2();
        assert!(order > 7.5, "observed order {order}");
    }

    #[test]
    fn exponential_growth() {
        let field = |z: &[f64; 4]| *z;
        let mut z = [1.0, 2.0, -1.0, 0.5];
        for _ in 0..10 {
            z = step(&field, &z, 0.1);
        }
        let e = 1f64.exp();
        assert!((z[0] - e).abs() < 1e-12);
        assert!((z[1] - 2.0 * e).abs() < 1e-12);
    }
}
