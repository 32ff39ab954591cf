//! Fourth-order central finite differences.

use nalgebra::{SMatrix, SVector};

use crate::Result;

/// Fourth-order central difference `(-f(2h) + 8f(h) - 8f(-h) + f(-2h)) / 12h`
/// along coordinate `i`.
fn stencil<T>(
    f: &impl Fn(&[f64; 4]) -> Result<T>,
    z: &[f64; 4],
    i: usize,
    h: f64,
    combine: impl Fn([T; 4]) -> T,
) -> Result<T> {
    let at = |k: f64| {
        let mut w = *z;
        w[i] += k * h;
        f(&w)
    };
    Ok(combine([at(2.0)?, at(1.0)?, at(-1.0)?, at(-2.0)?]))
}

/// Gradient of a scalar function on `R^4`.
pub fn gradient(f: impl Fn(&[f64; 4]) -> Result<f64>, z: &[f64; 4], h: f64) -> Result<[f64; 4]> {
    let mut g = [0.0; 4];
    for (i, gi) in g.iter_mut().enumerate() {
        *gi = stencil(&f, z, i, h, |[p2, p1, m1, m2]| {
            (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h)
        })?;
    }
    Ok(g)
}

/// Jacobian of a map `R^4 -> R^M`.
pub fn jacobian<const M: usize>(
    f: impl Fn(&[f64; 4]) -> Result<[f64; M]>,
    z: &[f64; 4],
    h: f64,
) -> Result<SMatrix<f64, M, 4>> {
    let f = |w: &[f64; 4]| f(w).map(SVector::<f64, M>::from);
    let mut jac = SMatrix::<f64, M, 4>::zeros();
    for j in 0..4 {
        let col = stencil(&f, z, j, h, |[p2, p1, m1, m2]| {
            ((p1 - m1) * 8.0 - (p2 - m2)) / (12.0 * h)
        })?;
        jac.set_column(j, &col);
    }
    Ok(jac)
}

/// Standard symplectic matrix on `R^{2n}` with coordinates ordered
/// `(q_1..q_n, p_1..p_n)`.
pub fn omega<const N: usize>() -> SMatrix<f64, N, N> {
    let n = N / 2;
    let mut m = SMatrix::<f64, N, N>::zeros();
    for i in 0..n {
        m[(i, n + i)] = 1.0;
        m[(n + i, i)] = -1.0;
    }
    m
}
