//! Levi-Civita double cover `(u, v) -> (u / conj(v), 2 v^2)` and the linear
//! symplectomorphism `C + C -> T*C`.

use nalgebra::SMatrix;
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::dynamics::PhasePoint;
use crate::{Error, Result};

/// A point `(u, v)` of `T*C`, `u` the base and `v` the fibre coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscPoint {
    pub u: Complex64,
    pub v: Complex64,
}

impl OscPoint {
    pub fn new(u: [f64; 2], v: [f64; 2]) -> Self {
        Self {
            u: Complex64::new(u[0], u[1]),
            v: Complex64::new(v[0], v[1]),
        }
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.u.re, self.u.im, self.v.re, self.v.im]
    }

    pub fn from_array(z: &[f64; 4]) -> Self {
        Self::new([z[0], z[1]], [z[2], z[3]])
    }
}

impl std::ops::Neg for OscPoint {
    type Output = OscPoint;
    fn neg(self) -> OscPoint {
        OscPoint {
            u: -self.u,
            v: -self.v,
        }
    }
}

fn c2(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn levi_civita(osc: &OscPoint) -> Result<PhasePoint> {
    let v2 = osc.v.norm_sqr();
    if v2 == 0.0 {
        return Err(Error::domain("Levi-Civita map undefined for v = 0"));
    }
    // u / conj(v) = u v / |v|^2; written with products so that (-u, -v)
    // reproduces the image bit for bit.
    let q = osc.u * osc.v / v2;
    let p = 2.0 * osc.v * osc.v;
    Ok(PhasePoint::new(c2(q), c2(p)))
}

/// Preimage on the chosen sheet: `v = branch * sqrt(p/2)` (principal root),
/// `u = q conj(v)`.
pub fn lc_lift(pt: &PhasePoint, branch: i8) -> Result<OscPoint> {
    if branch != 1 && branch != -1 {
        return Err(Error::domain("branch must be +1 or -1"));
    }
    let p = Complex64::new(pt.p[0], pt.p[1]);
    if p.norm_sqr() == 0.0 {
        return Err(Error::domain("Levi-Civita lift undefined for p = 0"));
    }
    let v = (p / 2.0).sqrt() * f64::from(branch);
    let u = Complex64::new(pt.q[0], pt.q[1]) * v.conj();
    Ok(OscPoint { u, v })
}

/// Matrix of the linear map in coordinates `(x1, x2, y1, y2) -> (u1, u2, v1, v2)`
/// where `z_k = x_k + i y_k`.
pub fn linear_s_matrix() -> SMatrix<f64, 4, 4> {
    let s = FRAC_1_SQRT_2;
    SMatrix::<f64, 4, 4>::from_row_slice(&[
        0.0, 0.0, s, -s, //
        s, s, 0.0, 0.0, //
        -s, s, 0.0, 0.0, //
        0.0, 0.0, s, s, //
    ])
}

/// `u1 = (y1 - y2)/sqrt2, u2 = (x1 + x2)/sqrt2, v1 = (x2 - x1)/sqrt2,
/// v2 = (y1 + y2)/sqrt2` for `z1 = (x1, y1)`, `z2 = (x2, y2)`.
pub fn linear_s(z1: [f64; 2], z2: [f64; 2]) -> OscPoint {
    let s = FRAC_1_SQRT_2;
    let ([x1, y1], [x2, y2]) = (z1, z2);
    OscPoint::new(
        [s * (y1 - y2), s * (x1 + x2)],
        [s * (x2 - x1), s * (y1 + y2)],
    )
}

/// Inverse of [`linear_s`] (the matrix is orthogonal).
pub fn linear_s_inverse(osc: &OscPoint) -> ([f64; 2], [f64; 2]) {
    let s = FRAC_1_SQRT_2;
    let [u1, u2, v1, v2] = osc.to_array();
    let x1 = s * (u2 - v1);
    let x2 = s * (u2 + v1);
    let y1 = s * (u1 + v2);
    let y2 = s * (v2 - u1);
    ([x1, y1], [x2, y2])
}
