//! Regularizing maps between the planar phase space, the cotangent bundle
//! of the sphere and `T*C`, each paired with a numeric check.
//!
//! The cotangent bundle of `S^2` is modelled as pairs `(x, y)` in `R^3 x R^3`
//! with `|x| = 1` and `x . y = 0`, carrying the restriction of
//! `sum dx_k ^ dy_k`.

mod checks;
mod levi_civita;
mod ligon_schaaf;

pub use checks::{conjugacy_residual, symplectic_residual, SymplecticMap};
pub use levi_civita::{
    lc_lift, levi_civita, linear_s, linear_s_inverse, linear_s_matrix, OscPoint,
};
pub use ligon_schaaf::{
    ligon_schaaf, ligon_schaaf_inverse, ls_frame, moment_map_residual, plane_moments,
    plane_moments_in_sphere_axes, sphere_moments, LSFrame,
};

use crate::dynamics::PhasePoint;
use crate::numerics::{cross, dot, norm};
use crate::{Error, Result};

/// Tolerance used when validating sphere constraints on input.
const SPHERE_TOL: f64 = 1e-10;

/// A covector `y` at the point `x` of the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub x: [f64; 3],
    pub y: [f64; 3],
}

impl SpherePoint {
    pub const fn new(x: [f64; 3], y: [f64; 3]) -> Self {
        Self { x, y }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [
            self.x[0], self.x[1], self.x[2], self.y[0], self.y[1], self.y[2],
        ]
    }

    /// Largest violation of `|x| = 1` and `x . y = 0`.
    pub fn constraint_residual(&self) -> f64 {
        (norm(&self.x) - 1.0).abs().max(dot(&self.x, &self.y).abs())
    }

    /// On the sphere bundle and off the zero section.
    pub fn in_t(&self) -> bool {
        self.constraint_residual() <= SPHERE_TOL && norm(&self.y) > 0.0
    }

    /// In `T` and away from the north pole `e3`.
    pub fn in_t_minus(&self) -> bool {
        self.in_t() && !self.at_north_pole()
    }

    fn at_north_pole(&self) -> bool {
        self.x[0] == 0.0 && self.x[1] == 0.0 && self.x[2] >= 1.0 - SPHERE_TOL
    }

    pub fn distance(&self, other: &SpherePoint) -> f64 {
        let a = self.to_array();
        let b = other.to_array();
        a.iter()
            .zip(&b)
            .map(|(u, v)| (u - v).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn angular_momentum(&self) -> [f64; 3] {
        cross(&self.x, &self.y)
    }
}

/// Cotangent lift of the inverse stereographic projection from the north
/// pole.
pub fn stereo_lift(pt: &PhasePoint) -> SpherePoint {
    let [q1, q2] = pt.q;
    let r2 = q1 * q1 + q2 * q2;
    let s = r2 + 1.0;
    let qp = pt.q_dot_p();
    SpherePoint::new(
        [2.0 * q1 / s, 2.0 * q2 / s, (r2 - 1.0) / s],
        [0.5 * s * pt.p[0] - qp * q1, 0.5 * s * pt.p[1] - qp * q2, qp],
    )
}

/// Inverse of [`stereo_lift`]; `p` is the pullback `Dx(q)^T y`.
pub fn stereo_drop(sp: &SpherePoint) -> Result<PhasePoint> {
    let denom = 1.0 - sp.x[2];
    if denom <= 0.0 || (sp.x[0] == 0.0 && sp.x[1] == 0.0 && denom < SPHERE_TOL) {
        return Err(Error::domain(
            "north pole is outside the stereographic chart",
        ));
    }
    let q = [sp.x[0] / denom, sp.x[1] / denom];
    let s = q[0] * q[0] + q[1] * q[1] + 1.0;
    let qy = q[0] * sp.y[0] + q[1] * sp.y[1];
    let coef = 4.0 * (sp.y[2] - qy) / (s * s);
    let p = [
        2.0 * sp.y[0] / s + coef * q[0],
        2.0 * sp.y[1] / s + coef * q[1],
    ];
    Ok(PhasePoint::new(q, p))
}

/// Delaunay Hamiltonian `-1 / (2 |y|^2)` on `T`.
pub fn delaunay_energy(sp: &SpherePoint) -> Result<f64> {
    let y2 = dot(&sp.y, &sp.y);
    if y2 == 0.0 {
        return Err(Error::domain(
            "Delaunay energy undefined on the zero section",
        ));
    }
    Ok(-0.5 / y2)
}

/// Delaunay Hamiltonian in the stereographic chart,
/// `-2 / ((|q|^2 + 1)^2 |p|^2)`.
pub fn chart_delaunay_energy(pt: &PhasePoint) -> Result<f64> {
    let pp = pt.p_sq();
    if pp == 0.0 {
        return Err(Error::domain("chart Delaunay energy undefined for p = 0"));
    }
    let s = pt.q[0] * pt.q[0] + pt.q[1] * pt.q[1] + 1.0;
    Ok(-2.0 / (s * s * pp))
}

/// Rotating Kepler Hamiltonian in the chart: Delaunay energy plus `L`.
pub fn chart_rkp_energy(pt: &PhasePoint) -> Result<f64> {
    Ok(chart_delaunay_energy(pt)? + pt.angular_momentum())
}
