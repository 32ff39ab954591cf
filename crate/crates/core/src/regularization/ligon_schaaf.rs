//! Ligon-Schaaf map from the negative-energy Kepler phase space `P-` onto
//! `T-`, the sphere bundle with the north pole fibre removed.
//!
//! With `nu = (-2H)^(-1/2)` (the square root of the semi-major axis) and
//! `phi = <q, p> / nu`,
//!
//! ```text
//! A = (q/|q| - <q,p> p, <q,p>/nu)      B = (|q| p / nu, |p|^2 |q| - 1)
//! x = sin(phi) A + cos(phi) B          y = nu (sin(phi) B - cos(phi) A)
//! ```
//!
//! `A` and `B` are orthonormal on `P-`, so `|y| = nu` and the Delaunay
//! energy of the image equals `H`.

use nalgebra::{SMatrix, SVector};

use super::SpherePoint;
use crate::dynamics::{runge_lenz, PhasePoint};
use crate::numerics::{cross, diff, max_abs_diff, norm, roots};
use crate::{Error, Result};

const POLISH_TOL: f64 = 1e-11;
const POLISH_MAX_ITER: usize = 60;
const RESTARTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LSFrame {
    pub cal_a: [f64; 3],
    pub cal_b: [f64; 3],
    pub phi: f64,
    pub nu: f64,
}

pub fn ls_frame(pt: &PhasePoint) -> Result<LSFrame> {
    let h = pt.kepler_energy()?;
    if !(h < 0.0) {
        return Err(Error::NonNegativeEnergy(h));
    }
    let r = pt.radius();
    let nu = (-2.0 * h).powf(-0.5);
    let qp = pt.q_dot_p();
    let cal_a = [
        pt.q[0] / r - qp * pt.p[0],
        pt.q[1] / r - qp * pt.p[1],
        qp / nu,
    ];
    let cal_b = [r * pt.p[0] / nu, r * pt.p[1] / nu, pt.p_sq() * r - 1.0];
    Ok(LSFrame {
        cal_a,
        cal_b,
        phi: qp / nu,
        nu,
    })
}

pub fn ligon_schaaf(pt: &PhasePoint) -> Result<SpherePoint> {
    let f = ls_frame(pt)?;
    let (s, c) = f.phi.sin_cos();
    let mut x = [0.0; 3];
    let mut y = [0.0; 3];
    for i in 0..3 {
        x[i] = s * f.cal_a[i] + c * f.cal_b[i];
        y[i] = f.nu * (s * f.cal_b[i] - c * f.cal_a[i]);
    }
    Ok(SpherePoint::new(x, y))
}

/// Reconstructs `(q, p)` from the frame: `phi` solves the Kepler-type
/// equation `phi = x3 sin(phi) - (y3/nu) cos(phi)`, after which `A` and `B`
/// are recovered by rotating back and `(q, p)` read off their components.
fn closed_form_seed(sp: &SpherePoint) -> Option<PhasePoint> {
    let nu = norm(&sp.y);
    // cos(phi) A - sin(phi) B
    let yh = [-sp.y[0] / nu, -sp.y[1] / nu, -sp.y[2] / nu];
    let (x3, y3) = (sp.x[2], yh[2]);
    let phi = roots::newton_bisect(
        |t| t - x3 * t.sin() - y3 * t.cos(),
        |t| 1.0 - x3 * t.cos() + y3 * t.sin(),
        -1.5,
        1.5,
        1e-15,
    )
    .ok()?;
    let (s, c) = phi.sin_cos();
    let a: Vec<f64> = (0..3).map(|i| s * sp.x[i] + c * yh[i]).collect();
    let b: Vec<f64> = (0..3).map(|i| c * sp.x[i] - s * yh[i]).collect();
    let rp2 = b[2] + 1.0; // |p|^2 |q|
    if !(rp2 > 1e-14) {
        return None;
    }
    let r = nu * nu * (b[0] * b[0] + b[1] * b[1]) / rp2;
    if !(r > 0.0) || !r.is_finite() {
        return None;
    }
    let p = [nu * b[0] / r, nu * b[1] / r];
    let qp = nu * phi;
    let q = [r * (a[0] + qp * p[0]), r * (a[1] + qp * p[1])];
    Some(PhasePoint::new(q, p))
}

/// Seeds on the circular orbits of the target energy, spread in angle; the
/// sense of rotation is the sign of the third component of `x ^ y`, which
/// is `L`.
fn circular_seeds(sp: &SpherePoint) -> impl Iterator<Item = PhasePoint> {
    let semi_major = sp.y.iter().map(|v| v * v).sum::<f64>();
    let sense = if cross(&sp.x, &sp.y)[2] < 0.0 {
        -1.0
    } else {
        1.0
    };
    (0..RESTARTS).map(move |k| {
        let (s, c) = (std::f64::consts::TAU * k as f64 / RESTARTS as f64).sin_cos();
        let v = sense / semi_major.sqrt();
        PhasePoint::new([semi_major * c, semi_major * s], [-v * s, v * c])
    })
}

fn residual(z: &[f64; 4], target: &[f64; 6]) -> Result<SVector<f64, 6>> {
    let img = ligon_schaaf(&PhasePoint::from_array(z))?.to_array();
    Ok(SVector::<f64, 6>::from_fn(|i, _| img[i] - target[i]))
}

/// Damped Gauss-Newton on the six components of `Phi(z) - target`.
fn polish(start: PhasePoint, target: &[f64; 6]) -> Option<(PhasePoint, f64)> {
    let mut z = start.to_array();
    let mut res = residual(&z, target).ok()?;
    let mut err = res.amax();
    for _ in 0..POLISH_MAX_ITER {
        if err < POLISH_TOL * 1e-2 {
            break;
        }
        let h = 1e-7 * norm(&z).max(1.0);
        let jac: SMatrix<f64, 6, 4> = diff::jacobian(
            |w| ligon_schaaf(&PhasePoint::from_array(w)).map(|s| s.to_array()),
            &z,
            h,
        )
        .ok()?;
        let normal = jac.transpose() * jac;
        let rhs = -(jac.transpose() * res);
        let step = normal.lu().solve(&rhs)?;
        let mut damping = 1.0;
        let mut accepted = false;
        while damping > 1e-6 {
            let mut trial = z;
            for i in 0..4 {
                trial[i] += damping * step[i];
            }
            if let Ok(r) = residual(&trial, target) {
                if r.amax() < err {
                    z = trial;
                    res = r;
                    err = r.amax();
                    accepted = true;
                    break;
                }
            }
            damping *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (err < POLISH_TOL).then(|| (PhasePoint::from_array(&z), err))
}

/// Inverse of [`ligon_schaaf`] on `T-`.
pub fn ligon_schaaf_inverse(sp: &SpherePoint) -> Result<PhasePoint> {
    if !sp.in_t() {
        return Err(Error::domain(
            "point is not in T (sphere constraints or zero section)",
        ));
    }
    if !sp.in_t_minus() {
        return Err(Error::domain("north pole fibre is not in the image of P-"));
    }
    let target = sp.to_array();
    let seeds = closed_form_seed(sp).into_iter().chain(circular_seeds(sp));
    for seed in seeds {
        if let Some((pt, _)) = polish(seed, &target) {
            return Ok(pt);
        }
    }
    Err(Error::NumericFailure(
        "Ligon-Schaaf inverse did not converge from any seed".into(),
    ))
}

/// `J = (L, eta_1, eta_2)` on `P-`.
pub fn plane_moments(pt: &PhasePoint) -> Result<[f64; 3]> {
    let rl = runge_lenz(pt)?;
    let eta = rl
        .eta
        .ok_or_else(|| Error::NonNegativeEnergy(pt.kepler_energy().unwrap_or(f64::NAN)))?;
    Ok([pt.angular_momentum(), eta[0], eta[1]])
}

/// `J~ = x ^ y`.
pub fn sphere_moments(sp: &SpherePoint) -> [f64; 3] {
    sp.angular_momentum()
}

/// Expresses `J = (L, eta_1, eta_2)` in the axes of `x ^ y`:
/// `(eta_2, -eta_1, L)`, a rotation.
pub fn plane_moments_in_sphere_axes(j: [f64; 3]) -> [f64; 3] {
    [j[2], -j[1], j[0]]
}

/// `max |J - J~ o Phi|` componentwise, after the axis convention above.
pub fn moment_map_residual(pt: &PhasePoint) -> Result<f64> {
    let j = plane_moments_in_sphere_axes(plane_moments(pt)?);
    let jt = sphere_moments(&ligon_schaaf(pt)?);
    Ok(max_abs_diff(&j, &jt))
}
