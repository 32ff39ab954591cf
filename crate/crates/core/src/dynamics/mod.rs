//! Planar Kepler and rotating Kepler dynamics.
//!
//! `H = |p|^2/2 - 1/|q|`, `L = q1 p2 - q2 p1`, and the Jacobi Hamiltonian
//! `K = H + L` of the problem seen from a frame rotating with unit speed.

mod flow;
mod kepler;

pub use flow::{flow, Field, FlowStatus, Trajectory, DEFAULT_STEPS_PER_PERIOD, R_MIN};
pub use kepler::{
    kepler_ellipse, period_of_energy, rotating_orbit, rotating_state, solve_kepler, KeplerOrbit,
};

use crate::numerics::diff;
use crate::regularization;
use crate::{Error, Result};

/// A point `(q, p)` of the planar phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub q: [f64; 2],
    pub p: [f64; 2],
}

impl PhasePoint {
    pub const fn new(q: [f64; 2], p: [f64; 2]) -> Self {
        Self { q, p }
    }

    pub fn from_array(z: &[f64; 4]) -> Self {
        Self::new([z[0], z[1]], [z[2], z[3]])
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.q[0], self.q[1], self.p[0], self.p[1]]
    }

    pub fn radius(&self) -> f64 {
        self.q[0].hypot(self.q[1])
    }

    pub fn angular_momentum(&self) -> f64 {
        self.q[0] * self.p[1] - self.q[1] * self.p[0]
    }

    pub fn q_dot_p(&self) -> f64 {
        self.q[0] * self.p[0] + self.q[1] * self.p[1]
    }

    pub fn p_sq(&self) -> f64 {
        self.p[0] * self.p[0] + self.p[1] * self.p[1]
    }

    fn checked_radius(&self) -> Result<f64> {
        let r = self.radius();
        if r == 0.0 {
            Err(Error::Collision)
        } else {
            Ok(r)
        }
    }

    /// Kepler energy `H`.
    pub fn kepler_energy(&self) -> Result<f64> {
        Ok(0.5 * self.p_sq() - 1.0 / self.checked_radius()?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBundle {
    /// Kepler energy.
    pub h: f64,
    /// Angular momentum.
    pub l: f64,
    /// Jacobi energy `H + L`.
    pub k: f64,
    /// Effective potential at `q`.
    pub u: f64,
}

pub fn energies(pt: &PhasePoint) -> Result<EnergyBundle> {
    let r = pt.checked_radius()?;
    let h = 0.5 * pt.p_sq() - 1.0 / r;
    let l = pt.angular_momentum();
    Ok(EnergyBundle {
        h,
        l,
        k: h + l,
        u: effective_potential(pt.q)?,
    })
}

/// `U(q) = -1/|q| - |q|^2/2`.
pub fn effective_potential(q: [f64; 2]) -> Result<f64> {
    let r = q[0].hypot(q[1]);
    if r == 0.0 {
        return Err(Error::Collision);
    }
    Ok(-1.0 / r - 0.5 * r * r)
}

/// Analytic gradient `q/|q|^3 - q` of the effective potential.
pub fn effective_potential_gradient(q: [f64; 2]) -> Result<[f64; 2]> {
    let r = q[0].hypot(q[1]);
    if r == 0.0 {
        return Err(Error::Collision);
    }
    let r3 = r * r * r;
    Ok([q[0] / r3 - q[0], q[1] / r3 - q[1]])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RungeLenz {
    pub a: [f64; 2],
    /// Eccentricity vector; `None` when `H >= 0`.
    pub eta: Option<[f64; 2]>,
    /// `|A|^2 - (1 + 2 H L^2)`.
    pub norm_sq_residual: f64,
}

/// Runge-Lenz vector `A = (p2 L - q1/|q|, -p1 L - q2/|q|)` and the
/// eccentricity vector `eta = A / sqrt(-2H)`.
pub fn runge_lenz(pt: &PhasePoint) -> Result<RungeLenz> {
    let r = pt.checked_radius()?;
    let l = pt.angular_momentum();
    let h = 0.5 * pt.p_sq() - 1.0 / r;
    let a = [pt.p[1] * l - pt.q[0] / r, -pt.p[0] * l - pt.q[1] / r];
    let eta = (h < 0.0).then(|| {
        let scale = (-2.0 * h).powf(-0.5);
        [scale * a[0], scale * a[1]]
    });
    Ok(RungeLenz {
        a,
        eta,
        norm_sq_residual: a[0] * a[0] + a[1] * a[1] - (1.0 + 2.0 * h * l * l),
    })
}

/// Scalar phase-space functions that can enter a Poisson bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    KeplerEnergy,
    AngularMomentum,
    Jacobi,
    RungeLenz1,
    RungeLenz2,
    Eccentricity1,
    Eccentricity2,
    ChartDelaunay,
    ChartJacobi,
}

impl Observable {
    pub fn eval(self, pt: &PhasePoint) -> Result<f64> {
        use Observable::*;
        match self {
            KeplerEnergy => pt.kepler_energy(),
            AngularMomentum => Ok(pt.angular_momentum()),
            Jacobi => Ok(pt.kepler_energy()? + pt.angular_momentum()),
            RungeLenz1 => Ok(runge_lenz(pt)?.a[0]),
            RungeLenz2 => Ok(runge_lenz(pt)?.a[1]),
            Eccentricity1 | Eccentricity2 => {
                let rl = runge_lenz(pt)?;
                let eta = rl.eta.ok_or_else(|| {
                    Error::NonNegativeEnergy(pt.kepler_energy().unwrap_or(f64::NAN))
                })?;
                Ok(if self == Eccentricity1 {
                    eta[0]
                } else {
                    eta[1]
                })
            }
            ChartDelaunay => regularization::chart_delaunay_energy(pt),
            ChartJacobi => regularization::chart_rkp_energy(pt),
        }
    }
}

/// Central-difference estimate of
/// `{f, g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i)`.
pub fn poisson_bracket(f: Observable, g: Observable, pt: &PhasePoint, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::domain("finite-difference step must be positive"));
    }
    let z = pt.to_array();
    let df = diff::gradient(|w| f.eval(&PhasePoint::from_array(w)), &z, h)?;
    let dg = diff::gradient(|w| g.eval(&PhasePoint::from_array(w)), &z, h)?;
    Ok(df[0] * dg[2] + df[1] * dg[3] - df[2] * dg[0] - df[3] * dg[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use Observable::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn energies_examples() {
        let e = energies(&PhasePoint::new([1.0, 0.0], [0.0, 1.0])).unwrap();
        assert_eq!((e.h, e.l, e.k, e.u), (-0.5, 1.0, 0.5, -1.5));
        let e = energies(&PhasePoint::new([1.0, 0.0], [0.0, -1.0])).unwrap();
        assert_eq!((e.h, e.l, e.k, e.u), (-0.5, -1.0, -1.5, -1.5));
        let e = energies(&PhasePoint::new([2.0, 0.0], [0.0, 0.0])).unwrap();
        assert_eq!((e.h, e.l, e.k, e.u), (-0.5, 0.0, -0.5, -2.5));
    }

    #[test]
    fn collision_is_rejected() {
        let pt = PhasePoint::new([0.0, 0.0], [1.0, 0.0]);
        assert_eq!(energies(&pt), Err(Error::Collision));
        assert_eq!(runge_lenz(&pt), Err(Error::Collision));
    }

    #[test]
    fn runge_lenz_examples() {
        let rl = runge_lenz(&PhasePoint::new([1.0, 0.0], [0.0, 1.0])).unwrap();
        assert_eq!(rl.a, [0.0, 0.0]);
        assert_eq!(rl.norm_sq_residual, 0.0);

        let rl = runge_lenz(&PhasePoint::new([1.0, 0.0], [0.0, 1.2])).unwrap();
        assert!(close(rl.a[0], 0.44, 1e-15) && rl.a[1] == 0.0);
        assert!(rl.norm_sq_residual.abs() < 1e-12);
    }

    #[test]
    fn eccentricity_vector_scaling() {
        let pt = PhasePoint::new([1.3, -0.4], [0.2, 0.7]);
        let h = pt.kepler_energy().unwrap();
        let rl = runge_lenz(&pt).unwrap();
        let eta = rl.eta.unwrap();
        let a_sq = rl.a[0].powi(2) + rl.a[1].powi(2);
        let eta_sq = eta[0].powi(2) + eta[1].powi(2);
        assert!(close(eta_sq, a_sq / (-2.0 * h), 1e-14));
    }

    #[test]
    fn eta_flagged_for_unbound_orbits() {
        let rl = runge_lenz(&PhasePoint::new([1.0, 0.0], [0.0, 2.0])).unwrap();
        assert!(rl.eta.is_none());
        assert!(rl.norm_sq_residual.abs() < 1e-12);
    }

    #[test]
    fn bracket_examples() {
        let pt = PhasePoint::new([1.3, 0.2], [0.1, 0.9]);
        assert!(
            poisson_bracket(KeplerEnergy, AngularMomentum, &pt, 1e-5)
                .unwrap()
                .abs()
                < 1e-6
        );
        let circ = PhasePoint::new([1.0, 0.0], [0.0, 1.0]);
        let b = poisson_bracket(RungeLenz1, RungeLenz2, &circ, 1e-5).unwrap();
        assert!(close(b, 1.0, 1e-6), "{b}");
        assert!(
            poisson_bracket(AngularMomentum, AngularMomentum, &pt, 1e-5)
                .unwrap()
                .abs()
                < 1e-10
        );
        assert!(
            poisson_bracket(Jacobi, AngularMomentum, &pt, 1e-5)
                .unwrap()
                .abs()
                < 1e-6
        );
    }

    #[test]
    fn bracket_rejects_bad_step() {
        let pt = PhasePoint::new([1.0, 0.0], [0.0, 1.0]);
        assert!(poisson_bracket(KeplerEnergy, AngularMomentum, &pt, 0.0).is_err());
    }

    #[test]
    fn potential_critical_on_unit_circle() {
        for i in 0..100 {
            let t = i as f64 * 0.0628;
            let q = [t.cos(), t.sin()];
            assert!(close(effective_potential(q).unwrap(), -1.5, 1e-14));
            let g = effective_potential_gradient(q).unwrap();
            assert!(g[0].hypot(g[1]) < 1e-12);
        }
    }
}
