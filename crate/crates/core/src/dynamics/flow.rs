use super::PhasePoint;
use crate::numerics::integrator::{self, VectorField};
use crate::{Error, Result};

/// Collision guard radius for the unregularized fields.
pub const R_MIN: f64 = 1e-3;

/// Default resolution: step `dt = period / DEFAULT_STEPS_PER_PERIOD`.
pub const DEFAULT_STEPS_PER_PERIOD: f64 = 2000.0;

/// Chart fields are stopped once the chart coordinate leaves this ball.
const CHART_Q_MAX: f64 = 1e6;

/// Hamiltonian vector fields that can be integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// `X_H`, planar Kepler.
    Kepler,
    /// `X_K` with `K = H + L`.
    Jacobi,
    /// Delaunay Hamiltonian in the stereographic chart.
    ChartDelaunay,
    /// Delaunay Hamiltonian plus angular momentum in the stereographic chart.
    ChartJacobi,
}

impl Field {
    fn guard(self, z: &[f64; 4]) -> Option<String> {
        let r = z[0].hypot(z[1]);
        match self {
            Field::Kepler | Field::Jacobi if r < R_MIN => {
                Some(format!("near collision: |q| = {r:.3e} < {R_MIN:e}"))
            }
            Field::ChartDelaunay | Field::ChartJacobi => {
                let pn = z[2].hypot(z[3]);
                if pn < 1e-12 {
                    Some(format!("zero section reached: |p| = {pn:.3e}"))
                } else if r > CHART_Q_MAX {
                    Some(format!("left chart: |q| = {r:.3e}"))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Stops the unregularized fields when one step would cover more than
    /// half of `|q| / |dq/dt|`, since the step could then jump over a
    /// collision.
    fn resolution_guard(self, z: &[f64; 4], dt: f64) -> Option<String> {
        if !matches!(self, Field::Kepler | Field::Jacobi) {
            return None;
        }
        let r = z[0].hypot(z[1]);
        let v = self.eval(z);
        let speed = v[0].hypot(v[1]);
        (r < 2.0 * dt * speed)
            .then(|| format!("near collision: |q| = {r:.3e} under-resolved by dt = {dt:.3e}"))
    }
}

impl VectorField for Field {
    fn eval(&self, z: &[f64; 4]) -> [f64; 4] {
        let [q1, q2, p1, p2] = *z;
        match self {
            Field::Kepler | Field::Jacobi => {
                let r2 = q1 * q1 + q2 * q2;
                let r3 = r2 * r2.sqrt();
                let mut out = [p1, p2, -q1 / r3, -q2 / r3];
                if *self == Field::Jacobi {
                    // dL/dp = (-q2, q1), dL/dq = (p2, -p1)
                    out[0] -= q2;
                    out[1] += q1;
                    out[2] -= p2;
                    out[3] += p1;
                }
                out
            }
            Field::ChartDelaunay | Field::ChartJacobi => {
                // f = -2 / (s^2 P), s = |q|^2 + 1, P = |p|^2
                let s = q1 * q1 + q2 * q2 + 1.0;
                let pp = p1 * p1 + p2 * p2;
                let dq = 8.0 / (s * s * s * pp);
                let dp = 4.0 / (s * s * pp * pp);
                let mut out = [dp * p1, dp * p2, -dq * q1, -dq * q2];
                if *self == Field::ChartJacobi {
                    out[0] -= q2;
                    out[1] += q1;
                    out[2] -= p2;
                    out[3] += p1;
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FlowStatus {
    Complete,
    /// Integration stopped early at `time`.
    Truncated {
        time: f64,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhasePoint>,
    pub status: FlowStatus,
}

impl Trajectory {
    pub fn last(&self) -> &PhasePoint {
        self.states.last().expect("trajectory is never empty")
    }

    pub fn is_complete(&self) -> bool {
        self.status == FlowStatus::Complete
    }
}

/// Integrates `field` from `pt` over `[0, t_end]` with fixed step `dt`; the
/// last step is shortened to land on `t_end`.
pub fn flow(field: Field, pt: &PhasePoint, t_end: f64, dt: f64) -> Result<Trajectory> {
    if !(dt > 0.0) || !t_end.is_finite() || t_end < 0.0 {
        return Err(Error::domain("flow needs dt > 0 and a finite t_end >= 0"));
    }
    let mut z = pt.to_array();
    if let Some(reason) = field.guard(&z) {
        return Err(Error::domain(reason));
    }
    let steps = (t_end / dt).ceil() as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(*pt);
    let mut status = FlowStatus::Complete;
    for i in 0..steps {
        let t0 = i as f64 * dt;
        let t1 = if i + 1 == steps {
            t_end
        } else {
            (i + 1) as f64 * dt
        };
        if let Some(reason) = field.resolution_guard(&z, t1 - t0) {
            status = FlowStatus::Truncated { time: t0, reason };
            break;
        }
        z = integrator::step(&field, &z, t1 - t0);
        if z.iter().any(|v| !v.is_finite()) {
            status = FlowStatus::Truncated {
                time: t0,
                reason: "non-finite state".into(),
            };
            break;
        }
        if let Some(reason) = field.guard(&z) {
            status = FlowStatus::Truncated { time: t0, reason };
            break;
        }
        times.push(t1);
        states.push(PhasePoint::from_array(&z));
    }
    Ok(Trajectory {
        times,
        states,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::energies;
    use std::f64::consts::PI;

    #[test]
    fn circular_kepler_closes() {
        let start = PhasePoint::new([1.0, 0.0], [0.0, 1.0]);
        let traj = flow(Field::Kepler, &start, 2.0 * PI, 2.0 * PI / 2000.0).unwrap();
        assert!(traj.is_complete());
        let end = traj.last();
        let d = (end.q[0] - 1.0)
            .abs()
            .max(end.q[1].abs())
            .max(end.p[0].abs())
            .max((end.p[1] - 1.0).abs());
        assert!(d < 1e-9, "{d}");
        for (t, s) in traj.times.iter().zip(&traj.states) {
            assert!((s.q[0] - t.cos()).abs() < 1e-9 && (s.q[1] - t.sin()).abs() < 1e-9);
        }
    }

    #[test]
    fn critical_point_is_equilibrium() {
        let start = PhasePoint::new([1.0, 0.0], [0.0, -1.0]);
        let traj = flow(Field::Jacobi, &start, 5.0, 0.01).unwrap();
        for s in &traj.states {
            assert!((s.q[0] - 1.0).abs() < 1e-13 && s.q[1].abs() < 1e-13);
            assert!(s.p[0].abs() < 1e-13 && (s.p[1] + 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn eccentric_orbit_conserves_energy() {
        let start = PhasePoint::new([1.0, 0.0], [0.0, 1.2]);
        let h0 = energies(&start).unwrap().h;
        let tau = 2.0 * PI * (-2.0 * h0).powf(-1.5);
        let traj = flow(Field::Kepler, &start, 10.0, tau / DEFAULT_STEPS_PER_PERIOD).unwrap();
        let h1 = energies(traj.last()).unwrap().h;
        assert!((h1 - h0).abs() < 1e-9);
        assert_eq!(*traj.times.last().unwrap(), 10.0);
    }

    #[test]
    fn radial_orbit_is_truncated() {
        let start = PhasePoint::new([1.0, 0.0], [0.0, 0.0]);
        let traj = flow(Field::Kepler, &start, 3.0, 1e-3).unwrap();
        assert!(matches!(traj.status, FlowStatus::Truncated { .. }));
        assert!(traj.states.iter().all(|s| s.radius() >= R_MIN));
    }

    #[test]
    fn bad_step_is_rejected() {
        let start = PhasePoint::new([1.0, 0.0], [0.0, 1.0]);
        assert!(flow(Field::Kepler, &start, 1.0, 0.0).is_err());
        assert!(flow(Field::Kepler, &start, -1.0, 0.1).is_err());
    }
}
