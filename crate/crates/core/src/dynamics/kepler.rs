use std::f64::consts::{PI, TAU};

use super::PhasePoint;
use crate::{Error, Result};

const KEPLER_TOL: f64 = 1e-13;
const KEPLER_MAX_ITER: usize = 50;

/// Minimal period `2 pi (-2H)^(-3/2)` of a Kepler ellipse of energy `H`.
pub fn period_of_energy(h: f64) -> Result<f64> {
    if !(h < 0.0) {
        return Err(Error::NonNegativeEnergy(h));
    }
    Ok(TAU * (-2.0 * h).powf(-1.5))
}

/// Solves Kepler's equation `M = E - e sin E` for the eccentric anomaly.
pub fn solve_kepler(mean_anomaly: f64, e: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&e) {
        return Err(Error::domain(format!("eccentricity {e} outside [0, 1)")));
    }
    if !mean_anomaly.is_finite() {
        return Err(Error::domain("mean anomaly must be finite"));
    }
    // Reduce to [-pi, pi]; the solution shifts by the same multiple of 2 pi.
    let turns = if mean_anomaly.abs() <= PI {
        0.0
    } else {
        (mean_anomaly / TAU).round()
    };
    let m = mean_anomaly - turns * TAU;
    let f = |x: f64| x - e * x.sin() - m;

    let mut x = m + e * m.sin();
    for _ in 0..KEPLER_MAX_ITER {
        let fx = f(x);
        let step = fx / (1.0 - e * x.cos());
        x -= step;
        if step.abs() < KEPLER_TOL {
            return Ok(x + turns * TAU);
        }
    }
    // E - m lies in [-e, e], so [m - 1, m + 1] always brackets the root.
    let (mut lo, mut hi) = (m - 1.0, m + 1.0);
    while hi - lo > KEPLER_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi) + turns * TAU)
}

/// Closed-form Kepler ellipse with focus at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeplerOrbit {
    pub energy: f64,
    pub eccentricity: f64,
    pub semi_major: f64,
    pub period: f64,
    /// Argument of periapsis.
    pub orientation: f64,
    /// Mean anomaly at `t = 0`.
    pub phase: f64,
    /// Clockwise motion (negative angular momentum) when set.
    pub retrograde: bool,
}

/// Counterclockwise ellipse of energy `h` and eccentricity `e`, periapsis on
/// the positive `q1` axis, mean anomaly `phase` at `t = 0`.
pub fn kepler_ellipse(h: f64, e: f64, phase: f64) -> Result<KeplerOrbit> {
    if !(h < 0.0) {
        return Err(Error::NonNegativeEnergy(h));
    }
    if !(0.0..1.0).contains(&e) {
        return Err(Error::domain(format!("eccentricity {e} outside [0, 1)")));
    }
    Ok(KeplerOrbit {
        energy: h,
        eccentricity: e,
        semi_major: -0.5 / h,
        period: period_of_energy(h)?,
        orientation: 0.0,
        phase,
        retrograde: false,
    })
}

impl KeplerOrbit {
    pub fn with_orientation(mut self, orientation: f64) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn retrograde(mut self) -> Self {
        self.retrograde = true;
        self
    }

    pub fn mean_motion(&self) -> f64 {
        TAU / self.period
    }

    /// Phase-space state on the ellipse at time `t`.
    pub fn state(&self, t: f64) -> PhasePoint {
        let (a, e) = (self.semi_major, self.eccentricity);
        let n = self.mean_motion();
        let big_e = solve_kepler(n * t + self.phase, e).expect("orbit parameters validated");
        let (se, ce) = big_e.sin_cos();
        let b = a * (1.0 - e * e).sqrt();
        let mut q = [a * (ce - e), b * se];
        let rate = n / (1.0 - e * ce);
        let mut p = [-a * se * rate, b * ce * rate];
        if self.retrograde {
            q[1] = -q[1];
            p[1] = -p[1];
        }
        let (so, co) = self.orientation.sin_cos();
        let rot = |v: [f64; 2]| [co * v[0] - so * v[1], so * v[0] + co * v[1]];
        PhasePoint::new(rot(q), rot(p))
    }

    pub fn position(&self, t: f64) -> [f64; 2] {
        self.state(t).q
    }
}

fn rotate(angle: f64, v: [f64; 2]) -> [f64; 2] {
    let (s, c) = angle.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

/// Position in the rotating frame, `e^{it} * position(t)`.
pub fn rotating_orbit(orbit: &KeplerOrbit, t: f64) -> [f64; 2] {
    rotate(t, orbit.position(t))
}

/// Full rotating-frame state `(e^{it} q(t), e^{it} p(t))`; this is the flow
/// of `K = H + L` applied to the inertial initial condition.
pub fn rotating_state(orbit: &KeplerOrbit, t: f64) -> PhasePoint {
    let s = orbit.state(t);
    PhasePoint::new(rotate(t, s.q), rotate(t, s.p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{energies, flow, Field};

    /// Bisection on Kepler's equation; independent of the Newton path.
    fn kepler_oracle(m: f64, e: f64) -> f64 {
        let (mut lo, mut hi) = (m - 1.0, m + 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid - e * mid.sin() - m > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn kepler_equation_examples() {
        for e in [0.0, 0.3, 0.9] {
            assert_eq!(solve_kepler(0.0, e).unwrap(), 0.0);
        }
        assert!((solve_kepler(PI, 0.7).unwrap() - PI).abs() < 1e-15);
        // Frozen from the bisection oracle: E = 1.4987011335178...
        let frozen = kepler_oracle(1.0, 0.5);
        assert!((frozen - 1.49870).abs() < 1e-5);
        assert!((solve_kepler(1.0, 0.5).unwrap() - frozen).abs() < 1e-13);
    }

    #[test]
    fn kepler_matches_oracle_on_grid() {
        for i in 0..50 {
            let m = -7.0 + 0.3 * i as f64;
            for e in [0.05, 0.5, 0.95, 0.999] {
                let got = solve_kepler(m, e).unwrap();
                assert!((got - e * got.sin() - m).abs() < 1e-12, "m={m} e={e}");
                let turns = (m / TAU).round();
                let oracle = kepler_oracle(m - turns * TAU, e) + turns * TAU;
                assert!((got - oracle).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn eccentricity_out_of_range() {
        assert!(solve_kepler(1.0, 1.0).is_err());
        assert!(kepler_ellipse(-0.5, 1.2, 0.0).is_err());
        assert!(kepler_ellipse(0.1, 0.2, 0.0).is_err());
    }

    #[test]
    fn ellipse_has_requested_energy() {
        let orbit = kepler_ellipse(-0.3, 0.6, 0.4)
            .unwrap()
            .with_orientation(1.1);
        assert!((orbit.semi_major - 1.0 / 0.6).abs() < 1e-15);
        for i in 0..40 {
            let s = orbit.state(0.37 * i as f64);
            let e = energies(&s).unwrap();
            assert!((e.h + 0.3).abs() < 1e-12);
            let ecc = (1.0 + 2.0 * e.h * e.l * e.l).sqrt();
            assert!((ecc - 0.6).abs() < 1e-12);
        }
        let retro = orbit.retrograde();
        assert!(energies(&retro.state(0.2)).unwrap().l < 0.0);
    }

    #[test]
    fn ellipse_agrees_with_integrated_flow() {
        let orbit = kepler_ellipse(-0.4, 0.5, 0.3).unwrap();
        let start = orbit.state(0.0);
        let traj = flow(Field::Kepler, &start, 5.0, orbit.period / 4000.0).unwrap();
        let end = orbit.state(5.0);
        let got = traj.last();
        assert!((got.q[0] - end.q[0]).abs() < 1e-9 && (got.q[1] - end.q[1]).abs() < 1e-9);
        assert!((got.p[0] - end.p[0]).abs() < 1e-9 && (got.p[1] - end.p[1]).abs() < 1e-9);
    }

    #[test]
    fn rotating_state_is_jacobi_flow() {
        let orbit = kepler_ellipse(-0.7, 0.25, 0.0)
            .unwrap()
            .with_orientation(0.5);
        let start = orbit.state(0.0);
        let traj = flow(Field::Jacobi, &start, 3.0, orbit.period / 4000.0).unwrap();
        let want = rotating_state(&orbit, 3.0);
        let got = traj.last();
        assert!((got.q[0] - want.q[0]).abs() < 1e-9 && (got.q[1] - want.q[1]).abs() < 1e-9);
        assert_eq!(rotating_orbit(&orbit, 0.0), orbit.position(0.0));
    }

    #[test]
    fn circular_rotating_orbit() {
        let phi0 = 0.3;
        let orbit = kepler_ellipse(-0.5, 0.0, phi0).unwrap();
        for i in 0..10 {
            let t = 0.7 * i as f64;
            let r = rotating_orbit(&orbit, t);
            assert!((r[0] - (2.0 * t + phi0).cos()).abs() < 1e-12);
            assert!((r[1] - (2.0 * t + phi0).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn half_turn_symmetry_for_two_one() {
        let h = -0.5 * 2f64.powf(2.0 / 3.0);
        let orbit = kepler_ellipse(h, 0.3, 0.0).unwrap();
        assert!((orbit.period - PI).abs() < 1e-14);
        for i in 0..10 {
            let t = 0.31 * i as f64;
            let a = rotating_orbit(&orbit, t + PI);
            let b = rotating_orbit(&orbit, t);
            assert!((a[0] + b[0]).abs() < 1e-12 && (a[1] + b[1]).abs() < 1e-12);
        }
    }
}
