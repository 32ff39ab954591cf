use nalgebra::SMatrix;

use super::{chart_delaunay_energy, ligon_schaaf, linear_s_matrix, stereo_drop, stereo_lift};
use crate::dynamics::{flow, period_of_energy, Field, PhasePoint, DEFAULT_STEPS_PER_PERIOD};
use crate::numerics::diff::{jacobian, omega};
use crate::{Error, Result};

/// Maps whose symplecticity can be checked numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymplecticMap {
    /// Source coordinates `(x1, x2, y1, y2)`, target `(u1, u2, v1, v2)`.
    LinearS,
    /// Source `(q, p)`, target `(x, y)` in `R^6`.
    LigonSchaaf,
    /// Source `(q, p)`, target `(x, y)` in `R^6`.
    StereoLift,
}

/// `max |J^T Omega_target J - Omega_source|` for the Jacobian `J` of `map`
/// at `z`. Sphere-valued maps are differentiated into `R^6`; their columns
/// are tangent to `T*S^2`, so the ambient form restricts correctly.
///
/// The Jacobian of [`SymplecticMap::LinearS`] is its constant matrix, for
/// which central differences are exact up to rounding; `h` is unused there.
pub fn symplectic_residual(map: SymplecticMap, z: &[f64; 4], h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::domain("finite-difference step must be positive"));
    }
    let source = omega::<4>();
    match map {
        SymplecticMap::LinearS => {
            let m = linear_s_matrix();
            Ok((m.transpose() * omega::<4>() * m - source).amax())
        }
        SymplecticMap::LigonSchaaf | SymplecticMap::StereoLift => {
            let f = |w: &[f64; 4]| -> Result<[f64; 6]> {
                let pt = PhasePoint::from_array(w);
                let sp = match map {
                    SymplecticMap::LigonSchaaf => ligon_schaaf(&pt)?,
                    _ => stereo_lift(&pt),
                };
                Ok(sp.to_array())
            };
            // Fail on the chart boundary rather than differencing across it.
            f(z)?;
            let jac: SMatrix<f64, 6, 4> = jacobian(f, z, h)?;
            Ok((jac.transpose() * omega::<6>() * jac - source).amax())
        }
    }
}

/// Distance in `R^6` between `Phi(flow_H(pt, t))` and the Delaunay flow of
/// `Phi(pt)` over the same time, the latter integrated in the stereographic
/// chart. Both flows use the fixed-step integrator at `period / 2000`; the
/// chart flow runs four times finer because chart speeds grow like
/// `(1 + |q|^2) / 2`.
pub fn conjugacy_residual(pt: &PhasePoint, t: f64) -> Result<f64> {
    let h = pt.kepler_energy()?;
    let period = period_of_energy(h)?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain("time span must be finite and nonnegative"));
    }
    let start = ligon_schaaf(pt)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let dt = period / DEFAULT_STEPS_PER_PERIOD;
    let kepler = flow(Field::Kepler, pt, t, dt)?;
    if !kepler.is_complete() {
        return Err(Error::NumericFailure(format!(
            "Kepler flow truncated: {:?}",
            kepler.status
        )));
    }
    let chart_start = stereo_drop(&start)?;
    chart_delaunay_energy(&chart_start)?;
    let chart = flow(Field::ChartDelaunay, &chart_start, t, dt / 4.0)?;
    if !chart.is_complete() {
        return Err(Error::NumericFailure(format!(
            "chart Delaunay flow truncated: {:?}",
            chart.status
        )));
    }
    let lhs = ligon_schaaf(kepler.last())?;
    let rhs = stereo_lift(chart.last());
    Ok(lhs.distance(&rhs))
}
