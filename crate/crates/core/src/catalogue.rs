//! Resonance data for periodic orbits of the second kind.
//!
//! A Kepler ellipse of period `tau` closes in the rotating frame when
//! `2 pi l = tau k`. Its energy is `c_{k,l} = -(k/l)^{2/3} / 2`, and the
//! torus `T_{k,l}` exists for Jacobi energies strictly between
//! `c_{k,l} - L_{k,l}` and `c_{k,l} + L_{k,l}` with `L_{k,l} = (l/k)^{1/3}`.

use std::f64::consts::TAU;

use num_integer::Integer;

use crate::dynamics::{flow, kepler_ellipse, Field, Trajectory, DEFAULT_STEPS_PER_PERIOD};
use crate::numerics::cubic;
use crate::{Error, Result};

pub use crate::dynamics::period_of_energy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResonanceLabel {
    k: u32,
    l: u32,
}

impl ResonanceLabel {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::domain(format!(
                "({k},{l}): k and l must be positive"
            )));
        }
        if k.gcd(&l) != 1 {
            return Err(Error::domain(format!("({k},{l}) is not coprime")));
        }
        Ok(Self { k, l })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// `l / k`, the period in units of `2 pi`.
    pub fn ratio(&self) -> f64 {
        f64::from(self.l) / f64::from(self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Interior,
    Exterior,
    Critical,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Interior => "interior",
            Classification::Exterior => "exterior",
            Classification::Critical => "critical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceData {
    pub label: ResonanceLabel,
    pub c_kl: f64,
    pub l_kl: f64,
    pub c_minus: f64,
    pub c_plus: f64,
    pub classification: Classification,
}

impl ResonanceData {
    pub fn in_window(&self, c: f64) -> bool {
        self.c_minus < c && c < self.c_plus
    }
}

pub fn resonance_data(label: ResonanceLabel) -> ResonanceData {
    let (k, l) = (f64::from(label.k), f64::from(label.l));
    let cbrt_lk = (l / k).cbrt();
    let classification = match label.k.cmp(&label.l) {
        std::cmp::Ordering::Equal => Classification::Critical,
        std::cmp::Ordering::Greater => Classification::Interior,
        std::cmp::Ordering::Less => Classification::Exterior,
    };
    ResonanceData {
        label,
        c_kl: -0.5 / (cbrt_lk * cbrt_lk),
        l_kl: cbrt_lk,
        c_minus: -cbrt_lk * (k + 2.0 * l) / (2.0 * l),
        c_plus: cbrt_lk * (2.0 * l - k) / (2.0 * l),
        classification,
    }
}

/// `p(K, H) = 1 + 2 H (K - H)^2`, which equals `|A|^2` on the level set.
pub fn p_value(k: f64, h: f64) -> f64 {
    let d = k - h;
    1.0 + 2.0 * h * d * d
}

/// Real roots in `H` of `2H^3 - 4K H^2 + 2K^2 H + 1`, ascending with
/// multiplicity. When only one real root exists it is the branch `R^1(K)`.
pub fn p_roots(k: f64) -> cubic::CubicRoots {
    cubic::solve(2.0, -4.0 * k, 2.0 * k * k, 1.0)
}

/// `1 + 2 H L^2`; zero exactly on circular orbits.
pub fn circular_residual(h: f64, l: f64) -> f64 {
    1.0 + 2.0 * h * l * l
}

/// Coprime labels with `k + l <= max_sum`, ordered by `(k + l, k)`.
pub fn labels_up_to(max_sum: u32) -> Vec<ResonanceLabel> {
    (2..=max_sum)
        .flat_map(|s| (1..s).filter_map(move |k| ResonanceLabel::new(k, s - k).ok()))
        .collect()
}

pub fn tori_in_window(c: f64, max_sum: u32) -> Result<Vec<ResonanceLabel>> {
    if max_sum < 2 {
        return Err(Error::domain("max_sum must be at least 2"));
    }
    Ok(labels_up_to(max_sum)
        .into_iter()
        .filter(|&lab| resonance_data(lab).in_window(c))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecondKindOrbit {
    pub label: ResonanceLabel,
    pub eccentricity: f64,
    pub period: f64,
    /// Rotating-frame flow over one period `tau = 2 pi l / k`.
    pub trajectory: Trajectory,
    /// `max_t |eps(t + tau) - e^{2 pi i l/k} eps(t)|` over the samples.
    pub symmetry_residual: f64,
}

/// Kepler ellipse at energy `c_{k,l}` with eccentricity `e`, followed in the
/// rotating frame for two periods. The second period is compared sample by
/// sample with the first, rotated by `2 pi l / k`.
pub fn second_kind_orbit(label: ResonanceLabel, e: f64) -> Result<SecondKindOrbit> {
    if !(0.0..1.0).contains(&e) {
        return Err(Error::domain(format!("eccentricity {e} outside [0, 1)")));
    }
    let data = resonance_data(label);
    let orbit = kepler_ellipse(data.c_kl, e, 0.0)?;
    let tau = orbit.period;
    let dt = tau / DEFAULT_STEPS_PER_PERIOD;
    let first = flow(Field::Jacobi, &orbit.state(0.0), tau, dt)?;
    let second = flow(Field::Jacobi, first.last(), tau, dt)?;
    for seg in [&first, &second] {
        if !seg.is_complete() {
            return Err(Error::NumericFailure(format!(
                "rotating flow truncated: {:?}",
                seg.status
            )));
        }
    }
    let (s, c) = (TAU * label.ratio()).sin_cos();
    let symmetry_residual = first
        .states
        .iter()
        .zip(&second.states)
        .map(|(a, b)| {
            let rot = [c * a.q[0] - s * a.q[1], s * a.q[0] + c * a.q[1]];
            (b.q[0] - rot[0]).hypot(b.q[1] - rot[1])
        })
        .fold(0.0, f64::max);
    Ok(SecondKindOrbit {
        label,
        eccentricity: e,
        period: tau,
        trajectory: first,
        symmetry_residual,
    })
}
