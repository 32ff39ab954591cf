//! Invariant suite run by `rkp verify` and the acceptance tests.
//!
//! Each check reduces a sweep to `(n_samples, max_residual)` and passes when
//! the residual is at most its tolerance. Checks run in parallel on seeded
//! streams and are reported in registry order.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;

use crate::catalogue::{
    circular_residual, labels_up_to, p_roots, p_value, period_of_energy, resonance_data,
    second_kind_orbit, Classification, ResonanceLabel,
};
use crate::dynamics::{
    effective_potential, effective_potential_gradient, energies, flow, kepler_ellipse,
    poisson_bracket, runge_lenz, Field, Observable, PhasePoint, DEFAULT_STEPS_PER_PERIOD,
};
use crate::regularization::{
    chart_rkp_energy, conjugacy_residual, delaunay_energy, lc_lift, levi_civita, ligon_schaaf,
    ligon_schaaf_inverse, moment_map_residual, stereo_drop, stereo_lift, symplectic_residual,
    SymplecticMap,
};
use crate::sampling::{self, stream_id};
use crate::toric::{
    component_of, corners, ktilde, moment_mu, moment_nu, profile, rotate_to_mu,
    toric_symplectomorphism, torus_point, unbounded_profile, verify_special, Component, MomentPair,
};
use crate::tree::{
    new_tree_level, node_at, slope_cross_check, stern_brocot_level, transform_node, Fraction,
    TreePath,
};
use crate::{Error, Result};

/// Finite-difference step for brackets and Jacobians.
const FD_STEP: f64 = 1e-5;
/// Tolerance key shared by the finite-difference symplecticity checks.
pub const SYMPLECTIC_KEY: &str = "symplectic";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Dynamics,
    Regularization,
    Toric,
    Catalogue,
    Tree,
}

impl Group {
    pub const ALL: [Group; 5] = [
        Group::Dynamics,
        Group::Regularization,
        Group::Toric,
        Group::Catalogue,
        Group::Tree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Group::Dynamics => "dynamics",
            Group::Regularization => "regularization",
            Group::Toric => "toric",
            Group::Catalogue => "catalogue",
            Group::Tree => "tree",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Group::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown check group {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub check: &'static str,
    pub group: Group,
    pub n_samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Set when the sweep itself failed.
    pub error: Option<String>,
}

type Sweep = fn(u64) -> Result<(usize, f64)>;

struct Check {
    name: &'static str,
    group: Group,
    tolerance: f64,
    /// Extra override key besides the check name.
    alias: Option<&'static str>,
    sweep: Sweep,
}

const fn check(name: &'static str, group: Group, tolerance: f64, sweep: Sweep) -> Check {
    Check {
        name,
        group,
        tolerance,
        alias: None,
        sweep,
    }
}

fn max_of(it: impl IntoIterator<Item = Result<f64>>) -> Result<(usize, f64)> {
    let mut n = 0;
    let mut worst = 0.0f64;
    for r in it {
        let r = r?;
        n += 1;
        // NaN must not be swallowed by f64::max.
        worst = if r.is_nan() {
            f64::NAN
        } else if worst.is_nan() {
            worst
        } else {
            worst.max(r)
        };
    }
    Ok((n, worst))
}

fn count(n: usize, failures: usize) -> Result<(usize, f64)> {
    Ok((n, failures as f64))
}

fn pts(seed: u64, name: &str, n: usize) -> Vec<PhasePoint> {
    sampling::phase_points(seed, stream_id(name), n)
}

fn bracket(f: Observable, g: Observable, pt: &PhasePoint) -> Result<f64> {
    poisson_bracket(f, g, pt, FD_STEP)
}

// Dynamics.

fn critical_potential(seed: u64) -> Result<(usize, f64)> {
    max_of(
        sampling::angles(seed, stream_id("critical_potential"), 100)
            .into_iter()
            .map(|t| {
                let q = [t.cos(), t.sin()];
                let g = effective_potential_gradient(q)?;
                Ok((effective_potential(q)? + 1.5).abs().max(g[0].hypot(g[1])))
            }),
    )
}

fn critical_set_jacobi(seed: u64) -> Result<(usize, f64)> {
    max_of(
        sampling::angles(seed, stream_id("critical_set_jacobi"), 100)
            .into_iter()
            .map(|t| {
                let q = [t.cos(), t.sin()];
                let pt = PhasePoint::new(q, [q[1], -q[0]]);
                Ok((energies(&pt)?.k + 1.5).abs())
            }),
    )
}

fn conservation(field: Field) -> Result<(usize, f64)> {
    let orbit = kepler_ellipse(-0.5, 0.3, 0.0)?;
    let start = orbit.state(0.0);
    let tr = flow(
        field,
        &start,
        10.0 * orbit.period,
        orbit.period / DEFAULT_STEPS_PER_PERIOD,
    )?;
    if !tr.is_complete() {
        return Err(Error::NumericFailure(format!("{:?}", tr.status)));
    }
    let value = |pt: &PhasePoint| -> Result<f64> {
        let e = energies(pt)?;
        Ok(if field == Field::Kepler { e.h } else { e.k })
    };
    let e0 = value(&start)?;
    max_of(tr.states.iter().map(|pt| Ok((value(pt)? - e0).abs())))
}

fn energy_conservation_h(_: u64) -> Result<(usize, f64)> {
    conservation(Field::Kepler)
}

fn energy_conservation_k(_: u64) -> Result<(usize, f64)> {
    conservation(Field::Jacobi)
}

fn poisson_h_l(seed: u64) -> Result<(usize, f64)> {
    max_of(
        pts(seed, "poisson", 200).iter().map(|pt| {
            Ok(bracket(Observable::KeplerEnergy, Observable::AngularMomentum, pt)?.abs())
        }),
    )
}

/// `{L, A1} + A2` as printed; the bracket convention in use gives
/// `{L, A1} = A2`, so this row is expected to fail.
fn poisson_l_a1(seed: u64) -> Result<(usize, f64)> {
    max_of(pts(seed, "poisson", 200).iter().map(|pt| {
        let a = runge_lenz(pt)?.a;
        Ok((bracket(Observable::AngularMomentum, Observable::RungeLenz1, pt)? + a[1]).abs())
    }))
}

/// `{L, A2} - A1` as printed; expected to fail for the same reason.
fn poisson_l_a2(seed: u64) -> Result<(usize, f64)> {
    max_of(pts(seed, "poisson", 200).iter().map(|pt| {
        let a = runge_lenz(pt)?.a;
        Ok((bracket(Observable::AngularMomentum, Observable::RungeLenz2, pt)? - a[0]).abs())
    }))
}

/// `{L, A1} - A2` and `{L, A2} + A1`: rotation of `A` under the flow of `L`.
fn poisson_l_a_rotation(seed: u64) -> Result<(usize, f64)> {
    max_of(pts(seed, "poisson", 200).iter().map(|pt| {
        let a = runge_lenz(pt)?.a;
        let r1 = bracket(Observable::AngularMomentum, Observable::RungeLenz1, pt)? - a[1];
        let r2 = bracket(Observable::AngularMomentum, Observable::RungeLenz2, pt)? + a[0];
        Ok(r1.abs().max(r2.abs()))
    }))
}

fn poisson_a1_a2(seed: u64) -> Result<(usize, f64)> {
    max_of(pts(seed, "poisson", 200).iter().map(|pt| {
        let e = energies(pt)?;
        Ok((bracket(Observable::RungeLenz1, Observable::RungeLenz2, pt)? + 2.0 * e.h * e.l).abs())
    }))
}

fn poisson_eta(seed: u64) -> Result<(usize, f64)> {
    max_of(pts(seed, "poisson", 200).iter().map(|pt| {
        Ok(
            (bracket(Observable::Eccentricity1, Observable::Eccentricity2, pt)?
                - pt.angular_momentum())
            .abs(),
        )
    }))
}

fn runge_lenz_identity(seed: u64) -> Result<(usize, f64)> {
    max_of(
        pts(seed, "runge_lenz", 1000)
            .iter()
            .map(|pt| Ok(runge_lenz(pt)?.norm_sq_residual)),
    )
}

fn second_kind_cases() -> Vec<(u32, u32, f64)> {
    let mut v = Vec::new();
    for (k, l) in [(2, 1), (3, 2), (1, 2)] {
        for e in [0.2, 0.3] {
            v.push((k, l, e));
        }
    }
    v
}

fn rotational_symmetry(_: u64) -> Result<(usize, f64)> {
    max_of(
        second_kind_cases().into_iter().map(|(k, l, e)| {
            Ok(second_kind_orbit(ResonanceLabel::new(k, l)?, e)?.symmetry_residual)
        }),
    )
}

// Regularization.

fn ls_sphere_constraint(seed: u64) -> Result<(usize, f64)> {
    max_of(pts(seed, "ligon_schaaf", 1000).iter().map(|pt| {
        let sp = ligon_schaaf(pt)?;
        Ok(if sp.in_t_minus() {
            sp.constraint_residual()
        } else {
            f64::INFINITY
        })
    }))
}

fn ls_energy(seed: u64) -> Result<(usize, f64)> {
    max_of(
        pts(seed, "ligon_schaaf", 1000)
            .iter()
            .map(|pt| Ok((delaunay_energy(&ligon_schaaf(pt)?)? - pt.kepler_energy()?).abs())),
    )
}

fn ls_symplectic(seed: u64) -> Result<(usize, f64)> {
    max_of(
        pts(seed, "ligon_schaaf", 1000)
            .iter()
            .map(|pt| symplectic_residual(SymplecticMap::LigonSchaaf, &pt.to_array(), FD_STEP)),
    )
}

fn stereo_symplectic(seed: u64) -> Result<(usize, f64)> {
    max_of(
        pts(seed, "stereo", 1000)
            .iter()
            .map(|pt| symplectic_residual(SymplecticMap::StereoLift, &pt.to_array(), FD_STEP)),
    )
}

fn ls_conjugacy(seed: u64) -> Result<(usize, f64)> {
    max_of(
        sampling::ellipse_states(seed, stream_id("conjugacy"), 10)
            .iter()
            .map(|pt| conjugacy_residual(pt, 1.0)),
    )
}

fn ls_moment_map(seed: u64) -> Result<(usize, f64)> {
    max_of(
        pts(seed, "ligon_schaaf", 1000)
            .iter()
            .map(moment_map_residual),
    )
}

fn ls_round_trip(seed: u64) -> Result<(usize, f64)> {
    max_of(pts(seed, "ls_inverse", 200).iter().map(|pt| {
        let back = ligon_schaaf_inverse(&ligon_schaaf(pt)?)?;
        Ok(crate::numerics::max_abs_diff(
            &back.to_array(),
            &pt.to_array(),
        ))
    }))
}

fn stereo_round_trip(seed: u64) -> Result<(usize, f64)> {
    max_of(pts(seed, "stereo", 1000).iter().map(|pt| {
        let back = stereo_drop(&stereo_lift(pt))?;
        Ok(crate::numerics::max_abs_diff(
            &back.to_array(),
            &pt.to_array(),
        ))
    }))
}

fn lc_double_cover(seed: u64) -> Result<(usize, f64)> {
    let osc = sampling::osc_points(seed, stream_id("levi_civita"), 1000);
    let mismatches = osc
        .iter()
        .map(|o| Ok(levi_civita(o)? != levi_civita(&-*o)?))
        .collect::<Result<Vec<bool>>>()?;
    count(osc.len(), mismatches.into_iter().filter(|&m| m).count())
}

fn lc_round_trip(seed: u64) -> Result<(usize, f64)> {
    max_of(pts(seed, "levi_civita", 1000).iter().flat_map(|pt| {
        [1i8, -1].map(move |branch| {
            let back = levi_civita(&lc_lift(pt, branch)?)?;
            Ok(crate::numerics::max_abs_diff(
                &back.to_array(),
                &pt.to_array(),
            ))
        })
    }))
}

fn lc_pullback(seed: u64) -> Result<(usize, f64)> {
    max_of(
        sampling::osc_points(seed, stream_id("levi_civita"), 1000)
            .iter()
            .map(|o| {
                let s = o.u.norm_sqr() + o.v.norm_sqr();
                let closed = -0.5 / (s * s) + 2.0 * (o.u.re * o.v.im - o.u.im * o.v.re);
                Ok((chart_rkp_energy(&levi_civita(o)?)? - closed).abs())
            }),
    )
}

fn linear_s_symplectic(_: u64) -> Result<(usize, f64)> {
    max_of([symplectic_residual(
        SymplecticMap::LinearS,
        &[0.0; 4],
        FD_STEP,
    )])
}

// Toric domain.

fn pullback_identity(seed: u64) -> Result<(usize, f64)> {
    max_of(
        sampling::osc_points(seed, stream_id("pullback"), 1000)
            .iter()
            .map(|o| Ok((ktilde(&moment_mu(o))? - chart_rkp_energy(&levi_civita(o)?)?).abs())),
    )
}

fn diagram_commutativity(seed: u64) -> Result<(usize, f64)> {
    max_of(
        sampling::plane_pairs(seed, stream_id("diagram"), 1000)
            .into_iter()
            .map(|(z1, z2)| {
                let lhs = rotate_to_mu(&moment_nu(z1, z2));
                let rhs = moment_mu(&toric_symplectomorphism(z1, z2));
                Ok((lhs.mu1 - rhs.mu1).abs().max((lhs.mu2 - rhs.mu2).abs()))
            }),
    )
}

fn corners_critical(_: u64) -> Result<(usize, f64)> {
    let k = corners(-1.5)?;
    let singular = ktilde(&MomentPair::new(0.5, -0.5))? + 1.5;
    max_of([
        Ok((k.a - 0.25).abs()),
        Ok((k.b - 0.5).abs()),
        Ok((k.b_u - 0.5).abs()),
        Ok(singular.abs()),
    ])
}

const SPECIAL_ENERGIES: [f64; 4] = [-1.5, -1.7, -2.0, -3.0];
const PROFILE_SAMPLES: usize = 201;

fn special_metric(metric: fn(&crate::toric::SpecialReport) -> f64) -> Result<(usize, f64)> {
    max_of(
        SPECIAL_ENERGIES
            .iter()
            .map(|&c| Ok(metric(&verify_special(&profile(c, PROFILE_SAMPLES)?)?))),
    )
}

fn special_convexity(_: u64) -> Result<(usize, f64)> {
    special_metric(|r| (-r.convexity_min).max(0.0))
}

fn special_slope(_: u64) -> Result<(usize, f64)> {
    special_metric(|r| {
        (r.slope_max + 1.0)
            .max(0.0)
            .max(r.fd_slope_max - r.slope_max)
    })
}

fn special_endpoints(_: u64) -> Result<(usize, f64)> {
    special_metric(|r| {
        r.endpoint_residuals
            .0
            .abs()
            .max(r.endpoint_residuals.1.abs())
    })
}

fn special_unrotated(_: u64) -> Result<(usize, f64)> {
    special_metric(|r| (-1.0 - r.f_slope_min).max(r.f_slope_max).max(0.0))
}

fn corner_circular(_: u64) -> Result<(usize, f64)> {
    max_of([-1.5, -2.0, -3.0].into_iter().flat_map(|c| {
        let k = corners(c);
        [0usize, 1].map(move |which| {
            let k = k.clone()?;
            // Diagonal corner: direct orbit L = 2a; anti-diagonal: L = -2b.
            let (t, l) = if which == 0 {
                (k.a, 2.0 * k.a)
            } else {
                (k.b, -2.0 * k.b)
            };
            Ok(circular_residual(-1.0 / (8.0 * t * t), l).abs())
        })
    }))
}

fn grid() -> impl Iterator<Item = MomentPair> {
    let n = 400;
    let mu1_max = 2.5;
    (1..=n).flat_map(move |i| {
        let mu1 = mu1_max * i as f64 / n as f64;
        (0..=n).map(move |j| MomentPair::new(mu1, -mu1 + 2.0 * mu1 * j as f64 / n as f64))
    })
}

fn component_separation(_: u64) -> Result<(usize, f64)> {
    let c = -1.7;
    let k = corners(c)?;
    let mut n = 0;
    let mut bad = 0;
    for mp in grid() {
        n += 1;
        if mp.mu1 > k.b && mp.mu1 < k.b_u && ktilde(&mp)? <= c {
            bad += 1;
        }
    }
    count(n, bad)
}

fn sublevel_decomposition(_: u64) -> Result<(usize, f64)> {
    let mut n = 0;
    let mut bad = 0;
    for c in [-1.7, -2.0] {
        let bounded = profile(c, 3)?;
        let unbounded = unbounded_profile(c, 1e6, 3)?;
        for mp in grid() {
            n += 1;
            let ok = match component_of(&mp, c) {
                Ok(None) => true,
                Ok(Some(Component::Bounded)) => bounded.contains(&mp, 0.0),
                Ok(Some(Component::Unbounded)) => unbounded.contains(&mp, 0.0),
                Ok(Some(Component::Connected)) | Err(_) => false,
            };
            bad += usize::from(!ok);
        }
    }
    count(n, bad)
}

fn torus_levels(_: u64) -> Result<(usize, f64)> {
    max_of(labels_up_to(10).into_iter().flat_map(|lab| {
        let d = resonance_data(lab);
        [0.1, 0.5, 0.9].map(move |s| {
            let c = d.c_minus + s * (d.c_plus - d.c_minus);
            let tp = torus_point(lab.k(), lab.l(), c)?;
            let slope_err = (crate::toric::boundary_slope(tp.mp.mu1) - tp.slope.to_f64()).abs();
            Ok((ktilde(&tp.mp)? - c).abs().max(slope_err))
        })
    }))
}

// Catalogue.

fn resonance_critical(_: u64) -> Result<(usize, f64)> {
    let d = resonance_data(ResonanceLabel::new(1, 1)?);
    let class_err = if d.classification == Classification::Critical {
        0.0
    } else {
        1.0
    };
    max_of([
        Ok((d.c_kl + 0.5).abs()),
        Ok((d.l_kl - 1.0).abs()),
        Ok((d.c_minus + 1.5).abs()),
        Ok((d.c_plus - 0.5).abs()),
        Ok(class_err),
    ])
}

fn window_closed_forms(_: u64) -> Result<(usize, f64)> {
    max_of(labels_up_to(20).into_iter().map(|lab| {
        let d = resonance_data(lab);
        Ok((d.c_minus - (d.c_kl - d.l_kl))
            .abs()
            .max((d.c_plus - (d.c_kl + d.l_kl)).abs())
            .max((d.l_kl - (-0.5 / d.c_kl).sqrt()).abs()))
    }))
}

fn resonance_period(_: u64) -> Result<(usize, f64)> {
    max_of(labels_up_to(20).into_iter().map(|lab| {
        let d = resonance_data(lab);
        Ok((period_of_energy(d.c_kl)? * f64::from(lab.k()) - TAU * f64::from(lab.l())).abs())
    }))
}

fn classification(_: u64) -> Result<(usize, f64)> {
    let labels = labels_up_to(20);
    let bad = labels
        .iter()
        .filter(|lab| {
            let d = resonance_data(**lab);
            let expected = match lab.k().cmp(&lab.l()) {
                std::cmp::Ordering::Greater => Classification::Interior,
                std::cmp::Ordering::Less => Classification::Exterior,
                std::cmp::Ordering::Equal => Classification::Critical,
            };
            d.classification != expected || (d.l_kl < 1.0) != (lab.k() > lab.l())
        })
        .count();
    count(labels.len(), bad)
}

fn p_roots_critical(_: u64) -> Result<(usize, f64)> {
    let r = p_roots(-1.5);
    if !r.repeated || r.roots.len() != 3 {
        return Ok((1, f64::INFINITY));
    }
    max_of(
        r.roots
            .iter()
            .zip([-2.0, -0.5, -0.5])
            .map(|(x, y)| Ok((x - y).abs())),
    )
}

fn p_nonnegative(seed: u64) -> Result<(usize, f64)> {
    max_of(pts(seed, "p_value", 1000).iter().map(|pt| {
        let e = energies(pt)?;
        let p = p_value(e.k, e.h);
        let a = runge_lenz(pt)?.a;
        let a2 = a[0] * a[0] + a[1] * a[1];
        Ok((-p).max(0.0).max((p - a2).abs() / a2.max(1.0)))
    }))
}

fn second_kind_symmetry(seed: u64) -> Result<(usize, f64)> {
    rotational_symmetry(seed)
}

// Tree.

fn fraction_list(pairs: &[(i64, i64)]) -> Result<Vec<Fraction>> {
    pairs.iter().map(|&(n, d)| Fraction::new(n, d)).collect()
}

fn stern_brocot_depth3(_: u64) -> Result<(usize, f64)> {
    let expected = fraction_list(&[
        (1, 4),
        (2, 5),
        (3, 5),
        (3, 4),
        (4, 3),
        (5, 3),
        (5, 2),
        (4, 1),
    ])?;
    let got = stern_brocot_level(3)?.nodes;
    let bad = expected.iter().zip(&got).filter(|(a, b)| a != b).count();
    count(expected.len(), bad + expected.len().abs_diff(got.len()))
}

fn new_tree_depth3(_: u64) -> Result<(usize, f64)> {
    let expected = fraction_list(&[
        (5, 3),
        (7, 3),
        (4, 1),
        (7, 1),
        (-7, 1),
        (-4, 1),
        (-7, 3),
        (-5, 3),
    ])?;
    let got = new_tree_level(3)?.nodes;
    let bad = expected.iter().zip(&got).filter(|(a, b)| a != b).count();
    count(expected.len(), bad + expected.len().abs_diff(got.len()))
}

fn slope_identity(_: u64) -> Result<(usize, f64)> {
    max_of(
        labels_up_to(50)
            .into_iter()
            .map(|lab| slope_cross_check(lab.k(), lab.l())),
    )
}

fn levels_increasing(_: u64) -> Result<(usize, f64)> {
    let mut n = 0;
    let mut bad = 0;
    for depth in 0..=12 {
        let level = stern_brocot_level(depth)?;
        n += level.nodes.len();
        bad += usize::from(level.nodes.len() != 1 << depth);
        bad += level.nodes.windows(2).filter(|w| w[0] >= w[1]).count();
        bad += level
            .nodes
            .iter()
            .filter(|f| f.num().gcd(&f.den()) != 1)
            .count();
    }
    count(n, bad)
}

fn node_at_consistency(_: u64) -> Result<(usize, f64)> {
    let mut n = 0;
    let mut bad = 0;
    for depth in 0..=10u32 {
        for (i, f) in stern_brocot_level(depth)?.nodes.into_iter().enumerate() {
            n += 1;
            bad += usize::from(node_at(&TreePath::from_index(depth, i as u64)?)? != f);
        }
    }
    count(n, bad)
}

fn transform_properties(_: u64) -> Result<(usize, f64)> {
    let labels = labels_up_to(50);
    let mut seen = std::collections::HashSet::new();
    let mut bad = 0;
    for lab in &labels {
        let (k, l) = (i64::from(lab.k()), i64::from(lab.l()));
        let t = transform_node(k, l)?;
        bad += usize::from(!seen.insert(t));
        bad += usize::from(!matches!((k + l).gcd(&(l - k)), 1 | 2));
        // Left of the diagonal (k < l) maps to positive values.
        let sign_ok = match k.cmp(&l) {
            std::cmp::Ordering::Less => t.num() > 0,
            std::cmp::Ordering::Greater => t.num() < 0,
            std::cmp::Ordering::Equal => t.is_infinite(),
        };
        bad += usize::from(!sign_ok);
    }
    count(labels.len(), bad)
}

fn registry() -> Vec<Check> {
    use Group::*;
    vec![
        check("critical_potential", Dynamics, 1e-12, critical_potential),
        check("critical_set_jacobi", Dynamics, 1e-12, critical_set_jacobi),
        check(
            "energy_conservation_h",
            Dynamics,
            1e-9,
            energy_conservation_h,
        ),
        check(
            "energy_conservation_k",
            Dynamics,
            1e-9,
            energy_conservation_k,
        ),
        check("poisson_h_l", Dynamics, 1e-6, poisson_h_l),
        check("poisson_l_a1", Dynamics, 1e-6, poisson_l_a1),
        check("poisson_l_a2", Dynamics, 1e-6, poisson_l_a2),
        check("poisson_l_a_rotation", Dynamics, 1e-6, poisson_l_a_rotation),
        check("poisson_a1_a2", Dynamics, 1e-6, poisson_a1_a2),
        check("poisson_eta", Dynamics, 1e-6, poisson_eta),
        check("runge_lenz_identity", Dynamics, 1e-12, runge_lenz_identity),
        check("rotational_symmetry", Dynamics, 1e-6, rotational_symmetry),
        check(
            "ls_sphere_constraint",
            Regularization,
            1e-10,
            ls_sphere_constraint,
        ),
        check("ls_energy", Regularization, 1e-10, ls_energy),
        Check {
            alias: Some(SYMPLECTIC_KEY),
            ..check("ls_symplectic", Regularization, 1e-6, ls_symplectic)
        },
        Check {
            alias: Some(SYMPLECTIC_KEY),
            ..check("stereo_symplectic", Regularization, 1e-6, stereo_symplectic)
        },
        check("ls_conjugacy", Regularization, 1e-5, ls_conjugacy),
        check("ls_moment_map", Regularization, 1e-9, ls_moment_map),
        check("ls_round_trip", Regularization, 1e-9, ls_round_trip),
        check(
            "stereo_round_trip",
            Regularization,
            1e-12,
            stereo_round_trip,
        ),
        check("lc_double_cover", Regularization, 0.0, lc_double_cover),
        check("lc_round_trip", Regularization, 1e-12, lc_round_trip),
        check("lc_pullback", Regularization, 1e-10, lc_pullback),
        check(
            "linear_s_symplectic",
            Regularization,
            f64::EPSILON,
            linear_s_symplectic,
        ),
        check("pullback_identity", Toric, 1e-10, pullback_identity),
        check("diagram_commutativity", Toric, 1e-12, diagram_commutativity),
        check("corners_critical", Toric, 1e-12, corners_critical),
        check(
            "special_convexity",
            Toric,
            crate::toric::CONVEXITY_TOL,
            special_convexity,
        ),
        check(
            "special_slope",
            Toric,
            crate::toric::SLOPE_TOL,
            special_slope,
        ),
        check(
            "special_endpoints",
            Toric,
            crate::toric::ENDPOINT_TOL,
            special_endpoints,
        ),
        check(
            "special_unrotated",
            Toric,
            crate::toric::SLOPE_TOL,
            special_unrotated,
        ),
        check("corner_circular", Toric, 1e-12, corner_circular),
        check("component_separation", Toric, 0.0, component_separation),
        check("sublevel_decomposition", Toric, 0.0, sublevel_decomposition),
        check("torus_levels", Toric, 1e-12, torus_levels),
        check("resonance_critical", Catalogue, 0.0, resonance_critical),
        check("window_closed_forms", Catalogue, 1e-12, window_closed_forms),
        check("resonance_period", Catalogue, 1e-12, resonance_period),
        check("classification", Catalogue, 0.0, classification),
        check("p_roots_critical", Catalogue, 1e-9, p_roots_critical),
        check("p_nonnegative", Catalogue, 1e-12, p_nonnegative),
        check(
            "second_kind_symmetry",
            Catalogue,
            1e-6,
            second_kind_symmetry,
        ),
        check("stern_brocot_depth3", Tree, 0.0, stern_brocot_depth3),
        check("new_tree_depth3", Tree, 0.0, new_tree_depth3),
        check("slope_cross_check", Tree, 0.0, slope_identity),
        check("levels_increasing", Tree, 0.0, levels_increasing),
        check("node_at_consistency", Tree, 0.0, node_at_consistency),
        check("transform_properties", Tree, 0.0, transform_properties),
    ]
}

/// Names of every check, in report order.
pub fn check_names() -> Vec<&'static str> {
    registry().into_iter().map(|c| c.name).collect()
}

/// Options for [`run_checks`]. `tolerances` is keyed by check name or by
/// [`SYMPLECTIC_KEY`]; a name key wins over the shared key.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    /// Empty means every group.
    pub only: Vec<Group>,
}

pub fn run_checks(opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let checks = registry();
    for key in opts.tolerances.keys() {
        if key != SYMPLECTIC_KEY && !checks.iter().any(|c| c.name == key) {
            return Err(Error::domain(format!("unknown tolerance key {key:?}")));
        }
    }
    let selected: Vec<Check> = checks
        .into_iter()
        .filter(|c| opts.only.is_empty() || opts.only.contains(&c.group))
        .collect();
    Ok(selected
        .par_iter()
        .map(|c| {
            let tolerance = opts
                .tolerances
                .get(c.name)
                .or_else(|| c.alias.and_then(|a| opts.tolerances.get(a)))
                .copied()
                .unwrap_or(c.tolerance);
            let (n_samples, max_residual, error) = match (c.sweep)(opts.seed) {
                Ok((n, r)) => (n, r, None),
                Err(e) => (0, f64::INFINITY, Some(e.to_string())),
            };
            CheckRow {
                check: c.name,
                group: c.group,
                n_samples,
                max_residual,
                tolerance,
                pass: error.is_none() && max_residual <= tolerance,
                error,
            }
        })
        .collect())
}
