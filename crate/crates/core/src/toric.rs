//! Moment-map picture of the regularized Jacobi Hamiltonian.
//!
//! On `T*C` the pullback of `K` through Levi-Civita and Ligon-Schaaf depends
//! only on the torus moment map `mu = (mu1, mu2)`:
//! `K~(mu) = -1/(8 mu1^2) + 2 mu2`. Its sublevel sets inside the cone
//! `|mu2| <= mu1` are bounded above by the graph of
//! `g_c(t) = c/2 + 1/(16 t^2)`, and for `c <= -3/2` they split into a bounded
//! piece over `(0, b]` and an unbounded piece over `[b_u, inf)`.
//!
//! The rotation between the `nu`-picture of `C^2` and the `mu`-picture uses
//! `mu2 = (nu2 - nu1) / (2 pi)`, which pairs with `S` applied to `(z2, z1)`.

use std::f64::consts::PI;

use crate::catalogue::{resonance_data, ResonanceLabel};
use crate::numerics::roots::newton_bisect;
use crate::regularization::{linear_s, OscPoint};
use crate::tree::Fraction;
use crate::{Error, Result, CRITICAL_ENERGY};

pub const CONVEXITY_TOL: f64 = 1e-12;
pub const SLOPE_TOL: f64 = 1e-9;
pub const ENDPOINT_TOL: f64 = 1e-9;
const CORNER_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentPair {
    pub mu1: f64,
    pub mu2: f64,
}

impl MomentPair {
    pub const fn new(mu1: f64, mu2: f64) -> Self {
        Self { mu1, mu2 }
    }

    pub fn in_cone(&self) -> bool {
        self.mu2.abs() <= self.mu1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QPair {
    pub nu1: f64,
    pub nu2: f64,
}

/// `((|u|^2 + |v|^2) / 2, u1 v2 - u2 v1)`.
pub fn moment_mu(osc: &OscPoint) -> MomentPair {
    let mu1 = 0.5 * (osc.u.norm_sqr() + osc.v.norm_sqr());
    let mu2 = osc.u.re * osc.v.im - osc.u.im * osc.v.re;
    MomentPair { mu1, mu2 }
}

/// `(pi |z1|^2, pi |z2|^2)`.
pub fn moment_nu(z1: [f64; 2], z2: [f64; 2]) -> QPair {
    QPair {
        nu1: PI * (z1[0] * z1[0] + z1[1] * z1[1]),
        nu2: PI * (z2[0] * z2[0] + z2[1] * z2[1]),
    }
}

pub fn rotate_to_mu(qp: &QPair) -> MomentPair {
    MomentPair {
        mu1: (qp.nu1 + qp.nu2) / (2.0 * PI),
        mu2: (qp.nu2 - qp.nu1) / (2.0 * PI),
    }
}

pub fn unrotate(mp: &MomentPair) -> Result<QPair> {
    if !mp.in_cone() {
        return Err(Error::domain(format!(
            "({}, {}) lies outside the cone |mu2| <= mu1",
            mp.mu1, mp.mu2
        )));
    }
    Ok(QPair {
        nu1: PI * (mp.mu1 - mp.mu2),
        nu2: PI * (mp.mu1 + mp.mu2),
    })
}

/// The linear symplectomorphism that makes `mu o S' = rotate_to_mu o nu`:
/// `S` from [`linear_s`] precomposed with the swap of the two factors.
pub fn toric_symplectomorphism(z1: [f64; 2], z2: [f64; 2]) -> OscPoint {
    linear_s(z2, z1)
}

/// `K~ = -1/(8 mu1^2) + 2 mu2`.
pub fn ktilde(mp: &MomentPair) -> Result<f64> {
    if !(mp.mu1 > 0.0) {
        return Err(Error::domain("K~ needs mu1 > 0"));
    }
    Ok(-1.0 / (8.0 * mp.mu1 * mp.mu1) + 2.0 * mp.mu2)
}

/// The level curve `K~ = c` as a graph over `mu1`.
pub fn boundary_g(c: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain("boundary graph needs t > 0"));
    }
    Ok(0.5 * c + 1.0 / (16.0 * t * t))
}

/// `g'(t) = -1 / (8 t^3)`, independent of `c`.
pub fn boundary_slope(t: f64) -> f64 {
    -1.0 / (8.0 * t * t * t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corners {
    /// Diagonal corner, `g(a) = a`.
    pub a: f64,
    /// Anti-diagonal corner of the bounded piece, `g(b) = -b`.
    pub b: f64,
    /// Inner anti-diagonal corner of the unbounded piece.
    pub b_u: f64,
}

/// Positive root of `16 a^3 - 8 c a^2 - 1`; exists for every `c`.
pub fn diagonal_corner(c: f64) -> Result<f64> {
    let f = |a: f64| (16.0 * a - 8.0 * c) * a * a - 1.0;
    let df = |a: f64| (48.0 * a - 16.0 * c) * a;
    // f(0) = -1 and f grows without bound; double hi until it is positive.
    let mut hi = 0.5;
    while f(hi) <= 0.0 {
        hi *= 2.0;
    }
    newton_bisect(f, df, 0.0, hi, CORNER_TOL)
}

/// Corner values of the sublevel set `K~ <= c` for `c <= -3/2`.
///
/// `b` and `b_u` are the positive roots of `16 b^3 + 8 c b^2 + 1`, separated
/// by the local minimum at `-c/3`, where the cubic takes the value
/// `8 c^3 / 27 + 1`. At `c = -3/2` this vanishes and `b = b_u = 1/2`.
pub fn corners(c: f64) -> Result<Corners> {
    if !(c <= CRITICAL_ENERGY) {
        return Err(Error::domain(format!(
            "no bounded component for c = {c} > -3/2"
        )));
    }
    let a = diagonal_corner(c)?;
    let f = |b: f64| (16.0 * b + 8.0 * c) * b * b + 1.0;
    let df = |b: f64| (48.0 * b + 16.0 * c) * b;
    let b_star = -c / 3.0;
    if f(b_star).abs() <= CORNER_TOL {
        return Ok(Corners {
            a,
            b: b_star,
            b_u: b_star,
        });
    }
    let b = newton_bisect(f, df, 0.0, b_star, CORNER_TOL)?;
    // f(-c/2) = 1 > 0.
    let b_u = newton_bisect(f, df, b_star, -0.5 * c, CORNER_TOL)?;
    Ok(Corners { a, b, b_u })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Bounded,
    Unbounded,
    /// Single region for `c > -3/2`.
    Connected,
}

impl Component {
    pub fn as_str(self) -> &'static str {
        match self {
            Component::Bounded => "bounded",
            Component::Unbounded => "unbounded",
            Component::Connected => "connected",
        }
    }
}

/// Sampled upper boundary of one component of `K~ <= c` in the cone.
///
/// For the bounded piece the region is `0 <= mu1 <= b`,
/// `-mu1 <= mu2 <= min(mu1, g(mu1))`; `samples` hold `(t, g(t))` on `[a, b]`.
/// For the unbounded piece `a` is `b_u`, `b` is the sampling cutoff, and the
/// region is `mu1 >= b_u`, `-mu1 <= mu2 <= g(mu1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainProfile {
    pub c: f64,
    pub a: f64,
    pub b: f64,
    pub samples: Vec<(f64, f64)>,
    pub component: Component,
}

impl DomainProfile {
    /// Closed-region membership with absolute slack `tol`.
    pub fn contains(&self, mp: &MomentPair, tol: f64) -> bool {
        let MomentPair { mu1, mu2 } = *mp;
        if mu1 <= 0.0 || mu2 < -mu1 - tol {
            return false;
        }
        let upper = match boundary_g(self.c, mu1) {
            Ok(g) => g.min(mu1),
            Err(_) => return false,
        };
        let in_range = match self.component {
            Component::Bounded => mu1 <= self.b + tol,
            Component::Unbounded => mu1 >= self.a - tol,
            Component::Connected => true,
        };
        in_range && mu2 <= upper + tol
    }
}

/// Chebyshev-Lobatto nodes on `[lo, hi]` with exact endpoints.
fn chebyshev_nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    (0..n)
        .map(|j| match j {
            0 => lo,
            j if j == n - 1 => hi,
            j => mid - half * (PI * j as f64 / (n - 1) as f64).cos(),
        })
        .collect()
}

fn sample_graph(c: f64, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    chebyshev_nodes(lo, hi, n)
        .into_iter()
        .map(|t| (t, 0.5 * c + 1.0 / (16.0 * t * t)))
        .collect()
}

/// Bounded component for `c <= -3/2` with `n` samples of `g` on `[a, b]`.
pub fn profile(c: f64, n: usize) -> Result<DomainProfile> {
    if n < 2 {
        return Err(Error::domain("profile needs at least two samples"));
    }
    let k = corners(c)?;
    Ok(DomainProfile {
        c,
        a: k.a,
        b: k.b,
        samples: sample_graph(c, k.a, k.b, n),
        component: Component::Bounded,
    })
}

/// Unbounded component for `c <= -3/2`, sampled on `[b_u, t_max]`.
pub fn unbounded_profile(c: f64, t_max: f64, n: usize) -> Result<DomainProfile> {
    if n < 2 {
        return Err(Error::domain("profile needs at least two samples"));
    }
    let k = corners(c)?;
    if !(t_max > k.b_u) {
        return Err(Error::domain(format!(
            "t_max = {t_max} must exceed b_u = {}",
            k.b_u
        )));
    }
    Ok(DomainProfile {
        c,
        a: k.b_u,
        b: t_max,
        samples: sample_graph(c, k.b_u, t_max, n),
        component: Component::Unbounded,
    })
}

/// Single connected region for `c > -3/2`; the upper boundary follows the
/// diagonal up to `a` and `g` beyond, and `g` never meets the lower edge.
pub fn connected_profile(c: f64, t_max: f64, n: usize) -> Result<DomainProfile> {
    if !(c > CRITICAL_ENERGY) {
        return Err(Error::domain("sublevel set splits for c <= -3/2"));
    }
    if n < 2 {
        return Err(Error::domain("profile needs at least two samples"));
    }
    let a = diagonal_corner(c)?;
    if !(t_max > a) {
        return Err(Error::domain("t_max must exceed the diagonal corner"));
    }
    Ok(DomainProfile {
        c,
        a,
        b: t_max,
        samples: sample_graph(c, a, t_max, n),
        component: Component::Connected,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialReport {
    /// Smallest second divided difference of the sampled `g`.
    pub convexity_min: f64,
    /// Largest analytic slope `g'` over the samples.
    pub slope_max: f64,
    /// Largest first divided difference; bounded above by `slope_max` for a
    /// convex graph.
    pub fd_slope_max: f64,
    /// `(g(a) - a, g(b) + b)`.
    pub endpoint_residuals: (f64, f64),
    /// Extremes of `f' = (1 + g')/(1 - g')` for the unrotated graph.
    pub f_slope_min: f64,
    pub f_slope_max: f64,
    /// Smallest second divided difference of the unrotated graph `f`.
    pub f_convexity_min: f64,
    pub pass: bool,
}

fn min_second_divided_difference(pts: &[(f64, f64)]) -> f64 {
    pts.windows(3)
        .map(|w| {
            let [(x0, y0), (x1, y1), (x2, y2)] = [w[0], w[1], w[2]];
            2.0 * ((y2 - y1) / (x2 - x1) - (y1 - y0) / (x1 - x0)) / (x2 - x0)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Checks that a bounded profile describes a special concave toric domain:
/// `g` convex, `g' <= -1`, corners on the cone edges, and after unrotating
/// `-1 <= f' <= 0`.
pub fn verify_special(profile: &DomainProfile) -> Result<SpecialReport> {
    if profile.component != Component::Bounded {
        return Err(Error::domain(
            "special-domain check applies to the bounded component",
        ));
    }
    let pts = &profile.samples;
    if pts.len() < 3 {
        return Err(Error::domain("need at least three samples"));
    }
    let convexity_min = min_second_divided_difference(pts);
    let slopes: Vec<f64> = pts.iter().map(|&(t, _)| boundary_slope(t)).collect();
    let slope_max = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let fd_slope_max = pts
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
        .fold(f64::NEG_INFINITY, f64::max);
    let (ta, ga) = pts[0];
    let (tb, gb) = pts[pts.len() - 1];
    let endpoint_residuals = (ga - ta, gb + tb);

    let f_slopes = slopes.iter().map(|&s| (1.0 + s) / (1.0 - s));
    let f_slope_min = f_slopes.clone().fold(f64::INFINITY, f64::min);
    let f_slope_max = f_slopes.fold(f64::NEG_INFINITY, f64::max);
    let unrotated: Vec<(f64, f64)> = pts
        .iter()
        .map(|&(t, g)| {
            let q = unrotate(&MomentPair::new(t, g)).unwrap_or(QPair {
                nu1: PI * (t - g),
                nu2: PI * (t + g),
            });
            (q.nu1, q.nu2)
        })
        .collect();
    let f_convexity_min = min_second_divided_difference(&unrotated);

    let pass = convexity_min >= -CONVEXITY_TOL
        && slope_max <= -1.0 + SLOPE_TOL
        && fd_slope_max <= slope_max + SLOPE_TOL
        && endpoint_residuals.0.abs() <= ENDPOINT_TOL
        && endpoint_residuals.1.abs() <= ENDPOINT_TOL
        && f_slope_min >= -1.0 - SLOPE_TOL
        && f_slope_max <= SLOPE_TOL;
    Ok(SpecialReport {
        convexity_min,
        slope_max,
        fd_slope_max,
        endpoint_residuals,
        f_slope_min,
        f_slope_max,
        f_convexity_min,
        pass,
    })
}

/// Point of the torus `T_{k,l}` on the level `K~ = c`, where the boundary
/// tangent `-1/(8 mu1^3)` equals `-k/l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    pub mp: MomentPair,
    pub slope: Fraction,
}

pub fn torus_point(k: u32, l: u32, c: f64) -> Result<TorusPoint> {
    let label = ResonanceLabel::new(k, l)?;
    let data = resonance_data(label);
    if !(c > data.c_minus && c < data.c_plus) {
        return Err(Error::domain(format!(
            "c = {c} outside the window ({}, {}) of T_{{{k},{l}}}",
            data.c_minus, data.c_plus
        )));
    }
    let mu1 = 0.5 * (l as f64 / k as f64).cbrt();
    let mu2 = 0.5 * (c - data.c_kl);
    Ok(TorusPoint {
        mp: MomentPair { mu1, mu2 },
        slope: Fraction::new(-(k as i64), l as i64)?,
    })
}

/// Which component of `K~ <= c` contains `mp`, or `None` when `mp` is not in
/// the sublevel set. A sublevel point strictly between `b` and `b_u` would
/// contradict the decomposition and is reported as an error.
pub fn component_of(mp: &MomentPair, c: f64) -> Result<Option<Component>> {
    if !mp.in_cone() || mp.mu1 <= 0.0 || ktilde(mp)? > c {
        return Ok(None);
    }
    if c > CRITICAL_ENERGY {
        return Ok(Some(Component::Connected));
    }
    let k = corners(c)?;
    if mp.mu1 <= k.b {
        Ok(Some(Component::Bounded))
    } else if mp.mu1 >= k.b_u {
        Ok(Some(Component::Unbounded))
    } else {
        Err(Error::NumericFailure(format!(
            "sublevel point ({}, {}) between b = {} and b_u = {}",
            mp.mu1, mp.mu2, k.b, k.b_u
        )))
    }
}
