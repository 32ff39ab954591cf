use proptest::prelude::*;

use rkp_core::catalogue::{p_roots, p_value, resonance_data, ResonanceLabel};
use rkp_core::dynamics::{energies, runge_lenz, PhasePoint};
use rkp_core::regularization::{
    chart_rkp_energy, lc_lift, levi_civita, ligon_schaaf, ligon_schaaf_inverse, linear_s,
    linear_s_inverse, moment_map_residual, stereo_drop, stereo_lift, OscPoint,
};
use rkp_core::toric::{
    component_of, ktilde, moment_mu, moment_nu, rotate_to_mu, toric_symplectomorphism, unrotate,
    Component, MomentPair,
};
use rkp_core::tree::{mediant, node_at, transform_fraction, Fraction, TreePath};

fn bound_point() -> impl Strategy<Value = PhasePoint> {
    (
        0.3..3.0f64,
        0.0..1.0f64,
        0.0..std::f64::consts::TAU,
        0.0..std::f64::consts::TAU,
    )
        .prop_map(|(r, frac, a, b)| {
            // Kepler energy in [-1/r, -0.05) keeps the point in P-.
            let h = -1.0 / r + frac * (1.0 / r - 0.05);
            let speed = (2.0 * (h + 1.0 / r)).sqrt();
            PhasePoint::new(
                [r * a.cos(), r * a.sin()],
                [speed * b.cos(), speed * b.sin()],
            )
        })
}

fn osc() -> impl Strategy<Value = OscPoint> {
    (
        prop::array::uniform2(-2.0..2.0f64),
        prop::array::uniform2(-2.0..2.0f64),
    )
        .prop_filter("v away from zero", |(_, v)| v[0].hypot(v[1]) > 1e-2)
        .prop_map(|(u, v)| OscPoint::new(u, v))
}

fn close4(a: [f64; 4], b: [f64; 4], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn runge_lenz_norm(pt in bound_point()) {
        prop_assume!(pt.p_sq() > 1e-6);
        prop_assert!(runge_lenz(&pt).unwrap().norm_sq_residual.abs() < 1e-11);
    }

    #[test]
    fn ligon_schaaf_round_trip(pt in bound_point()) {
        prop_assume!(pt.p_sq() > 1e-6);
        let sp = ligon_schaaf(&pt).unwrap();
        prop_assert!(sp.constraint_residual() < 1e-12);
        let back = ligon_schaaf_inverse(&sp).unwrap();
        prop_assert!(close4(back.to_array(), pt.to_array(), 1e-9));
        prop_assert!(moment_map_residual(&pt).unwrap() < 1e-9);
    }

    #[test]
    fn stereographic_round_trip(pt in bound_point()) {
        prop_assume!(pt.p_sq() > 1e-6);
        let back = stereo_drop(&stereo_lift(&pt)).unwrap();
        prop_assert!(close4(back.to_array(), pt.to_array(), 1e-10));
    }

    #[test]
    fn levi_civita_double_cover(o in osc()) {
        let img = levi_civita(&o).unwrap();
        prop_assert_eq!(img, levi_civita(&-o).unwrap());
        let lifts = [lc_lift(&img, 1).unwrap(), lc_lift(&img, -1).unwrap()];
        prop_assert!(lifts.iter().any(|l| close4(l.to_array(), o.to_array(), 1e-10)));
    }

    #[test]
    fn pullback_identity(o in osc()) {
        let a = ktilde(&moment_mu(&o)).unwrap();
        let b = chart_rkp_energy(&levi_civita(&o).unwrap()).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn linear_s_inverts(z1 in prop::array::uniform2(-3.0..3.0f64),
                        z2 in prop::array::uniform2(-3.0..3.0f64)) {
        let (w1, w2) = linear_s_inverse(&linear_s(z1, z2));
        prop_assert!(close4([w1[0], w1[1], w2[0], w2[1]], [z1[0], z1[1], z2[0], z2[1]], 1e-14));
        let lhs = rotate_to_mu(&moment_nu(z1, z2));
        let rhs = moment_mu(&toric_symplectomorphism(z1, z2));
        prop_assert!((lhs.mu1 - rhs.mu1).abs() < 1e-12 && (lhs.mu2 - rhs.mu2).abs() < 1e-12);
        prop_assert!(rhs.in_cone());
    }

    #[test]
    fn unrotate_inverts_rotation(mu1 in 0.0..5.0f64, frac in -1.0..1.0f64) {
        let mp = MomentPair::new(mu1, frac * mu1);
        let back = rotate_to_mu(&unrotate(&mp).unwrap());
        prop_assert!((back.mu1 - mp.mu1).abs() < 1e-14 && (back.mu2 - mp.mu2).abs() < 1e-14);
    }

    #[test]
    fn sublevel_points_are_classified(mu1 in 0.05..3.0f64, frac in -1.0..1.0f64,
                                      c in -4.0..-1.5f64) {
        let mp = MomentPair::new(mu1, frac * mu1);
        let inside = ktilde(&mp).unwrap() <= c;
        match component_of(&mp, c) {
            Ok(None) => prop_assert!(!inside),
            Ok(Some(Component::Bounded | Component::Unbounded)) => prop_assert!(inside),
            Ok(Some(Component::Connected)) => prop_assert!(false, "split regime"),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn window_contains_resonance_energy(k in 1u32..40, l in 1u32..40) {
        prop_assume!(num_gcd(k, l) == 1);
        let d = resonance_data(ResonanceLabel::new(k, l).unwrap());
        prop_assert!(d.in_window(d.c_kl));
        prop_assert!(d.c_plus - d.c_minus > 0.0);
    }

    #[test]
    fn p_roots_lie_on_the_curve(c in -5.0..1.0f64) {
        for h in p_roots(c).roots {
            prop_assert!(p_value(c, h).abs() < 1e-8 * (1.0 + c.abs()).powi(3));
        }
    }

    #[test]
    fn tree_nodes_sit_between_neighbours(depth in 1u32..20, seed in any::<u64>()) {
        let index = seed % (1u64 << depth);
        let path = TreePath::from_index(depth, index).unwrap();
        let node = node_at(&path).unwrap();
        prop_assert_eq!(num_gcd(node.num() as u32, node.den() as u32), 1);
        if index > 0 {
            let left = node_at(&TreePath::from_index(depth, index - 1).unwrap()).unwrap();
            prop_assert!(left < node);
        }
        let image = transform_fraction(node).unwrap();
        let expected = Fraction::new(node.num() + node.den(), node.den() - node.num()).unwrap();
        prop_assert_eq!(image, expected);
        prop_assert_eq!(path.to_string().parse::<TreePath>().unwrap(), path);
    }

    #[test]
    fn mediant_is_between(a in 1i64..1000, b in 1i64..1000, c in 1i64..1000, d in 1i64..1000) {
        let (f, g) = (Fraction::new(a, b).unwrap(), Fraction::new(c, d).unwrap());
        prop_assume!(f < g);
        let m = mediant(f, g).unwrap();
        prop_assert!(f < m && m < g);
    }
}

fn num_gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn jacobi_energy_matches_components() {
    let pt = PhasePoint::new([0.4, -1.2], [0.3, 0.5]);
    let e = energies(&pt).unwrap();
    assert_eq!(e.k, e.h + e.l);
}
