mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use common::{forms, helicoid_area_oracle, mean_curvature, omega, omega_normal, partials5, rng};
use helicoid::cylinder::{
    develop, geodesic_length, geodesic_on_side, rotation_angle, total_curvature, total_curvature_frenet,
};
use helicoid::{BarrierPatch, CylinderConfig, HelicoidPatch, SideCurve, SidePoint};
use rand::Rng;

#[test]
fn helix_develops_to_a_straight_segment() {
    let cfg = CylinderConfig::new(0.8, 1.7).unwrap();
    let helix = SideCurve::helix(cfg, SidePoint::new(0.4, 0.1), 2.5, 1.2, 200).unwrap();
    let d = develop(&helix).unwrap();
    let [s0, z0] = d.start();
    let [s1, z1] = d.end();
    // Straight: every sample lies on the chord.
    for [s, z] in &d.samples {
        let cross = (s1 - s0) * (z - z0) - (z1 - z0) * (s - s0);
        assert!(cross.abs() < 1e-12);
    }
    let exact = (0.8f64 * 2.5).hypot(1.2);
    assert!((d.length() - exact).abs() < 1e-12);
    assert!((helix.length().unwrap() - exact).abs() < 1e-12);
    assert!((rotation_angle(&helix).unwrap() - 2.5).abs() < 1e-12);
}

#[test]
fn closed_circle_turns_once() {
    let cfg = CylinderConfig::unit();
    let c = SideCurve::circle(cfg, 0.3, 90).unwrap();
    assert!((rotation_angle(&c).unwrap() - TAU).abs() < 1e-12);
    assert!((total_curvature(&c).unwrap() - TAU).abs() < 1e-9);
}

#[test]
fn helix_total_curvature_matches_formula() {
    // Curvature of a helix is r / (r² + c²) with c the rise per radian.
    let cfg = CylinderConfig::new(1.0, 3.0).unwrap();
    let (turn, rise) = (3.0, 2.0);
    let helix = SideCurve::helix(cfg, SidePoint::new(0.0, 0.5), turn, rise, 2000).unwrap();
    let c = rise / turn;
    let length = (turn * 1.0f64).hypot(rise);
    let exact = length / (1.0 + c * c);
    assert!((total_curvature(&helix).unwrap() - exact).abs() < 1e-6);
    assert!((total_curvature_frenet(&helix).unwrap() - exact).abs() < 1e-4);
}

#[test]
fn geodesics_are_shortest_in_their_class() {
    let cfg = CylinderConfig::new(1.3, 2.0).unwrap();
    let p = SidePoint::new(0.2, 0.1);
    let q = SidePoint::new(2.9, 1.6);
    let lengths: Vec<f64> = (-2..=2).map(|w| geodesic_length(p, q, &cfg, w)).collect();
    for (k, w) in (-2..=2).enumerate() {
        let g = geodesic_on_side(p, q, &cfg, w).unwrap();
        assert!((g.length().unwrap() - lengths[k]).abs() < 1e-12);
        // The curve unrolls to the straight segment of that length.
        assert!((develop(&g).unwrap().length() - lengths[k]).abs() < 1e-12);
    }
    let best = lengths.iter().copied().fold(f64::INFINITY, f64::min);
    assert_eq!(best, lengths[2]);
}

#[test]
fn helicoid_area_against_independent_quadrature() {
    for (r, h, theta) in [(1.0, 1.0, FRAC_PI_2), (0.7, 2.0, 3.5), (2.0, 0.5, 0.3), (1.0, 1.0, -1.0)] {
        let patch = HelicoidPatch::new(CylinderConfig::new(r, h).unwrap(), theta, 0.0).unwrap();
        let oracle = helicoid_area_oracle(r, h, theta, 1e-13);
        assert!((patch.area_closed_form() - oracle).abs() < 1e-10 * oracle, "{r} {h} {theta}");
        assert!((patch.area_quadrature(1e-13) - oracle).abs() < 1e-10 * oracle);
    }
    // Known value at r = 1, h = 1, θ = π/2.
    let patch = HelicoidPatch::new(CylinderConfig::unit(), FRAC_PI_2, 0.0).unwrap();
    assert!((patch.area_closed_form() - 2.647_304_701_026).abs() < 1e-11);
}

#[test]
fn helicoid_normal_is_orthogonal_to_tangents() {
    let patch = HelicoidPatch::new(CylinderConfig::new(1.2, 0.9).unwrap(), 2.2, 0.4).unwrap();
    let mut g = rng(3);
    for _ in 0..200 {
        let u = g.random_range(-1.2..1.2);
        let s = g.random_range(0.0..1.0);
        let e = 1e-6;
        let xu = (patch.point(u + e, s) - patch.point(u - e, s)) / (2.0 * e);
        let xs = (patch.point(u, s + e) - patch.point(u, s - e)) / (2.0 * e);
        let n = patch.normal(u, s);
        let fd = xu.cross(&xs).normalize();
        assert!((n - fd).norm() < 1e-8);
    }
}

#[test]
fn distance_estimate_against_dense_sampling() {
    let patch = HelicoidPatch::new(CylinderConfig::unit(), FRAC_PI_2, 0.0).unwrap();
    let mut g = rng(11);
    for _ in 0..25 {
        let p = helicoid::Vec3::new(g.random_range(-1.0..1.0), g.random_range(-1.0..1.0), g.random_range(-0.2..1.2));
        let est = patch.signed_distance_estimate(&p).unwrap();
        let mut best = f64::INFINITY;
        let n = 400;
        for j in 0..=n {
            for i in 0..=n {
                let q = patch.point(-1.0 + 2.0 * i as f64 / n as f64, j as f64 / n as f64);
                best = best.min((p - q).norm());
            }
        }
        // Dense sampling overestimates by at most half a cell diagonal.
        assert!(est.distance.abs() <= best + 1e-9, "{est:?} {best}");
        assert!(best - est.distance.abs() < 4e-3);
    }
}

#[test]
fn rotated_family_meets_the_patch_only_on_the_axis() {
    let patch = HelicoidPatch::new(CylinderConfig::unit(), 1.3, 0.0).unwrap();
    for k in 1..8 {
        let rot = patch.rotate_family(PI * k as f64 / 8.0).unwrap();
        for j in 0..=10 {
            let s = j as f64 / 10.0;
            for u in [-1.0, -0.5, -0.1, 0.1, 0.5, 1.0] {
                let d = patch.signed_distance_estimate(&rot.point(u, s)).unwrap();
                assert!(d.distance.abs() > 1e-3);
            }
            let axis = patch.signed_distance_estimate(&rot.point(0.0, s)).unwrap();
            assert!(axis.distance.abs() < 1e-12);
        }
    }
    assert!(patch.rotate_family(PI).is_err());
}

#[test]
fn barrier_parametrization_matches_the_oracle() {
    let cfg = CylinderConfig::new(0.9, 1.4).unwrap();
    let mut g = rng(5);
    for _ in 0..100 {
        let eta = g.random_range(0.1..FRAC_PI_2);
        let a = g.random_range(0.3..2.0);
        let b = BarrierPatch::new(cfg, eta, a).unwrap();
        let zeta = g.random_range(0.0..b.theta());
        let phi = g.random_range(0.0..2.0 * eta);
        let p = b.position(zeta, phi);
        assert!((p - omega(0.9, eta, a, zeta, phi)).norm() < 1e-13);
        let n = b.unit_normal(zeta, phi).unwrap();
        let n_fd = omega_normal(0.9, eta, a, zeta, phi, 1e-3);
        assert!((n - n_fd).norm() < 1e-9);
    }
}

#[test]
fn barrier_arc_endpoints_lie_on_the_side() {
    let cfg = CylinderConfig::new(1.1, 1.0).unwrap();
    for eta in [0.2, 0.9, 1.4] {
        let b = BarrierPatch::new(cfg, eta, 0.7).unwrap();
        for zeta in [0.0, 0.4, 1.4] {
            for phi in [0.0, 2.0 * eta] {
                let p = b.position(zeta, phi);
                assert!((p.x.hypot(p.y) - 1.1).abs() < 1e-12);
            }
            // The arc bulges inward.
            let mid = b.position(zeta, eta);
            assert!(mid.x.hypot(mid.y) < 1.1);
        }
    }
}

#[test]
fn barrier_forms_against_five_point_stencils() {
    let cfg = CylinderConfig::unit();
    let mut g = rng(17);
    for _ in 0..200 {
        let eta = g.random_range(0.15..FRAC_PI_2);
        let a = g.random_range(0.5..3.0);
        let b = BarrierPatch::new(cfg, eta, a).unwrap();
        let zeta = g.random_range(0.0..b.theta());
        let phi = g.random_range(0.0..2.0 * eta);
        let p = partials5(&|z, f| omega(1.0, eta, a, z, f), zeta, phi, 1e-3);
        let n = omega_normal(1.0, eta, a, zeta, phi, 1e-3);
        let fd = forms(&p, &n);
        let cf = b.fundamental_forms(zeta, phi).unwrap().as_array();
        for k in 0..6 {
            assert!((fd[k] - cf[k]).abs() <= 1e-7 * cf[k].abs().max(1e-3), "coefficient {k}: {} vs {}", fd[k], cf[k]);
        }
        let h = b.mean_curvature(zeta, phi).unwrap();
        assert!((mean_curvature(&fd) - h).abs() <= 1e-7 * h.abs().max(1.0), "{} vs {h}", mean_curvature(&fd));
    }
}
