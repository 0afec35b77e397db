mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use helicoid::cylinder::wrap_angle;
use helicoid::surface::{
    helicoid_sample, minimize_area, monotone_projection_check, perturb_along_normal, radius_grid, slice_lengths,
    BumpProfile, Perturbation, ROLE_TOL,
};
use helicoid::{BarrierPatch, CylinderConfig, HelicoidPatch, SolverOptions, SurfaceMesh, VertexRole};
use proptest::prelude::*;

fn projection_passes(theta: f64) -> bool {
    let patch = HelicoidPatch::new(CylinderConfig::unit(), theta, 0.0).unwrap();
    let (h1, h2) = patch.boundary_helices(256).unwrap();
    let (t0, t1) = patch.top_diameter();
    let (b0, b1) = patch.bottom_diameter();
    monotone_projection_check(&[t0, t1], &[b0, b1], &h1, &h2).unwrap().passed
}

proptest! {
    #[test]
    fn wrap_angle_lands_in_half_open_interval(a in -100.0f64..100.0) {
        let w = wrap_angle(a);
        prop_assert!(w > -PI && w <= PI);
        let k = ((a - w) / (2.0 * PI)).round();
        prop_assert!((a - w - 2.0 * PI * k).abs() < 1e-9);
    }

    #[test]
    fn helicoid_points_stay_in_the_cylinder(
        r in 0.2f64..3.0, h in 0.2f64..3.0, theta in -6.0f64..6.0, phase in -PI..PI,
        u in -1.0f64..=1.0, s in 0.0f64..=1.0,
    ) {
        prop_assume!(theta.abs() > 1e-6);
        let cfg = CylinderConfig::new(r, h).unwrap();
        let patch = HelicoidPatch::new(cfg, theta, phase).unwrap();
        let p = patch.point(u * r, s);
        prop_assert!(cfg.contains(&p, 1e-12));
        let e = 1e-6;
        let xu = (patch.point(u * r + e, s) - patch.point(u * r - e, s)) / (2.0 * e);
        let xs = (patch.point(u * r, s + e) - patch.point(u * r, s - e)) / (2.0 * e);
        let n = patch.normal(u * r, s);
        prop_assert!((n.norm() - 1.0).abs() < 1e-12);
        prop_assert!(n.dot(&xu).abs() < 1e-7 * xu.norm().max(1.0));
        prop_assert!(n.dot(&xs).abs() < 1e-7 * xs.norm().max(1.0));
    }

    #[test]
    fn helicoid_area_is_at_least_the_flat_rectangle(r in 0.1f64..3.0, h in 0.1f64..3.0, theta in -8.0f64..8.0) {
        prop_assume!(theta.abs() > 1e-9);
        let patch = HelicoidPatch::new(CylinderConfig::new(r, h).unwrap(), theta, 0.0).unwrap();
        let a = patch.area_closed_form();
        prop_assert!(a >= 2.0 * r * h * (1.0 - 1e-14));
        let smaller = HelicoidPatch::new(CylinderConfig::new(r, h).unwrap(), theta * 0.5, 0.0).unwrap();
        prop_assert!(smaller.area_closed_form() <= a);
    }

    #[test]
    fn barrier_mean_curvature_agrees_with_its_forms(
        eta in 0.05f64..FRAC_PI_2, a in 0.05f64..4.0, z in 0.0f64..1.0, f in 0.0f64..1.0,
    ) {
        let b = BarrierPatch::new(CylinderConfig::unit(), eta, a).unwrap();
        let zeta = z * b.theta();
        let phi = f * 2.0 * eta;
        let direct = b.mean_curvature(zeta, phi).unwrap();
        let forms = b.fundamental_forms(zeta, phi).unwrap();
        prop_assert!((forms.mean_curvature() - direct).abs() < 1e-12 * direct.abs().max(1.0));
        prop_assert!((common::mean_curvature(&forms.as_array()) - direct).abs() < 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn barrier_is_mean_convex_for_slow_screws(eta in 0.05f64..FRAC_PI_2, excess in 0.0f64..5.0, f in 0.0f64..=1.0) {
        let r = 1.0;
        let b = BarrierPatch::new(CylinderConfig::unit(), eta, r + excess).unwrap();
        prop_assert!(b.mean_curvature(0.0, f * 2.0 * eta).unwrap() > 0.0);
    }

    #[test]
    fn perturbation_respects_roles(seed in 0u64..1000, amp in 0.0f64..0.2, which in 0usize..3) {
        let profile = [BumpProfile::Interior, BumpProfile::AxisPreserving, BumpProfile::FreeBoundary][which];
        let patch = HelicoidPatch::new(CylinderConfig::unit(), FRAC_PI_2, 0.0).unwrap();
        let base = helicoid_sample(&patch, 12, 12).unwrap();
        let base = if profile == BumpProfile::Interior { base.release_axis() } else { base };
        let m = perturb_along_normal(&base, &patch, &Perturbation::new(profile, amp, seed)).unwrap();
        m.check_roles(ROLE_TOL).unwrap();
        for (i, role) in base.roles().iter().enumerate() {
            if role.is_fixed() {
                prop_assert_eq!(base.vertices()[i], m.vertices()[i]);
            }
            if *role == VertexRole::FreeOnS {
                let p = m.vertices()[i];
                prop_assert!((p.x.hypot(p.y) - 1.0).abs() < 1e-12);
            }
        }
        let moved = base.vertices().iter().zip(m.vertices()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(moved <= amp + 1e-12);
    }

    #[test]
    fn obj_round_trip_preserves_the_mesh(seed in 0u64..1000, nu in 4usize..12, nv in 2usize..12) {
        let nu = 2 * nu;
        let patch = HelicoidPatch::new(CylinderConfig::new(0.7, 1.9).unwrap(), 2.0, 0.3).unwrap();
        let base = helicoid_sample(&patch, nu, nv).unwrap();
        let m = perturb_along_normal(&base, &patch, &Perturbation::new(BumpProfile::AxisPreserving, 0.05, seed)).unwrap();
        let mut obj = Vec::new();
        m.write_obj(&mut obj).unwrap();
        let back = SurfaceMesh::read_obj(&obj[..], m.roles_json().unwrap().as_bytes()).unwrap();
        prop_assert_eq!(back.vertices(), m.vertices());
        prop_assert_eq!(back.triangles(), m.triangles());
        prop_assert_eq!(back.roles(), m.roles());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn axis_surfaces_beat_the_helicoid_slices(seed in 0u64..10_000, amp in 0.0f64..0.08, t in 0.01f64..=1.0) {
        let patch = HelicoidPatch::new(CylinderConfig::unit(), FRAC_PI_2, 0.0).unwrap();
        let base = helicoid_sample(&patch, 48, 48).unwrap();
        let m = perturb_along_normal(&base, &patch, &Perturbation::new(BumpProfile::AxisPreserving, amp, seed)).unwrap();
        let slack = 2.0 * m.max_edge_length();
        let e = slice_lengths(&m, &[t], FRAC_PI_2).unwrap().entries[0];
        prop_assert!(e.satisfies(slack), "{:?}", e);
    }

    #[test]
    fn projection_holds_up_to_a_half_turn(theta in 1e-3f64..=PI) {
        prop_assert!(projection_passes(theta));
    }

    #[test]
    fn projection_fails_past_a_half_turn(theta in 1.1 * PI..1.9 * PI) {
        prop_assert!(!projection_passes(theta));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn solver_descends_and_keeps_constraints(seed in 0u64..1000, amp in 0.01f64..0.15, free in any::<bool>()) {
        let patch = HelicoidPatch::new(CylinderConfig::unit(), FRAC_PI_2, 0.0).unwrap();
        let base = helicoid_sample(&patch, 16, 16).unwrap();
        let (base, profile) = if free {
            (base, BumpProfile::FreeBoundary)
        } else {
            (base.pin_side_boundary().release_axis(), BumpProfile::Interior)
        };
        let start = perturb_along_normal(&base, &patch, &Perturbation::new(profile, amp, seed)).unwrap();
        let opts = SolverOptions { max_iterations: 60, ..SolverOptions::default() };
        let (out, report) = minimize_area(&start, &opts).unwrap();
        prop_assert!(report.is_monotone(1e-12));
        prop_assert!(out.area() <= start.area());
        out.check_roles(ROLE_TOL).unwrap();
        for (i, role) in start.roles().iter().enumerate() {
            if role.is_fixed() || *role == VertexRole::Pinned || *role == VertexRole::Axis {
                prop_assert_eq!(start.vertices()[i], out.vertices()[i]);
            }
        }
    }
}

#[test]
fn radius_grid_is_increasing_and_ends_on_the_side() {
    let ts = radius_grid(1.0, 20);
    assert_eq!(ts.len(), 20);
    assert!(ts.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(*ts.last().unwrap(), 1.0);
}
