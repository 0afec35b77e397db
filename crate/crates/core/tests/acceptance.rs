//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero
//! exit when any criterion fails.

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use common::{forms, helicoid_area_oracle, mean_curvature, omega, omega_normal, partials5, rng};
use helicoid::barrier::{eta_grid, positivity_region, theta_grid};
use helicoid::experiments::{
    minimize_setup, run, BoundaryMode, Command, ExperimentConfig, Initialization, MinimizeSettings,
};
use helicoid::surface::{
    generate_competitor, hausdorff_to_patch, helicoid_sample, meeting_angle_profile, minimize_area,
    monotone_projection_check, perturb_along_normal, radius_grid, slice_lengths, BumpProfile, Competitor, Perturbation,
};
use helicoid::{BarrierPatch, CylinderConfig, HelicoidPatch, SurfaceMesh};
use rand::Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// Random barrier sample with `a ≥ r/2`.
fn barrier_samples(n: usize) -> Vec<(f64, f64, f64, f64, f64)> {
    let mut g = rng(2024);
    (0..n)
        .map(|_| {
            let r = g.random_range(0.3..3.0);
            let eta = g.random_range(0.1..FRAC_PI_2);
            let a = r * g.random_range(0.5..4.0);
            let zeta = g.random_range(0.0..2.0);
            let phi = g.random_range(0.0..2.0 * eta);
            (r, eta, a, zeta, phi)
        })
        .collect()
}

fn barrier(r: f64, eta: f64, a: f64) -> BarrierPatch {
    // Tall enough that every sampled ζ is in range.
    BarrierPatch::new(CylinderConfig::new(r, 2.0 * a).unwrap(), eta, a).unwrap()
}

fn fd_step(r: f64) -> f64 {
    1e-3 * r.min(1.0)
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    for (r, eta, a, zeta, phi) in barrier_samples(1000) {
        let b = barrier(r, eta, a);
        let h = fd_step(r);
        let p = partials5(&|z, f| omega(r, eta, a, z, f), zeta, phi, h);
        let fd = forms(&p, &omega_normal(r, eta, a, zeta, phi, h));
        let cf = b.fundamental_forms(zeta, phi).unwrap().as_array();
        // Relative to the size of the form each coefficient belongs to.
        for (lo, hi) in [(0, 3), (3, 6)] {
            let scale = cf[lo..hi].iter().fold(0.0f64, |m, c| m.max(c.abs()));
            for k in lo..hi {
                worst = worst.max((fd[k] - cf[k]).abs() / scale);
            }
        }
    }
    outcome(worst < 1e-6, format!("worst relative deviation {worst:.3e} over 1000 samples"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    let mut nonpositive = 0;
    let mut checked = 0;
    for (r, eta, a, zeta, phi) in barrier_samples(1000) {
        let b = barrier(r, eta, a);
        let h = fd_step(r);
        let p = partials5(&|z, f| omega(r, eta, a, z, f), zeta, phi, h);
        let fd = mean_curvature(&forms(&p, &omega_normal(r, eta, a, zeta, phi, h)));
        let cf = b.mean_curvature(zeta, phi).unwrap();
        // Relative to the curvature scale 1/R of the cross-section arc.
        let scale = cf.abs().max(eta.sin() / r);
        worst = worst.max((fd - cf).abs() / scale);
        if a >= r {
            checked += 1;
            if cf <= 0.0 {
                nonpositive += 1;
            }
        }
    }
    outcome(
        worst < 1e-6 && nonpositive == 0,
        format!("worst relative deviation {worst:.3e}; {nonpositive} of {checked} samples with a >= r not positive"),
    )
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    for r in [0.5, 1.0, 2.0, 3.7] {
        let b = BarrierPatch::new(CylinderConfig::new(r, r).unwrap(), FRAC_PI_2, r).unwrap();
        let h = b.mean_curvature(0.5, FRAC_PI_2).unwrap();
        worst = worst.max((h - 1.0 / (2.0 * r)).abs());
    }
    outcome(worst < 1e-12, format!("max |H - 1/(2r)| = {worst:.3e}"))
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    for r in [0.5, 1.0, 2.0] {
        for h in [0.5, 1.0, 2.0] {
            for theta in [0.25, FRAC_PI_2, PI, 5.0] {
                let patch = HelicoidPatch::new(CylinderConfig::new(r, h).unwrap(), theta, 0.0).unwrap();
                let oracle = helicoid_area_oracle(r, h, theta, 1e-13);
                worst = worst.max((patch.area_closed_form() - oracle).abs() / oracle);
            }
        }
    }
    // Pitch b = h/θ = 1 with a half turn.
    let half_turn = HelicoidPatch::new(CylinderConfig::new(1.0, PI).unwrap(), PI, 0.0).unwrap();
    let constant = PI * (2f64.sqrt() + (1.0 + 2f64.sqrt()).ln());
    let const_err = (half_turn.area_closed_form() - constant).abs();
    let quarter = helicoid_area_oracle(1.0, 1.0, FRAC_PI_2, 1e-13);
    outcome(
        worst < 1e-10 && const_err < 1e-12,
        format!(
            "36-point grid worst {worst:.3e}; b=1, theta=pi gives {:.10} vs {constant:.10}; h=r=1, theta=pi/2 quadrature {quarter:.10}",
            half_turn.area_closed_form()
        ),
    )
}

fn criterion_5() -> Outcome {
    let cfg = CylinderConfig::unit();
    let theta = FRAC_PI_2;
    let patch = HelicoidPatch::new(cfg, theta, 0.0).unwrap();
    let base = helicoid_sample(&patch, 64, 64).unwrap();
    let mut corpus: Vec<(String, SurfaceMesh, f64)> = vec![("helicoid".into(), base.clone(), theta)];
    for seed in 0..3 {
        let p = Perturbation::new(BumpProfile::AxisPreserving, 0.05, seed);
        corpus.push((format!("perturbed_{seed}"), perturb_along_normal(&base, &patch, &p).unwrap(), theta));
    }
    corpus.push(("plane".into(), helicoid_sample(&HelicoidPatch::flat(cfg, 0.0), 64, 64).unwrap(), 0.0));
    let ts = radius_grid(1.0, 20);
    let mut failures = Vec::new();
    for (name, m, th) in &corpus {
        assert!(m.is_disk_type() && m.contains_axis(), "{name}");
        let slack = 2.0 * m.max_edge_length();
        let bad = slice_lengths(m, &ts, *th).unwrap().violations(slack);
        if !bad.is_empty() {
            failures.push(format!("{name} at {bad:?}"));
        }
    }
    let neck_kind =
        Competitor::HalfDisksWithNeck { theta, epsilon: 0.01, angular_segments: 512, rings: 32, band_rows: 32 };
    let neck = generate_competitor(&neck_kind, &cfg).unwrap();
    let neck_bad = slice_lengths(&neck, &ts, theta).unwrap().violations(2.0 * neck.max_edge_length());
    outcome(
        failures.is_empty() && !neck_bad.is_empty(),
        format!(
            "{} corpus meshes, violations: {}; neck violates at {} of 20 radii",
            corpus.len(),
            if failures.is_empty() { "none".to_string() } else { failures.join(", ") },
            neck_bad.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let cfg = ExperimentConfig { mesh_resolution: [128, 128], ..Default::default() };
    let (start, patch) = minimize_setup(&cfg).unwrap();
    let (m, report) = minimize_area(&start, &cfg.solver).unwrap();
    let hd = hausdorff_to_patch(&m, &patch, 100).unwrap().value();
    let exact = patch.area_closed_form();
    let rel = (m.area() - exact).abs() / exact;
    outcome(
        hd < 1e-2 && rel < 5e-3,
        format!(
            "{} iterations ({}), Hausdorff {hd:.3e}, area {:.6} vs {exact:.6} ({:.3}%)",
            report.iterations,
            report.termination,
            m.area(),
            100.0 * rel
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut cfg = ExperimentConfig {
        mesh_resolution: [48, 48],
        minimize: MinimizeSettings {
            boundary: BoundaryMode::FreeOnS,
            init: Initialization::PerturbedHelicoid { amplitude: 0.1, profile: Some(BumpProfile::FreeBoundary) },
            ..Default::default()
        },
        ..Default::default()
    };
    let mut worst = 0.0f64;
    let mut all_converged = true;
    for seed in 0..2 {
        cfg.seed = seed;
        let (start, _) = minimize_setup(&cfg).unwrap();
        let (m, report) = minimize_area(&start, &cfg.solver).unwrap();
        all_converged &= report.converged;
        for a in meeting_angle_profile(&m).unwrap() {
            worst = worst.max((a.angle - FRAC_PI_2).abs());
        }
    }
    outcome(all_converged && worst < 2e-2, format!("converged {all_converged}, worst |angle - pi/2| = {worst:.3e} rad"))
}

fn criterion_8() -> Outcome {
    let etas = eta_grid(64);
    let mut parts = Vec::new();
    let mut ok = true;
    for aspect in [0.5, 1.0, 2.0] {
        let cfg = CylinderConfig::new(1.0, aspect).unwrap();
        let grid = theta_grid(64, 2.5 * aspect);
        let cell = grid[1] - grid[0];
        let table = positivity_region(&cfg, &grid, &etas).unwrap();
        // Spot-check the sign of a few rows against the oracle.
        for row in table.rows.iter().step_by(16) {
            let a = aspect / row.theta;
            let eta = etas[0];
            let h = mean_curvature(&forms(
                &partials5(&|z, f| omega(1.0, eta, a, z, f), 0.0, eta, 1e-3),
                &omega_normal(1.0, eta, a, 0.0, eta, 1e-3),
            ));
            assert_eq!(h >= 0.0, row.min_h >= 0.0, "theta {}", row.theta);
        }
        match table.boundary() {
            Some(b) => {
                ok &= (b - aspect).abs() <= cell;
                parts.push(format!("h/r={aspect}: boundary {b:.4} vs {aspect} (cell {cell:.4})"));
            }
            None => {
                ok = false;
                parts.push(format!("h/r={aspect}: no sign change"));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn criterion_9() -> Outcome {
    let cfg = CylinderConfig::unit();
    let mut wrong = Vec::new();
    for (theta, expected) in
        [(0.0, true), (FRAC_PI_4, true), (FRAC_PI_2, true), (PI, true), (1.1 * PI, false), (1.5 * PI, false)]
    {
        let patch =
            if theta == 0.0 { HelicoidPatch::flat(cfg, 0.0) } else { HelicoidPatch::new(cfg, theta, 0.0).unwrap() };
        let (h1, h2) = patch.boundary_helices(256).unwrap();
        let (t0, t1) = patch.top_diameter();
        let (b0, b1) = patch.bottom_diameter();
        let res = monotone_projection_check(&[t0, t1], &[b0, b1], &h1, &h2).unwrap();
        if res.passed != expected {
            wrong.push(format!("theta={theta:.4}"));
        }
    }
    outcome(wrong.is_empty(), if wrong.is_empty() { "all six angles as expected".into() } else { wrong.join(", ") })
}

fn criterion_10() -> Outcome {
    let cfg = ExperimentConfig { mesh_resolution: [16, 16], seed: 7, ..Default::default() };
    let mut compared = 0;
    let mut differing = Vec::new();
    for command in [
        Command::AreaCompare,
        Command::Slice,
        Command::Minimize,
        Command::PhaseDiagram,
        Command::Foliation,
        Command::ProjectionCheck,
    ] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let sa = run(command, &cfg, a.path(), 1).unwrap();
        run(command, &cfg, b.path(), 1).unwrap();
        for f in sa.files.iter().filter(|f| f.ends_with(".csv")) {
            compared += 1;
            if fs::read(a.path().join(f)).unwrap() != fs::read(b.path().join(f)).unwrap() {
                differing.push(format!("{}/{f}", command.name()));
            }
        }
    }
    outcome(differing.is_empty() && compared > 0, format!("{compared} CSV files compared, {} differ", differing.len()))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Option<f64>);
    let criteria: [Criterion; 10] = [
        ("fundamental forms vs finite differences", criterion_1, Some(5.0)),
        ("mean curvature vs five-point stencil", criterion_2, Some(5.0)),
        ("mean curvature spot value", criterion_3, None),
        ("helicoid area closed form vs quadrature", criterion_4, None),
        ("slicing inequality corpus", criterion_5, Some(30.0)),
        ("minimizer convergence at 128x128", criterion_6, Some(60.0)),
        ("free-boundary meeting angle", criterion_7, None),
        ("phase boundary vs theta = h/r", criterion_8, None),
        ("monotone projection", criterion_9, None),
        ("determinism", criterion_10, None),
    ];
    let mut failed = 0;
    for (k, (name, f, budget)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let mut o = f();
        let secs = t0.elapsed().as_secs_f64();
        if let Some(limit) = budget {
            if secs >= *limit {
                o.passed = false;
            }
            o.detail.push_str(&format!("; {secs:.2} s (limit {limit} s)"));
        } else {
            o.detail.push_str(&format!("; {secs:.2} s"));
        }
        if !o.passed {
            failed += 1;
        }
        println!("{} criterion {:>2}: {name}: {}", if o.passed { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
