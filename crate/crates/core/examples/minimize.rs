//! Relaxes a perturbed helicoid with pinned boundary helices and measures how
//! close the result comes to the exact patch.

use std::f64::consts::FRAC_PI_2;

use helicoid::surface::{
    hausdorff_to_patch, helicoid_sample, minimize_area, perturb_along_normal, BumpProfile, Perturbation,
};
use helicoid::{CylinderConfig, HelicoidPatch, SolverOptions};

fn main() -> helicoid::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(48);
    let patch = HelicoidPatch::new(CylinderConfig::unit(), FRAC_PI_2, 0.0)?;
    let start = helicoid_sample(&patch, n, n)?.pin_side_boundary().release_axis();
    let start = perturb_along_normal(&start, &patch, &Perturbation::new(BumpProfile::Interior, 0.1, 1))?;
    println!("initial area {:.9}, exact {:.9}", start.area(), patch.area_closed_form());
    println!("initial distance {:.3e}", hausdorff_to_patch(&start, &patch, 60)?.value());

    let (m, report) = minimize_area(&start, &SolverOptions::default())?;
    println!("{} iterations, converged {}, final area {:.9}", report.iterations, report.converged, report.final_area);
    println!("final distance {:.3e}", hausdorff_to_patch(&m, &patch, 60)?.value());
    report.write_csv(std::io::stdout())?;
    Ok(())
}
