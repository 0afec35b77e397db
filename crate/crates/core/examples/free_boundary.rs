//! With the side boundary free on the cylinder, the relaxed surface meets the
//! cylinder orthogonally.

use std::f64::consts::FRAC_PI_2;

use helicoid::surface::{
    helicoid_sample, meeting_angle_profile, minimize_area, perturb_along_normal, BumpProfile, Perturbation,
};
use helicoid::{CylinderConfig, HelicoidPatch, SolverOptions};

fn worst(m: &helicoid::SurfaceMesh) -> helicoid::Result<f64> {
    Ok(meeting_angle_profile(m)?.iter().map(|a| (a.angle - FRAC_PI_2).abs()).fold(0.0, f64::max))
}

fn main() -> helicoid::Result<()> {
    let patch = HelicoidPatch::new(CylinderConfig::unit(), FRAC_PI_2, 0.0)?;
    let start = helicoid_sample(&patch, 48, 48)?;
    let start = perturb_along_normal(&start, &patch, &Perturbation::new(BumpProfile::FreeBoundary, 0.08, 5))?;
    println!("initial meeting-angle residual {:.3e}", worst(&start)?);
    let (m, report) = minimize_area(&start, &SolverOptions::default())?;
    println!("{} iterations, converged {}", report.iterations, report.converged);
    println!("final meeting-angle residual   {:.3e}", worst(&m)?);
    Ok(())
}
