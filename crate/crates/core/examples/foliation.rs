//! Intersections of a perturbed helicoid with the rotated helicoids that
//! foliate the cylinder.

use std::f64::consts::{FRAC_PI_2, PI};

use helicoid::surface::{foliation_leaves, helicoid_sample, perturb_along_normal, BumpProfile, Perturbation};
use helicoid::{CylinderConfig, HelicoidPatch};

fn main() -> helicoid::Result<()> {
    let patch = HelicoidPatch::new(CylinderConfig::unit(), FRAC_PI_2, 0.0)?;
    let m = helicoid_sample(&patch, 32, 32)?;
    let m = perturb_along_normal(&m, &patch, &Perturbation::new(BumpProfile::AxisPreserving, 0.05, 0))?;
    for k in 0..8 {
        let alpha = PI * k as f64 / 8.0;
        let set = foliation_leaves(&m, &patch, alpha)?;
        let attached = set.leaves.iter().filter(|l| l.attachment.touches_boundary()).count();
        println!(
            "α={alpha:.4}: {} leaves, {} reach the boundary, {} closed, degenerate {}",
            set.leaves.len(),
            attached,
            set.closed_interior,
            set.degenerate
        );
    }
    Ok(())
}
