//! Whether the boundary projects monotonically onto a convex plane curve, as
//! a function of the rotation angle.

use std::f64::consts::PI;

use helicoid::surface::monotone_projection_check;
use helicoid::{CylinderConfig, HelicoidPatch};

fn main() -> helicoid::Result<()> {
    let cfg = CylinderConfig::unit();
    for k in 0..=8 {
        let theta = PI * k as f64 / 4.0;
        let patch = if theta == 0.0 { HelicoidPatch::flat(cfg, 0.0) } else { HelicoidPatch::new(cfg, theta, 0.0)? };
        let (h1, h2) = patch.boundary_helices(256)?;
        let (t0, t1) = patch.top_diameter();
        let (b0, b1) = patch.bottom_diameter();
        let c = monotone_projection_check(&[t0, t1], &[b0, b1], &h1, &h2)?;
        println!(
            "θ = {:.3}π: passed {:5}  turning {:+.4}  sign changes {}  crossings {}",
            theta / PI,
            c.passed,
            c.total_turning,
            c.sign_changes,
            c.self_intersections
        );
    }
    Ok(())
}
