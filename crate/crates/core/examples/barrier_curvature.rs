//! Fundamental forms and mean curvature of the screw-motion barrier surface.

use std::f64::consts::FRAC_PI_2;

use helicoid::{BarrierPatch, CylinderConfig};

fn main() -> helicoid::Result<()> {
    let cfg = CylinderConfig::unit();
    // Quarter arc (η = π/2) with screw parameter a = r: H = 1/(2r) at φ = π/2.
    let omega = BarrierPatch::new(cfg, FRAC_PI_2, 1.0)?;
    println!("H(0.3, π/2) = {:.15}", omega.mean_curvature(0.3, FRAC_PI_2)?);

    let omega = BarrierPatch::for_rotation(cfg, 0.6, 1.2)?;
    println!("R = {:.6}, a = {:.6}, θ = {:.6}", omega.arc_radius(), omega.screw(), omega.theta());
    for k in 0..=4 {
        let phi = 2.0 * omega.eta() * k as f64 / 4.0;
        let f = omega.fundamental_forms(0.1, phi)?;
        println!(
            "φ={phi:.4}  g=({:.5}, {:.5}, {:.5})  b=({:.5}, {:.5}, {:.5})  H={:.6}",
            f.g11,
            f.g12,
            f.g22,
            f.b11,
            f.b12,
            f.b22,
            omega.mean_curvature(0.1, phi)?
        );
    }
    let n = omega.unit_normal(0.1, omega.eta())?;
    println!("normal at the arc midpoint: {:?}", n.as_slice());
    Ok(())
}
