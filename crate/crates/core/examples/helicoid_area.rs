//! Area of the compact helicoid: closed form against quadrature, and the
//! boundary data of the patch.

use std::f64::consts::{FRAC_PI_2, PI};

use helicoid::{CylinderConfig, HelicoidPatch};

fn main() -> helicoid::Result<()> {
    for (r, h, theta) in [(1.0, 1.0, FRAC_PI_2), (1.0, PI, PI), (0.5, 2.0, 3.0)] {
        let patch = HelicoidPatch::new(CylinderConfig::new(r, h)?, theta, 0.0)?;
        println!(
            "r={r} h={h:.6} θ={theta:.6}  b={:.6}  closed {:.12}  quadrature {:.12}",
            patch.pitch_param().unwrap(),
            patch.area_closed_form(),
            patch.area_quadrature(1e-13)
        );
    }
    println!("π(√2 + ln(1+√2)) = {:.12}", PI * (2f64.sqrt() + (1.0 + 2f64.sqrt()).ln()));

    let patch = HelicoidPatch::new(CylinderConfig::unit(), FRAC_PI_2, 0.0)?;
    let (a, b) = patch.bottom_diameter();
    let (c, d) = patch.top_diameter();
    println!("d₂ = {:?} → {:?}", a.as_slice(), b.as_slice());
    println!("d₁ = {:?} → {:?}", c.as_slice(), d.as_slice());
    for t in [0.25, 0.5, 1.0] {
        println!("slice length at t={t}: {:.9}", patch.slice_lengths_reference(t)?);
    }
    Ok(())
}
