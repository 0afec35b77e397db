//! Helices on the side of the cylinder: development, rotation angle, total
//! curvature and the shortest helical arc between two points.

use std::f64::consts::{FRAC_PI_2, PI};

use helicoid::cylinder::{develop, geodesic_length, geodesic_on_side, rotation_angle, total_curvature};
use helicoid::{CylinderConfig, SideCurve, SidePoint};

fn main() -> helicoid::Result<()> {
    let cfg = CylinderConfig::new(1.0, 2.0)?;
    let helix = SideCurve::helix(cfg, SidePoint::new(0.0, 0.0), 1.5 * PI, 2.0, 256)?;
    let flat = develop(&helix)?;
    println!("helix length        {:.9}", helix.length()?);
    println!("developed length    {:.9}", flat.length());
    println!("rotation angle      {:.9} (3π/2 = {:.9})", rotation_angle(&helix)?, 1.5 * PI);
    println!("total curvature     {:.9}", total_curvature(&helix)?);

    let p = SidePoint::new(0.0, 0.5);
    let q = SidePoint::new(FRAC_PI_2, 1.5);
    for winding in -1..=1 {
        let g = geodesic_on_side(p, q, &cfg, winding)?;
        println!(
            "winding {winding:+}: length {:.9}, closed form {:.9}",
            g.length()?,
            geodesic_length(p, q, &cfg, winding)
        );
    }
    Ok(())
}
