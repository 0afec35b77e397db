//! Competitor surfaces: areas against their analytic values and topology.

use std::f64::consts::FRAC_PI_2;

use helicoid::surface::{generate_competitor, Competitor};
use helicoid::CylinderConfig;

fn main() -> helicoid::Result<()> {
    let cfg = CylinderConfig::unit();
    let theta = FRAC_PI_2;
    let kinds = [
        Competitor::HelicoidSample { theta, nu: 64, nv: 64 },
        Competitor::HalfDisksWithNeck { theta, epsilon: 0.01, angular_segments: 512, rings: 32, band_rows: 16 },
        Competitor::PlaneWithHelicoidalStrip { theta, delta: 0.2, nu: 64, nv: 80 },
        Competitor::PlaneWithSideTriangles { theta, tau: 0.05, nu: 64, nv: 40 },
        Competitor::GenusOneAxis { theta, nu: 32, nv: 32 },
    ];
    println!("{:<30} {:>12} {:>12} {:>4} {:>5} {:>5}", "kind", "mesh area", "analytic", "χ", "genus", "axis");
    for kind in &kinds {
        let m = generate_competitor(kind, &cfg)?;
        let analytic = kind.analytic_area(&cfg).map(|a| format!("{a:.6}")).unwrap_or_else(|| "-".into());
        println!(
            "{:<30} {:>12.6} {:>12} {:>4} {:>5} {:>5}",
            kind.name(),
            m.area(),
            analytic,
            m.euler_characteristic(),
            m.genus(),
            m.contains_axis()
        );
    }
    Ok(())
}
