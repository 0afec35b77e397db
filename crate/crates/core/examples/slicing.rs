//! Slice lengths by coaxial cylinders: the helicoid satisfies the slicing
//! inequality, the axis-free neck surface does not.

use std::f64::consts::FRAC_PI_2;

use helicoid::surface::{generate_competitor, radius_grid, slice_lengths, transversality_profile, Competitor};
use helicoid::CylinderConfig;

fn main() -> helicoid::Result<()> {
    let cfg = CylinderConfig::unit();
    let theta = FRAC_PI_2;
    let ts = radius_grid(1.0, 10);
    for kind in [
        Competitor::HelicoidSample { theta, nu: 64, nv: 64 },
        Competitor::HalfDisksWithNeck { theta, epsilon: 0.01, angular_segments: 512, rings: 32, band_rows: 16 },
    ] {
        let m = generate_competitor(&kind, &cfg)?;
        let profile = slice_lengths(&m, &ts, theta)?;
        let trans = transversality_profile(&m, &ts)?;
        println!("{}", kind.name());
        println!("  {:>6} {:>10} {:>10} {:>5} {:>8}", "t", "measured", "reference", "comp", "|∇d|min");
        for (e, tr) in profile.entries.iter().zip(&trans.entries) {
            println!(
                "  {:>6.3} {:>10.6} {:>10.6} {:>5} {:>8.4}",
                e.t,
                e.measured_length,
                e.reference_length,
                e.component_count,
                tr.min_gradient.unwrap_or(f64::NAN)
            );
        }
        println!("  violations (slack 2·edge): {:?}", profile.violations(2.0 * m.max_edge_length()));
    }
    Ok(())
}
