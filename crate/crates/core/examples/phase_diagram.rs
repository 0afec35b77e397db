//! Where the barrier mean curvature stays nonnegative, as a function of the
//! rotation angle, for a few aspect ratios.

use helicoid::barrier::{eta_grid, positivity_region, positivity_threshold, theta_grid};
use helicoid::CylinderConfig;

fn main() -> helicoid::Result<()> {
    let etas = eta_grid(64);
    for aspect in [0.5, 1.0, 2.0] {
        let cfg = CylinderConfig::new(1.0, aspect)?;
        let table = positivity_region(&cfg, &theta_grid(64, 2.5 * aspect), &etas)?;
        println!(
            "h/r = {aspect}: boundary θ ≈ {:.4}, closed-form threshold {:.4}",
            table.boundary().unwrap_or(f64::NAN),
            positivity_threshold(&cfg, etas[0])
        );
    }
    let cfg = CylinderConfig::unit();
    let table = positivity_region(&cfg, &theta_grid(8, 2.0), &etas)?;
    table.write_csv(std::io::stdout())?;
    Ok(())
}
