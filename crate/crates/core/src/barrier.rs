//! The screw-motion barrier surface `Ω`.
//!
//! `Ω` sweeps a circular arc of radius `R` and central angle `2η` (with
//! `sin η = r / R`) by the screw motion of rise `a` per radian:
//!
//! ```text
//! Ω(ζ, φ) = (−R sin(ζ−η+φ) + R cos η sin ζ,
//!             R cos(ζ−η+φ) − R cos η cos ζ,
//!             a ζ),          ζ ∈ [0, θ], φ ∈ [0, 2η]
//! ```
//!
//! The arc endpoints `φ = 0` and `φ = 2η` ride on the two boundary helices of
//! `H_C^θ` when `a = h/θ`. The unit normal is `Ω_ζ × Ω_φ / |Ω_ζ × Ω_φ|`; at
//! the arc midpoint `φ = η` it points horizontally toward the axis, i.e.
//! toward the helicoid ruling at that height. The reflected surface `Ω′` is
//! `Ω` rotated by `π` about the axis, which swaps the side of `H_C^θ` it
//! bulges to.

use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::cylinder::CylinderConfig;
use crate::error::{Error, Result};
use crate::Vec3;

const DOMAIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierPatch {
    cfg: CylinderConfig,
    arc_radius: f64,
    eta: f64,
    screw: f64,
    reflected: bool,
}

/// Coefficients of the first and second fundamental forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalForms {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub b11: f64,
    pub b12: f64,
    pub b22: f64,
}

impl FundamentalForms {
    /// `½ (g22 b11 − 2 g12 b12 + g11 b22) / (g11 g22 − g12²)`.
    pub fn mean_curvature(&self) -> f64 {
        0.5 * (self.g22 * self.b11 - 2.0 * self.g12 * self.b12 + self.g11 * self.b22)
            / (self.g11 * self.g22 - self.g12 * self.g12)
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.g11, self.g12, self.g22, self.b11, self.b12, self.b22]
    }
}

impl BarrierPatch {
    /// Barrier with half central angle `eta ∈ (0, π/2]` and screw parameter
    /// `a > 0`; the arc radius is `R = r / sin η`.
    pub fn new(cfg: CylinderConfig, eta: f64, screw: f64) -> Result<Self> {
        if !(eta > 0.0 && eta <= FRAC_PI_2 + DOMAIN_TOL) {
            return Err(Error::Domain(format!("eta = {eta} outside (0, π/2]")));
        }
        if !(screw.is_finite() && screw > 0.0) {
            return Err(Error::Domain(format!("screw parameter must be positive, got {screw}")));
        }
        let eta = eta.min(FRAC_PI_2);
        Ok(Self { cfg, arc_radius: cfg.radius() / eta.sin(), eta, screw, reflected: false })
    }

    /// Barrier from the arc radius `R ≥ r`, deriving `η = asin(r / R)`.
    pub fn from_arc_radius(cfg: CylinderConfig, arc_radius: f64, screw: f64) -> Result<Self> {
        if !(arc_radius >= cfg.radius()) {
            return Err(Error::Domain(format!(
                "arc radius {arc_radius} smaller than cylinder radius {}",
                cfg.radius()
            )));
        }
        let mut b = Self::new(cfg, (cfg.radius() / arc_radius).asin(), screw)?;
        b.arc_radius = arc_radius;
        Ok(b)
    }

    /// Barrier spanning the helices of `H_C^θ`, i.e. `a = h / θ`.
    pub fn for_rotation(cfg: CylinderConfig, eta: f64, theta: f64) -> Result<Self> {
        if !(theta > 0.0) {
            return Err(Error::Domain(format!("theta must be positive, got {theta}")));
        }
        Self::new(cfg, eta, cfg.height() / theta)
    }

    /// The reflected surface `Ω′`.
    pub fn reflected(mut self) -> Self {
        self.reflected = !self.reflected;
        self
    }

    pub fn is_reflected(&self) -> bool {
        self.reflected
    }

    pub fn cfg(&self) -> &CylinderConfig {
        &self.cfg
    }

    pub fn arc_radius(&self) -> f64 {
        self.arc_radius
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn screw(&self) -> f64 {
        self.screw
    }

    /// Upper end `θ = h / a` of the `ζ` range.
    pub fn theta(&self) -> f64 {
        self.cfg.height() / self.screw
    }

    fn check_domain(&self, zeta: f64, phi: f64) -> Result<()> {
        let theta = self.theta();
        if zeta < -DOMAIN_TOL || zeta > theta + DOMAIN_TOL {
            return Err(Error::Domain(format!("zeta = {zeta} outside [0, {theta}]")));
        }
        if phi < -DOMAIN_TOL || phi > 2.0 * self.eta + DOMAIN_TOL {
            return Err(Error::Domain(format!("phi = {phi} outside [0, {}]", 2.0 * self.eta)));
        }
        Ok(())
    }

    /// Parametrization without the domain check; used by finite-difference
    /// stencils that step slightly past the domain edge.
    pub fn position(&self, zeta: f64, phi: f64) -> Vec3 {
        let r_ = self.arc_radius;
        let ce = self.eta.cos();
        let psi = zeta - self.eta + phi;
        let p =
            Vec3::new(-r_ * psi.sin() + r_ * ce * zeta.sin(), r_ * psi.cos() - r_ * ce * zeta.cos(), self.screw * zeta);
        if self.reflected {
            Vec3::new(-p.x, -p.y, p.z)
        } else {
            p
        }
    }

    pub fn evaluate_omega(&self, zeta: f64, phi: f64) -> Result<Vec3> {
        self.check_domain(zeta, phi)?;
        Ok(self.position(zeta, phi))
    }

    /// `a² + R² cos²η sin²(η−φ)`, the squared length of `Ω_ζ × Ω_φ` over `R²`.
    fn normal_denominator_sq(&self, phi: f64) -> f64 {
        let a = self.screw;
        let r_ = self.arc_radius;
        let ce = self.eta.cos();
        let s = (self.eta - phi).sin();
        a * a + r_ * r_ * ce * ce * s * s
    }

    /// Unit normal `Ω_ζ × Ω_φ / |Ω_ζ × Ω_φ|`.
    pub fn unit_normal(&self, zeta: f64, phi: f64) -> Result<Vec3> {
        self.check_domain(zeta, phi)?;
        let a = self.screw;
        let psi = zeta - self.eta + phi;
        let n = Vec3::new(a * psi.sin(), -a * psi.cos(), self.arc_radius * self.eta.cos() * (self.eta - phi).sin())
            / self.normal_denominator_sq(phi).sqrt();
        Ok(if self.reflected { Vec3::new(-n.x, -n.y, n.z) } else { n })
    }

    /// Closed-form coefficients of the first and second fundamental forms.
    pub fn fundamental_forms(&self, zeta: f64, phi: f64) -> Result<FundamentalForms> {
        self.check_domain(zeta, phi)?;
        let a = self.screw;
        let r2 = self.arc_radius * self.arc_radius;
        let ce = self.eta.cos();
        let cd = (self.eta - phi).cos();
        let den = self.normal_denominator_sq(phi).sqrt();
        let ar = a * self.arc_radius;
        Ok(FundamentalForms {
            g11: r2 * (1.0 + ce * ce - 2.0 * ce * cd) + a * a,
            g12: r2 - r2 * ce * cd,
            g22: r2,
            b11: ar * (1.0 - ce * cd) / den,
            b12: ar / den,
            b22: ar / den,
        })
    }

    /// `H(Ω) = a (a² − r² + R²(1 − cos η cos(η−φ))) / (2R (a² + R² cos²η sin²(η−φ))^{3/2})`.
    ///
    /// Independent of `ζ`; the value for `Ω′` is the same with its own normal.
    pub fn mean_curvature(&self, zeta: f64, phi: f64) -> Result<f64> {
        self.check_domain(zeta, phi)?;
        Ok(self.mean_curvature_at(phi))
    }

    fn mean_curvature_at(&self, phi: f64) -> f64 {
        let a = self.screw;
        let r = self.cfg.radius();
        let r_ = self.arc_radius;
        let num = a * (a * a - r * r + r_ * r_ * (1.0 - self.eta.cos() * (self.eta - phi).cos()));
        num / (2.0 * r_ * self.normal_denominator_sq(phi).powf(1.5))
    }

    /// The bracket `a² − r² + R²(1 − cos η cos(η−φ))` that decides the sign of
    /// `H(Ω)`.
    pub fn curvature_numerator(&self, phi: f64) -> f64 {
        let a = self.screw;
        let r = self.cfg.radius();
        let r_ = self.arc_radius;
        a * a - r * r + r_ * r_ * (1.0 - self.eta.cos() * (self.eta - phi).cos())
    }
}

/// One row of the positivity table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseRow {
    pub theta: f64,
    pub h_over_r: f64,
    #[serde(rename = "min_H")]
    pub min_h: f64,
    pub positive: bool,
}

/// Sign of `min_{η, φ} H(Ω)` for each sampled rotation angle.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTable {
    pub rows: Vec<PhaseRow>,
}

/// Number of `φ` samples taken per `η` in [`positivity_region`]; odd so the
/// arc midpoint `φ = η` is included.
pub const PHI_SAMPLES: usize = 33;

/// For each `θ`, the minimum of `H(Ω)` over the `η` grid (and `φ ∈ [0, 2η]`)
/// with `a = h/θ`.
///
/// `θ = 0` is the untwisted extrusion of the arc, whose mean curvature is
/// `1/(2R) > 0`.
pub fn positivity_region(cfg: &CylinderConfig, theta_grid: &[f64], eta_grid: &[f64]) -> Result<PhaseTable> {
    if theta_grid.is_empty() || eta_grid.is_empty() {
        return Err(Error::InvalidConfig("theta and eta grids must be nonempty".into()));
    }
    let r = cfg.radius();
    let mut rows = Vec::with_capacity(theta_grid.len());
    for &theta in theta_grid {
        if !(theta >= 0.0 && theta.is_finite()) {
            return Err(Error::Domain(format!("theta = {theta} must be finite and nonnegative")));
        }
        let mut min_h = f64::INFINITY;
        for &eta in eta_grid {
            if theta == 0.0 {
                min_h = min_h.min(eta.min(FRAC_PI_2).sin() / (2.0 * r));
                continue;
            }
            let patch = BarrierPatch::for_rotation(*cfg, eta, theta)?;
            for k in 0..PHI_SAMPLES {
                let phi = 2.0 * patch.eta * k as f64 / (PHI_SAMPLES - 1) as f64;
                min_h = min_h.min(patch.mean_curvature_at(phi));
            }
        }
        rows.push(PhaseRow { theta, h_over_r: cfg.aspect(), min_h, positive: min_h >= 0.0 });
    }
    Ok(PhaseTable { rows })
}

/// `η` grid `η_k = (k+1) · (π/2) / n`, `k = 0..n`.
pub fn eta_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| FRAC_PI_2 * (k + 1) as f64 / n as f64).collect()
}

/// Largest `θ` for which `H(Ω) ≥ 0` on the whole `η` grid, from the closed
/// form: at `φ = η` the bracket is `a² − r² + r²/(1 + cos η)`, smallest at the
/// smallest `η`.
pub fn positivity_threshold(cfg: &CylinderConfig, eta_min: f64) -> f64 {
    let c = eta_min.cos();
    cfg.aspect() * ((1.0 + c) / c).sqrt()
}

impl PhaseTable {
    /// Midpoint between the last positive and the first non-positive `θ`
    /// (rows sorted by `θ`). `None` when the sign never changes.
    pub fn boundary(&self) -> Option<f64> {
        let mut rows = self.rows.clone();
        rows.sort_by(|a, b| a.theta.total_cmp(&b.theta));
        rows.windows(2).find(|w| w[0].positive && !w[1].positive).map(|w| 0.5 * (w[0].theta + w[1].theta))
    }

    /// Writes `theta,h_over_r,min_H,positive`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["theta", "h_over_r", "min_H", "positive"])?;
        for row in &self.rows {
            w.write_record([
                format!("{:.12e}", row.theta),
                format!("{:.12e}", row.h_over_r),
                format!("{:.12e}", row.min_h),
                row.positive.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Uniform `θ` grid of `n` cells on `(0, max]`.
pub fn theta_grid(n: usize, max: f64) -> Vec<f64> {
    (1..=n).map(|k| max * k as f64 / n as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_couples_eta_and_radius() {
        let cfg = CylinderConfig::new(0.7, 1.0).unwrap();
        let b = BarrierPatch::new(cfg, 0.4, 1.0).unwrap();
        assert!((b.eta().sin() - 0.7 / b.arc_radius()).abs() < 1e-12);
        let c = BarrierPatch::from_arc_radius(cfg, 2.0, 1.0).unwrap();
        assert!((c.eta().sin() * 2.0 - 0.7).abs() < 1e-12);
        assert!(BarrierPatch::new(cfg, 0.0, 1.0).is_err());
        assert!(BarrierPatch::new(cfg, 1.7, 1.0).is_err());
        assert!(BarrierPatch::new(cfg, 0.3, 0.0).is_err());
        assert!(BarrierPatch::from_arc_radius(cfg, 0.5, 1.0).is_err());
    }

    #[test]
    fn arc_endpoints_ride_on_side() {
        let cfg = CylinderConfig::new(1.2, 2.0).unwrap();
        let b = BarrierPatch::new(cfg, 0.6, 1.5).unwrap();
        for k in 0..20 {
            let zeta = b.theta() * k as f64 / 19.0;
            for phi in [0.0, 2.0 * b.eta()] {
                let p = b.evaluate_omega(zeta, phi).unwrap();
                assert!((p.x.hypot(p.y) - 1.2).abs() < 1e-10);
            }
            let p0 = b.evaluate_omega(zeta, 0.0).unwrap();
            assert!((p0 - cfg.side_point(zeta, 1.5 * zeta)).norm() < 1e-12);
        }
        let mid = b.evaluate_omega(0.0, b.eta()).unwrap();
        assert_eq!(mid.z, 0.0);
    }

    #[test]
    fn domain_violations_rejected() {
        let b = BarrierPatch::new(CylinderConfig::unit(), 0.5, 1.0).unwrap();
        assert!(b.evaluate_omega(-0.1, 0.2).is_err());
        assert!(b.evaluate_omega(1.1, 0.2).is_err());
        assert!(b.evaluate_omega(0.5, 1.2).is_err());
    }

    #[test]
    fn spot_value_half_inverse_radius() {
        for r in [0.5, 1.0, 3.0] {
            let cfg = CylinderConfig::new(r, 2.0).unwrap();
            let b = BarrierPatch::new(cfg, FRAC_PI_2, r).unwrap();
            assert!((b.arc_radius() - r).abs() < 1e-15);
            let h = b.mean_curvature(0.3, FRAC_PI_2).unwrap();
            assert!((h - 1.0 / (2.0 * r)).abs() < 1e-12);
        }
    }

    #[test]
    fn g22_is_arc_radius_squared_and_b12_tends_to_radius() {
        let cfg = CylinderConfig::unit();
        let b = BarrierPatch::new(cfg, 0.8, 1.3).unwrap();
        let f = b.fundamental_forms(0.2, 0.5).unwrap();
        assert!((f.g22 - b.arc_radius().powi(2)).abs() < 1e-14);
        let big = BarrierPatch::new(cfg, 0.8, 1e6).unwrap();
        let f = big.fundamental_forms(0.0, 0.5).unwrap();
        assert!((f.b12 - big.arc_radius()).abs() < 1e-9);
        assert_eq!(f.b12, f.b22);
    }

    #[test]
    fn closed_form_h_matches_form_combination() {
        let cfg = CylinderConfig::new(1.0, 1.0).unwrap();
        for (eta, a, phi) in [(0.3, 0.7, 0.1), (1.2, 2.0, 1.9), (FRAC_PI_2, 0.5, 0.4)] {
            let b = BarrierPatch::new(cfg, eta, a).unwrap();
            let f = b.fundamental_forms(0.0, phi).unwrap();
            let h = b.mean_curvature(0.0, phi).unwrap();
            assert!((f.mean_curvature() - h).abs() < 1e-12 * h.abs().max(1.0));
        }
    }

    #[test]
    fn normal_points_toward_axis_at_midpoint() {
        let b = BarrierPatch::new(CylinderConfig::unit(), 0.7, 1.0).unwrap();
        for zeta in [0.0, 0.4, 0.9] {
            let p = b.evaluate_omega(zeta, b.eta()).unwrap();
            let n = b.unit_normal(zeta, b.eta()).unwrap();
            let radial = Vec3::new(p.x, p.y, 0.0).normalize();
            assert!(n.dot(&radial) < -0.999);
        }
        let refl = b.reflected();
        let p = refl.evaluate_omega(0.4, refl.eta()).unwrap();
        let n = refl.unit_normal(0.4, refl.eta()).unwrap();
        assert!(n.dot(&Vec3::new(p.x, p.y, 0.0).normalize()) < -0.999);
    }

    #[test]
    fn positivity_examples() {
        let cfg = CylinderConfig::unit();
        let etas = eta_grid(16);
        let t = positivity_region(&cfg, &[0.0, 0.5, 1.0], &etas).unwrap();
        assert!(t.rows.iter().all(|r| r.positive));
        // a = r: the bracket is R²(1 − cos η cos(η−φ)) ≥ 0.
        for &eta in &etas {
            let b = BarrierPatch::new(cfg, eta, 1.0).unwrap();
            for k in 0..PHI_SAMPLES {
                let phi = 2.0 * eta * k as f64 / (PHI_SAMPLES - 1) as f64;
                assert!(b.curvature_numerator(phi) >= 0.0);
            }
        }
        // θ = 2 h/r, η small: a² − r²/2 < 0 dominates.
        let t = positivity_region(&cfg, &[2.0], &[0.01]).unwrap();
        assert!(!t.rows[0].positive);
        assert!(positivity_region(&cfg, &[], &etas).is_err());
    }

    #[test]
    fn boundary_and_csv() {
        let cfg = CylinderConfig::unit();
        let etas = eta_grid(64);
        let t = positivity_region(&cfg, &theta_grid(64, 2.5), &etas).unwrap();
        let edge = t.boundary().unwrap();
        let expected = positivity_threshold(&cfg, etas[0]);
        assert!((edge - expected).abs() <= 2.5 / 64.0);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("theta,h_over_r,min_H,positive\n"));
        assert_eq!(text.lines().count(), 65);
    }
}
