//! Exact helicoid patches in the cylinder.
//!
//! A patch with rotation angle `θ ≠ 0` and phase `α` is
//! `X(u, v) = (u cos(v + α), u sin(v + α), b v)` with `b = h / θ`,
//! `u ∈ [-r, r]` and `v` between `0` and `θ`. For `θ = 0` the patch is the flat
//! rectangle through the axis, parametrized by height instead; the normalized
//! parametrization [`HelicoidPatch::point`] covers both cases.

use std::f64::consts::PI;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::cylinder::{CylinderConfig, SideCurve, SidePoint};
use crate::error::{Error, Result};
use crate::Vec3;

const DOMAIN_TOL: f64 = 1e-12;

/// Compact helicoid `H_C^θ` rotated by `phase` about the axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicoidPatch {
    cfg: CylinderConfig,
    theta: f64,
    phase: f64,
}

#[derive(Serialize, Deserialize)]
struct RawPatch {
    radius: f64,
    height: f64,
    theta: f64,
    phase: f64,
}

impl Serialize for HelicoidPatch {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawPatch { radius: self.cfg.radius(), height: self.cfg.height(), theta: self.theta, phase: self.phase }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HelicoidPatch {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPatch::deserialize(d)?;
        let cfg = CylinderConfig::new(raw.radius, raw.height).map_err(serde::de::Error::custom)?;
        HelicoidPatch::new(cfg, raw.theta, raw.phase).map_err(serde::de::Error::custom)
    }
}

/// Nearest point on a patch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceEstimate {
    pub distance: f64,
    /// Side of the patch relative to its normal `X_u × X_v`: `-1`, `0` or `+1`.
    pub side: i8,
    /// Ruling parameter of the nearest point.
    pub u: f64,
    /// Normalized height parameter `s ∈ [0, 1]` of the nearest point.
    pub s: f64,
}

impl HelicoidPatch {
    pub fn new(cfg: CylinderConfig, theta: f64, phase: f64) -> Result<Self> {
        if !theta.is_finite() || !phase.is_finite() {
            return Err(Error::InvalidConfig("theta and phase must be finite".into()));
        }
        Ok(Self { cfg, theta, phase })
    }

    /// The plane `H_C^0` through the axis.
    pub fn flat(cfg: CylinderConfig, phase: f64) -> Self {
        Self { cfg, theta: 0.0, phase }
    }

    pub fn cfg(&self) -> &CylinderConfig {
        &self.cfg
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn is_flat(&self) -> bool {
        self.theta == 0.0
    }

    /// Rise per radian `b = h / θ`; `None` for the plane.
    pub fn pitch_param(&self) -> Option<f64> {
        (!self.is_flat()).then(|| self.cfg.height() / self.theta)
    }

    /// Point at ruling parameter `u ∈ [-r, r]` and normalized height
    /// `s ∈ [0, 1]`.
    pub fn point(&self, u: f64, s: f64) -> Vec3 {
        let ang = s * self.theta + self.phase;
        Vec3::new(u * ang.cos(), u * ang.sin(), s * self.cfg.height())
    }

    /// Unit normal along `X_u × X_v` (for the plane, `X_u × X_z`).
    pub fn normal(&self, u: f64, s: f64) -> Vec3 {
        let ang = s * self.theta + self.phase;
        let (sn, cs) = ang.sin_cos();
        let n = match self.pitch_param() {
            Some(b) => Vec3::new(b * sn, -b * cs, u),
            None => Vec3::new(sn, -cs, 0.0),
        };
        n.normalize()
    }

    /// `X(u, v)` in the angular parametrization, `v` between `0` and `θ`.
    pub fn evaluate(&self, u: f64, v: f64) -> Result<Vec3> {
        let r = self.cfg.radius();
        if u.abs() > r + DOMAIN_TOL {
            return Err(Error::Domain(format!("u = {u} outside [-{r}, {r}]")));
        }
        if self.is_flat() {
            if v.abs() > DOMAIN_TOL {
                return Err(Error::Domain("the flat patch has no angular parameter; use `point`".into()));
            }
            return Ok(self.point(u, 0.0));
        }
        let (lo, hi) = if self.theta > 0.0 { (0.0, self.theta) } else { (self.theta, 0.0) };
        if v < lo - DOMAIN_TOL || v > hi + DOMAIN_TOL {
            return Err(Error::Domain(format!("v = {v} outside [{lo}, {hi}]")));
        }
        Ok(self.point(u, v / self.theta))
    }

    /// `θ [ r√(r²+b²) + b² ln((r + √(r²+b²)) / b) ]`, or `2rh` for the plane.
    pub fn area_closed_form(&self) -> f64 {
        let r = self.cfg.radius();
        match self.pitch_param() {
            None => 2.0 * r * self.cfg.height(),
            Some(b) => {
                let b = b.abs();
                let s = r.hypot(b);
                // ln((r + s)/b) = asinh(r/b), which stays accurate for large b.
                self.theta.abs() * (r * s + b * b * (r / b).asinh())
            }
        }
    }

    /// `∫₀¹ ∫₋ᵣʳ |X_u × X_s| du ds = 2 ∫₀ʳ √(h² + θ²u²) du` by adaptive
    /// Gauss–Legendre quadrature.
    pub fn area_quadrature(&self, tol: f64) -> f64 {
        let h = self.cfg.height();
        let th = self.theta;
        2.0 * crate::quadrature::adaptive(&|u: f64| h.hypot(th * u), 0.0, self.cfg.radius(), tol)
    }

    /// Helices `h₁` (at `u = r`) and `h₂` (at `u = -r`), each traversed from
    /// the bottom disk to the top disk.
    pub fn boundary_helices(&self, segments: usize) -> Result<(SideCurve, SideCurve)> {
        let h = self.cfg.height();
        let h1 = SideCurve::helix(self.cfg, SidePoint::new(self.phase, 0.0), self.theta, h, segments)?;
        let h2 = SideCurve::helix(self.cfg, SidePoint::new(self.phase + PI, 0.0), self.theta, h, segments)?;
        Ok((h1, h2))
    }

    /// Endpoints of the top diameter `d₁` (at `u = r`, `u = -r`).
    pub fn top_diameter(&self) -> (Vec3, Vec3) {
        let r = self.cfg.radius();
        (self.point(r, 1.0), self.point(-r, 1.0))
    }

    /// Endpoints of the bottom diameter `d₂`.
    pub fn bottom_diameter(&self) -> (Vec3, Vec3) {
        let r = self.cfg.radius();
        (self.point(r, 0.0), self.point(-r, 0.0))
    }

    /// Member `ρ_α(self)` of the rotated family, `α ∈ [0, π)`.
    pub fn rotate_family(&self, alpha: f64) -> Result<Self> {
        if !(0.0..PI).contains(&alpha) {
            return Err(Error::Domain(format!("alpha = {alpha} outside [0, π)")));
        }
        Ok(Self { phase: self.phase + alpha, ..*self })
    }

    /// `ℋ¹(H_C^θ ∩ ∂C_t) = 2√(h² + t²θ²)`.
    pub fn slice_lengths_reference(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t <= self.cfg.radius() + DOMAIN_TOL) {
            return Err(Error::Domain(format!("t = {t} outside (0, {}]", self.cfg.radius())));
        }
        Ok(2.0 * self.cfg.height().hypot(t * self.theta))
    }

    /// Distance from `p` to the patch.
    ///
    /// The patch is ruled, so for each `v` the optimal `u` is the clamped
    /// projection onto the ruling; the remaining one-dimensional problem in
    /// `v` is solved by damped Newton from a spread of seeds.
    pub fn signed_distance_estimate(&self, p: &Vec3) -> Result<DistanceEstimate> {
        let r = self.cfg.radius();
        let h = self.cfg.height();
        if self.is_flat() {
            let (sn, cs) = self.phase.sin_cos();
            let along = p.x * cs + p.y * sn;
            let u = along.clamp(-r, r);
            let s = (p.z / h).clamp(0.0, 1.0);
            let q = self.point(u, s);
            return Ok(self.finish(p, q, u, s));
        }
        let b = h / self.theta;
        let lo = self.theta.min(0.0);
        let hi = self.theta.max(0.0);
        let f = |v: f64| ruling_distance_sq(p, v, self.phase, b, r);
        let mut best: Option<(f64, f64)> = None;
        let mut any_converged = false;
        let seeds = 25;
        let mut candidates: Vec<f64> = (0..seeds).map(|k| lo + (hi - lo) * (k as f64 + 0.5) / seeds as f64).collect();
        candidates.push(lo);
        candidates.push(hi);
        for seed in candidates {
            let (v, converged) = newton_1d(&f, seed, lo, hi);
            any_converged |= converged;
            let val = f(v).0;
            if best.is_none_or(|(_, bv)| val < bv) {
                best = Some((v, val));
            }
        }
        let (v, val) = best.expect("at least one seed");
        if !any_converged {
            return Err(Error::NotConverged { best: val.max(0.0).sqrt() });
        }
        let ang = v + self.phase;
        let u = (p.x * ang.cos() + p.y * ang.sin()).clamp(-r, r);
        let s = v / self.theta;
        let q = self.point(u, s);
        Ok(self.finish(p, q, u, s))
    }

    fn finish(&self, p: &Vec3, q: Vec3, u: f64, s: f64) -> DistanceEstimate {
        let d = p - q;
        let distance = d.norm();
        let side = if distance < 1e-12 {
            0
        } else {
            let c = d.dot(&self.normal(u, s));
            if c > 1e-12 * distance {
                1
            } else if c < -1e-12 * distance {
                -1
            } else {
                0
            }
        };
        DistanceEstimate { distance, side, u, s }
    }

    pub fn from_json<R: Read>(reader: R) -> Result<Self> {
        Ok(serde_json::from_reader(reader)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Squared distance from `p` to the ruling at parameter `v`, restricted to
/// `|u| ≤ r`, with its first and second derivatives in `v`.
fn ruling_distance_sq(p: &Vec3, v: f64, phase: f64, b: f64, r: f64) -> (f64, f64, f64) {
    let (sn, cs) = (v + phase).sin_cos();
    let c = p.x * cs + p.y * sn;
    let w = -p.x * sn + p.y * cs;
    let dz = b * v - p.z;
    if c.abs() <= r {
        (w * w + dz * dz, -2.0 * w * c + 2.0 * b * dz, 2.0 * (c * c - w * w + b * b))
    } else {
        let over = c.abs() - r;
        (over * over + w * w + dz * dz, -2.0 * r * c.signum() * w + 2.0 * b * dz, 2.0 * (r * c.abs() + b * b))
    }
}

/// Damped, projected Newton iteration for a one-dimensional minimum on
/// `[lo, hi]`.
fn newton_1d<F: Fn(f64) -> (f64, f64, f64)>(f: &F, seed: f64, lo: f64, hi: f64) -> (f64, bool) {
    let span = (hi - lo).max(f64::MIN_POSITIVE);
    let mut v = seed.clamp(lo, hi);
    for _ in 0..200 {
        let (f0, g, curv) = f(v);
        let at_lo = v <= lo && g > 0.0;
        let at_hi = v >= hi && g < 0.0;
        if g.abs() < 1e-15 * (1.0 + f0.abs()) || at_lo || at_hi {
            return (v, true);
        }
        let mut step = if curv > 1e-14 { -g / curv } else { -g.signum() * 0.1 * span };
        step = step.clamp(-0.25 * span, 0.25 * span);
        let mut accepted = None;
        for _ in 0..60 {
            let cand = (v + step).clamp(lo, hi);
            let fc = f(cand).0;
            if fc <= f0 + 1e-4 * g * (cand - v) || (cand - v).abs() < 1e-16 * (1.0 + v.abs()) {
                accepted = Some(cand);
                break;
            }
            step *= 0.5;
        }
        let Some(next) = accepted else {
            return (v, false);
        };
        if (next - v).abs() <= 1e-15 * (1.0 + v.abs()) {
            return (next, true);
        }
        v = next;
    }
    (v, false)
}
