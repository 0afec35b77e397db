//! The ambient solid cylinder and curves on its side surface.
//!
//! Curves on the side surface `S` are stored in angular coordinates
//! `(angle, z)`, so every sample lies on `S` exactly. Between two samples a
//! curve is interpolated by the helical arc that develops to a straight
//! segment; [`SideCurve::length`] is the length of that interpolant.

use std::f64::consts::{PI, TAU};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Vec3;

/// Tolerance on `z` when checking that samples stay between the two disks.
const Z_TOL: f64 = 1e-12;

/// Consecutive samples whose wrapped angular gap reaches this value are
/// treated as ambiguous.
const WINDING_GAP_LIMIT: f64 = PI - 1e-9;

/// Right circular solid cylinder `x² + y² ≤ r²`, `0 ≤ z ≤ h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCylinder", into = "RawCylinder")]
pub struct CylinderConfig {
    radius: f64,
    height: f64,
}

#[derive(Serialize, Deserialize)]
struct RawCylinder {
    radius: f64,
    height: f64,
}

impl TryFrom<RawCylinder> for CylinderConfig {
    type Error = Error;
    fn try_from(raw: RawCylinder) -> Result<Self> {
        CylinderConfig::new(raw.radius, raw.height)
    }
}

impl From<CylinderConfig> for RawCylinder {
    fn from(c: CylinderConfig) -> Self {
        RawCylinder { radius: c.radius, height: c.height }
    }
}

impl CylinderConfig {
    pub fn new(radius: f64, height: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidConfig(format!("radius must be positive, got {radius}")));
        }
        if !(height.is_finite() && height > 0.0) {
            return Err(Error::InvalidConfig(format!("height must be positive, got {height}")));
        }
        Ok(Self { radius, height })
    }

    /// The unit cylinder `r = h = 1`.
    pub fn unit() -> Self {
        Self { radius: 1.0, height: 1.0 }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    /// `h / r`.
    pub fn aspect(&self) -> f64 {
        self.height / self.radius
    }

    /// Largest rotation angle for which the barrier argument applies
    /// directly, `θ = h / r`.
    pub fn critical_angle(&self) -> f64 {
        self.aspect()
    }

    /// Whether `p` lies in the closed solid cylinder, up to `tol`.
    pub fn contains(&self, p: &Vec3, tol: f64) -> bool {
        let rho = p.x.hypot(p.y);
        rho <= self.radius + tol && p.z >= -tol && p.z <= self.height + tol
    }

    /// Point of `S` at the given angle and height.
    pub fn side_point(&self, angle: f64, z: f64) -> Vec3 {
        Vec3::new(self.radius * angle.cos(), self.radius * angle.sin(), z)
    }

    pub fn from_json<R: Read>(reader: R) -> Result<Self> {
        Ok(serde_json::from_reader(reader)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// A point of `S` in angular coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SidePoint {
    #[serde(rename = "angle_rad")]
    pub angle: f64,
    pub z: f64,
}

impl SidePoint {
    pub fn new(angle: f64, z: f64) -> Self {
        Self { angle, z }
    }
}

/// Wraps an angle difference into `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut w = a.rem_euclid(TAU);
    if w > PI {
        w -= TAU;
    }
    w
}

/// An ordered sampled curve on the side surface of a cylinder.
#[derive(Debug, Clone, PartialEq)]
pub struct SideCurve {
    cfg: CylinderConfig,
    samples: Vec<SidePoint>,
    closed: bool,
}

impl SideCurve {
    pub fn new(cfg: CylinderConfig, samples: Vec<SidePoint>, closed: bool) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::TooFewSamples { needed: 1, got: 0 });
        }
        for (i, s) in samples.iter().enumerate() {
            if !(s.angle.is_finite() && s.z.is_finite()) {
                return Err(Error::Domain(format!("sample {i} is not finite")));
            }
            if s.z < -Z_TOL || s.z > cfg.height + Z_TOL {
                return Err(Error::Domain(format!("sample {i} has z = {} outside [0, {}]", s.z, cfg.height)));
            }
        }
        for (i, w) in samples.windows(2).enumerate() {
            if same_point(&w[0], &w[1]) {
                return Err(Error::DuplicateSample(i + 1));
            }
        }
        if closed && samples.len() > 1 && same_point(&samples[0], &samples[samples.len() - 1]) {
            return Err(Error::DuplicateSample(samples.len() - 1));
        }
        Ok(Self { cfg, samples, closed })
    }

    /// Uniformly sampled helix `angle = start.angle + s·Δangle`,
    /// `z = start.z + s·Δz`, `s ∈ [0, 1]`.
    pub fn helix(
        cfg: CylinderConfig,
        start: SidePoint,
        delta_angle: f64,
        delta_z: f64,
        segments: usize,
    ) -> Result<Self> {
        let segments = segments.max(1);
        let samples = (0..=segments)
            .map(|k| {
                let s = k as f64 / segments as f64;
                SidePoint::new(start.angle + s * delta_angle, start.z + s * delta_z)
            })
            .collect();
        Self::new(cfg, samples, false)
    }

    /// Horizontal circle at height `z`, sampled with `segments` points.
    pub fn circle(cfg: CylinderConfig, z: f64, segments: usize) -> Result<Self> {
        let samples =
            (0..segments.max(3)).map(|k| SidePoint::new(TAU * k as f64 / segments.max(3) as f64, z)).collect();
        Self::new(cfg, samples, true)
    }

    pub fn cfg(&self) -> &CylinderConfig {
        &self.cfg
    }

    pub fn samples(&self) -> &[SidePoint] {
        &self.samples
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> SidePoint {
        self.samples[0]
    }

    pub fn last(&self) -> SidePoint {
        self.samples[self.samples.len() - 1]
    }

    /// Samples as points of ℝ³.
    pub fn points(&self) -> Vec<Vec3> {
        self.samples.iter().map(|s| self.cfg.side_point(s.angle, s.z)).collect()
    }

    /// Sample pairs in traversal order, including the closing pair of a
    /// closed curve.
    fn segments(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.samples.len();
        let count = if self.closed && n > 1 { n } else { n.saturating_sub(1) };
        (0..count).map(move |i| (i, (i + 1) % n))
    }

    /// Signed, continuously unwrapped angular increments between samples.
    fn increments(&self) -> Result<Vec<f64>> {
        self.segments()
            .map(|(i, j)| {
                let d = wrap_angle(self.samples[j].angle - self.samples[i].angle);
                if d.abs() >= WINDING_GAP_LIMIT {
                    Err(Error::AmbiguousWinding { index: i, next: j, gap: d.abs() })
                } else {
                    Ok(d)
                }
            })
            .collect()
    }

    /// Length of the piecewise-helical interpolant through the samples.
    ///
    /// Each piece between consecutive samples is the shortest arc on `S` in
    /// the nearest-branch homotopy class.
    pub fn length(&self) -> Result<f64> {
        let r = self.cfg.radius;
        let inc = self.increments()?;
        Ok(self.segments().zip(inc).map(|((i, j), da)| (r * da).hypot(self.samples[j].z - self.samples[i].z)).sum())
    }

    /// Length of the inscribed polygon in ℝ³.
    pub fn chord_length(&self) -> f64 {
        let pts = self.points();
        self.segments().map(|(i, j)| (pts[j] - pts[i]).norm()).sum()
    }

    pub fn reversed(&self) -> Self {
        let mut samples = self.samples.clone();
        samples.reverse();
        Self { cfg: self.cfg, samples, closed: self.closed }
    }

    /// Rotates the curve about the axis by `alpha`.
    pub fn rotated(&self, alpha: f64) -> Self {
        Self {
            cfg: self.cfg,
            samples: self.samples.iter().map(|s| SidePoint::new(s.angle + alpha, s.z)).collect(),
            closed: self.closed,
        }
    }

    /// Joins two open curves sharing an endpoint.
    pub fn concat(&self, other: &SideCurve) -> Result<Self> {
        if self.closed || other.closed {
            return Err(Error::Domain("cannot concatenate closed curves".into()));
        }
        let a = self.last();
        let b = other.first();
        if wrap_angle(a.angle - b.angle).abs() > 1e-12 || (a.z - b.z).abs() > 1e-12 {
            return Err(Error::Domain("curves do not share an endpoint".into()));
        }
        // Keep `other` on the same angular sheet as the end of `self`.
        let shift = a.angle - b.angle;
        let mut samples = self.samples.clone();
        samples.extend(other.samples[1..].iter().map(|s| SidePoint::new(s.angle + shift, s.z)));
        Self::new(self.cfg, samples, false)
    }

    /// Writes the samples as CSV with header `angle_rad,z`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for s in &self.samples {
            w.serialize(s)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(cfg: CylinderConfig, reader: R, closed: bool) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["angle_rad", "z"] {
            return Err(Error::Parse(format!("expected header angle_rad,z, got {headers:?}")));
        }
        let samples = rdr.deserialize::<SidePoint>().collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(cfg, samples, closed)
    }
}

fn same_point(a: &SidePoint, b: &SidePoint) -> bool {
    wrap_angle(a.angle - b.angle).abs() < 1e-15 && (a.z - b.z).abs() < 1e-15
}

/// Image of a side curve in the unrolled rectangle `[0, 2πr] × [0, h]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DevelopedCurve {
    /// `(s, z)` with `s = r · angle` on the unwrapped sheet.
    pub samples: Vec<[f64; 2]>,
    /// Number of full turns added to each sample relative to the fundamental
    /// rectangle.
    pub branch_offsets: Vec<i64>,
}

impl DevelopedCurve {
    pub fn length(&self) -> f64 {
        self.samples.windows(2).map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1])).sum()
    }

    pub fn start(&self) -> [f64; 2] {
        self.samples[0]
    }

    pub fn end(&self) -> [f64; 2] {
        self.samples[self.samples.len() - 1]
    }
}

/// Unrolls a side curve onto the plane after cutting `S` along the generator
/// at angle 0.
///
/// Winding is unwrapped by nearest-branch continuation. A closed curve is
/// developed with its first sample repeated at the end.
pub fn develop(curve: &SideCurve) -> Result<DevelopedCurve> {
    let r = curve.cfg.radius;
    let inc = curve.increments()?;
    let first = curve.samples[0];
    let base = first.angle.rem_euclid(TAU);
    let mut angle = base;
    let mut samples = Vec::with_capacity(curve.len() + 1);
    let mut branch_offsets = Vec::with_capacity(curve.len() + 1);
    samples.push([r * angle, first.z]);
    branch_offsets.push(0);
    for ((_, j), da) in curve.segments().zip(inc) {
        angle += da;
        let z = curve.samples[j].z;
        samples.push([r * angle, z]);
        branch_offsets.push((angle / TAU).floor() as i64);
    }
    Ok(DevelopedCurve { samples, branch_offsets })
}

/// Total signed angle swept by the vertical projection of the curve onto the
/// base circle, accumulated continuously.
pub fn rotation_angle(curve: &SideCurve) -> Result<f64> {
    Ok(curve.increments()?.into_iter().sum())
}

/// Total curvature `∫ κ ds` of the space curve through the samples, from
/// discrete turning angles.
///
/// For open curves half a turning angle is extrapolated at each end so that
/// the estimate converges at second order for smooth curves.
pub fn total_curvature(curve: &SideCurve) -> Result<f64> {
    let pts = curve.points();
    let n = pts.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: n });
    }
    for i in 0..n - 1 {
        if (pts[i + 1] - pts[i]).norm() == 0.0 {
            return Err(Error::DuplicateSample(i + 1));
        }
    }
    let turn = |a: &Vec3, b: &Vec3, c: &Vec3| -> f64 {
        let e0 = b - a;
        let e1 = c - b;
        e0.cross(&e1).norm().atan2(e0.dot(&e1))
    };
    if curve.closed {
        return Ok((0..n).map(|i| turn(&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n])).sum());
    }
    let angles: Vec<f64> = (1..n - 1).map(|i| turn(&pts[i - 1], &pts[i], &pts[i + 1])).collect();
    let lens: Vec<f64> = pts.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let interior: f64 = angles.iter().sum();
    let head = angles[0] * lens[0] / (lens[0] + lens[1]);
    let m = lens.len();
    let tail = angles[angles.len() - 1] * lens[m - 1] / (lens[m - 2] + lens[m - 1]);
    Ok(interior + head + tail)
}

/// Total curvature from finite-difference Frenet curvature `|r' × r''| / |r'|³`
/// integrated with the trapezoid rule over the sample index.
///
/// Assumes uniform parameter spacing; used as an independent cross-check of
/// [`total_curvature`].
pub fn total_curvature_frenet(curve: &SideCurve) -> Result<f64> {
    let pts = curve.points();
    let n = pts.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: n });
    }
    let at = |i: isize| -> Vec3 {
        if curve.closed {
            pts[i.rem_euclid(n as isize) as usize]
        } else {
            pts[i.clamp(0, n as isize - 1) as usize]
        }
    };
    let density = |i: usize| -> f64 {
        let i = i as isize;
        let (d1, d2) = if curve.closed || (i > 0 && i < n as isize - 1) {
            let (a, b, c) = (at(i - 1), at(i), at(i + 1));
            ((c - a) * 0.5, c - 2.0 * b + a)
        } else if i == 0 {
            let (a, b, c, d) = (at(0), at(1), at(2), at(3.min(n as isize - 1)));
            let d1 = -1.5 * a + 2.0 * b - 0.5 * c;
            let d2 = if n >= 4 { 2.0 * a - 5.0 * b + 4.0 * c - d } else { a - 2.0 * b + c };
            (d1, d2)
        } else {
            let m = n as isize - 1;
            let (a, b, c, d) = (at(m), at(m - 1), at(m - 2), at((m - 3).max(0)));
            let d1 = 1.5 * a - 2.0 * b + 0.5 * c;
            let d2 = if n >= 4 { 2.0 * a - 5.0 * b + 4.0 * c - d } else { a - 2.0 * b + c };
            (d1, d2)
        };
        // κ |r'| = |r' × r''| / |r'|²
        d1.cross(&d2).norm() / d1.norm_squared()
    };
    if curve.closed {
        return Ok((0..n).map(density).sum());
    }
    let mut total = 0.0;
    for i in 0..n - 1 {
        total += 0.5 * (density(i) + density(i + 1));
    }
    Ok(total)
}

/// Shortest helical arc on `S` from `p` to `q` in the homotopy class selected
/// by `winding`.
///
/// Winding 0 goes counter-clockwise by the angle `δ ∈ [0, 2π)` from `p` to
/// `q`; winding `k` travels `δ − 2πk`.
pub fn geodesic_on_side(p: SidePoint, q: SidePoint, cfg: &CylinderConfig, winding: i64) -> Result<SideCurve> {
    let ccw = (q.angle - p.angle).rem_euclid(TAU);
    let ccw = if TAU - ccw < 1e-14 { 0.0 } else { ccw };
    let delta = ccw - TAU * winding as f64;
    let dz = q.z - p.z;
    if delta.abs() < 1e-15 && dz.abs() < 1e-15 {
        return Err(Error::Degenerate("geodesic endpoints coincide".into()));
    }
    // Keep angular steps well below π so the curve unwraps unambiguously.
    let segments = ((delta.abs() / (PI / 64.0)).ceil() as usize).max(1);
    SideCurve::helix(*cfg, p, delta, dz, segments)
}

/// Length `√(Δz² + (r Δangle)²)` of the geodesic selected by `winding`.
pub fn geodesic_length(p: SidePoint, q: SidePoint, cfg: &CylinderConfig, winding: i64) -> f64 {
    let ccw = (q.angle - p.angle).rem_euclid(TAU);
    let delta = ccw - TAU * winding as f64;
    (cfg.radius * delta).hypot(q.z - p.z)
}
