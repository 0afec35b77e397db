//! Mesh generators: helicoid samples and the competitor surfaces.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{SurfaceMesh, VertexRole};
use crate::cylinder::CylinderConfig;
use crate::error::{Error, Result};
use crate::helicoid::HelicoidPatch;
use crate::Vec3;

/// Named competitor constructions, with the discretization parameters each
/// one needs. `theta` is the angle from `d₂` (along the x-axis) to `d₁`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Competitor {
    HelicoidSample {
        theta: f64,
        nu: usize,
        nv: usize,
    },
    /// Two half disks in the top and bottom disks joined by a band of
    /// horizontal length `epsilon` on `S`.
    HalfDisksWithNeck {
        theta: f64,
        epsilon: f64,
        #[serde(default = "default_angular")]
        angular_segments: usize,
        #[serde(default = "default_rings")]
        rings: usize,
        #[serde(default = "default_rings")]
        band_rows: usize,
    },
    /// A plane through `d₂` up to height `h − delta`, then a helicoid piece
    /// turning by `theta` over the last `delta`.
    PlaneWithHelicoidalStrip {
        theta: f64,
        delta: f64,
        nu: usize,
        nv: usize,
    },
    /// A plane through `d₁` with two triangles on `S` reaching down to the
    /// endpoints of `d₂`; the bottom edge of the plane is held in place.
    PlaneWithSideTriangles {
        theta: f64,
        tau: f64,
        nu: usize,
        nv: usize,
    },
    /// The helicoid with two holes joined by a tube.
    GenusOneAxis {
        theta: f64,
        nu: usize,
        nv: usize,
    },
}

fn default_angular() -> usize {
    512
}

fn default_rings() -> usize {
    32
}

impl Competitor {
    pub fn name(&self) -> &'static str {
        match self {
            Self::HelicoidSample { .. } => "helicoid_sample",
            Self::HalfDisksWithNeck { .. } => "half_disks_with_neck",
            Self::PlaneWithHelicoidalStrip { .. } => "plane_with_helicoidal_strip",
            Self::PlaneWithSideTriangles { .. } => "plane_with_side_triangles",
            Self::GenusOneAxis { .. } => "genus_one_axis",
        }
    }

    pub fn theta(&self) -> f64 {
        match *self {
            Self::HelicoidSample { theta, .. }
            | Self::HalfDisksWithNeck { theta, .. }
            | Self::PlaneWithHelicoidalStrip { theta, .. }
            | Self::PlaneWithSideTriangles { theta, .. }
            | Self::GenusOneAxis { theta, .. } => theta,
        }
    }

    /// Area of the smooth construction the mesh discretizes, when it has a
    /// closed form.
    pub fn analytic_area(&self, cfg: &CylinderConfig) -> Option<f64> {
        let r = cfg.radius();
        let h = cfg.height();
        match *self {
            Self::HelicoidSample { theta, .. } => {
                HelicoidPatch::new(*cfg, theta, 0.0).ok().map(|p| p.area_closed_form())
            }
            Self::HalfDisksWithNeck { epsilon, .. } => Some(PI * r * r + epsilon * h),
            Self::PlaneWithHelicoidalStrip { theta, delta, .. } => {
                let strip = CylinderConfig::new(r, delta).ok()?;
                let piece = HelicoidPatch::new(strip, theta, 0.0).ok()?;
                Some(2.0 * r * (h - delta) + piece.area_closed_form())
            }
            Self::PlaneWithSideTriangles { theta, tau, .. } => Some(2.0 * r * h + r * theta.abs() * tau),
            Self::GenusOneAxis { .. } => None,
        }
    }

    /// Whether the construction contains the axis of the cylinder.
    pub fn contains_axis(&self) -> bool {
        !matches!(self, Self::HalfDisksWithNeck { .. })
    }
}

/// Builds the named competitor.
pub fn generate_competitor(kind: &Competitor, cfg: &CylinderConfig) -> Result<SurfaceMesh> {
    match *kind {
        Competitor::HelicoidSample { theta, nu, nv } => helicoid_sample(&HelicoidPatch::new(*cfg, theta, 0.0)?, nu, nv),
        Competitor::HalfDisksWithNeck { theta, epsilon, angular_segments, rings, band_rows } => {
            half_disks_with_neck(cfg, theta, epsilon, angular_segments, rings, band_rows)
        }
        Competitor::PlaneWithHelicoidalStrip { theta, delta, nu, nv } => {
            plane_with_helicoidal_strip(cfg, theta, delta, nu, nv)
        }
        Competitor::PlaneWithSideTriangles { theta, tau, nu, nv } => plane_with_side_triangles(cfg, theta, tau, nu, nv),
        Competitor::GenusOneAxis { theta, nu, nv } => genus_one_axis(cfg, theta, nu, nv),
    }
}

fn check_grid(nu: usize, nv: usize) -> Result<()> {
    if nu < 2 || !nu.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!("nu must be even and at least 2, got {nu}")));
    }
    if nv < 1 {
        return Err(Error::InvalidConfig("nv must be positive".into()));
    }
    Ok(())
}

/// Structured `(u, row)` grid: `nu + 1` columns with `u = r(2i − nu)/nu`, one
/// row per entry of `rows`. `place(u, row)` gives the position. Cell
/// diagonals flip with the sign of `u`, so the triangulation is invariant
/// under the rotation by `π` about the axis.
struct Grid {
    vertices: Vec<Vec3>,
    roles: Vec<VertexRole>,
    triangles: Vec<[usize; 3]>,
    cols: usize,
}

impl Grid {
    fn build<F: Fn(f64, usize) -> Vec3>(cfg: &CylinderConfig, nu: usize, rows: usize, place: F) -> Self {
        let r = cfg.radius();
        let cols = nu + 1;
        let mut vertices = Vec::with_capacity(cols * rows);
        let mut roles = Vec::with_capacity(cols * rows);
        for j in 0..rows {
            for i in 0..cols {
                let u = r * (2 * i) as f64 / nu as f64 - r;
                let u = if 2 * i == nu { 0.0 } else { u };
                let mut p = place(u, j);
                let role = if j == 0 {
                    VertexRole::FixedD2
                } else if j + 1 == rows {
                    VertexRole::FixedD1
                } else if i == 0 || i == nu {
                    VertexRole::FreeOnS
                } else if 2 * i == nu {
                    VertexRole::Axis
                } else {
                    VertexRole::Interior
                };
                if 2 * i == nu {
                    p.x = 0.0;
                    p.y = 0.0;
                }
                vertices.push(p);
                roles.push(role);
            }
        }
        let mut triangles = Vec::with_capacity(2 * nu * (rows - 1));
        let id = |i: usize, j: usize| j * cols + i;
        for j in 0..rows - 1 {
            for i in 0..nu {
                let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
                if 2 * i + 1 > nu {
                    triangles.push([a, b, c]);
                    triangles.push([a, c, d]);
                } else {
                    triangles.push([a, b, d]);
                    triangles.push([b, c, d]);
                }
            }
        }
        Self { vertices, roles, triangles, cols }
    }
}

/// Samples `patch` on an `nu × nv` cell grid in `(u, s)`. `nu` must be even so
/// that the axis is a column of vertices.
pub fn helicoid_sample(patch: &HelicoidPatch, nu: usize, nv: usize) -> Result<SurfaceMesh> {
    check_grid(nu, nv)?;
    let cfg = *patch.cfg();
    let g = Grid::build(&cfg, nu, nv + 1, |u, j| patch.point(u, j as f64 / nv as f64));
    let (t0, t1) = patch.top_diameter();
    let (b0, b1) = patch.bottom_diameter();
    SurfaceMesh::with_diameters(cfg, g.vertices, g.triangles, g.roles, Some([t0, t1]), Some([b0, b1]))
}

/// Straight interpolation between the two diameters of `patch` at each
/// height, with the side columns placed on the boundary helices.
pub fn ruled_interpolant(patch: &HelicoidPatch, nu: usize, nv: usize) -> Result<SurfaceMesh> {
    check_grid(nu, nv)?;
    let cfg = *patch.cfg();
    let r = cfg.radius();
    let g = Grid::build(&cfg, nu, nv + 1, |u, j| {
        let s = j as f64 / nv as f64;
        if (u.abs() - r).abs() < 1e-15 {
            return patch.point(u, s);
        }
        let bottom = patch.point(u, 0.0);
        let top = patch.point(u, 1.0);
        bottom * (1.0 - s) + top * s
    });
    let (t0, t1) = patch.top_diameter();
    let (b0, b1) = patch.bottom_diameter();
    SurfaceMesh::with_diameters(cfg, g.vertices, g.triangles, g.roles, Some([t0, t1]), Some([b0, b1]))
}

/// Polar mesh of the horizontal disk at height `z` with `rings` rings of
/// `segments` vertices each. The centre is an axis vertex and the rim is
/// `free_on_S`.
pub fn horizontal_disk(cfg: &CylinderConfig, z: f64, rings: usize, segments: usize) -> Result<SurfaceMesh> {
    if rings < 1 || segments < 3 {
        return Err(Error::InvalidConfig("disk needs at least one ring and three segments".into()));
    }
    if !(0.0..=cfg.height()).contains(&z) {
        return Err(Error::Domain(format!("z = {z} outside [0, {}]", cfg.height())));
    }
    let r = cfg.radius();
    let mut vertices = vec![Vec3::new(0.0, 0.0, z)];
    let mut roles = vec![VertexRole::Axis];
    for k in 1..=rings {
        let rho = r * k as f64 / rings as f64;
        for j in 0..segments {
            let a = TAU * j as f64 / segments as f64;
            vertices.push(Vec3::new(rho * a.cos(), rho * a.sin(), z));
            roles.push(if k == rings { VertexRole::FreeOnS } else { VertexRole::Interior });
        }
    }
    let id = |k: usize, j: usize| 1 + (k - 1) * segments + j % segments;
    let mut triangles = Vec::new();
    for j in 0..segments {
        triangles.push([0, id(1, j), id(1, j + 1)]);
    }
    for k in 1..rings {
        for j in 0..segments {
            triangles.push([id(k, j), id(k + 1, j), id(k + 1, j + 1)]);
            triangles.push([id(k, j), id(k + 1, j + 1), id(k, j + 1)]);
        }
    }
    SurfaceMesh::new(*cfg, vertices, triangles, roles)
}

/// Inserts `extra` into the sorted angle list `base` (whose ends are kept),
/// dropping base angles closer than `gap` to any inserted angle or lying
/// strictly inside `(lo, hi)`.
fn merge_angles(base: &[f64], extra: &[f64], gap: f64, lo: f64, hi: f64) -> Vec<f64> {
    let first = base[0];
    let last = *base.last().unwrap();
    let mut out: Vec<f64> = base
        .iter()
        .copied()
        .enumerate()
        .filter(|&(k, a)| {
            let end = k == 0 || k + 1 == base.len();
            end || (!(a > lo && a < hi) && extra.iter().all(|e| (a - e).abs() >= gap))
        })
        .map(|(_, a)| a)
        .collect();
    out.extend(extra.iter().copied().filter(|&e| e > first && e < last));
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    out
}

/// Polar half disk at height `z` over the angle list `angles` (from one end of
/// the diameter to the other) with `rings` rings. The centre and the ring
/// points at both end angles lie on the diameter and get `diameter_role`.
/// Returns the global index of each rim vertex in angle order.
fn push_half_disk(
    r: f64,
    z: f64,
    angles: &[f64],
    rings: usize,
    diameter_role: VertexRole,
    vertices: &mut Vec<Vec3>,
    roles: &mut Vec<VertexRole>,
    triangles: &mut Vec<[usize; 3]>,
) -> Vec<usize> {
    let n = angles.len();
    let center = vertices.len();
    vertices.push(Vec3::new(0.0, 0.0, z));
    roles.push(diameter_role);
    let base = vertices.len();
    for k in 1..=rings {
        let rho = r * k as f64 / rings as f64;
        for (j, &a) in angles.iter().enumerate() {
            let end = j == 0 || j + 1 == n;
            vertices.push(Vec3::new(rho * a.cos(), rho * a.sin(), z));
            roles.push(if end {
                diameter_role
            } else if k == rings {
                VertexRole::FreeOnS
            } else {
                VertexRole::Interior
            });
        }
    }
    let id = |k: usize, j: usize| base + (k - 1) * n + j;
    for j in 0..n - 1 {
        triangles.push([center, id(1, j), id(1, j + 1)]);
    }
    for k in 1..rings {
        for j in 0..n - 1 {
            triangles.push([id(k, j), id(k + 1, j), id(k + 1, j + 1)]);
            triangles.push([id(k, j), id(k + 1, j + 1), id(k, j + 1)]);
        }
    }
    (0..n).map(|j| id(rings, j)).collect()
}

fn half_disks_with_neck(
    cfg: &CylinderConfig,
    theta: f64,
    epsilon: f64,
    angular_segments: usize,
    rings: usize,
    band_rows: usize,
) -> Result<SurfaceMesh> {
    let r = cfg.radius();
    let h = cfg.height();
    if !(epsilon > 0.0) {
        return Err(Error::InvalidConfig(format!("neck length must be positive, got {epsilon}")));
    }
    if epsilon >= TAU * r {
        return Err(Error::InvalidConfig(format!("neck length {epsilon} reaches the circumference {}", TAU * r)));
    }
    if angular_segments < 4 || rings < 1 || band_rows < 1 {
        return Err(Error::InvalidConfig("neck mesh resolution too small".into()));
    }
    // Bottom half disk over angles [0, π]; the top one over [σ, σ + π] with
    // σ ∈ {θ, θ + π} chosen to maximize the angular overlap.
    let mut best: Option<(f64, f64, f64)> = None;
    for sigma in [theta.rem_euclid(TAU), (theta + PI).rem_euclid(TAU)] {
        for shift in [0.0, -TAU] {
            let s = sigma + shift;
            let lo = s.max(0.0);
            let hi = (s + PI).min(PI);
            if hi > lo && best.is_none_or(|(_, l, u)| hi - lo > u - l) {
                best = Some((s, lo, hi));
            }
        }
    }
    let (sigma, lo, hi) = best.ok_or_else(|| Error::Degenerate("half disks do not overlap".into()))?;
    let width = epsilon / r;
    if width >= hi - lo {
        return Err(Error::InvalidConfig(format!("neck length {epsilon} exceeds the shared arc {}", r * (hi - lo))));
    }
    let mid = 0.5 * (lo + hi);
    let (b0, b1) = (mid - 0.5 * width, mid + 0.5 * width);
    let step = PI / angular_segments as f64;
    let nb = ((width / step).ceil() as usize).max(1);
    let band: Vec<f64> = (0..=nb).map(|k| b0 + width * k as f64 / nb as f64).collect();
    let gap = 0.4 * step.min(width / nb as f64);
    let uniform = |start: f64| -> Vec<f64> {
        (0..=angular_segments).map(|k| start + PI * k as f64 / angular_segments as f64).collect()
    };
    let bottom_angles = merge_angles(&uniform(0.0), &band, gap, b0, b1);
    let top_angles = merge_angles(&uniform(sigma), &band, gap, b0, b1);

    let mut vertices = Vec::new();
    let mut roles = Vec::new();
    let mut triangles = Vec::new();
    let bottom_rim =
        push_half_disk(r, 0.0, &bottom_angles, rings, VertexRole::FixedD2, &mut vertices, &mut roles, &mut triangles);
    let top_rim =
        push_half_disk(r, h, &top_angles, rings, VertexRole::FixedD1, &mut vertices, &mut roles, &mut triangles);
    let locate = |angles: &[f64], rim: &[usize], a: f64| -> usize {
        let j = angles.iter().position(|&x| (x - a).abs() < 1e-12).expect("band angle present on rim");
        rim[j]
    };
    // Band columns: bottom rim, interior rows on S, top rim.
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(band.len());
    for &a in &band {
        let mut col = vec![locate(&bottom_angles, &bottom_rim, a)];
        for m in 1..band_rows {
            col.push(vertices.len());
            vertices.push(cfg.side_point(a, h * m as f64 / band_rows as f64));
            roles.push(VertexRole::FreeOnS);
        }
        col.push(locate(&top_angles, &top_rim, a));
        columns.push(col);
    }
    for k in 0..nb {
        for m in 0..band_rows {
            let (p, q, s, t) = (columns[k][m], columns[k + 1][m], columns[k + 1][m + 1], columns[k][m + 1]);
            triangles.push([p, q, s]);
            triangles.push([p, s, t]);
        }
    }
    let d1 = [cfg.side_point(sigma, h), cfg.side_point(sigma + PI, h)];
    let d2 = [cfg.side_point(0.0, 0.0), cfg.side_point(PI, 0.0)];
    let mut m = SurfaceMesh::with_diameters(*cfg, vertices, triangles, roles, Some(d1), Some(d2))?;
    m.orient()?;
    Ok(m)
}

/// Splits `nv` rows between `[0, split]` and `[split, h]` in proportion to
/// their heights, with at least `min_upper` rows above.
fn split_rows(h: f64, split: f64, nv: usize, min_upper: usize) -> Vec<f64> {
    let upper = (((h - split) / h * nv as f64).round() as usize).clamp(min_upper, nv.saturating_sub(1).max(min_upper));
    let lower = nv.saturating_sub(upper).max(1);
    let mut z: Vec<f64> = (0..=lower).map(|j| split * j as f64 / lower as f64).collect();
    z.extend((1..=upper).map(|j| split + (h - split) * j as f64 / upper as f64));
    z
}

fn plane_with_helicoidal_strip(
    cfg: &CylinderConfig,
    theta: f64,
    delta: f64,
    nu: usize,
    nv: usize,
) -> Result<SurfaceMesh> {
    check_grid(nu, nv)?;
    let h = cfg.height();
    if !(delta > 0.0 && delta < h) {
        return Err(Error::InvalidConfig(format!("strip height must lie in (0, {h}), got {delta}")));
    }
    let split = h - delta;
    let zs = split_rows(h, split, nv, 2);
    let angle = |z: f64| if z <= split { 0.0 } else { theta * (z - split) / delta };
    let g = Grid::build(cfg, nu, zs.len(), |u, j| {
        let a = angle(zs[j]);
        Vec3::new(u * a.cos(), u * a.sin(), zs[j])
    });
    let r = cfg.radius();
    let d1 = [cfg.side_point(theta, h), cfg.side_point(theta + PI, h)];
    let d2 = [Vec3::new(r, 0.0, 0.0), Vec3::new(-r, 0.0, 0.0)];
    SurfaceMesh::with_diameters(*cfg, g.vertices, g.triangles, g.roles, Some(d1), Some(d2))
}

fn plane_with_side_triangles(cfg: &CylinderConfig, theta: f64, tau: f64, nu: usize, nv: usize) -> Result<SurfaceMesh> {
    check_grid(nu, nv)?;
    let r = cfg.radius();
    let h = cfg.height();
    if !(tau > 0.0 && tau < h) {
        return Err(Error::InvalidConfig(format!("triangle height must lie in (0, {h}), got {tau}")));
    }
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::InvalidConfig(format!("side triangles need theta in (0, π), got {theta}")));
    }
    // Rows: `lower` levels inside [0, τ] shared with the triangles, then the
    // rest of the plane.
    let lower = 2usize;
    let upper = nv.saturating_sub(lower).max(1);
    let mut zs: Vec<f64> = (0..=lower).map(|k| tau * k as f64 / lower as f64).collect();
    zs.extend((1..=upper).map(|j| tau + (h - tau) * j as f64 / upper as f64));
    let (cs, sn) = (theta.cos(), theta.sin());
    let g = Grid::build(cfg, nu, zs.len(), |u, j| Vec3::new(u * cs, u * sn, zs[j]));
    let Grid { mut vertices, mut roles, mut triangles, cols } = g;
    // The plane's bottom edge lies in the bottom disk but is not d₂.
    for role in &mut roles[..cols] {
        *role = VertexRole::Pinned;
    }
    // Only the d₁ row keeps `fixed_d1`; the axis column stays as built.
    let d2_end = [Vec3::new(r, 0.0, 0.0), Vec3::new(-r, 0.0, 0.0)];
    // Developed triangle with corners (0, 0), (θ, 0), (θ, τ) in (angle, z)
    // on each side; columns in angle, rows following the hypotenuse.
    let na = ((theta * r / (2.0 * r / nu as f64)).ceil() as usize).max(2);
    for (side, offset) in [(0usize, 0.0), (1usize, PI)] {
        let plane_col = if side == 0 { cols - 1 } else { 0 };
        let corner = vertices.len();
        vertices.push(d2_end[side]);
        roles.push(VertexRole::FixedD2);
        let mut prev: Vec<usize> = vec![corner];
        for c in 1..=na {
            let f = c as f64 / na as f64;
            let a = offset + theta * f;
            let col: Vec<usize> = if c == na {
                (0..=lower).map(|k| k * cols + plane_col).collect()
            } else {
                (0..=lower)
                    .map(|k| {
                        let z = tau * f * k as f64 / lower as f64;
                        vertices.push(cfg.side_point(a, z));
                        roles.push(VertexRole::FreeOnS);
                        vertices.len() - 1
                    })
                    .collect()
            };
            if prev.len() == 1 {
                for k in 0..lower {
                    triangles.push([prev[0], col[k], col[k + 1]]);
                }
            } else {
                for k in 0..lower {
                    triangles.push([prev[k], col[k], col[k + 1]]);
                    triangles.push([prev[k], col[k + 1], prev[k + 1]]);
                }
            }
            prev = col;
        }
    }
    // Plane side vertices shared with the triangles stay on S.
    for k in 0..=lower {
        for i in [0, cols - 1] {
            roles[k * cols + i] = VertexRole::FreeOnS;
        }
    }
    let d1 = [cfg.side_point(theta, h), cfg.side_point(theta + PI, h)];
    let mut m = SurfaceMesh::with_diameters(*cfg, vertices, triangles, roles, Some(d1), Some(d2_end))?;
    m.orient()?;
    Ok(m)
}

fn genus_one_axis(cfg: &CylinderConfig, theta: f64, nu: usize, nv: usize) -> Result<SurfaceMesh> {
    check_grid(nu, nv)?;
    if nu < 8 || nv < 8 {
        return Err(Error::InvalidConfig("genus-one competitor needs nu, nv ≥ 8".into()));
    }
    let patch = HelicoidPatch::new(*cfg, theta, 0.0)?;
    let g = Grid::build(cfg, nu, nv + 1, |u, j| patch.point(u, j as f64 / nv as f64));
    let Grid { vertices, roles, triangles, cols } = g;
    let ia = nu / 2 + nu / 4;
    let ja = (0.3 * nv as f64).round() as usize;
    let jb = (0.7 * nv as f64).round() as usize;
    let centers = [(ia, ja), (ia, jb)];
    let cell_of = |t: &[usize; 3]| {
        let i = t.iter().map(|&v| v % cols).min().unwrap();
        let j = t.iter().map(|&v| v / cols).min().unwrap();
        (i, j)
    };
    let mut kept: Vec<[usize; 3]> = triangles
        .into_iter()
        .filter(|t| {
            let (i, j) = cell_of(t);
            !centers.iter().any(|&(ci, cj)| (i == ci || i + 1 == ci) && (j == cj || j + 1 == cj))
        })
        .collect();
    let ring_offsets: [(isize, isize); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
    // The far hole is traversed mirrored in `j`, which keeps the handle
    // orientable.
    let loop_at = |(ci, cj): (usize, usize), flip: isize| -> Vec<usize> {
        ring_offsets
            .iter()
            .map(|&(di, dj)| (cj as isize + flip * dj) as usize * cols + (ci as isize + di) as usize)
            .collect()
    };
    let la = loop_at(centers[0], 1);
    let lb = loop_at(centers[1], -1);
    let mut vertices = vertices;
    let mut roles = roles;
    let r = cfg.radius();
    let lift = 0.3 * r;
    let normal = patch.normal(0.5 * r, 0.5);
    let segments = 6;
    let mut rings = vec![la.clone()];
    for q in 1..segments {
        let tq = q as f64 / segments as f64;
        let ring: Vec<usize> = (0..8)
            .map(|k| {
                let p = vertices[la[k]] * (1.0 - tq) + vertices[lb[k]] * tq + normal * (lift * (PI * tq).sin());
                vertices.push(p);
                roles.push(VertexRole::Interior);
                vertices.len() - 1
            })
            .collect();
        rings.push(ring);
    }
    rings.push(lb);
    for q in 0..segments {
        for k in 0..8 {
            let (a, b) = (rings[q][k], rings[q][(k + 1) % 8]);
            let (c, d) = (rings[q + 1][(k + 1) % 8], rings[q + 1][k]);
            kept.push([a, b, c]);
            kept.push([a, c, d]);
        }
    }
    // Drop the two hole centres and reindex.
    let removed: Vec<usize> = centers.iter().map(|&(ci, cj)| cj * cols + ci).collect();
    let mut map = vec![usize::MAX; vertices.len()];
    let mut nv_out = Vec::new();
    let mut nr_out = Vec::new();
    for (i, (p, ro)) in vertices.iter().zip(&roles).enumerate() {
        if !removed.contains(&i) {
            map[i] = nv_out.len();
            nv_out.push(*p);
            nr_out.push(*ro);
        }
    }
    let tris: Vec<[usize; 3]> = kept.iter().map(|t| [map[t[0]], map[t[1]], map[t[2]]]).collect();
    let (t0, t1) = patch.top_diameter();
    let (b0, b1) = patch.bottom_diameter();
    let mut m = SurfaceMesh::with_diameters(*cfg, nv_out, tris, nr_out, Some([t0, t1]), Some([b0, b1]))?;
    m.orient()?;
    Ok(m)
}
