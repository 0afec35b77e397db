//! Slices by coaxial cylinders, transversality and meeting angles with `S`.

use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{edge_key, SurfaceMesh, UnionFind, VertexRole};
use crate::error::{Error, Result};
use crate::Vec3;

/// Vertices closer than this to the slicing radius trigger a jitter.
const TANGENCY_TOL: f64 = 1e-12;
/// Radial jitter applied to the slicing radius.
const JITTER: f64 = 1e-9;

/// Values of `|∇_Σ d|` below this are flagged as (near) tangency.
pub const TRANSVERSALITY_FLAG: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceEntry {
    pub t: f64,
    pub measured_length: f64,
    pub reference_length: f64,
    pub component_count: usize,
}

impl SliceEntry {
    /// `measured ≥ reference − slack`.
    pub fn satisfies(&self, slack: f64) -> bool {
        self.measured_length >= self.reference_length - slack
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SliceProfile {
    pub entries: Vec<SliceEntry>,
    pub warnings: Vec<String>,
}

impl SliceProfile {
    /// Writes `t,measured_length,reference_length,component_count`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["t", "measured_length", "reference_length", "component_count"])?;
        for e in &self.entries {
            w.write_record([
                format!("{:.12e}", e.t),
                format!("{:.12e}", e.measured_length),
                format!("{:.12e}", e.reference_length),
                e.component_count.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Radii where `measured < reference − slack`.
    pub fn violations(&self, slack: f64) -> Vec<f64> {
        self.entries.iter().filter(|e| !e.satisfies(slack)).map(|e| e.t).collect()
    }
}

/// Raw slice of a mesh by one cylinder.
#[derive(Debug, Clone, PartialEq)]
pub struct Slice {
    /// Radius actually used after any jitter.
    pub radius: f64,
    pub segments: Vec<[Vec3; 2]>,
    pub length: f64,
    pub components: usize,
}

fn radial(p: &Vec3) -> f64 {
    p.x.hypot(p.y)
}

/// Crossing parameters of the edge `a → b` with `x² + y² = t²`, ascending.
fn edge_roots(a: &Vec3, b: &Vec3, t: f64) -> Vec<f64> {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    let qa = dx * dx + dy * dy;
    let qb = 2.0 * (a.x * dx + a.y * dy);
    let qc = a.x * a.x + a.y * a.y - t * t;
    if qa <= 1e-300 {
        return Vec::new();
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    // Numerically stable pair.
    let q = -0.5 * (qb + qb.signum() * sq);
    let mut roots = if q == 0.0 {
        vec![0.0]
    } else {
        let r1 = q / qa;
        let r2 = qc / q;
        vec![r1, r2]
    };
    roots.retain(|&l| (0.0..=1.0).contains(&l));
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-15);
    roots
}

impl SurfaceMesh {
    /// Intersects the mesh with the cylinder of radius `t` about the axis.
    /// Radii hitting a vertex are moved inward by `1e-9` (repeatedly if
    /// needed); the second value reports whether that happened. At `t = r`
    /// the slice is the set of boundary edges lying on `S`.
    pub fn slice_at(&self, t: f64) -> (Slice, bool) {
        let v = self.vertices();
        let r = self.cfg().radius();
        if t >= r - TANGENCY_TOL * r {
            return (self.side_boundary(), false);
        }
        let mut radius = t;
        let mut jittered = false;
        for _ in 0..64 {
            if v.iter().all(|p| (radial(p) - radius).abs() >= TANGENCY_TOL) {
                break;
            }
            radius -= JITTER;
            jittered = true;
        }

        let mut roots: HashMap<(usize, usize), Vec<f64>> = HashMap::new();
        let mut crossing_ids: HashMap<((usize, usize), usize), usize> = HashMap::new();
        let mut crossing_points: Vec<Vec3> = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();

        for tri in self.triangles() {
            let inside0 = radial(&v[tri[0]]) < radius;
            // (crossing id, becomes inside after crossing)
            let mut walk: Vec<(usize, bool)> = Vec::new();
            let mut inside = inside0;
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                let key = edge_key(a, b);
                let ls = roots.entry(key).or_insert_with(|| edge_roots(&v[key.0], &v[key.1], radius)).clone();
                let order: Vec<usize> =
                    if a == key.0 { (0..ls.len()).collect() } else { (0..ls.len()).rev().collect() };
                for idx in order {
                    let id = *crossing_ids.entry((key, idx)).or_insert_with(|| {
                        crossing_points.push(v[key.0] + (v[key.1] - v[key.0]) * ls[idx]);
                        crossing_points.len() - 1
                    });
                    inside = !inside;
                    walk.push((id, inside));
                }
            }
            let n = walk.len();
            if n < 2 {
                continue;
            }
            // The disk section is convex, so each exit along the perimeter is
            // joined to the next entry.
            let Some(start) = walk.iter().position(|&(_, now_inside)| !now_inside) else {
                continue;
            };
            let mut k = 0;
            while k + 1 < n {
                let exit = walk[(start + k) % n];
                let entry = walk[(start + k + 1) % n];
                if !exit.1 && entry.1 {
                    pairs.push((exit.0, entry.0));
                }
                k += 2;
            }
        }

        let mut uf = UnionFind::new(crossing_points.len());
        let mut length = 0.0;
        let mut segments = Vec::with_capacity(pairs.len());
        for &(a, b) in &pairs {
            uf.union(a, b);
            length += (crossing_points[a] - crossing_points[b]).norm();
            segments.push([crossing_points[a], crossing_points[b]]);
        }
        let mut roots_seen: Vec<usize> = pairs.iter().map(|&(a, _)| uf.find(a)).collect();
        roots_seen.sort_unstable();
        roots_seen.dedup();
        (Slice { radius, segments, length, components: roots_seen.len() }, jittered)
    }
}

impl SurfaceMesh {
    fn side_boundary(&self) -> Slice {
        let v = self.vertices();
        let r = self.cfg().radius();
        let on_side = |i: usize| radial(&v[i]) >= r - TANGENCY_TOL * r;
        let edges: Vec<(usize, usize)> =
            self.boundary_edges().into_iter().filter(|&(a, b)| on_side(a) && on_side(b)).collect();
        let mut uf = UnionFind::new(v.len());
        let mut length = 0.0;
        let mut segments = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            uf.union(a, b);
            length += (v[a] - v[b]).norm();
            segments.push([v[a], v[b]]);
        }
        let mut roots: Vec<usize> = edges.iter().map(|&(a, _)| uf.find(a)).collect();
        roots.sort_unstable();
        roots.dedup();
        Slice { radius: r, segments, length, components: roots.len() }
    }
}

fn check_radii(m: &SurfaceMesh, t_values: &[f64]) -> Result<()> {
    let r = m.cfg().radius();
    for (k, &t) in t_values.iter().enumerate() {
        if !(t > 0.0 && t <= r) {
            return Err(Error::Domain(format!("slice radius {t} outside (0, {r}]")));
        }
        if k > 0 && t <= t_values[k - 1] {
            return Err(Error::Domain("slice radii must be strictly increasing".into()));
        }
    }
    Ok(())
}

/// `ℋ¹(Σ ∩ ∂C_t)` for each radius, against `2√(h² + t²θ²)`.
pub fn slice_lengths(m: &SurfaceMesh, t_values: &[f64], theta: f64) -> Result<SliceProfile> {
    check_radii(m, t_values)?;
    let h = m.cfg().height();
    let mut profile = SliceProfile::default();
    for &t in t_values {
        let (slice, jittered) = m.slice_at(t);
        if jittered {
            profile.warnings.push(format!("vertices at distance {t:.12e}; sliced at {:.12e}", slice.radius));
        }
        profile.entries.push(SliceEntry {
            t,
            measured_length: slice.length,
            reference_length: 2.0 * h.hypot(t * theta),
            component_count: slice.components,
        });
    }
    Ok(profile)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransversalityEntry {
    pub t: f64,
    /// Minimum of `|∇_Σ d|` over triangles whose vertex distances bracket `t`;
    /// `None` when no triangle does.
    pub min_gradient: Option<f64>,
    pub triangles: usize,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TransversalityProfile {
    pub entries: Vec<TransversalityEntry>,
}

impl TransversalityProfile {
    pub fn any_flagged(&self) -> bool {
        self.entries.iter().any(|e| e.flagged)
    }
}

/// Smallest norm of the tangential gradient of `d = √(x² + y²)` on triangle
/// `k`, `√(1 − (n · e_r)²)`, over its corners and centroid.
pub fn triangle_transversality(m: &SurfaceMesh, k: usize) -> f64 {
    let [a, b, c] = m.triangles()[k];
    let v = m.vertices();
    let n = m.triangle_normal(k);
    let centroid = (v[a] + v[b] + v[c]) / 3.0;
    [v[a], v[b], v[c], centroid]
        .iter()
        .filter(|p| radial(p) > TANGENCY_TOL)
        .map(|p| {
            let rho = radial(p);
            let er = Vec3::new(p.x / rho, p.y / rho, 0.0);
            (1.0 - n.dot(&er).powi(2)).max(0.0).sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Per-radius minimum of `|∇_Σ d|`. Triangles touching the axis are skipped.
pub fn transversality_profile(m: &SurfaceMesh, t_values: &[f64]) -> Result<TransversalityProfile> {
    check_radii(m, t_values)?;
    let v = m.vertices();
    let tris: Vec<(usize, f64, f64, f64)> = m
        .triangles()
        .iter()
        .enumerate()
        .filter(|(_, t)| t.iter().all(|&i| m.roles()[i] != VertexRole::Axis && radial(&v[i]) > TANGENCY_TOL))
        .map(|(k, t)| {
            let ds = t.map(|i| radial(&v[i]));
            let lo = ds.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = ds.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (k, lo, hi, triangle_transversality(m, k))
        })
        .collect();
    let entries = t_values
        .iter()
        .map(|&t| {
            let band: Vec<f64> =
                tris.iter().filter(|&&(_, lo, hi, _)| lo <= t && t <= hi).map(|&(_, _, _, g)| g).collect();
            let min_gradient = band.iter().copied().reduce(f64::min);
            TransversalityEntry {
                t,
                min_gradient,
                triangles: band.len(),
                flagged: min_gradient.is_some_and(|g| g < TRANSVERSALITY_FLAG),
            }
        })
        .collect();
    Ok(TransversalityProfile { entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeetingAngle {
    pub vertex: usize,
    /// Angle between the mesh tangent plane and the tangent plane of `S`;
    /// `π/2` is orthogonal.
    pub angle: f64,
}

/// Meeting angle with `S` at every `free_on_S` vertex on the mesh boundary,
/// using the area-weighted vertex normal.
pub fn meeting_angle_profile(m: &SurfaceMesh) -> Result<Vec<MeetingAngle>> {
    let free = m.vertices_with_role(VertexRole::FreeOnS);
    if free.is_empty() {
        return Err(Error::Mesh("mesh has no free_on_S vertices".into()));
    }
    let v = m.vertices();
    let mut normals = vec![Vec3::zeros(); v.len()];
    let mut incident = vec![0usize; v.len()];
    for t in m.triangles() {
        let n = (v[t[1]] - v[t[0]]).cross(&(v[t[2]] - v[t[0]]));
        for &i in t {
            normals[i] += n;
            incident[i] += 1;
        }
    }
    let boundary = m.boundary_vertex_mask();
    let mut out = Vec::new();
    for i in free {
        if incident[i] == 0 {
            return Err(Error::Mesh(format!("boundary vertex {i} has no incident triangle")));
        }
        if !boundary[i] {
            continue;
        }
        let n = normals[i].normalize();
        let rho = radial(&v[i]);
        let er = Vec3::new(v[i].x / rho, v[i].y / rho, 0.0);
        let c = n.dot(&er).abs().min(1.0);
        out.push(MeetingAngle { vertex: i, angle: c.acos() });
    }
    Ok(out)
}

/// `t_k = r k / n` for `k = 1..=n`.
pub fn radius_grid(r: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|k| r * k as f64 / n as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinder::CylinderConfig;
    use crate::helicoid::HelicoidPatch;
    use crate::surface::{generate_competitor, helicoid_sample, horizontal_disk, Competitor};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn plane_slices_are_two_vertical_segments() {
        let cfg = CylinderConfig::new(1.0, 1.5).unwrap();
        let m = helicoid_sample(&HelicoidPatch::flat(cfg, 0.3), 16, 8).unwrap();
        let p = slice_lengths(&m, &radius_grid(1.0, 8), 0.0).unwrap();
        for e in &p.entries {
            assert!((e.measured_length - 3.0).abs() < 1e-9, "{e:?}");
            assert_eq!(e.component_count, 2);
            assert!((e.reference_length - 3.0).abs() < 1e-15);
        }
        // t = 1/8, 2/8, ... hit grid columns, and t = r hits the side.
        assert!(!p.warnings.is_empty());
    }

    #[test]
    fn helicoid_slices_match_helices() {
        let cfg = CylinderConfig::unit();
        let patch = HelicoidPatch::new(cfg, FRAC_PI_2, 0.0).unwrap();
        let m = helicoid_sample(&patch, 64, 64).unwrap();
        let ts = [0.13, 0.37, 0.5 + 1e-3, 0.81, 1.0];
        let p = slice_lengths(&m, &ts, FRAC_PI_2).unwrap();
        for e in &p.entries {
            let exact = patch.slice_lengths_reference(e.t).unwrap();
            assert!((e.measured_length - exact).abs() / exact < 5e-3, "{e:?}");
            assert_eq!(e.component_count, 2);
        }
    }

    #[test]
    fn neck_surface_violates_for_small_radii() {
        let cfg = CylinderConfig::unit();
        let kind = Competitor::HalfDisksWithNeck {
            theta: FRAC_PI_2,
            epsilon: 0.01,
            angular_segments: 256,
            rings: 16,
            band_rows: 8,
        };
        let m = generate_competitor(&kind, &cfg).unwrap();
        let p = slice_lengths(&m, &[0.2, 0.5], FRAC_PI_2).unwrap();
        assert!((p.entries[0].measured_length - 2.0 * PI * 0.2).abs() < 1e-3);
        assert!(p.entries[0].measured_length < p.entries[0].reference_length);
        assert_eq!(p.entries[0].component_count, 2);
        assert!(p.entries[1].measured_length >= p.entries[1].reference_length);
    }

    #[test]
    fn radii_are_validated() {
        let m = horizontal_disk(&CylinderConfig::unit(), 0.5, 2, 12).unwrap();
        assert!(slice_lengths(&m, &[0.0], 0.0).is_err());
        assert!(slice_lengths(&m, &[0.5, 0.4], 0.0).is_err());
        assert!(slice_lengths(&m, &[1.5], 0.0).is_err());
    }

    #[test]
    fn transversality_of_plane_and_disk() {
        let cfg = CylinderConfig::unit();
        let plane = helicoid_sample(&HelicoidPatch::flat(cfg, 0.0), 16, 4).unwrap();
        let t = transversality_profile(&plane, &[0.3, 0.9]).unwrap();
        for e in &t.entries {
            assert!((e.min_gradient.unwrap() - 1.0).abs() < 1e-12);
        }
        let disk = horizontal_disk(&cfg, 0.5, 8, 48).unwrap();
        let t = transversality_profile(&disk, &[0.3, 0.9]).unwrap();
        for e in &t.entries {
            assert!((e.min_gradient.unwrap() - 1.0).abs() < 1e-12);
            assert!(!e.flagged);
        }
    }

    #[test]
    fn tangent_patch_is_flagged() {
        // The plane x = r/2 touches the cylinder of radius r/2 along a line.
        let cfg = CylinderConfig::unit();
        let mut vertices = Vec::new();
        let n = 40;
        for j in 0..=4 {
            for i in 0..=n {
                let y = -0.1 + 0.2 * i as f64 / n as f64 + 1e-4;
                vertices.push(Vec3::new(0.5, y, 0.2 + 0.1 * j as f64));
            }
        }
        let mut tris = Vec::new();
        for j in 0..4 {
            for i in 0..n {
                let a = j * (n + 1) + i;
                tris.push([a, a + 1, a + n + 2]);
                tris.push([a, a + n + 2, a + n + 1]);
            }
        }
        let roles = vec![VertexRole::Interior; vertices.len()];
        let m = SurfaceMesh::new(cfg, vertices, tris, roles).unwrap();
        let t = transversality_profile(&m, &[0.5 + 1e-6]).unwrap();
        assert!(t.entries[0].flagged, "{:?}", t.entries[0]);
    }

    #[test]
    fn meeting_angles() {
        let cfg = CylinderConfig::unit();
        let patch = HelicoidPatch::new(cfg, FRAC_PI_2, 0.0).unwrap();
        let m = helicoid_sample(&patch, 64, 64).unwrap();
        let worst = |m: &SurfaceMesh| {
            meeting_angle_profile(m).unwrap().iter().map(|a| (a.angle - FRAC_PI_2).abs()).fold(0.0, f64::max)
        };
        // First-order consistent in the mesh size.
        let coarse = worst(&m);
        let fine = worst(&helicoid_sample(&patch, 128, 128).unwrap());
        assert!(coarse < 1e-2 && fine < 0.6 * coarse, "{coarse} {fine}");
        let plane = helicoid_sample(&HelicoidPatch::flat(cfg, 0.0), 8, 4).unwrap();
        for a in meeting_angle_profile(&plane).unwrap() {
            assert!((a.angle - FRAC_PI_2).abs() < 1e-12);
        }
        let neck = generate_competitor(
            &Competitor::HalfDisksWithNeck {
                theta: FRAC_PI_2,
                epsilon: 0.01,
                angular_segments: 128,
                rings: 8,
                band_rows: 8,
            },
            &cfg,
        )
        .unwrap();
        let angles = meeting_angle_profile(&neck).unwrap();
        let band: Vec<_> = angles
            .iter()
            .filter(|a| {
                let z = neck.vertices()[a.vertex].z;
                z > 0.2 && z < 0.8
            })
            .collect();
        assert!(!band.is_empty());
        // One facet spans the band, so its chord tilts by half the arc.
        assert!(band.iter().all(|a| a.angle < 0.5 * 0.01 + 1e-9));
    }
}
