//! Point-to-mesh distances and the Hausdorff distance to a helicoid patch.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::SurfaceMesh;
use crate::error::Result;
use crate::helicoid::HelicoidPatch;
use crate::Vec3;

/// Distance from `p` to the triangle `(a, b, c)`, via the closest point by
/// Voronoi region.
pub fn point_triangle_distance(p: &Vec3, a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    (p - closest_on_triangle(p, a, b, c)).norm()
}

fn closest_on_triangle(p: &Vec3, a: &Vec3, b: &Vec3, c: &Vec3) -> Vec3 {
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return *a;
    }
    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return *b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        return a + ab * (d1 / (d1 - d3));
    }
    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return *c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        return a + ac * (d2 / (d2 - d6));
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
    }
    let denom = 1.0 / (va + vb + vc);
    a + ab * (vb * denom) + ac * (vc * denom)
}

/// Uniform bucket grid over the triangles of a mesh for nearest-distance
/// queries.
pub struct TriangleGrid<'a> {
    mesh: &'a SurfaceMesh,
    origin: Vec3,
    cell: f64,
    dims: [usize; 3],
    buckets: Vec<Vec<usize>>,
}

impl<'a> TriangleGrid<'a> {
    pub fn new(mesh: &'a SurfaceMesh) -> Self {
        let v = mesh.vertices();
        let mut lo = Vec3::repeat(f64::INFINITY);
        let mut hi = Vec3::repeat(f64::NEG_INFINITY);
        for p in v {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        let mean_edge =
            mesh.triangles().iter().map(|t| (v[t[0]] - v[t[1]]).norm()).sum::<f64>() / mesh.triangle_count() as f64;
        let extent = (hi - lo).max();
        let cell = (2.0 * mean_edge).max(extent / 256.0).max(1e-12);
        let dims = [0, 1, 2].map(|k| (((hi[k] - lo[k]) / cell).floor() as usize + 1).max(1));
        let mut buckets = vec![Vec::new(); dims[0] * dims[1] * dims[2]];
        let mut grid = Self { mesh, origin: lo, cell, dims, buckets: Vec::new() };
        for (k, t) in mesh.triangles().iter().enumerate() {
            let mut tlo = v[t[0]];
            let mut thi = v[t[0]];
            for &i in &t[1..] {
                tlo = tlo.inf(&v[i]);
                thi = thi.sup(&v[i]);
            }
            let a = grid.cell_of(&tlo);
            let b = grid.cell_of(&thi);
            for x in a[0]..=b[0] {
                for y in a[1]..=b[1] {
                    for z in a[2]..=b[2] {
                        buckets[grid.flat([x, y, z])].push(k);
                    }
                }
            }
        }
        grid.buckets = buckets;
        grid
    }

    fn cell_of(&self, p: &Vec3) -> [usize; 3] {
        [0, 1, 2].map(|k| {
            let c = ((p[k] - self.origin[k]) / self.cell).floor();
            (c.max(0.0) as usize).min(self.dims[k] - 1)
        })
    }

    fn flat(&self, c: [usize; 3]) -> usize {
        (c[2] * self.dims[1] + c[1]) * self.dims[0] + c[0]
    }

    /// Distance from `p` to the nearest triangle.
    pub fn distance(&self, p: &Vec3) -> f64 {
        let v = self.mesh.vertices();
        let tris = self.mesh.triangles();
        let home = self.cell_of(p);
        let max_shell = *self.dims.iter().max().unwrap();
        let mut best = f64::INFINITY;
        let mut seen: HashSet<usize> = HashSet::new();
        for shell in 0..=max_shell {
            let s = shell as isize;
            for dx in -s..=s {
                for dy in -s..=s {
                    for dz in -s..=s {
                        if dx.abs().max(dy.abs()).max(dz.abs()) != s {
                            continue;
                        }
                        let c = [home[0] as isize + dx, home[1] as isize + dy, home[2] as isize + dz];
                        if (0..3).any(|k| c[k] < 0 || c[k] >= self.dims[k] as isize) {
                            continue;
                        }
                        let idx = self.flat([c[0] as usize, c[1] as usize, c[2] as usize]);
                        for &k in &self.buckets[idx] {
                            if !seen.insert(k) {
                                continue;
                            }
                            let t = tris[k];
                            best = best.min(point_triangle_distance(p, &v[t[0]], &v[t[1]], &v[t[2]]));
                        }
                    }
                }
            }
            // Cells beyond this shell are at least `shell · cell` away.
            if best <= shell as f64 * self.cell {
                break;
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HausdorffDistance {
    /// `max` over mesh vertices of the distance to the patch.
    pub mesh_to_patch: f64,
    /// `max` over patch samples of the distance to the mesh.
    pub patch_to_mesh: f64,
}

impl HausdorffDistance {
    pub fn value(&self) -> f64 {
        self.mesh_to_patch.max(self.patch_to_mesh)
    }
}

/// Two-sided Hausdorff estimate between a mesh and a patch, with the patch
/// sampled on a `samples × samples` grid in `(u, s)`.
pub fn hausdorff_to_patch(m: &SurfaceMesh, patch: &HelicoidPatch, samples: usize) -> Result<HausdorffDistance> {
    let mut mesh_to_patch = 0.0f64;
    for p in m.vertices() {
        let d = patch.signed_distance_estimate(p)?;
        mesh_to_patch = mesh_to_patch.max(d.distance.abs());
    }
    let grid = TriangleGrid::new(m);
    let r = patch.cfg().radius();
    let n = samples.max(2);
    let mut patch_to_mesh = 0.0f64;
    for j in 0..n {
        let s = j as f64 / (n - 1) as f64;
        for i in 0..n {
            let u = -r + 2.0 * r * i as f64 / (n - 1) as f64;
            patch_to_mesh = patch_to_mesh.max(grid.distance(&patch.point(u, s)));
        }
    }
    Ok(HausdorffDistance { mesh_to_patch, patch_to_mesh })
}
