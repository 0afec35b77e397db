//! Triangle meshes inside the cylinder with boundary roles.
//!
//! Each vertex carries a [`VertexRole`] describing how it may move: fixed on
//! one of the two diameters, sliding on the side surface `S`, sliding along
//! the axis, pinned in place, or unconstrained. Geometry routines (slicing,
//! transversality, meeting angles, foliation leaves) and the area minimizer
//! live in the submodules.

mod competitors;
mod distance;
mod foliation;
mod perturb;
mod projection;
mod slicing;
mod solver;

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use crate::cylinder::CylinderConfig;
use crate::error::{Error, Result};
use crate::Vec3;

pub use competitors::{generate_competitor, helicoid_sample, horizontal_disk, ruled_interpolant, Competitor};
pub use distance::{hausdorff_to_patch, point_triangle_distance, HausdorffDistance, TriangleGrid};
pub use foliation::{foliation_leaves, Attachment, Leaf, LeafSet};
pub use perturb::{perturb_along_normal, BumpProfile, Perturbation};
pub use projection::{monotone_projection_check, ProjectionCheck};
pub use slicing::{
    meeting_angle_profile, radius_grid, slice_lengths, transversality_profile, triangle_transversality, MeetingAngle,
    Slice, SliceEntry, SliceProfile, TransversalityEntry, TransversalityProfile, TRANSVERSALITY_FLAG,
};
pub use solver::{area_gradient, mean_curvature_norms, minimize_area, repair_mesh, SolverOptions, SolverReport};

/// Tolerance for role constraints (distance to `S`, to the axis, to a
/// diameter).
pub const ROLE_TOL: f64 = 1e-10;

/// Smallest triangle angle accepted by [`SurfaceMesh::new`].
pub const MIN_ANGLE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexRole {
    Interior,
    FixedD1,
    FixedD2,
    FreeOnS,
    Axis,
    /// Held in place without lying on a diameter, e.g. a prescribed helix.
    Pinned,
}

impl VertexRole {
    pub fn is_fixed(self) -> bool {
        matches!(self, Self::FixedD1 | Self::FixedD2 | Self::Pinned)
    }
}

/// A diameter segment given by its two endpoints.
pub type Segment = [Vec3; 2];

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    cfg: CylinderConfig,
    vertices: Vec<Vec3>,
    triangles: Vec<[usize; 3]>,
    roles: Vec<VertexRole>,
    d1: Option<Segment>,
    d2: Option<Segment>,
}

#[derive(Serialize, Deserialize)]
struct Sidecar {
    cylinder: CylinderConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d1: Option<[[f64; 3]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d2: Option<[[f64; 3]; 2]>,
    roles: BTreeMap<usize, VertexRole>,
}

fn seg_to_arr(s: &Segment) -> [[f64; 3]; 2] {
    [[s[0].x, s[0].y, s[0].z], [s[1].x, s[1].y, s[1].z]]
}

fn arr_to_seg(a: &[[f64; 3]; 2]) -> Segment {
    [Vec3::from(a[0]), Vec3::from(a[1])]
}

fn distance_to_segment(p: &Vec3, s: &Segment) -> f64 {
    let d = s[1] - s[0];
    let len2 = d.norm_squared();
    let t = if len2 > 0.0 { ((p - s[0]).dot(&d) / len2).clamp(0.0, 1.0) } else { 0.0 };
    (p - (s[0] + t * d)).norm()
}

pub(crate) fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub(crate) fn triangle_area(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    0.5 * (b - a).cross(&(c - a)).norm()
}

/// Interior angles at the three corners.
pub(crate) fn triangle_angles(a: &Vec3, b: &Vec3, c: &Vec3) -> [f64; 3] {
    let ang = |p: &Vec3, q: &Vec3, r: &Vec3| {
        let u = q - p;
        let v = r - p;
        u.cross(&v).norm().atan2(u.dot(&v))
    };
    [ang(a, b, c), ang(b, c, a), ang(c, a, b)]
}

impl SurfaceMesh {
    /// Builds a mesh and checks combinatorics, roles, containment and the
    /// minimum-angle floor.
    pub fn new(
        cfg: CylinderConfig,
        vertices: Vec<Vec3>,
        triangles: Vec<[usize; 3]>,
        roles: Vec<VertexRole>,
    ) -> Result<Self> {
        let m = Self::assemble(cfg, vertices, triangles, roles, None, None)?;
        m.validate()?;
        Ok(m)
    }

    /// Like [`SurfaceMesh::new`], with the diameters that `fixed_d1` and
    /// `fixed_d2` vertices must lie on.
    pub fn with_diameters(
        cfg: CylinderConfig,
        vertices: Vec<Vec3>,
        triangles: Vec<[usize; 3]>,
        roles: Vec<VertexRole>,
        d1: Option<Segment>,
        d2: Option<Segment>,
    ) -> Result<Self> {
        let m = Self::assemble(cfg, vertices, triangles, roles, d1, d2)?;
        m.validate()?;
        Ok(m)
    }

    fn assemble(
        cfg: CylinderConfig,
        vertices: Vec<Vec3>,
        triangles: Vec<[usize; 3]>,
        roles: Vec<VertexRole>,
        d1: Option<Segment>,
        d2: Option<Segment>,
    ) -> Result<Self> {
        if roles.len() != vertices.len() {
            return Err(Error::Mesh(format!("{} roles for {} vertices", roles.len(), vertices.len())));
        }
        if triangles.is_empty() {
            return Err(Error::Mesh("mesh has no triangles".into()));
        }
        Ok(Self { cfg, vertices, triangles, roles, d1, d2 })
    }

    /// Full invariant check.
    pub fn validate(&self) -> Result<()> {
        self.validate_combinatorics()?;
        self.check_roles(ROLE_TOL)?;
        let angle = self.min_angle();
        if !(angle > MIN_ANGLE) {
            return Err(Error::Mesh(format!("minimum angle {angle:.3e} below {MIN_ANGLE:.0e}")));
        }
        Ok(())
    }

    fn validate_combinatorics(&self) -> Result<()> {
        let n = self.vertices.len();
        let mut used = vec![false; n];
        for (k, t) in self.triangles.iter().enumerate() {
            if t.iter().any(|&i| i >= n) {
                return Err(Error::Mesh(format!("triangle {k} references a missing vertex")));
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(Error::Mesh(format!("triangle {k} repeats a vertex")));
            }
            for &i in t {
                used[i] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::Mesh(format!("vertex {i} belongs to no triangle")));
        }
        for (e, c) in self.edge_counts() {
            if c > 2 {
                return Err(Error::Mesh(format!("edge {e:?} shared by {c} triangles")));
            }
        }
        if let Some(i) = self.vertices.iter().position(|p| !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite())) {
            return Err(Error::Mesh(format!("vertex {i} is not finite")));
        }
        Ok(())
    }

    /// Checks containment in `C` and per-role constraints to tolerance `tol`.
    pub fn check_roles(&self, tol: f64) -> Result<()> {
        let r = self.cfg.radius();
        let h = self.cfg.height();
        for (i, (p, role)) in self.vertices.iter().zip(&self.roles).enumerate() {
            if !self.cfg.contains(p, tol.max(ROLE_TOL)) {
                return Err(Error::Mesh(format!("vertex {i} at {p:?} outside the cylinder")));
            }
            let ok = match role {
                VertexRole::FreeOnS => (p.x.hypot(p.y) - r).abs() <= tol,
                VertexRole::Axis => p.x.hypot(p.y) <= tol,
                VertexRole::FixedD1 => match &self.d1 {
                    Some(s) => distance_to_segment(p, s) <= tol,
                    None => (p.z - h).abs() <= tol,
                },
                VertexRole::FixedD2 => match &self.d2 {
                    Some(s) => distance_to_segment(p, s) <= tol,
                    None => p.z.abs() <= tol,
                },
                VertexRole::Interior | VertexRole::Pinned => true,
            };
            if !ok {
                return Err(Error::Mesh(format!("vertex {i} violates its {role:?} constraint")));
            }
        }
        Ok(())
    }

    pub fn cfg(&self) -> &CylinderConfig {
        &self.cfg
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn roles(&self) -> &[VertexRole] {
        &self.roles
    }

    pub fn d1(&self) -> Option<&Segment> {
        self.d1.as_ref()
    }

    pub fn d2(&self) -> Option<&Segment> {
        self.d2.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub(crate) fn positions_mut(&mut self) -> &mut Vec<Vec3> {
        &mut self.vertices
    }

    pub(crate) fn set_connectivity(&mut self, vertices: Vec<Vec3>, triangles: Vec<[usize; 3]>, roles: Vec<VertexRole>) {
        self.vertices = vertices;
        self.triangles = triangles;
        self.roles = roles;
    }

    /// Replaces roles, re-checking constraints.
    pub fn with_roles(mut self, roles: Vec<VertexRole>) -> Result<Self> {
        if roles.len() != self.vertices.len() {
            return Err(Error::Mesh("role count does not match vertex count".into()));
        }
        self.roles = roles;
        self.check_roles(ROLE_TOL)?;
        Ok(self)
    }

    /// Holds every `free_on_S` vertex in place (prescribed side curves).
    pub fn pin_side_boundary(mut self) -> Self {
        for r in &mut self.roles {
            if *r == VertexRole::FreeOnS {
                *r = VertexRole::Pinned;
            }
        }
        self
    }

    /// Turns `axis` vertices into unconstrained interior vertices.
    pub fn release_axis(mut self) -> Self {
        for r in &mut self.roles {
            if *r == VertexRole::Axis {
                *r = VertexRole::Interior;
            }
        }
        self
    }

    /// Sum of triangle areas.
    pub fn area(&self) -> f64 {
        mesh_area_of(&self.vertices, &self.triangles)
    }

    pub fn triangle_area(&self, k: usize) -> f64 {
        let [a, b, c] = self.triangles[k];
        triangle_area(&self.vertices[a], &self.vertices[b], &self.vertices[c])
    }

    /// Unit normal of triangle `k` from its vertex order.
    pub fn triangle_normal(&self, k: usize) -> Vec3 {
        let [a, b, c] = self.triangles[k];
        let v = &self.vertices;
        (v[b] - v[a]).cross(&(v[c] - v[a])).normalize()
    }

    pub fn min_angle(&self) -> f64 {
        min_angle_of(&self.vertices, &self.triangles)
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edges().iter().map(|&(a, b)| (self.vertices[a] - self.vertices[b]).norm()).fold(0.0, f64::max)
    }

    fn edge_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut counts = BTreeMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                *counts.entry(edge_key(t[k], t[(k + 1) % 3])).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Undirected edges in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edge_counts().into_keys().collect()
    }

    /// Edges belonging to exactly one triangle.
    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        self.edge_counts().into_iter().filter(|&(_, c)| c == 1).map(|(e, _)| e).collect()
    }

    /// Marks vertices incident to a boundary edge.
    pub fn boundary_vertex_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.vertices.len()];
        for (a, b) in self.boundary_edges() {
            mask[a] = true;
            mask[b] = true;
        }
        mask
    }

    /// `χ = V − E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges().len() as i64 + self.triangles.len() as i64
    }

    /// Number of closed boundary loops.
    pub fn boundary_components(&self) -> usize {
        let be = self.boundary_edges();
        let mut uf = UnionFind::new(self.vertices.len());
        for &(a, b) in &be {
            uf.union(a, b);
        }
        let mut roots: Vec<usize> = be.iter().map(|&(a, _)| uf.find(a)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Genus from `χ = 2 − 2g − b` for a connected orientable mesh.
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic() - self.boundary_components() as i64) / 2
    }

    /// Disk type: connected, `χ = 1`, one boundary loop.
    pub fn is_disk_type(&self) -> bool {
        self.connected_components() == 1 && self.euler_characteristic() == 1 && self.boundary_components() == 1
    }

    pub fn connected_components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for t in &self.triangles {
            uf.union(t[0], t[1]);
            uf.union(t[1], t[2]);
        }
        let mut roots: Vec<usize> = (0..self.vertices.len()).map(|i| uf.find(i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Whether the triangles can be oriented consistently.
    pub fn is_orientable(&self) -> bool {
        self.consistent_orientation().is_some()
    }

    /// Flip flags making every shared edge appear with opposite directions,
    /// or `None` if the mesh is non-orientable.
    fn consistent_orientation(&self) -> Option<Vec<bool>> {
        let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, t) in self.triangles.iter().enumerate() {
            for j in 0..3 {
                by_edge.entry(edge_key(t[j], t[(j + 1) % 3])).or_default().push(k);
            }
        }
        let directed = |k: usize, a: usize, b: usize, flip: bool| {
            let t = self.triangles[k];
            let fwd = (0..3).any(|j| t[j] == a && t[(j + 1) % 3] == b);
            fwd != flip
        };
        let n = self.triangles.len();
        let mut flip: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if flip[start].is_some() {
                continue;
            }
            flip[start] = Some(false);
            let mut stack = vec![start];
            while let Some(k) = stack.pop() {
                let fk = flip[k].unwrap();
                let t = self.triangles[k];
                for j in 0..3 {
                    let (a, b) = (t[j], t[(j + 1) % 3]);
                    for &o in &by_edge[&edge_key(a, b)] {
                        if o == k {
                            continue;
                        }
                        // `o` must traverse a→b backwards relative to `k`.
                        let k_fwd = directed(k, a, b, fk);
                        let need = directed(o, a, b, false) == k_fwd;
                        match flip[o] {
                            None => {
                                flip[o] = Some(need);
                                stack.push(o);
                            }
                            Some(f) if f != need => return None,
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        Some(flip.into_iter().map(|f| f.unwrap()).collect())
    }

    /// Reorients triangles consistently; errors on non-orientable meshes.
    pub fn orient(&mut self) -> Result<()> {
        let flips = self.consistent_orientation().ok_or_else(|| Error::Mesh("mesh is not orientable".into()))?;
        for (t, f) in self.triangles.iter_mut().zip(flips) {
            if f {
                t.swap(1, 2);
            }
        }
        Ok(())
    }

    /// Indices of vertices with the given role.
    pub fn vertices_with_role(&self, role: VertexRole) -> Vec<usize> {
        (0..self.roles.len()).filter(|&i| self.roles[i] == role).collect()
    }

    /// Whether the mesh has a vertex line along the axis spanning the full
    /// height (axis-role vertices or any vertices with `x = y = 0`).
    pub fn contains_axis(&self) -> bool {
        let on_axis: Vec<usize> =
            (0..self.vertices.len()).filter(|&i| self.vertices[i].x.hypot(self.vertices[i].y) <= ROLE_TOL).collect();
        if on_axis.is_empty() {
            return false;
        }
        let h = self.cfg.height();
        let lo = on_axis.iter().map(|&i| self.vertices[i].z).fold(f64::INFINITY, f64::min);
        let hi = on_axis.iter().map(|&i| self.vertices[i].z).fold(f64::NEG_INFINITY, f64::max);
        if lo > ROLE_TOL || hi < h - ROLE_TOL {
            return false;
        }
        // The axis vertices must be chained by mesh edges.
        let mut uf = UnionFind::new(self.vertices.len());
        let mask: Vec<bool> =
            (0..self.vertices.len()).map(|i| self.vertices[i].x.hypot(self.vertices[i].y) <= ROLE_TOL).collect();
        for (a, b) in self.edges() {
            if mask[a] && mask[b] {
                uf.union(a, b);
            }
        }
        let root = uf.find(on_axis[0]);
        on_axis.iter().all(|&i| uf.find(i) == root)
    }

    /// Writes the mesh as Wavefront OBJ (1-based faces).
    pub fn write_obj<W: Write>(&self, mut w: W) -> Result<()> {
        for p in &self.vertices {
            writeln!(w, "v {:?} {:?} {:?}", p.x, p.y, p.z)?;
        }
        for t in &self.triangles {
            writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
        }
        Ok(())
    }

    /// Sidecar JSON with the cylinder, diameters and roles keyed by vertex
    /// index.
    pub fn roles_json(&self) -> Result<String> {
        let sidecar = Sidecar {
            cylinder: self.cfg,
            d1: self.d1.as_ref().map(seg_to_arr),
            d2: self.d2.as_ref().map(seg_to_arr),
            roles: self.roles.iter().copied().enumerate().collect(),
        };
        Ok(serde_json::to_string_pretty(&sidecar)?)
    }

    /// Reads an OBJ stream plus its roles sidecar.
    pub fn read_obj<R: Read, S: Read>(obj: R, sidecar: S) -> Result<Self> {
        let side: Sidecar = serde_json::from_reader(sidecar)?;
        let mut vertices = Vec::new();
        let mut triangles = Vec::new();
        for (lineno, line) in BufReader::new(obj).lines().enumerate() {
            let line = line?;
            let mut it = line.split_whitespace();
            match it.next() {
                Some("v") => {
                    let c: Vec<f64> = it
                        .take(3)
                        .map(|s| s.parse::<f64>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
                    if c.len() != 3 {
                        return Err(Error::Parse(format!("line {}: vertex needs 3 coordinates", lineno + 1)));
                    }
                    vertices.push(Vec3::new(c[0], c[1], c[2]));
                }
                Some("f") => {
                    let idx: Vec<usize> = it
                        .map(|s| s.split('/').next().unwrap_or("").parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
                    if idx.len() != 3 || idx.contains(&0) {
                        return Err(Error::Parse(format!("line {}: only 1-based triangles supported", lineno + 1)));
                    }
                    triangles.push([idx[0] - 1, idx[1] - 1, idx[2] - 1]);
                }
                _ => {}
            }
        }
        let mut roles = vec![VertexRole::Interior; vertices.len()];
        for (i, r) in side.roles {
            if i >= roles.len() {
                return Err(Error::Parse(format!("role for missing vertex {i}")));
            }
            roles[i] = r;
        }
        Self::with_diameters(
            side.cylinder,
            vertices,
            triangles,
            roles,
            side.d1.as_ref().map(arr_to_seg),
            side.d2.as_ref().map(arr_to_seg),
        )
    }
}

/// `mesh_area(m)`: the sum of triangle areas.
pub fn mesh_area(m: &SurfaceMesh) -> f64 {
    m.area()
}

pub(crate) fn mesh_area_of(v: &[Vec3], tris: &[[usize; 3]]) -> f64 {
    tris.iter().map(|t| triangle_area(&v[t[0]], &v[t[1]], &v[t[2]])).sum()
}

pub(crate) fn min_angle_of(v: &[Vec3], tris: &[[usize; 3]]) -> f64 {
    tris.iter().flat_map(|t| triangle_angles(&v[t[0]], &v[t[1]], &v[t[2]])).fold(f64::INFINITY, f64::min)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller index wins, keeping roots deterministic.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn right_triangle() -> SurfaceMesh {
        let cfg = CylinderConfig::new(2.0, 1.0).unwrap();
        SurfaceMesh::new(
            cfg,
            vec![Vec3::new(0.0, 0.0, 0.5), Vec3::new(1.0, 0.0, 0.5), Vec3::new(0.0, 1.0, 0.5)],
            vec![[0, 1, 2]],
            vec![VertexRole::Interior; 3],
        )
        .unwrap()
    }

    #[test]
    fn unit_right_triangle_area() {
        let m = right_triangle();
        assert!((mesh_area(&m) - 0.5).abs() < 1e-15);
        assert_eq!(m.euler_characteristic(), 1);
        assert_eq!(m.boundary_components(), 1);
        assert!(m.is_disk_type());
        assert!(m.is_orientable());
    }

    #[test]
    fn rejects_bad_meshes() {
        let cfg = CylinderConfig::unit();
        let v = vec![Vec3::new(0.0, 0.0, 0.5), Vec3::new(0.5, 0.0, 0.5), Vec3::new(0.0, 0.5, 0.5)];
        assert!(SurfaceMesh::new(cfg, v.clone(), vec![[0, 1, 3]], vec![VertexRole::Interior; 3]).is_err());
        assert!(SurfaceMesh::new(cfg, v.clone(), vec![[0, 1, 1]], vec![VertexRole::Interior; 3]).is_err());
        assert!(SurfaceMesh::new(cfg, v.clone(), vec![[0, 1, 2]], vec![VertexRole::FreeOnS; 3]).is_err());
        let mut far = v.clone();
        far[1].x = 3.0;
        assert!(SurfaceMesh::new(cfg, far, vec![[0, 1, 2]], vec![VertexRole::Interior; 3]).is_err());
        let flat = vec![Vec3::new(0.0, 0.0, 0.5), Vec3::new(0.5, 0.0, 0.5), Vec3::new(0.25, 1e-9, 0.5)];
        assert!(SurfaceMesh::new(cfg, flat, vec![[0, 1, 2]], vec![VertexRole::Interior; 3]).is_err());
    }

    #[test]
    fn obj_round_trip() {
        let m = right_triangle();
        let mut obj = Vec::new();
        m.write_obj(&mut obj).unwrap();
        let side = m.roles_json().unwrap();
        let back = SurfaceMesh::read_obj(&obj[..], side.as_bytes()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn orientation_is_repaired() {
        let cfg = CylinderConfig::unit();
        let v = vec![
            Vec3::new(0.0, 0.0, 0.5),
            Vec3::new(0.5, 0.0, 0.5),
            Vec3::new(0.5, 0.5, 0.5),
            Vec3::new(0.0, 0.5, 0.5),
        ];
        let mut m = SurfaceMesh::new(cfg, v, vec![[0, 1, 2], [0, 3, 2]], vec![VertexRole::Interior; 4]).unwrap();
        m.orient().unwrap();
        let n0 = m.triangle_normal(0);
        let n1 = m.triangle_normal(1);
        assert!(n0.dot(&n1) > 0.999);
    }
}
