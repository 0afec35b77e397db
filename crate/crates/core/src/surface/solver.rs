//! Constrained discrete area minimization.
//!
//! Every movable vertex moves along a single direction: its area-weighted
//! normal for interior vertices, and the part of that normal tangent to `S`
//! for `free_on_S` vertices. Fixed, pinned and axis vertices do not move.
//! Each iteration projects the exact area gradient onto these directions and
//! turns it into a search direction by solving with the cotangent Laplacian
//! of the current mesh, restricted the same way. The step is shortened by
//! Armijo backtracking and the new positions are projected back onto their
//! constraints. Without the Laplacian solve this is explicit mean curvature
//! flow, available through [`SolverOptions::sobolev`].

use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{edge_key, mesh_area_of, min_angle_of, triangle_angles, SurfaceMesh, VertexRole, ROLE_TOL};
use crate::error::{Error, Result};
use crate::Vec3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverOptions {
    pub max_iterations: usize,
    /// Stop once the largest vertex displacement of an accepted step is
    /// below this.
    pub tolerance: f64,
    /// Armijo sufficient-decrease constant.
    pub armijo: f64,
    pub max_backtracks: usize,
    /// Triangles with a smaller angle trigger the repair pass.
    pub min_angle: f64,
    /// Precondition the gradient with the cotangent Laplacian.
    pub sobolev: bool,
    /// First trial step of the explicit flow.
    pub explicit_step: f64,
    pub cg_tolerance: f64,
    pub cg_max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            tolerance: 1e-7,
            armijo: 1e-4,
            max_backtracks: 40,
            min_angle: 1e-3,
            sobolev: true,
            explicit_step: 0.1,
            cg_tolerance: 1e-10,
            cg_max_iterations: 5000,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig("solver tolerance must be positive".into()));
        }
        if !(self.armijo > 0.0 && self.armijo < 1.0) {
            return Err(Error::InvalidConfig("Armijo constant must lie in (0, 1)".into()));
        }
        if !(self.explicit_step > 0.0) {
            return Err(Error::InvalidConfig("explicit step must be positive".into()));
        }
        if !(self.min_angle >= 0.0) {
            return Err(Error::InvalidConfig("minimum angle must be nonnegative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SolverReport {
    pub iterations: usize,
    pub final_area: f64,
    /// Area before the first step and after every accepted step.
    pub area_history: Vec<f64>,
    /// Largest vertex displacement of every accepted step.
    pub displacement_history: Vec<f64>,
    /// Largest projected gradient norm at the final iterate.
    pub max_gradient_norm: f64,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hausdorff_to_reference: Option<f64>,
    pub repairs: usize,
    /// Iterations that fell back to the unpreconditioned direction.
    pub fallback_steps: usize,
    /// Accepted step length of every accepted step.
    pub step_history: Vec<f64>,
    pub termination: String,
}

impl SolverReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes `iteration,area,max_displacement`; the first row is the
    /// initial mesh.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["iteration", "area", "max_displacement"])?;
        for (k, a) in self.area_history.iter().enumerate() {
            let disp = if k == 0 { String::new() } else { format!("{:.12e}", self.displacement_history[k - 1]) };
            w.write_record([k.to_string(), format!("{a:.15e}"), disp])?;
        }
        w.flush()?;
        Ok(())
    }

    /// `area_history` never increases by more than `slack`.
    pub fn is_monotone(&self, slack: f64) -> bool {
        self.area_history.windows(2).all(|w| w[1] <= w[0] + slack)
    }
}

/// Exact gradient of the total area with respect to each vertex.
pub fn area_gradient(m: &SurfaceMesh) -> Vec<Vec3> {
    gradient_of(m.vertices(), m.triangles())
}

fn gradient_of(v: &[Vec3], tris: &[[usize; 3]]) -> Vec<Vec3> {
    let mut g = vec![Vec3::zeros(); v.len()];
    for t in tris {
        let (a, b, c) = (v[t[0]], v[t[1]], v[t[2]]);
        let cr = (b - a).cross(&(c - a));
        let len = cr.norm();
        if len <= 0.0 {
            continue;
        }
        let n = cr / len;
        g[t[0]] += 0.5 * n.cross(&(c - b));
        g[t[1]] += 0.5 * n.cross(&(a - c));
        g[t[2]] += 0.5 * n.cross(&(b - a));
    }
    g
}

/// `|n_i · ∇_i A| / (2 A_i / 3)` per vertex: the normal part of the
/// cotangent mean-curvature vector, with `n_i` the area-weighted normal and
/// `A_i` the area of the incident triangles.
pub fn mean_curvature_norms(m: &SurfaceMesh) -> Vec<f64> {
    let g = area_gradient(m);
    let v = m.vertices();
    let normals = vertex_normals(v, m.triangles());
    let mut star = vec![0.0; v.len()];
    for t in m.triangles() {
        let a = super::triangle_area(&v[t[0]], &v[t[1]], &v[t[2]]);
        for &i in t {
            star[i] += a;
        }
    }
    (0..v.len()).map(|i| g[i].dot(&normals[i]).abs() / (2.0 * star[i] / 3.0)).collect()
}

/// Unit area-weighted vertex normals.
fn vertex_normals(v: &[Vec3], tris: &[[usize; 3]]) -> Vec<Vec3> {
    let mut n = vec![Vec3::zeros(); v.len()];
    for t in tris {
        let c = (v[t[1]] - v[t[0]]).cross(&(v[t[2]] - v[t[0]]));
        for &i in t {
            n[i] += c;
        }
    }
    for x in &mut n {
        let len = x.norm();
        if len > 0.0 {
            *x /= len;
        }
    }
    n
}

/// Unit direction each vertex may move along; zero for vertices that stay.
fn motion_directions(v: &[Vec3], tris: &[[usize; 3]], roles: &[VertexRole]) -> Vec<Vec3> {
    let normals = vertex_normals(v, tris);
    (0..v.len())
        .map(|i| match roles[i] {
            VertexRole::Interior => normals[i],
            VertexRole::FreeOnS => {
                let p = v[i];
                let rho = p.x.hypot(p.y);
                let er = Vec3::new(p.x / rho, p.y / rho, 0.0);
                let t = normals[i] - er * er.dot(&normals[i]);
                let len = t.norm();
                if len > 1e-12 {
                    t / len
                } else {
                    Vec3::zeros()
                }
            }
            _ => Vec3::zeros(),
        })
        .collect()
}

fn project_onto(dirs: &[Vec3], x: &mut [Vec3]) {
    for (xi, u) in x.iter_mut().zip(dirs) {
        *xi = u * u.dot(xi);
    }
}

/// Cotangent Laplacian in compressed rows: `(L x)_i = Σ_j w_ij (x_i − x_j)`
/// with `w_ij = ½ (cot α_ij + cot β_ij)`.
struct Laplacian {
    offsets: Vec<usize>,
    cols: Vec<usize>,
    weights: Vec<f64>,
    diag: Vec<f64>,
}

impl Laplacian {
    fn build(v: &[Vec3], tris: &[[usize; 3]]) -> Self {
        let mut trip: Vec<(usize, usize, f64)> = Vec::with_capacity(6 * tris.len());
        for t in tris {
            let ang = triangle_angles(&v[t[0]], &v[t[1]], &v[t[2]]);
            for k in 0..3 {
                let (i, j) = (t[(k + 1) % 3], t[(k + 2) % 3]);
                let w = 0.5 / ang[k].tan();
                trip.push((i, j, w));
                trip.push((j, i, w));
            }
        }
        trip.sort_by_key(|t| (t.0, t.1));
        let n = v.len();
        let mut offsets = vec![0usize; n + 1];
        let mut cols = Vec::new();
        let mut weights = Vec::new();
        let mut diag = vec![0.0; n];
        let mut k = 0;
        for i in 0..n {
            offsets[i] = cols.len();
            while k < trip.len() && trip[k].0 == i {
                let j = trip[k].1;
                let mut w = 0.0;
                while k < trip.len() && trip[k].0 == i && trip[k].1 == j {
                    w += trip[k].2;
                    k += 1;
                }
                cols.push(j);
                weights.push(w);
                diag[i] += w;
            }
        }
        offsets[n] = cols.len();
        Self { offsets, cols, weights, diag }
    }

    fn apply(&self, x: &[Vec3], y: &mut [Vec3]) {
        for i in 0..x.len() {
            let mut acc = Vec3::zeros();
            for k in self.offsets[i]..self.offsets[i + 1] {
                acc += self.weights[k] * (x[i] - x[self.cols[k]]);
            }
            y[i] = acc;
        }
    }
}

/// Puts a trial position back onto its constraint and inside the cylinder.
fn project_position(role: VertexRole, old: &Vec3, p: Vec3, r: f64, h: f64) -> Vec3 {
    match role {
        VertexRole::FixedD1 | VertexRole::FixedD2 | VertexRole::Pinned | VertexRole::Axis => *old,
        VertexRole::FreeOnS => {
            let rho = p.x.hypot(p.y);
            Vec3::new(p.x * r / rho, p.y * r / rho, p.z.clamp(0.0, h))
        }
        VertexRole::Interior => {
            let rho = p.x.hypot(p.y);
            let s = if rho > r { r / rho } else { 1.0 };
            Vec3::new(p.x * s, p.y * s, p.z.clamp(0.0, h))
        }
    }
}

fn dot(a: &[Vec3], b: &[Vec3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.dot(y)).sum()
}

/// Preconditioned conjugate gradients for `P L P x = b` on the admissible
/// subspace. Returns `None` on breakdown or when the iteration budget runs
/// out.
fn solve_projected(lap: &Laplacian, dirs: &[Vec3], b: &[Vec3], tol: f64, max_iter: usize) -> Option<Vec<Vec3>> {
    let n = b.len();
    let proj = |x: &mut [Vec3]| project_onto(dirs, x);
    let inv_diag: Vec<f64> = lap.diag.iter().map(|&d| if d > 1e-14 { 1.0 / d } else { 1.0 }).collect();
    let precond = |r: &[Vec3]| -> Vec<Vec3> { r.iter().zip(&inv_diag).map(|(x, s)| x * *s).collect() };
    let bnorm = dot(b, b).sqrt();
    if bnorm == 0.0 {
        return Some(vec![Vec3::zeros(); n]);
    }
    let mut x = vec![Vec3::zeros(); n];
    let mut r = b.to_vec();
    let mut z = precond(&r);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![Vec3::zeros(); n];
    for _ in 0..max_iter {
        lap.apply(&p, &mut ap);
        proj(&mut ap);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return None;
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        if dot(&r, &r).sqrt() <= tol * bnorm {
            return Some(x);
        }
        z = precond(&r);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    None
}

/// Runs the constrained minimizer. The input mesh is not modified.
pub fn minimize_area(mesh: &SurfaceMesh, opts: &SolverOptions) -> Result<(SurfaceMesh, SolverReport)> {
    opts.validate()?;
    let mut m = mesh.clone();
    let r = m.cfg().radius();
    let h = m.cfg().height();
    let mut report = SolverReport::default();
    let mut area = m.area();
    report.area_history.push(area);
    let mut termination = "max_iterations".to_string();

    for iter in 0..opts.max_iterations {
        let roles = m.roles().to_vec();
        let pos = m.vertices().to_vec();
        let tris = m.triangles().to_vec();
        let dirs = motion_directions(&pos, &tris, &roles);
        let mut pg = gradient_of(&pos, &tris);
        project_onto(&dirs, &mut pg);
        report.max_gradient_norm = pg.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if report.max_gradient_norm == 0.0 {
            report.converged = true;
            termination = "zero_gradient".into();
            break;
        }

        let steepest: Vec<Vec3> = pg.iter().map(|x| -x).collect();
        let (dir, first_step) = if opts.sobolev {
            let lap = Laplacian::build(&pos, &tris);
            match solve_projected(&lap, &dirs, &steepest, opts.cg_tolerance, opts.cg_max_iterations) {
                Some(d) if dot(&pg, &d) < 0.0 => (d, 1.0),
                _ => {
                    report.fallback_steps += 1;
                    (steepest.clone(), opts.explicit_step)
                }
            }
        } else {
            (steepest.clone(), opts.explicit_step)
        };
        let slope = dot(&pg, &dir);

        let mut alpha = first_step;
        let mut accepted: Option<(Vec<Vec3>, f64)> = None;
        for _ in 0..=opts.max_backtracks {
            let trial: Vec<Vec3> =
                (0..pos.len()).map(|i| project_position(roles[i], &pos[i], pos[i] + dir[i] * alpha, r, h)).collect();
            let a_new = mesh_area_of(&trial, &tris);
            if a_new <= area + opts.armijo * alpha * slope + 1e-14 * area.abs() {
                accepted = Some((trial, a_new));
                break;
            }
            alpha *= 0.5;
        }
        let Some((trial, a_new)) = accepted else {
            let full = dir.iter().map(|d| d.norm()).fold(0.0, f64::max) * first_step;
            report.converged = full < opts.tolerance * 10.0;
            termination = "line_search_stalled".into();
            break;
        };
        let disp = trial.iter().zip(&pos).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        *m.positions_mut() = trial;
        area = a_new.min(area);
        report.iterations = iter + 1;
        report.area_history.push(a_new);
        report.displacement_history.push(disp);
        report.step_history.push(alpha);

        if let Err(e) = m.check_roles(ROLE_TOL) {
            report.final_area = m.area();
            report.termination = "constraint_violation".into();
            return Err(Error::SolverAborted { reason: e.to_string(), report: Box::new(report) });
        }
        if min_angle_of(m.vertices(), m.triangles()) < opts.min_angle {
            match repair_mesh(&mut m, opts.min_angle) {
                Ok(ops) => {
                    report.repairs += ops;
                    area = m.area();
                }
                Err(e) => {
                    report.final_area = m.area();
                    report.termination = "repair_failed".into();
                    return Err(Error::SolverAborted { reason: e.to_string(), report: Box::new(report) });
                }
            }
        }
        if disp < opts.tolerance {
            report.converged = true;
            termination = "displacement_below_tolerance".into();
            break;
        }
    }
    if report.iterations > 0 && !report.converged && termination == "max_iterations" {
        // Final gradient for the report.
        let dirs = motion_directions(m.vertices(), m.triangles(), m.roles());
        let mut g = area_gradient(&m);
        project_onto(&dirs, &mut g);
        report.max_gradient_norm = g.iter().map(|x| x.norm()).fold(0.0, f64::max);
    }
    report.final_area = m.area();
    report.termination = termination;
    Ok((m, report))
}

/// Edge flips, then midpoint splits of interior edges, until every angle
/// is at least `floor`. Returns the number of operations.
pub fn repair_mesh(m: &mut SurfaceMesh, floor: f64) -> Result<usize> {
    let mut ops = 0;
    for _round in 0..20 {
        let v = m.vertices().to_vec();
        let mut tris = m.triangles().to_vec();
        let mut roles = m.roles().to_vec();
        let mut verts = v.clone();
        let bad: Vec<usize> = (0..tris.len())
            .filter(|&k| {
                let t = tris[k];
                triangle_angles(&v[t[0]], &v[t[1]], &v[t[2]]).iter().any(|&a| a < floor)
            })
            .collect();
        if bad.is_empty() {
            return Ok(ops);
        }
        let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, t) in tris.iter().enumerate() {
            for j in 0..3 {
                by_edge.entry(edge_key(t[j], t[(j + 1) % 3])).or_default().push(k);
            }
        }
        let mut touched = vec![false; tris.len()];
        let mut progress = false;
        for &k in &bad {
            if touched[k] {
                continue;
            }
            let t = tris[k];
            // Longest edge of the bad triangle.
            let j = (0..3)
                .max_by(|&a, &b| {
                    let la = (v[t[a]] - v[t[(a + 1) % 3]]).norm();
                    let lb = (v[t[b]] - v[t[(b + 1) % 3]]).norm();
                    la.total_cmp(&lb)
                })
                .unwrap();
            let (a, b) = (t[j], t[(j + 1) % 3]);
            let c = t[(j + 2) % 3];
            let owners = &by_edge[&edge_key(a, b)];
            if owners.len() != 2 {
                continue;
            }
            let o = if owners[0] == k { owners[1] } else { owners[0] };
            if touched[o] {
                continue;
            }
            let to = tris[o];
            let Some(d) = to.iter().copied().find(|&x| x != a && x != b) else { continue };
            let before = triangle_angles(&v[a], &v[b], &v[c])
                .into_iter()
                .chain(triangle_angles(&v[b], &v[a], &v[d]))
                .fold(f64::INFINITY, f64::min);
            let n_old = (v[b] - v[a]).cross(&(v[c] - v[a]));
            let f1 = [c, a, d];
            let f2 = [c, d, b];
            let after = triangle_angles(&v[c], &v[a], &v[d])
                .into_iter()
                .chain(triangle_angles(&v[c], &v[d], &v[b]))
                .fold(f64::INFINITY, f64::min);
            let n1 = (v[a] - v[c]).cross(&(v[d] - v[c]));
            let n2 = (v[d] - v[c]).cross(&(v[b] - v[c]));
            let exists = by_edge.contains_key(&edge_key(c, d));
            if after > before && !exists && n1.dot(&n_old) > 0.0 && n2.dot(&n_old) > 0.0 {
                tris[k] = f1;
                tris[o] = f2;
            } else {
                // Split the edge at its midpoint.
                let mid = 0.5 * (v[a] + v[b]);
                let role = match (roles[a], roles[b]) {
                    (VertexRole::Axis, VertexRole::Axis) => VertexRole::Axis,
                    (VertexRole::FreeOnS, VertexRole::FreeOnS) => VertexRole::FreeOnS,
                    _ => VertexRole::Interior,
                };
                let r = m.cfg().radius();
                let mid = match role {
                    VertexRole::FreeOnS => {
                        let rho = mid.x.hypot(mid.y);
                        Vec3::new(mid.x * r / rho, mid.y * r / rho, mid.z)
                    }
                    _ => mid,
                };
                let e = verts.len();
                verts.push(mid);
                roles.push(role);
                tris[k] = [a, e, c];
                tris.push([e, b, c]);
                let jo = (0..3).find(|&q| to[q] == b && to[(q + 1) % 3] == a).unwrap();
                let dd = to[(jo + 2) % 3];
                tris[o] = [b, e, dd];
                tris.push([e, a, dd]);
            }
            touched[k] = true;
            touched[o] = true;
            ops += 1;
            progress = true;
        }
        m.set_connectivity(verts, tris, roles);
        if !progress {
            break;
        }
    }
    let angle = m.min_angle();
    if angle < floor {
        return Err(Error::Mesh(format!("repair left a triangle with angle {angle:.3e}")));
    }
    Ok(ops)
}
