//! Monotone projection of the four-curve boundary onto a convex plane curve.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::Segment;
use crate::cylinder::SideCurve;
use crate::error::{Error, Result};
use crate::Vec3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionCheck {
    /// The projected loop is a convex Jordan curve traversed monotonically.
    pub passed: bool,
    /// Signed sum of turning angles of the projected polygon.
    pub total_turning: f64,
    /// Vertices where the turning sign disagrees with the majority.
    pub sign_changes: usize,
    /// Vertices where the projected curve doubles back.
    pub reversals: usize,
    /// Crossings between non-adjacent edges of the projected polygon.
    pub self_intersections: usize,
    pub projected_area: f64,
    /// The projection along `d₂` collapsed the loop, which was planar, so its
    /// own plane was used instead.
    pub used_boundary_plane: bool,
    pub polygon_vertices: usize,
}

/// Chains the four curves into a closed loop starting along `d₂`.
fn assemble_loop(pieces: Vec<Vec<Vec3>>, tol: f64) -> Result<Vec<Vec3>> {
    let mut remaining = pieces;
    let mut path = remaining.remove(0);
    while !remaining.is_empty() {
        let end = *path.last().unwrap();
        let pos = remaining.iter().position(|p| (p[0] - end).norm() <= tol || (p[p.len() - 1] - end).norm() <= tol);
        let Some(k) = pos else {
            return Err(Error::Domain("boundary curves do not form a closed loop".into()));
        };
        let mut piece = remaining.remove(k);
        if (piece[0] - end).norm() > tol {
            piece.reverse();
        }
        path.extend(piece.into_iter().skip(1));
    }
    if (path[0] - *path.last().unwrap()).norm() > tol {
        return Err(Error::Domain("boundary curves do not close up".into()));
    }
    path.pop();
    if path.len() < 3 {
        return Err(Error::Domain("boundary loop has fewer than three points".into()));
    }
    Ok(path)
}

fn planar_basis(normal: &Vec3) -> (Vec3, Vec3) {
    let n = normal.normalize();
    let seed = if n.z.abs() < 0.9 { Vec3::z() } else { Vec3::x() };
    let e2 = (seed - n * n.dot(&seed)).normalize();
    let e1 = e2.cross(&n);
    (e1, e2)
}

fn project(points: &[Vec3], e1: &Vec3, e2: &Vec3, tol: f64) -> Vec<[f64; 2]> {
    let mut out: Vec<[f64; 2]> = Vec::with_capacity(points.len());
    for p in points {
        let q = [p.dot(e1), p.dot(e2)];
        if out.last().is_none_or(|l| (l[0] - q[0]).hypot(l[1] - q[1]) > tol) {
            out.push(q);
        }
    }
    while out.len() > 1 {
        let (f, l) = (out[0], out[out.len() - 1]);
        if (f[0] - l[0]).hypot(f[1] - l[1]) > tol {
            break;
        }
        out.pop();
    }
    out
}

fn shoelace(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    0.5 * (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

fn newell_normal(points: &[Vec3]) -> Vec3 {
    let n = points.len();
    let mut acc = Vec3::zeros();
    for i in 0..n {
        let (a, b) = (points[i], points[(i + 1) % n]);
        acc += Vec3::new((a.y - b.y) * (a.z + b.z), (a.z - b.z) * (a.x + b.x), (a.x - b.x) * (a.y + b.y));
    }
    acc
}

fn segments_cross(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2], tol: f64) -> bool {
    let orient = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    let on = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| {
        c[0] >= a[0].min(b[0]) - tol
            && c[0] <= a[0].max(b[0]) + tol
            && c[1] >= a[1].min(b[1]) - tol
            && c[1] <= a[1].max(b[1]) + tol
    };
    if ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) && ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol)) {
        return true;
    }
    (d1.abs() <= tol && on(q1, q2, p1))
        || (d2.abs() <= tol && on(q1, q2, p2))
        || (d3.abs() <= tol && on(p1, p2, q1))
        || (d4.abs() <= tol && on(p1, p2, q2))
}

/// Projects the loop `d₂ ∪ h₁ ∪ d₁ ∪ h₂` along the direction of `d₂` and
/// tests whether the image is a convex Jordan curve traversed monotonically.
/// Parts of the loop parallel to `d₂` collapse to points, which is allowed.
pub fn monotone_projection_check(
    d1: &Segment,
    d2: &Segment,
    h1: &SideCurve,
    h2: &SideCurve,
) -> Result<ProjectionCheck> {
    let scale = h1.cfg().radius().max(h1.cfg().height());
    let tol = 1e-9 * scale;
    let pieces = vec![d2.to_vec(), h1.points(), d1.to_vec(), h2.points()];
    let path = assemble_loop(pieces, tol)?;

    let dir = d2[1] - d2[0];
    if dir.norm() <= tol {
        return Err(Error::Degenerate("d₂ has zero length".into()));
    }
    let (e1, e2) = planar_basis(&dir);
    let mut poly = project(&path, &e1, &e2, tol);
    let mut area = if poly.len() >= 3 { shoelace(&poly) } else { 0.0 };
    let mut used_boundary_plane = false;
    if area.abs() <= 1e-12 * scale * scale {
        let n = newell_normal(&path);
        if n.norm() > tol * scale {
            let nn = n.normalize();
            let c = path.iter().sum::<Vec3>() / path.len() as f64;
            if path.iter().all(|p| (p - c).dot(&nn).abs() <= 1e-9 * scale) {
                let (f1, f2) = planar_basis(&nn);
                poly = project(&path, &f1, &f2, tol);
                area = shoelace(&poly);
                used_boundary_plane = true;
            }
        }
    }

    let n = poly.len();
    let mut turns = Vec::with_capacity(n);
    let mut reversals = 0;
    for i in 0..n {
        let a = poly[(i + n - 1) % n];
        let b = poly[i];
        let c = poly[(i + 1) % n];
        let u = [b[0] - a[0], b[1] - a[1]];
        let v = [c[0] - b[0], c[1] - b[1]];
        let turn = (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1]);
        if turn.abs() > std::f64::consts::PI - 1e-9 {
            reversals += 1;
        }
        turns.push(turn);
    }
    let total: f64 = turns.iter().sum();
    let positive = turns.iter().filter(|&&t| t > 1e-9).count();
    let negative = turns.iter().filter(|&&t| t < -1e-9).count();
    let sign_changes = positive.min(negative);

    let mut self_intersections = 0;
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            if segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n], 1e-12 * scale * scale) {
                self_intersections += 1;
            }
        }
    }
    let passed = n >= 3
        && area.abs() > 1e-12 * scale * scale
        && sign_changes == 0
        && reversals == 0
        && self_intersections == 0
        && (total.abs() - TAU).abs() < 1e-6;
    Ok(ProjectionCheck {
        passed,
        total_turning: total,
        sign_changes,
        reversals,
        self_intersections,
        projected_area: area.abs(),
        used_boundary_plane,
        polygon_vertices: n,
    })
}
