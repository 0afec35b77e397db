//! Leaves `ρ_α(H_C^θ) ∩ Σ` of the rotated-helicoid foliation on a mesh.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{edge_key, SurfaceMesh, UnionFind, VertexRole};
use crate::error::{Error, Result};
use crate::helicoid::HelicoidPatch;
use crate::Vec3;

/// Boundary pieces a leaf reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Attachment {
    pub d1: bool,
    pub d2: bool,
    pub side: bool,
    pub axis: bool,
}

impl Attachment {
    fn merge(&mut self, o: Attachment) {
        self.d1 |= o.d1;
        self.d2 |= o.d2;
        self.side |= o.side;
        self.axis |= o.axis;
    }

    /// Reaches `d₁`, `d₂` or `S`.
    pub fn touches_boundary(&self) -> bool {
        self.d1 || self.d2 || self.side
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Leaf {
    pub nodes: usize,
    pub segments: usize,
    pub length: f64,
    pub attachment: Attachment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafSet {
    pub alpha: f64,
    pub leaves: Vec<Leaf>,
    /// Some triangle lies entirely in the rotated patch (e.g. `α = 0` on the
    /// patch itself), so the leaf is two-dimensional there.
    pub degenerate: bool,
    /// Leaves reaching neither the boundary nor the axis.
    pub closed_interior: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Vertex(usize),
    Edge(usize, usize),
}

/// Zero set on `Σ` of `g(p) = −x sin ψ + y cos ψ` with
/// `ψ = phase + α + θ z / h`, which vanishes exactly on `ρ_α(H_C^θ)`.
pub fn foliation_leaves(m: &SurfaceMesh, patch: &HelicoidPatch, alpha: f64) -> Result<LeafSet> {
    let rotated = patch.rotate_family(alpha)?;
    let cfg = m.cfg();
    if (cfg.radius() - patch.cfg().radius()).abs() > 1e-12 || (cfg.height() - patch.cfg().height()).abs() > 1e-12 {
        return Err(Error::InvalidConfig("mesh and patch live in different cylinders".into()));
    }
    let h = cfg.height();
    let r = cfg.radius();
    let v = m.vertices();
    let roles = m.roles();
    let zero_tol = 1e-12 * r;
    let g: Vec<f64> = v
        .iter()
        .map(|p| {
            let psi = rotated.phase() + rotated.theta() * p.z / h;
            let val = -p.x * psi.sin() + p.y * psi.cos();
            if val.abs() < zero_tol {
                0.0
            } else {
                val
            }
        })
        .collect();

    let mut ids: BTreeMap<Node, usize> = BTreeMap::new();
    let mut points: Vec<Vec3> = Vec::new();
    let mut attach: Vec<Attachment> = Vec::new();
    let mut node_id = |node: Node, points: &mut Vec<Vec3>, attach: &mut Vec<Attachment>| -> usize {
        *ids.entry(node).or_insert_with(|| {
            let (p, mut a) = match node {
                Node::Vertex(i) => (
                    v[i],
                    Attachment {
                        d1: roles[i] == VertexRole::FixedD1,
                        d2: roles[i] == VertexRole::FixedD2,
                        ..Default::default()
                    },
                ),
                Node::Edge(i, j) => {
                    let t = g[i] / (g[i] - g[j]);
                    (
                        v[i] + (v[j] - v[i]) * t,
                        Attachment {
                            d1: roles[i] == VertexRole::FixedD1 && roles[j] == VertexRole::FixedD1,
                            d2: roles[i] == VertexRole::FixedD2 && roles[j] == VertexRole::FixedD2,
                            ..Default::default()
                        },
                    )
                }
            };
            let rho = p.x.hypot(p.y);
            a.side = rho >= r - 1e-9;
            a.axis = rho <= 1e-9;
            points.push(p);
            attach.push(a);
            points.len() - 1
        })
    };

    let mut segments: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut degenerate = false;
    for t in m.triangles() {
        let zeros: Vec<usize> = t.iter().copied().filter(|&i| g[i] == 0.0).collect();
        if zeros.len() == 3 {
            degenerate = true;
            for k in 0..3 {
                let a = node_id(Node::Vertex(t[k]), &mut points, &mut attach);
                let b = node_id(Node::Vertex(t[(k + 1) % 3]), &mut points, &mut attach);
                segments.insert((a.min(b), a.max(b)));
            }
            continue;
        }
        let mut nodes: Vec<usize> = zeros.iter().map(|&i| node_id(Node::Vertex(i), &mut points, &mut attach)).collect();
        for k in 0..3 {
            let (i, j) = (t[k], t[(k + 1) % 3]);
            if g[i] * g[j] < 0.0 {
                let (a, b) = edge_key(i, j);
                nodes.push(node_id(Node::Edge(a, b), &mut points, &mut attach));
            }
        }
        if nodes.len() == 2 && nodes[0] != nodes[1] {
            segments.insert((nodes[0].min(nodes[1]), nodes[0].max(nodes[1])));
        }
    }

    let mut uf = UnionFind::new(points.len());
    for &(a, b) in &segments {
        uf.union(a, b);
    }
    let mut leaves: BTreeMap<usize, Leaf> = BTreeMap::new();
    for (i, a) in attach.iter().enumerate() {
        let root = uf.find(i);
        let leaf = leaves.entry(root).or_insert(Leaf {
            nodes: 0,
            segments: 0,
            length: 0.0,
            attachment: Attachment::default(),
        });
        leaf.nodes += 1;
        leaf.attachment.merge(*a);
    }
    for &(a, b) in &segments {
        let leaf = leaves.get_mut(&uf.find(a)).unwrap();
        leaf.segments += 1;
        leaf.length += (points[a] - points[b]).norm();
    }
    // Isolated touching points are not leaves.
    let leaves: Vec<Leaf> = leaves.into_values().filter(|l| l.segments > 0).collect();
    let closed_interior = leaves.iter().filter(|l| !l.attachment.touches_boundary() && !l.attachment.axis).count();
    Ok(LeafSet { alpha, leaves, degenerate, closed_interior })
}
