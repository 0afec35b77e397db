//! Seeded smooth bumps along the helicoid normal.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{SurfaceMesh, VertexRole};
use crate::error::{Error, Result};
use crate::helicoid::HelicoidPatch;
use crate::Vec3;

/// Shape of the bump across the rulings (`u ∈ [-r, r]`). Every profile uses
/// `sin(mπs)` along the height, so the two diameters never move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BumpProfile {
    /// `cos((2k−1)πu / 2r)`: vanishes on the side, moves the axis.
    Interior,
    /// `sin(kπu / r)`: vanishes on the side and on the axis.
    AxisPreserving,
    /// `sin((2k−1)πu / 2r)`: odd in `u`, moves the side curves along `S`
    /// and keeps the rotation by `π` about the axis a symmetry.
    FreeBoundary,
}

impl BumpProfile {
    fn shape(self, k: usize, u: f64, r: f64) -> f64 {
        let k = k as f64;
        match self {
            Self::Interior => ((2.0 * k - 1.0) * PI * u / (2.0 * r)).cos(),
            Self::AxisPreserving => (k * PI * u / r).sin(),
            Self::FreeBoundary => ((2.0 * k - 1.0) * PI * u / (2.0 * r)).sin(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub profile: BumpProfile,
    /// Largest displacement over the mesh vertices.
    pub amplitude: f64,
    #[serde(default = "default_modes")]
    pub u_modes: usize,
    #[serde(default = "default_modes")]
    pub s_modes: usize,
    pub seed: u64,
}

fn default_modes() -> usize {
    2
}

impl Perturbation {
    pub fn new(profile: BumpProfile, amplitude: f64, seed: u64) -> Self {
        Self { profile, amplitude, u_modes: 2, s_modes: 2, seed }
    }

    /// Fourier coefficients `c_{km} ∈ [-1, 1] / (k m)`.
    fn coefficients(&self) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (1..=self.u_modes)
            .map(|k| (1..=self.s_modes).map(|m| rng.random_range(-1.0..=1.0) / (k * m) as f64).collect())
            .collect()
    }
}

/// Displaces the vertices of a mesh sampled from `patch` by
/// `A f(u, s) N(u, s)`, with `f` normalized so that the largest displacement
/// is `A`. Fixed and pinned vertices stay put; `free_on_S` vertices are
/// projected back to `S` and every vertex is kept inside the cylinder.
pub fn perturb_along_normal(m: &SurfaceMesh, patch: &HelicoidPatch, p: &Perturbation) -> Result<SurfaceMesh> {
    if !(p.amplitude.is_finite() && p.amplitude >= 0.0) {
        return Err(Error::InvalidConfig(format!("amplitude must be nonnegative, got {}", p.amplitude)));
    }
    if p.u_modes == 0 || p.s_modes == 0 {
        return Err(Error::InvalidConfig("perturbation needs at least one mode".into()));
    }
    let cfg = *m.cfg();
    let r = cfg.radius();
    let h = cfg.height();
    let coeffs = p.coefficients();
    let params: Vec<(f64, f64)> = m
        .vertices()
        .iter()
        .map(|q| {
            let s = (q.z / h).clamp(0.0, 1.0);
            let ang = s * patch.theta() + patch.phase();
            (q.x * ang.cos() + q.y * ang.sin(), s)
        })
        .collect();
    let field: Vec<f64> = params
        .iter()
        .map(|&(u, s)| {
            let mut f = 0.0;
            for (k, row) in coeffs.iter().enumerate() {
                let phi = p.profile.shape(k + 1, u, r);
                for (j, c) in row.iter().enumerate() {
                    f += c * phi * ((j + 1) as f64 * PI * s).sin();
                }
            }
            f
        })
        .collect();
    let peak = field.iter().fold(0.0f64, |a, f| a.max(f.abs()));
    let scale = if peak > 0.0 { p.amplitude / peak } else { 0.0 };

    let mut out = m.clone();
    let roles = m.roles().to_vec();
    for (i, q) in out.positions_mut().iter_mut().enumerate() {
        let role = roles[i];
        if role.is_fixed() {
            continue;
        }
        let (u, s) = params[i];
        let mut moved = *q + patch.normal(u, s) * (scale * field[i]);
        moved.z = moved.z.clamp(0.0, h);
        let rho = moved.x.hypot(moved.y);
        match role {
            VertexRole::Axis => {
                moved.x = 0.0;
                moved.y = 0.0;
            }
            VertexRole::FreeOnS => {
                moved.x *= r / rho;
                moved.y *= r / rho;
            }
            _ if rho > r => {
                moved.x *= r / rho;
                moved.y *= r / rho;
            }
            _ => {}
        }
        *q = Vec3::new(moved.x, moved.y, moved.z);
    }
    out.validate()?;
    Ok(out)
}
