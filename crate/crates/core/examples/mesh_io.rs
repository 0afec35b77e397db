//! Writes a mesh as OBJ with a JSON sidecar of vertex roles and reads it back.

use std::f64::consts::FRAC_PI_2;

use helicoid::surface::helicoid_sample;
use helicoid::{CylinderConfig, HelicoidPatch, SurfaceMesh};

fn main() -> helicoid::Result<()> {
    let patch = HelicoidPatch::new(CylinderConfig::unit(), FRAC_PI_2, 0.0)?;
    let m = helicoid_sample(&patch, 8, 8)?;
    let mut obj = Vec::new();
    m.write_obj(&mut obj)?;
    let sidecar = m.roles_json()?;
    let back = SurfaceMesh::read_obj(obj.as_slice(), sidecar.as_bytes())?;
    println!("{} vertices, {} triangles, round trip exact: {}", back.vertex_count(), back.triangle_count(), back == m);
    println!("{}", &sidecar[..sidecar.len().min(400)]);
    Ok(())
}
