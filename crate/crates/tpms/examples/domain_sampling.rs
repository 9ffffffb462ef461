//! Samples the fundamental domain at a few resolutions and reports its size.

use num_complex::Complex64;
use tpms::builder::{default_clearance, sample_domain, NodeKind};
use tpms::families::{derive_params, FamilyId, ShapeParams};

fn main() -> tpms::Result<()> {
    let cases = [
        derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.345, -1.0))?)?,
        derive_params(&ShapeParams::from_big_x(FamilyId::L4, Complex64::new(0.6, -1.0))?)?,
        derive_params(&ShapeParams::new(FamilyId::L2, Complex64::new(1.0, 1.0)))?,
    ];
    for dp in &cases {
        for n in [16, 32, 64, 128] {
            let g = sample_domain(dp, n, default_clearance(n))?;
            let interior = g.nodes.iter().filter(|nd| nd.kind == NodeKind::Interior).count();
            println!("{} N={n}: {} nodes ({interior} interior), {} triangles", dp.family, g.nodes.len(), g.triangles.len());
        }
    }
    Ok(())
}
