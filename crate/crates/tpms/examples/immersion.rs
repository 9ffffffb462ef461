//! Integrates the fundamental domain for each family and reports the
//! spanning-tree consistency and the extent of the patch.

use num_complex::Complex64;
use std::time::Instant;
use tpms::builder::{default_clearance, integrate_immersion, sample_domain};
use tpms::families::{derive_params, ArcLabel, FamilyId, ShapeParams};

fn main() -> tpms::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(32);
    let cases = [
        derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.345_066_659_290_767_6, -1.0))?)?,
        derive_params(&ShapeParams::from_big_x(FamilyId::L4, Complex64::new(0.6, -1.0))?)?,
        derive_params(&ShapeParams::new(FamilyId::L2, Complex64::new(1.0, 1.0)))?,
    ];
    for dp in &cases {
        let t0 = Instant::now();
        let grid = sample_domain(dp, n, default_clearance(n))?;
        let mesh = integrate_immersion(&grid, dp)?;
        let sb_x1 = mesh.chain(ArcLabel::SB).unwrap().iter().map(|&i| mesh.vertices[i].position[0].abs()).fold(0.0, f64::max);
        println!(
            "{} N={n}: {} vertices, diameter {:.6}, tree gap {:.3e}, max |x1| on SB {:.3e}, {:.2?}",
            dp.family,
            mesh.vertices.len(),
            mesh.diameter(),
            mesh.tree_gap,
            sb_x1,
            t0.elapsed()
        );
    }
    Ok(())
}
