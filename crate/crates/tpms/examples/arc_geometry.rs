//! Prints the corner positions and the plane or line carrying each boundary arc.

use num_complex::Complex64;
use tpms::builder::{default_clearance, integrate_immersion, sample_domain, Corner};
use tpms::families::{derive_params, ArcLabel, FamilyId, ShapeParams};

fn main() -> tpms::Result<()> {
    let n = 32;
    let cases = [
        derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.345_066_659_290_767_6, -1.0))?)?,
        derive_params(&ShapeParams::from_big_x(FamilyId::L4, Complex64::new(0.6, -1.0))?)?,
        derive_params(&ShapeParams::new(FamilyId::L2, Complex64::new(1.0, 1.0)))?,
    ];
    for dp in &cases {
        let grid = sample_domain(dp, n, default_clearance(n))?;
        let mesh = integrate_immersion(&grid, dp)?;
        println!("{} (c = {:.6})", dp.family, dp.c);
        let a = grid.branch_node();
        println!("  A   {:?}", mesh.vertices[a].position);
        for c in Corner::ALL {
            println!("  {:<3} {:?} g = {}", c.name(), mesh.vertices[grid.corner(c)].position, mesh.vertices[grid.corner(c)].g);
        }
        for l in ArcLabel::ALL {
            let ch = mesh.chain(l).unwrap();
            let p: Vec<[f64; 3]> = ch.iter().map(|&i| mesh.vertices[i].position).collect();
            let (first, last) = (p[0], p[p.len() - 1]);
            let d: [f64; 3] = std::array::from_fn(|k| last[k] - first[k]);
            let dl = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
            // Deviation from the chord (straight line test).
            let off = p
                .iter()
                .map(|q| {
                    let v: [f64; 3] = std::array::from_fn(|k| q[k] - first[k]);
                    let t = (v[0] * d[0] + v[1] * d[1] + v[2] * d[2]) / (dl * dl);
                    let r: [f64; 3] = std::array::from_fn(|k| v[k] - t * d[k]);
                    (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt()
                })
                .fold(0.0, f64::max);
            let spread: Vec<f64> = (0..3)
                .map(|k| p.iter().map(|q| q[k]).fold(f64::NEG_INFINITY, f64::max) - p.iter().map(|q| q[k]).fold(f64::INFINITY, f64::min))
                .collect();
            println!("  {:<5} Δ = {:?}, off-chord {:.2e}, coordinate spreads {:?}", l.name(), d, off, spread);
        }
    }
    Ok(())
}
