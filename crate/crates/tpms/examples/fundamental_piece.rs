//! Solves the period, assembles the fundamental piece and tiles a block.
//! Usage: fundamental_piece [c2|l4] [N]

use tpms::builder::{assemble_fundamental_piece, assemble_with_tolerance, default_clearance, integrate_immersion, sample_domain, tile};
use tpms::families::FamilyId;
use tpms::Error;
use tpms::period::{default_slice, solve_period};

fn main() -> tpms::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let family = match args.get(1).map(String::as_str) {
        Some("l4") => FamilyId::L4,
        _ => FamilyId::C2,
    };
    let n: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(32);
    let sol = solve_period(&default_slice(family), 1e-12)?;
    let dp = sol.params;
    println!("{family}: X = {}, residual {:.2e}", dp.big_x, sol.report.residual);
    let grid = sample_domain(&dp, n, default_clearance(n))?;
    let mesh = integrate_immersion(&grid, &dp)?;
    let piece = match assemble_fundamental_piece(&mesh) {
        // L4: the horizontal part of S → S′ does not vanish at the root of 2I₁ − I₂.
        Err(Error::PeriodLeak { norm, .. }) => {
            println!("period leak {norm:.3e}: assembling the open piece");
            assemble_with_tolerance(&mesh, None)?
        }
        r => r?,
    };
    println!("domain: {} vertices, piece: {} vertices, {} triangles", mesh.vertices.len(), piece.mesh.vertices.len(), piece.mesh.triangles.len());
    println!("vertical {:?}, leak {:.2e}, seam gap {:.2e}", piece.vertical, piece.leak[0].hypot(piece.leak[1]), piece.seam_gap);
    for b in &piece.boundary {
        println!("  boundary {} copy {} {:?} residual {:.2e}", b.label, b.copy, b.motion.kind, b.residual);
    }
    println!("  boundary loops: {:?}", piece.mesh.boundary_loops().iter().map(Vec::len).collect::<Vec<_>>());
    let block = tile(&piece, [2, 2, 2])?;
    println!("block 2x2x2: {} vertices ({}x piece), gap {:.2e}", block.mesh.vertices.len(), block.mesh.vertices.len() as f64 / piece.mesh.vertices.len() as f64, block.gluing_gap);
    for v in &block.lattice {
        println!("  lattice {v:?}");
    }
    println!("  boundary loops: {}", block.mesh.boundary_loops().len());
    Ok(())
}
