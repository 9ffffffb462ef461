//! Writes the C2 fundamental piece as OBJ and reads it back.
//! Usage: export_obj [path] [N]

use tpms::builder::{assemble_fundamental_piece, default_clearance, integrate_immersion, sample_domain};
use tpms::cli::{export_mesh, parse_obj, MeshFormat};
use tpms::families::FamilyId;
use tpms::period::{default_slice, solve_period};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().collect();
    let path = args.get(1).cloned().unwrap_or_else(|| std::env::temp_dir().join("c2_piece.obj").display().to_string());
    let n: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(24);
    let dp = solve_period(&default_slice(FamilyId::C2), 1e-12)?.params;
    let mesh = integrate_immersion(&sample_domain(&dp, n, default_clearance(n))?, &dp)?;
    let piece = assemble_fundamental_piece(&mesh)?;
    let mut file = std::fs::File::create(&path)?;
    export_mesh(&piece.mesh, MeshFormat::Obj, &mut file)?;
    let (v, f) = parse_obj(&std::fs::read_to_string(&path)?)?;
    println!("{path}: {} vertices, {} triangles (read back {} / {})", piece.mesh.vertices.len(), piece.mesh.triangles.len(), v.len(), f.len());
    Ok(())
}
