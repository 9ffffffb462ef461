//! The Gauss-map squares, the four values of g over a point, and the degree count.

use num_complex::Complex64;
use tpms::families::{derive_params, g_candidates, gauss_squares, preimages_of, FamilyId, ShapeParams};
use tpms::period::{default_slice, solve_period};

fn main() -> tpms::Result<()> {
    let dp = solve_period(&default_slice(FamilyId::C2), 1e-12)?.params;
    let z = Complex64::new(0.4, 0.3);
    let s = gauss_squares(&dp, z)?;
    println!("z = {z}: p = {:.6}, q = {:.6}, q − p = {:.3e}", s.p, s.q, s.q - s.p);
    println!("g over z: {:?}", g_candidates(&dp, z)?.map(|g| format!("{g:.5}")));
    let probe = Complex64::new(1.7, 0.6);
    let sols = preimages_of(&dp, probe)?;
    println!("g = {probe}: {} solutions (deg g = {})", sols.len(), dp.family.gauss_degree());
    for (z, g) in sols {
        println!("  z = {z:.6}, g = {g:.6}");
    }
    let l2 = derive_params(&ShapeParams::new(FamilyId::L2, Complex64::new(1.0, 1.0)))?;
    println!("L2 at x = 1 + i: 𝒜 = {}, a = {:.6}, {} solutions of g = {probe}", l2.script_a, l2.a, preimages_of(&l2, probe)?.len());
    Ok(())
}
