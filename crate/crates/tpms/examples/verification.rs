//! Full verification report at the C2 root and at a perturbed parameter.
//! Usage: verification [N]

use num_complex::Complex64;
use tpms::builder::{assemble_fundamental_piece, default_clearance, integrate_immersion, sample_domain};
use tpms::cli::generic_probes;
use tpms::families::{derive_params, DerivedParams, FamilyId, ShapeParams};
use tpms::period::{default_slice, solve_period};
use tpms::verify::*;

fn report(dp: &DerivedParams, n: usize) -> tpms::Result<VerificationReport> {
    let mut r = VerificationReport::new();
    r.merge("", check_boundary_loci(dp, 100));
    for (k, p) in generic_probes(3).into_iter().enumerate() {
        r.merge(&format!("probe{k}."), check_degree(dp, p)?);
    }
    r.merge("", check_embeddedness_conditions(dp)?);
    let mesh = integrate_immersion(&sample_domain(dp, n, default_clearance(n))?, dp)?;
    r.merge("", check_period_closure(&mesh));
    r.merge("", check_minimality(&mesh));
    if let Ok(piece) = assemble_fundamental_piece(&mesh) {
        r.merge("", check_symmetries(&piece.mesh, &piece.symmetries));
    }
    Ok(r)
}

fn main() -> tpms::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(32);
    let dp = solve_period(&default_slice(FamilyId::C2), 1e-12)?.params;
    let r = report(&dp, n)?;
    println!("C2 root X = {:.10}:\n{r}", dp.big_x);
    let off = derive_params(&ShapeParams::from_big_x(FamilyId::C2, dp.big_x + Complex64::new(0.3, 0.0))?)?;
    let r = report(&off, n)?;
    println!("perturbed X = {:.4}: failures {:?}", off.big_x, r.failures());
    Ok(())
}
