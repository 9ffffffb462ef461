//! Compares finite-parameter period integrals against the limit integrals.

use num_complex::Complex64;
use tpms::families::{derive_params, FamilyId, ShapeParams};
use tpms::period::{limit_integrals_c2, period_integrals_c2, LimitKind};

fn main() -> tpms::Result<()> {
    for re in [0.5, 1.0, 2.0, 4.0] {
        let im = -1e-4;
        let dp = derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(re, im))?)?;
        let r = period_integrals_c2(&dp)?;
        let l1 = limit_integrals_c2(LimitKind::Im0I1, re)?;
        let l2 = limit_integrals_c2(LimitKind::Im0I2, re)?;
        println!(
            "Re X = {re}: -Im·I1 = {:.8} vs {l1:.8}, -Im·I2 = {:.8} vs {l2:.8}",
            -im * r.first,
            -im * r.second
        );
    }
    let dp = derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.0 + 1e-6, -1.0))?)?;
    let r = period_integrals_c2(&dp)?;
    println!(
        "𝒜 → 2: I1 = {:.8} vs {:.8}, I2 = {:.8} vs {:.8}",
        r.first,
        limit_integrals_c2(LimitKind::A2I1, 0.0)?,
        r.second,
        limit_integrals_c2(LimitKind::A2I2, 0.0)?
    );
    Ok(())
}
