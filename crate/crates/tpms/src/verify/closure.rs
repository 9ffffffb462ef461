//! The period condition measured on a mesh.

use super::report::VerificationReport;
use crate::builder::Mesh;
use crate::families::{ArcLabel, FamilyId};
use crate::period::{boundary_periods, closure_weight, period_integrals};

/// Relative tolerance of the mesh against quadrature and of the closure gap.
pub const CLOSURE_TOL: f64 = 1e-3;

fn chain_delta(mesh: &Mesh, label: ArcLabel, component: usize) -> Option<f64> {
    let c = mesh.chain(label)?;
    let (first, last) = (c.first()?, c.last()?);
    Some(mesh.vertices[*last].position[component] - mesh.vertices[*first].position[component])
}

/// The horizontal closure read off the chains of D: gap = w·|Δx₁(BL)| − |Δx₂(SB)|
/// (w = 2 for L4, else 1), which for C2 equals ½√(2c)·(I₁ − I₂).
///
/// Checks:
/// - `period.closure`: |gap| / |Δx₂(SB)|.
/// - `period.mesh_vs_arcs.SB|BL`: the chain displacements against boundary quadrature.
/// - C2 only: `period.mesh_vs_quadrature.I1|I2` against ½√(2c)·I₁, ½√(2c)·I₂,
///   and `period.gap_sign`, 0 when the gap has the sign of I₁ − I₂.
pub fn check_period_closure(mesh: &Mesh) -> VerificationReport {
    let mut r = VerificationReport::new();
    let dp = &mesh.params;
    let (Some(sb), Some(bl)) = (chain_delta(mesh, ArcLabel::SB, 1), chain_delta(mesh, ArcLabel::BL, 0)) else {
        r.add("period.closure", f64::INFINITY, CLOSURE_TOL, "mesh has no SB/BL chains");
        return r;
    };
    let gap = closure_weight(mesh.family) * bl.abs() - sb.abs();
    r.add("period.closure", gap.abs() / sb.abs(), CLOSURE_TOL, format!("signed gap {gap:.6e}, Δx₂(SB) {sb:.6e}, Δx₁(BL) {bl:.6e}"));

    match boundary_periods(dp, 1e-10) {
        Ok(b) => {
            r.add("period.mesh_vs_arcs.SB", (sb - b.sb).abs() / b.sb.abs(), CLOSURE_TOL, format!("mesh {sb:.8e}, quadrature {:.8e}", b.sb));
            r.add("period.mesh_vs_arcs.BL", (bl - b.bl).abs() / b.bl.abs(), CLOSURE_TOL, format!("mesh {bl:.8e}, quadrature {:.8e}", b.bl));
        }
        Err(e) => r.add("period.mesh_vs_arcs", f64::INFINITY, CLOSURE_TOL, format!("quadrature failed: {e}")),
    }

    if mesh.family == FamilyId::C2 {
        match period_integrals(dp) {
            Ok(p) => {
                let k = 0.5 * (2.0 * dp.c).sqrt();
                r.add("period.mesh_vs_quadrature.I1", (bl.abs() - k * p.first).abs() / (k * p.first), CLOSURE_TOL, format!("½√(2c)·I₁ = {:.8e}", k * p.first));
                r.add("period.mesh_vs_quadrature.I2", (sb.abs() - k * p.second).abs() / (k * p.second), CLOSURE_TOL, format!("½√(2c)·I₂ = {:.8e}", k * p.second));
                // Only meaningful away from the root.
                let decided = p.residual.abs() > CLOSURE_TOL * p.second;
                let agree = !decided || gap.signum() == p.residual.signum();
                r.add(
                    "period.gap_sign",
                    if agree { 0.0 } else { 1.0 },
                    0.0,
                    format!("gap {gap:.3e}, I₁ − I₂ = {:.3e}{}", p.residual, if decided { "" } else { " (at the root: sign not decided)" }),
                );
            }
            Err(e) => r.add("period.mesh_vs_quadrature", f64::INFINITY, CLOSURE_TOL, format!("quadrature failed: {e}")),
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{default_clearance, integrate_immersion, sample_domain};
    use crate::families::{derive_params, ShapeParams};
    use crate::period::{default_slice, solve_period};
    use num_complex::Complex64;

    fn mesh_at(dp: &crate::families::DerivedParams, n: usize) -> Mesh {
        integrate_immersion(&sample_domain(dp, n, default_clearance(n)).unwrap(), dp).unwrap()
    }

    #[test]
    fn closes_at_the_c2_root() {
        let sol = solve_period(&default_slice(FamilyId::C2), 1e-12).unwrap();
        let r = check_period_closure(&mesh_at(&sol.params, 32));
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn open_at_two_root_two_with_positive_gap() {
        let dp = derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(2.0 * 2f64.sqrt(), -1.0)).unwrap()).unwrap();
        let r = check_period_closure(&mesh_at(&dp, 16));
        assert!(!r.get("period.closure").unwrap().passed);
        assert!(r.get("period.gap_sign").unwrap().passed, "{r}");
        assert!(r.get("period.mesh_vs_quadrature.I1").unwrap().passed, "{r}");
    }
}
