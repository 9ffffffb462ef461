//! Gamma and Beta values and the Beta closed forms of the comparison integrals.

use tpms::numerics::{beta, gamma, integrate_quartic_weight, DEFAULT_TOL};
use tpms::period::{tilde_a, tilde_integrals};

fn main() -> tpms::Result<()> {
    for x in [0.25, 0.5, 0.75, 1.5] {
        println!("Γ({x}) = {:.12}", gamma(x)?);
    }
    println!("B(1/4, 1/2) = {:.12}, B(3/4, 1/2) = {:.12}", beta(0.25, 0.5)?, beta(0.75, 0.5)?);
    // ∫₀¹ du/√(1−u⁴) = B(1/4, 1/2)/4.
    let q = integrate_quartic_weight(|_| 1.0, DEFAULT_TOL)?;
    println!("∫ du/√(1−u⁴) = {:.12} (quadrature, {} evaluations) vs {:.12}", q.value, q.evaluations, beta(0.25, 0.5)? / 4.0);
    let t = tilde_integrals()?;
    println!("a = {:.8}", tilde_a());
    println!("Ĩ₁ = {:.10} / {:.10}", t.quadrature.0, t.closed_form.0);
    println!("Ĩ₂ = {:.10} / {:.10}", t.quadrature.1, t.closed_form.1);
    Ok(())
}
