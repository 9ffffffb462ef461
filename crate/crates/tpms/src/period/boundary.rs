//! Period data measured directly along the boundary arcs of D.
//!
//! The closure condition is geometric: the translation S ↦ S′ must be
//! vertical. With SB along x₂, the planes of the diagonal arcs at ±45° and BL
//! either along x₁ (C2, L2) or at 45° (L4), this reduces to
//! |Re∫_SB φ₂| = w·|Re∫_BL φ₁| with w = 1 for C2 and L2 and w = 2 for L4.
//! For C2 and L2 these integrals are the scaled I₁, I₂ and J₁, J₂; for L4 they
//! are computed here from the L4 Weierstrass data itself.

use crate::error::{Error, Result};
use crate::families::{arc, g_on_arc, height_differential, weierstrass_forms, ArcLabel, DerivedParams, FamilyId};
use crate::numerics::{integrate, DEFAULT_BUDGET};
use std::cell::RefCell;

/// s(u) = u⁴/(u⁴ + (1−u)⁴): flat at both ends, which absorbs the algebraic
/// endpoint singularities of the forms at the corners.
fn cluster(u: f64) -> (f64, f64) {
    let (p, q) = (u.powi(4), (1.0 - u).powi(4));
    let d = p + q;
    (p / d, 4.0 * (u * (1.0 - u)).powi(3) / (d * d))
}

/// Re∫ φ_k along an arc of D, from its first corner to its second.
pub fn arc_integral(dp: &DerivedParams, label: ArcLabel, component: usize, tol: f64) -> Result<f64> {
    if component > 2 {
        return Err(Error::Domain(format!("component index {component} > 2")));
    }
    let a = arc(dp, label);
    let failure = RefCell::new(None);
    let f = |u: f64| -> f64 {
        let (s, ds) = cluster(u);
        let t = a.t_at(s);
        let eval = || -> Result<f64> {
            let z = a.z(t);
            let g = g_on_arc(&a, t, dp)?;
            let dh = height_differential(dp, z, g)?;
            let phi = weierstrass_forms(g, dh)?;
            Ok((phi[component] * a.dz_dt(t)).re * a.dt_ds(s) * ds)
        };
        match eval() {
            Ok(v) if v.is_finite() => v,
            Ok(_) => 0.0,
            // Rounded onto a corner; the integrand is integrable there and the
            // panel is negligibly small.
            Err(_) if s.min(1.0 - s) < 1e-9 => 0.0,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let r = integrate(f, 0.0, 1.0, tol, DEFAULT_BUDGET)?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(r.value),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPeriods {
    pub family: FamilyId,
    /// Re∫_SB φ₂ (signed).
    pub sb: f64,
    /// Re∫_BL φ₁ (signed).
    pub bl: f64,
    /// |sb| − w·|bl|; zero exactly when the period closes.
    pub closure: f64,
}

/// Weight of the BL integral in the geometric closure condition.
pub fn closure_weight(family: FamilyId) -> f64 {
    match family {
        FamilyId::L4 => 2.0,
        _ => 1.0,
    }
}

pub fn boundary_periods(dp: &DerivedParams, tol: f64) -> Result<BoundaryPeriods> {
    let sb = arc_integral(dp, ArcLabel::SB, 1, tol)?;
    let bl = arc_integral(dp, ArcLabel::BL, 0, tol)?;
    Ok(BoundaryPeriods { family: dp.family, sb, bl, closure: sb.abs() - closure_weight(dp.family) * bl.abs() })
}
