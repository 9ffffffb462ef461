//! The sufficient embeddedness conditions for C2.

use super::report::VerificationReport;
use crate::error::{Error, Result};
use crate::families::{arc, g_on_arc, height_differential, weierstrass_forms, ArcLabel, DerivedParams, FamilyId};

/// Samples per arc for the monotonicity checks.
const MONOTONE_SAMPLES: usize = 400;

/// b and 𝒜²|X|² in y² − b·y + 𝒜²|X|² = 0 (y = T²), the condition for
/// g = −e^{iπ/4} at Z = T on LS′.
fn quadratic(dp: &DerivedParams) -> (f64, f64) {
    let (sa, bx) = (dp.script_a, dp.big_x);
    let m2 = bx.norm_sqr();
    (sa * sa + m2 + 4.0 * sa * bx.im, sa * sa * m2)
}

/// Roots y ∈ (0, ∞) of y² − b y + p = 0 with p > 0. A double root counts
/// once; a discriminant within rounding of zero is a double root.
pub fn positive_roots_eq27(dp: &DerivedParams) -> (usize, f64) {
    let (b, p) = quadratic(dp);
    let disc = b * b - 4.0 * p;
    let zero = 1e-12 * b * b.max(1.0);
    let n = if b <= 0.0 || disc < -zero {
        0
    } else if disc.abs() <= zero {
        1
    } else {
        2
    };
    (n, disc)
}

/// Sign changes of a sampled sequence, ignoring exact zeros.
fn sign_changes(values: impl IntoIterator<Item = f64>) -> usize {
    let mut last = 0.0f64;
    let mut n = 0;
    for v in values {
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            n += 1;
        }
        last = v;
    }
    n
}

/// d/dt of coordinate `k` along an arc, sampled at interior points.
fn coordinate_rates(dp: &DerivedParams, label: ArcLabel, k: usize) -> Result<Vec<f64>> {
    let a = arc(dp, label);
    (0..MONOTONE_SAMPLES)
        .map(|j| {
            let t = a.t_at((j as f64 + 0.5) / MONOTONE_SAMPLES as f64);
            let g = g_on_arc(&a, t, dp)?;
            let phi = weierstrass_forms(g, height_differential(dp, a.z(t), g)?)?;
            Ok((phi[k] * a.dz_dt(t)).re)
        })
        .collect()
}

/// The LS′ height form t/(√(t⁴ − Re{X²}t² + |X|⁴)·√(t² + 4)) for Z = t < 0.
pub fn ls_height_form(dp: &DerivedParams, t: f64) -> f64 {
    let bx = dp.big_x;
    let m2 = bx.norm_sqr();
    t / ((t.powi(4) - (bx * bx).re * t * t + m2 * m2).sqrt() * (t * t + 4.0).sqrt())
}

/// Checks:
/// - `embedded.inequality`: |𝒜² + |X|² + 4𝒜 Im X| / (2𝒜|X|), strict < 1.
/// - `embedded.eq27_positive_roots`: number of T² ∈ (0, ∞), must be 0.
/// - `embedded.monotone.BL.x1`, `.BL.x3`, `.LS'.x3`: sign changes of the
///   coordinate rates along the arcs, must be 0.
/// - `embedded.monotone.LS'.formula`: sign changes of the closed height form
///   on Z = t ∈ (−∞, 0), must be 0.
pub fn check_embeddedness_conditions(dp: &DerivedParams) -> Result<VerificationReport> {
    if dp.family != FamilyId::C2 {
        return Err(Error::Domain(format!("embeddedness conditions are stated for C2, not {}", dp.family)));
    }
    let mut r = VerificationReport::new();
    let (b, p) = quadratic(dp);
    let rhs = 2.0 * p.sqrt();
    let ratio = b.abs() / rhs;
    let re_ratio = -dp.big_x.re / dp.big_x.im;
    r.add(
        "embedded.inequality",
        ratio,
        1.0 - 1e-12,
        format!("|𝒜²+|X|²+4𝒜ImX| = {:.6e}, 2𝒜|X| = {rhs:.6e}; −ReX/ImX = {re_ratio:.6} vs 2√2", b.abs()),
    );
    let (roots, disc) = positive_roots_eq27(dp);
    r.add("embedded.eq27_positive_roots", roots as f64, 0.0, format!("discriminant {disc:.6e}, b = {b:.6e}"));

    for (label, k, id) in [(ArcLabel::BL, 0, "BL.x1"), (ArcLabel::BL, 2, "BL.x3"), (ArcLabel::LSp, 2, "LS'.x3")] {
        match coordinate_rates(dp, label, k) {
            Ok(v) => {
                let changes = sign_changes(v.iter().copied());
                r.add(format!("embedded.monotone.{id}"), changes as f64, 0.0, format!("{MONOTONE_SAMPLES} samples"));
            }
            Err(e) => r.add(format!("embedded.monotone.{id}"), f64::INFINITY, 0.0, format!("sampling failed: {e}")),
        }
    }
    // t = −u/(1 − u) covers (−∞, 0).
    let form = (1..MONOTONE_SAMPLES).map(|j| {
        let u = j as f64 / MONOTONE_SAMPLES as f64;
        ls_height_form(dp, -u / (1.0 - u))
    });
    r.add("embedded.monotone.LS'.formula", sign_changes(form) as f64, 0.0, "Z = t on (−∞, 0)");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{derive_params, ShapeParams};
    use num_complex::Complex64;

    fn c2(re: f64) -> DerivedParams {
        derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(re, -1.0)).unwrap()).unwrap()
    }

    #[test]
    fn two_minus_i_passes_the_inequality() {
        let r = check_embeddedness_conditions(&c2(2.0)).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn boundary_case_fails_strictly_and_has_a_double_root() {
        let r = check_embeddedness_conditions(&c2(2.0 * 2f64.sqrt())).unwrap();
        let ineq = r.get("embedded.inequality").unwrap();
        assert!(!ineq.passed && (ineq.residual - 1.0).abs() < 1e-12);
        // T² = 𝒜|X| = 27 solves (27) as a double root.
        assert_eq!(positive_roots_eq27(&c2(2.0 * 2f64.sqrt())).0, 1);
    }

    #[test]
    fn beyond_the_boundary_two_roots() {
        assert_eq!(positive_roots_eq27(&c2(3.5)).0, 2);
    }

    #[test]
    fn ls_form_is_negative_for_negative_t() {
        let dp = c2(1.345);
        assert!((1..100).all(|j| ls_height_form(&dp, -0.1 * j as f64) < 0.0));
    }

    #[test]
    fn other_families_are_rejected() {
        let dp = derive_params(&ShapeParams::from_big_x(FamilyId::L4, Complex64::new(0.6, -1.0)).unwrap()).unwrap();
        assert!(matches!(check_embeddedness_conditions(&dp), Err(Error::Domain(_))));
    }
}
