use crate::error::{Error, Result};
use crate::numerics::{beta, integrate_quartic_weight, integrate_singular, SingularitySpec, DEFAULT_TOL};
use std::f64::consts::{PI, SQRT_2};

/// The four C2 limit integrals: Im{X} → 0 with Re{X} fixed (scaled by −Im{X}),
/// and 𝒜 → 2 along Im{X} = −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Im0I1,
    Im0I2,
    A2I1,
    A2I2,
}

/// Direct quadrature of the limit integrands (no extrapolation from finite parameters).
pub fn limit_integrals_c2(kind: LimitKind, re_x: f64) -> Result<f64> {
    if matches!(kind, LimitKind::Im0I1 | LimitKind::Im0I2) && !(re_x > 0.0) {
        return Err(Error::Domain(format!("Im→0 limit needs Re{{X}} > 0, got {re_x}")));
    }
    let r2 = re_x * re_x;
    let v = match kind {
        LimitKind::Im0I1 => integrate_quartic_weight(|u| r2 / (4.0 * u.powi(4) + r2).sqrt(), DEFAULT_TOL)?,
        LimitKind::Im0I2 => integrate_quartic_weight(|u| r2 * u * u / (4.0 + r2 * u.powi(4)).sqrt(), DEFAULT_TOL)?,
        // (1 − u²)^{1/2} vanishes like a square root at u = 1; the endpoint
        // substitution smooths it just as it does the inverse square root.
        LimitKind::A2I1 => integrate_singular(
            |u| {
                let u2 = u * u;
                SQRT_2 * ((1.0 - u2) / (1.0 + u2)).sqrt() / (2.0 * u2 * u2 - 2.0 * u2 + 1.0).sqrt()
            },
            SingularitySpec::UPPER,
            DEFAULT_TOL,
        )?,
        LimitKind::A2I2 => integrate_singular(
            |u| {
                let u2 = u * u;
                SQRT_2 * ((1.0 + u2) / (1.0 - u2)).sqrt() / (2.0 + 2.0 * u2 + u2 * u2).sqrt()
            },
            SingularitySpec::UPPER,
            DEFAULT_TOL,
        )?,
    };
    Ok(v.value)
}

/// The comparison integrals bounding the C2 residual at X = 2√2 − i from below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TildeIntegrals {
    pub quadrature: (f64, f64),
    pub closed_form: (f64, f64),
}

impl TildeIntegrals {
    pub fn values(&self) -> (f64, f64) {
        self.closed_form
    }
}

/// a := 1 − 11/√17, the slope constant in the Ĩ₂ lower bound.
pub fn tilde_a() -> f64 {
    1.0 - 11.0 / 17f64.sqrt()
}

pub fn tilde_closed_forms() -> Result<(f64, f64)> {
    let a = tilde_a();
    let b14 = beta(0.25, 0.5)?;
    let b34 = beta(0.75, 0.5)?;
    let i1 = 0.75 * b14 - b34 / 6.0;
    let i2 = a / 4.0 * b34 - a / 2.0 * PI + b14 / 4.0;
    Ok((i1, i2))
}

/// Ĩ₁ = ∫(3 − 2u²/3) du/√(1−u⁴), Ĩ₂ = ∫(au² − 2au + 1) du/√(1−u⁴),
/// each by quadrature and by Beta functions; errors if the two disagree beyond 1e−8.
pub fn tilde_integrals() -> Result<TildeIntegrals> {
    let a = tilde_a();
    let q1 = integrate_quartic_weight(|u| 3.0 - 2.0 * u * u / 3.0, DEFAULT_TOL)?.value;
    let q2 = integrate_quartic_weight(|u| a * u * u - 2.0 * a * u + 1.0, DEFAULT_TOL)?.value;
    let closed = tilde_closed_forms()?;
    let gap = (q1 - closed.0).abs().max((q2 - closed.1).abs());
    if gap > 1e-8 {
        return Err(Error::Consistency(format!("tilde integrals: quadrature and Beta forms differ by {gap:e}")));
    }
    Ok(TildeIntegrals { quadrature: (q1, q2), closed_form: closed })
}

/// Checks the two pointwise bounds used at X = 2√2 − i on every grid point:
/// (9 − 2u²)/√(4u⁴ − 4u² + 9) > 3 − 2u²/3 and (2 + 9u²)/√(4 + 4u² + 9u⁴) < au² − 2au + 1.
pub fn bound_checks_prop2(u_grid: &[f64]) -> Result<bool> {
    if let Some(u) = u_grid.iter().find(|u| !(**u > 0.0 && **u < 1.0)) {
        return Err(Error::Domain(format!("grid point {u} outside (0, 1)")));
    }
    let a = tilde_a();
    Ok(u_grid.iter().all(|&u| {
        let u2 = u * u;
        let lower = (9.0 - 2.0 * u2) / (4.0 * u2 * u2 - 4.0 * u2 + 9.0).sqrt() > 3.0 - 2.0 * u2 / 3.0;
        let upper = (2.0 + 9.0 * u2) / (4.0 + 4.0 * u2 + 9.0 * u2 * u2).sqrt() < a * u2 - 2.0 * a * u + 1.0;
        lower && upper
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn im0_first_exceeds_second() {
        for r in [0.1, 1.0, 2.0, 10.0] {
            let d = limit_integrals_c2(LimitKind::Im0I1, r).unwrap() - limit_integrals_c2(LimitKind::Im0I2, r).unwrap();
            assert!(d > 0.0, "{r}: {d}");
        }
        assert!(limit_integrals_c2(LimitKind::Im0I1, 0.0).is_err());
    }

    #[test]
    fn a2_ordering() {
        let i1 = limit_integrals_c2(LimitKind::A2I1, 0.0).unwrap();
        let i2 = limit_integrals_c2(LimitKind::A2I2, 0.0).unwrap();
        assert!(i1 < i2, "{i1} {i2}");
    }

    #[test]
    fn a2_first_equals_rewritten_form() {
        // √2·(1 + u⁴/(1−u²)²)^{−1/2} against du/√(1−u⁴) is the same integrand.
        let alt = integrate_quartic_weight(|u| {
            let s = 1.0 - u * u;
            SQRT_2 * s / (s * s + u.powi(4)).sqrt()
        }, 1e-12)
        .unwrap()
        .value;
        assert!((alt - limit_integrals_c2(LimitKind::A2I1, 0.0).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn tilde_values() {
        let t = tilde_integrals().unwrap();
        // Oracle from Γ(1/4) alone: Γ(3/4) = π√2/Γ(1/4), Γ(5/4) = Γ(1/4)/4, Γ(1/2) = √π.
        let g14 = 3.625_609_908_221_908_f64;
        let g34 = PI * SQRT_2 / g14;
        let b14 = g14 * PI.sqrt() / g34;
        let b34 = g34 * PI.sqrt() / (g14 / 4.0);
        let a = 1.0 - 11.0 / 17f64.sqrt();
        let i1 = 0.75 * b14 - b34 / 6.0;
        let i2 = a / 4.0 * b34 - a / 2.0 * PI + b14 / 4.0;
        assert!((t.closed_form.0 - i1).abs() < 1e-10, "{} {}", t.closed_form.0, i1);
        assert!((t.closed_form.1 - i2).abs() < 1e-10);
        assert!((t.quadrature.0 - 3.534).abs() < 1e-2 && (t.quadrature.1 - 2.932).abs() < 1e-2);
        assert!(t.quadrature.0 > t.quadrature.1);
    }

    #[test]
    fn bounds_at_half() {
        // Direct arithmetic at u = 1/2:
        // 8.5/√8.25 ≈ 2.9593 > 2.8333; 4.25/√5.5625 ≈ 1.8020 < a/4 − a + 1 ≈ 2.2511.
        assert!(bound_checks_prop2(&[0.5]).unwrap());
        assert!(8.5 / 8.25f64.sqrt() > 3.0 - 0.5 / 3.0);
        let a = tilde_a();
        assert!(4.25 / 5.5625f64.sqrt() < a / 4.0 - a + 1.0);
    }

    #[test]
    fn bounds_on_open_grid() {
        let grid: Vec<f64> = (1..=1000).map(|k| k as f64 / 1001.0).collect();
        assert!(bound_checks_prop2(&grid).unwrap());
        assert!(bound_checks_prop2(&[0.0]).is_err());
    }
}
