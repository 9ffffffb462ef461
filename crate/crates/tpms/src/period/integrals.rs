use crate::error::{Error, Result};
use crate::families::{DerivedParams, FamilyId};
use crate::numerics::{integrate_quartic_weight, integrate_singular, QuadratureResult, SingularitySpec, DEFAULT_TOL};

/// The two period integrals and the combination that must vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodReport {
    pub family: FamilyId,
    /// I₁ (C2, L4) or J₁ (L2).
    pub first: f64,
    /// I₂ (C2, L4) or J₂ (L2).
    pub second: f64,
    /// I₁ − I₂ (C2), 2I₁ − I₂ (L4), J₁ − J₂ (L2).
    pub residual: f64,
    pub quad_error: f64,
}

impl PeriodReport {
    fn new(family: FamilyId, first: QuadratureResult, second: QuadratureResult) -> Self {
        let (w1, w2) = match family {
            FamilyId::L4 => (2.0, 1.0),
            _ => (1.0, 1.0),
        };
        Self {
            family,
            first: first.value,
            second: second.value,
            residual: w1 * first.value - w2 * second.value,
            quad_error: w1 * first.error_estimate + w2 * second.error_estimate,
        }
    }
}

fn expect(dp: &DerivedParams, fams: &[FamilyId]) -> Result<()> {
    if fams.contains(&dp.family) {
        Ok(())
    } else {
        Err(Error::Domain(format!("period integral not defined for {}", dp.family)))
    }
}

/// I₁ = ∫₀¹ (𝒜 − 2u²)/√(4u⁴ + 4 Im X u² + |X|²) du/√(1−u⁴), scaled by 1/√(2c).
fn first_integral(dp: &DerivedParams) -> Result<QuadratureResult> {
    let (sa, b, m) = (dp.script_a, dp.big_x.im, dp.big_x.norm_sqr());
    integrate_quartic_weight(
        |u| {
            let u2 = u * u;
            (sa - 2.0 * u2) / (4.0 * u2 * u2 + 4.0 * b * u2 + m).sqrt()
        },
        DEFAULT_TOL,
    )
}

/// I₂ = ∫₀¹ (2 + 𝒜u²)/√(4 − 4 Im X u² + |X|² u⁴) du/√(1−u⁴).
fn second_integral(dp: &DerivedParams) -> Result<QuadratureResult> {
    let (sa, b, m) = (dp.script_a, dp.big_x.im, dp.big_x.norm_sqr());
    integrate_quartic_weight(
        |u| {
            let u2 = u * u;
            (2.0 + sa * u2) / (4.0 - 4.0 * b * u2 + m * u2 * u2).sqrt()
        },
        DEFAULT_TOL,
    )
}

pub fn period_integrals_c2(dp: &DerivedParams) -> Result<PeriodReport> {
    expect(dp, &[FamilyId::C2])?;
    Ok(PeriodReport::new(dp.family, first_integral(dp)?, second_integral(dp)?))
}

/// Same integrals as C2 with the L4 meanings of X and 𝒜; the period closes when 2I₁ = I₂.
pub fn period_integrals_l4(dp: &DerivedParams) -> Result<PeriodReport> {
    expect(dp, &[FamilyId::L4])?;
    Ok(PeriodReport::new(dp.family, first_integral(dp)?, second_integral(dp)?))
}

/// J₁ = ∫₀¹ (t+a)/(|t+x|√(t(1−t²))) dt and J₂ = ∫₁^∞ (t−a)/(|t−x|√(t(t²−1))) dt.
///
/// Both are evaluated after t = u² (and t ↦ 1/t for J₂), which turns them
/// into regular factors against du/√(1−u⁴).
pub fn period_integrals_l2(dp: &DerivedParams) -> Result<PeriodReport> {
    expect(dp, &[FamilyId::L2])?;
    let (x, a) = (dp.x, dp.a);
    let j1 = integrate_quartic_weight(|u| 2.0 * (u * u + a) / (x + u * u).norm(), DEFAULT_TOL)?;
    let j2 = integrate_quartic_weight(|u| 2.0 * (1.0 - a * u * u) / (1.0 - x * (u * u)).norm(), DEFAULT_TOL)?;
    Ok(PeriodReport::new(dp.family, j1, j2))
}

/// J₂ computed on its original half-line through t = 1/(1 − v²), an
/// independent route used to cross-check the reciprocal substitution.
pub fn j2_direct(dp: &DerivedParams) -> Result<f64> {
    expect(dp, &[FamilyId::L2])?;
    let (x, a) = (dp.x, dp.a);
    let r = integrate_singular(
        |v| {
            let w = 1.0 - v * v;
            let t = 1.0 / w;
            2.0 * (t - a) / ((t - x).norm() * ((2.0 - v * v) * w).sqrt())
        },
        SingularitySpec::UPPER,
        DEFAULT_TOL,
    )?;
    Ok(r.value)
}

pub fn period_integrals(dp: &DerivedParams) -> Result<PeriodReport> {
    match dp.family {
        FamilyId::C2 => period_integrals_c2(dp),
        FamilyId::L2 => period_integrals_l2(dp),
        FamilyId::L4 => period_integrals_l4(dp),
    }
}
