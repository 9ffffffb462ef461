use super::integrals::{period_integrals, PeriodReport};
use crate::error::{Error, Result};
use crate::families::{derive_params, DerivedParams, FamilyId, ShapeParams};
use crate::numerics::{find_root, Bracket};
use num_complex::Complex64;

/// Inset applied to open slice endpoints, where residuals degenerate.
pub const EPS_INSET: f64 = 1e-2;

/// Which coordinate is held fixed along a slice; the other one is swept.
/// `*BigX` variants act on X (C2, L4), `*SmallX` on x itself (L2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedComponent {
    ImBigX(f64),
    ReBigX(f64),
    ImSmallX(f64),
    ReSmallX(f64),
}

impl FixedComponent {
    pub fn key(self) -> &'static str {
        match self {
            FixedComponent::ImBigX(_) => "im_X",
            FixedComponent::ReBigX(_) => "re_X",
            FixedComponent::ImSmallX(_) => "im_x",
            FixedComponent::ReSmallX(_) => "re_x",
        }
    }

    pub fn value(self) -> f64 {
        match self {
            FixedComponent::ImBigX(v) | FixedComponent::ReBigX(v) | FixedComponent::ImSmallX(v) | FixedComponent::ReSmallX(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceSpec {
    pub family: FamilyId,
    pub fixed: FixedComponent,
    /// Closed sampling interval for the free component (already inset).
    pub range: (f64, f64),
    pub samples: usize,
}

impl SliceSpec {
    /// Parameters at free coordinate `t`.
    pub fn shape_at(&self, t: f64) -> Result<ShapeParams> {
        let big = |z: Complex64| ShapeParams::from_big_x(self.family, z);
        let small = |z: Complex64| -> Result<ShapeParams> {
            if self.family != FamilyId::L2 {
                return Err(Error::Domain(format!("{} slices are expressed in X, not x", self.family)));
            }
            Ok(ShapeParams::new(self.family, z))
        };
        match self.fixed {
            FixedComponent::ImBigX(v) => big(Complex64::new(t, v)),
            FixedComponent::ReBigX(v) => big(Complex64::new(v, t)),
            FixedComponent::ImSmallX(v) => small(Complex64::new(t, v)),
            FixedComponent::ReSmallX(v) => small(Complex64::new(v, t)),
        }
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Domain(format!("slice range ({lo}, {hi}) is empty or not finite")));
        }
        if self.samples < 2 {
            return Err(Error::Domain(format!("slice needs at least 2 samples, got {}", self.samples)));
        }
        Ok(())
    }

    fn sample_points(&self) -> Vec<f64> {
        let (lo, hi) = self.range;
        let n = self.samples - 1;
        (0..=n).map(|k| if k == n { hi } else { lo + (hi - lo) * k as f64 / n as f64 }).collect()
    }
}

/// The slice used for each family's root search:
/// C2 on Im{X} = −1 with Re{X} ∈ (1, 2√2); L4 on Im{X} = −1 with Re{X} ∈ (0, 4);
/// L2 on Im{x} = 1 with Re{x} ∈ (0, 10). All ends inset by [`EPS_INSET`].
pub fn default_slice(family: FamilyId) -> SliceSpec {
    let e = EPS_INSET;
    match family {
        FamilyId::C2 => SliceSpec { family, fixed: FixedComponent::ImBigX(-1.0), range: (1.0 + e, 2.0 * 2f64.sqrt() - e), samples: 32 },
        FamilyId::L4 => SliceSpec { family, fixed: FixedComponent::ImBigX(-1.0), range: (e, 4.0), samples: 32 },
        FamilyId::L2 => SliceSpec { family, fixed: FixedComponent::ImSmallX(1.0), range: (e, 10.0), samples: 64 },
    }
}

pub fn residual_on_slice(slice: &SliceSpec, t: f64) -> Result<PeriodReport> {
    let dp = derive_params(&slice.shape_at(t)?)?;
    period_integrals(&dp)
}

/// (t, residual) at the sample points; NaN where the parameters are
/// inadmissible or the quadrature fails.
pub fn sample_slice(slice: &SliceSpec) -> Result<Vec<(f64, f64)>> {
    slice.validate()?;
    Ok(slice
        .sample_points()
        .into_iter()
        .map(|t| (t, residual_on_slice(slice, t).map(|r| r.residual).unwrap_or(f64::NAN)))
        .collect())
}

/// A period-closing parameter together with the evidence for it.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub shape: ShapeParams,
    pub params: DerivedParams,
    pub report: PeriodReport,
    /// Free coordinate of the root.
    pub t: f64,
    /// The sampled bracket the root was refined from.
    pub bracket: Bracket,
    pub samples: Vec<(f64, f64)>,
}

/// Samples the slice, takes the first sign change, and refines it with Brent's
/// method until |residual| < `tol`.
pub fn solve_period(slice: &SliceSpec, tol: f64) -> Result<Solution> {
    let samples = sample_slice(slice)?;
    let bracket = samples
        .windows(2)
        .find(|w| w[0].1.is_finite() && w[1].1.is_finite() && w[0].1 * w[1].1 < 0.0)
        .map(|w| Bracket { lo: w[0].0, hi: w[1].0, f_lo: w[0].1, f_hi: w[1].1 })
        .ok_or_else(|| Error::NoSignChange { samples: samples.clone() })?;
    solve_in_bracket(slice, bracket, tol).map(|mut s| {
        s.samples = samples;
        s
    })
}

fn solve_in_bracket(slice: &SliceSpec, bracket: Bracket, tol: f64) -> Result<Solution> {
    let f = |t: f64| residual_on_slice(slice, t).map(|r| r.residual).unwrap_or(f64::NAN);
    let mut x_tol = bracket.width() * 1e-6;
    let mut evaluations = 0;
    loop {
        let t = find_root(f, bracket, x_tol)?;
        evaluations += 1;
        let shape = slice.shape_at(t)?;
        let params = derive_params(&shape)?;
        let report = period_integrals(&params)?;
        if report.residual.abs() < tol {
            return Ok(Solution { shape, params, report, t, bracket, samples: Vec::new() });
        }
        if x_tol < 1e-15 * t.abs().max(1.0) {
            return Err(Error::BudgetExhausted { best: t, error: report.residual.abs(), evaluations });
        }
        x_tol *= 1e-3;
    }
}

/// Follows the C2/L4 root curve through the X-domain: for each Im{X} in
/// `im_values`, searches Re{X} around the previous root with a widening bracket.
pub fn trace_root_curve(family: FamilyId, start: &Solution, im_values: &[f64], tol: f64) -> Result<Vec<Solution>> {
    let mut re = start.params.big_x.re;
    let mut out = Vec::with_capacity(im_values.len());
    for &im in im_values {
        let slice = SliceSpec { family, fixed: FixedComponent::ImBigX(im), range: (re, re), samples: 2 };
        let f = |t: f64| residual_on_slice(&slice, t).map(|r| r.residual).unwrap_or(f64::NAN);
        let mut half = 0.05 * re.abs().max(0.1);
        let bracket = loop {
            let (lo, hi) = ((re - half).max(1e-9), re + half);
            let (f_lo, f_hi) = (f(lo), f(hi));
            if f_lo * f_hi < 0.0 {
                break Bracket { lo, hi, f_lo, f_hi };
            }
            half *= 2.0;
            if half > 100.0 {
                return Err(Error::NoSignChange { samples: vec![(lo, f_lo), (hi, f_hi)] });
            }
        };
        let sol = solve_in_bracket(&slice, bracket, tol)?;
        re = sol.t;
        out.push(sol);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_default_slice_root() {
        let s = solve_period(&default_slice(FamilyId::C2), 1e-8).unwrap();
        assert!(s.report.residual.abs() < 1e-8);
        assert!(s.t > 1.01 && s.t < 2.0 * 2f64.sqrt() - 0.01);
        assert!((s.t - 1.345_066_659_290_767_6).abs() < 1e-6, "{}", s.t);
    }

    #[test]
    fn zero_width_slice_rejected() {
        let mut sl = default_slice(FamilyId::C2);
        sl.range = (2.0, 2.0);
        assert!(matches!(solve_period(&sl, 1e-8), Err(Error::Domain(_))));
    }

    #[test]
    fn l4_default_slice_root() {
        let s = solve_period(&default_slice(FamilyId::L4), 1e-8).unwrap();
        assert!(s.report.residual.abs() < 1e-8);
    }

    #[test]
    fn l2_slice_has_no_sign_change() {
        match solve_period(&default_slice(FamilyId::L2), 1e-8) {
            Err(Error::NoSignChange { samples }) => assert!(samples.iter().all(|s| s.1 < 0.0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trace_moves_root() {
        let s = solve_period(&default_slice(FamilyId::C2), 1e-10).unwrap();
        let curve = trace_root_curve(FamilyId::C2, &s, &[-0.9, -0.8], 1e-10).unwrap();
        assert_eq!(curve.len(), 2);
        assert!(curve.iter().all(|c| c.report.residual.abs() < 1e-10));
    }
}
