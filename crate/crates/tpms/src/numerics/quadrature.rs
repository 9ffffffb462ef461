//! Adaptive Gauss–Kronrod quadrature, with substitutions that remove
//! inverse-square-root endpoint singularities before integrating.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Default absolute tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default evaluation budget.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate, always ≥ 0.
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadratureResult {
    fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

/// Behaviour of an integrand at one end of (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    /// Bounded and smooth up to the endpoint.
    Regular,
    /// Behaves like |u − end|^{−1/2}.
    InverseSqrt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularitySpec {
    pub lower: Endpoint,
    pub upper: Endpoint,
}

impl SingularitySpec {
    pub const NONE: Self = Self { lower: Endpoint::Regular, upper: Endpoint::Regular };
    pub const UPPER: Self = Self { lower: Endpoint::Regular, upper: Endpoint::InverseSqrt };
    pub const BOTH: Self = Self { lower: Endpoint::InverseSqrt, upper: Endpoint::InverseSqrt };
}

// 15-point Kronrod nodes (non-negative half) and weights, with the embedded 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive 15-point Gauss–Kronrod on [a, b] to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, budget: usize) -> Result<QuadratureResult> {
    if a == b {
        return Ok(QuadratureResult { value: 0.0, error_estimate: 0.0, evaluations: 1 });
    }
    let (v, e) = gk15(&f, a, b);
    let mut evals = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value: v, error: e });
    let (mut total, mut err) = (v, e);
    while err > tol {
        if !total.is_finite() {
            return Err(Error::Domain(format!("non-finite integrand on [{a}, {b}]")));
        }
        if evals + 30 > budget {
            return Err(Error::BudgetExhausted { best: total, error: err, evaluations: evals });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Cannot split further in floating point; accept what we have.
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        evals += 30;
        total += v1 + v2 - worst.value;
        err += e1 + e2 - worst.error;
        heap.push(Piece { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, error: e2 });
        // Re-sum periodically to keep the running totals from drifting.
        if heap.len() % 64 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            err = heap.iter().map(|p| p.error).sum();
        }
    }
    let value: f64 = heap.iter().map(|p| p.value).sum();
    let error_estimate: f64 = heap.iter().map(|p| p.error).sum();
    if !value.is_finite() {
        return Err(Error::Domain(format!("non-finite integral on [{a}, {b}]")));
    }
    Ok(QuadratureResult { value, error_estimate, evaluations: evals })
}

/// ∫₀¹ f(u) du where `spec` says which ends carry a |u − end|^{−1/2} singularity.
///
/// Singular halves are rewritten with u = s² (lower) or u = 1 − s² (upper),
/// which leaves a bounded integrand in s.
pub fn integrate_singular<F: Fn(f64) -> f64>(f: F, spec: SingularitySpec, tol: f64) -> Result<QuadratureResult> {
    integrate_singular_with_budget(f, spec, tol, DEFAULT_BUDGET)
}

pub fn integrate_singular_with_budget<F: Fn(f64) -> f64>(
    f: F,
    spec: SingularitySpec,
    tol: f64,
    budget: usize,
) -> Result<QuadratureResult> {
    let half = 0.5f64;
    let root_half = half.sqrt();
    let lower = match spec.lower {
        Endpoint::Regular => integrate(&f, 0.0, half, 0.5 * tol, budget / 2)?,
        Endpoint::InverseSqrt => integrate(|s| 2.0 * s * f(s * s), 0.0, root_half, 0.5 * tol, budget / 2)?,
    };
    let upper = match spec.upper {
        Endpoint::Regular => integrate(&f, half, 1.0, 0.5 * tol, budget / 2)?,
        Endpoint::InverseSqrt => integrate(|s| 2.0 * s * f(1.0 - s * s), 0.0, root_half, 0.5 * tol, budget / 2)?,
    };
    Ok(lower.combine(upper))
}

/// ∫₀¹ r(u) du / √(1 − u⁴) for a regular factor `r`.
///
/// The weight is evaluated in factored form after u = 1 − s², so no
/// cancellation occurs next to u = 1.
pub fn integrate_quartic_weight<F: Fn(f64) -> f64>(r: F, tol: f64) -> Result<QuadratureResult> {
    let half = 0.5f64;
    let lower = integrate(|u| r(u) / (1.0 - u.powi(4)).sqrt(), 0.0, half, 0.5 * tol, DEFAULT_BUDGET / 2)?;
    let upper = integrate(
        |s| {
            let s2 = s * s;
            let u = 1.0 - s2;
            2.0 * r(u) / ((2.0 - s2) * (1.0 + u * u)).sqrt()
        },
        0.0,
        half.sqrt(),
        0.5 * tol,
        DEFAULT_BUDGET / 2,
    )?;
    Ok(lower.combine(upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::beta;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_integrand() {
        let r = integrate_singular(|_| 0.0, SingularitySpec::UPPER, DEFAULT_TOL).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.evaluations > 0);
    }

    #[test]
    fn quartic_weight_matches_beta() {
        let want = beta(0.25, 0.5).unwrap() / 4.0;
        let plain = integrate_singular(|u| 1.0 / (1.0 - u.powi(4)).sqrt(), SingularitySpec::UPPER, 1e-12).unwrap();
        let weighted = integrate_quartic_weight(|_| 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(plain.value, want, epsilon = 1e-10);
        assert_abs_diff_eq!(weighted.value, want, epsilon = 1e-12);
    }

    #[test]
    fn both_endpoints() {
        // ∫₀¹ du/√(u(1−u)) = π
        let r = integrate_singular(|u| 1.0 / (u * (1.0 - u)).sqrt(), SingularitySpec::BOTH, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, std::f64::consts::PI, epsilon = 1e-10);
    }

    #[test]
    fn budget_exhaustion_reports_best() {
        let e = integrate(|u: f64| (1.0 / u).sin() / u, 1e-6, 1.0, 1e-14, 200).unwrap_err();
        assert!(matches!(e, Error::BudgetExhausted { .. }));
    }

    #[test]
    fn smooth_polynomial_exact() {
        let r = integrate(|x| 3.0 * x * x, 0.0, 2.0, 1e-12, DEFAULT_BUDGET).unwrap();
        assert_abs_diff_eq!(r.value, 8.0, epsilon = 1e-13);
    }
}
