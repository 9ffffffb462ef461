//! Complex polynomial helpers: multiplication and all-roots (Aberth–Ehrlich).

use num_complex::Complex64;

/// Coefficients in ascending order: c[0] + c[1] z + ...
pub type Poly = Vec<Complex64>;

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Poly {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Evaluates p and p' at z (Horner).
pub fn eval_with_derivative(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// All complex roots of p, with multiplicity. Leading zero coefficients are trimmed.
pub fn roots(p: &[Complex64]) -> Vec<Complex64> {
    let mut p: Vec<Complex64> = p.to_vec();
    while p.len() > 1 && p.last().is_some_and(|c| c.norm() == 0.0) {
        p.pop();
    }
    let n = p.len() - 1;
    if n == 0 {
        return vec![];
    }
    let lead = p[n];
    let monic: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    // Cauchy bound for the starting circle.
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval_with_derivative(&monic, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}
