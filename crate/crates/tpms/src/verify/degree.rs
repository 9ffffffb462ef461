//! The degree of the Gauss map and the sheet count of z.

use super::report::VerificationReport;
use crate::error::{Error, Result};
use crate::families::{g_candidates, preimages_of, DerivedParams};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_4;

/// Minimum distance of a generic probe from the symmetry loci and critical values.
pub const GENERIC_MARGIN: f64 = 0.1;

/// Distance > 0.1 from ℝ, iℝ, e^{±iπ/4}ℝ and from 0, ±i; |probe| < 10 keeps
/// it away from ∞.
pub fn is_generic_probe(probe: Complex64) -> bool {
    let off_line = |d: Complex64| (probe * d.conj()).im.abs() > GENERIC_MARGIN;
    let i = Complex64::new(0.0, 1.0);
    probe.is_finite()
        && probe.norm() < 1.0 / GENERIC_MARGIN
        && [Complex64::new(1.0, 0.0), i, Complex64::from_polar(1.0, FRAC_PI_4), Complex64::from_polar(1.0, -FRAC_PI_4)].into_iter().all(off_line)
        && [Complex64::new(0.0, 0.0), i, -i].iter().all(|c| (probe - c).norm() > GENERIC_MARGIN)
}

/// Checks:
/// - `degree.count`: |#{(z, g) : g = probe} − deg g| (deg g = 8 for C2 and L4, 4 for L2).
/// - `degree.fibre`: largest |#distinct g over z − 4| over the preimages (z is four-sheeted).
pub fn check_degree(dp: &DerivedParams, probe: Complex64) -> Result<VerificationReport> {
    if !is_generic_probe(probe) {
        return Err(Error::Domain(format!("probe {probe} is within {GENERIC_MARGIN} of a symmetry locus or critical value; retry with another probe")));
    }
    let sols = preimages_of(dp, probe)?;
    let degree = dp.family.gauss_degree();
    let mut r = VerificationReport::new();
    r.add("degree.count", (sols.len() as f64 - degree as f64).abs(), 0.0, format!("{} solutions of g = {probe}, expected {degree}", sols.len()));
    let mut worst = 0usize;
    for (z, _) in &sols {
        let c = g_candidates(dp, *z)?;
        let mut distinct = 0usize;
        for (i, g) in c.iter().enumerate() {
            if c[..i].iter().all(|h| (g - h).norm() > 1e-8 * g.norm().max(1.0)) {
                distinct += 1;
            }
        }
        worst = worst.max(distinct.abs_diff(4));
    }
    r.add("degree.fibre", worst as f64, 0.0, format!("{} fibres", sols.len()));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{derive_params, FamilyId, ShapeParams};

    #[test]
    fn c2_at_two_plus_i() {
        let dp = derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.345, -1.0)).unwrap()).unwrap();
        let r = check_degree(&dp, Complex64::new(2.0, 1.0)).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn critical_probe_is_rejected() {
        let dp = derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.345, -1.0)).unwrap()).unwrap();
        assert!(matches!(check_degree(&dp, Complex64::new(0.0, 1.0)), Err(Error::Domain(_))));
        assert!(!is_generic_probe(Complex64::new(3.0, 0.05)));
        assert!(!is_generic_probe(Complex64::new(1.0, 1.02)));
    }
}
