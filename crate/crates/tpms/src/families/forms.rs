//! Height differential, Weierstrass forms and the Gauss-map normal.

use super::gauss::{big_z, CoverPoint};
use super::{DerivedParams, FamilyId};
use crate::error::{Error, Result};
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// dh/dz at the point (z, g) of the cover.
///
/// The square root in the denominator is the branch singled out by g:
/// we take the principal root of the polynomial and flip its sign to
/// agree with the rational expression in g.
pub fn height_differential(dp: &DerivedParams, z: Complex64, g: Complex64) -> Result<Complex64> {
    height_differential_at(dp, &CoverPoint::new(dp.family, z), g)
}

pub fn height_differential_at(dp: &DerivedParams, pt: &CoverPoint, g: Complex64) -> Result<Complex64> {
    let z = pt.z;
    if z.norm() == 0.0 || !z.is_finite() {
        return Err(Error::Singular { z, what: "height differential at z ∈ {0, ∞}" });
    }
    let g2 = g * g;
    let shape = g2 - 1.0 / g2;
    let (root_sq, guide, num) = match dp.family {
        FamilyId::C2 | FamilyId::L4 => {
            let zz = pt.big_z;
            let (x, xb) = (dp.big_x, dp.big_x.conj());
            let root_sq = (zz * zz - x * x) * (zz * zz - xb * xb);
            let guide = I * zz * zz * zz * shape / (dp.c * (zz * zz + dp.script_a * dp.script_a));
            (root_sq, guide, zz / z)
        }
        FamilyId::L2 => {
            let (x, xb, a) = (dp.x, dp.x.conj(), dp.a);
            let root_sq = (z * z - x * x) * (z * z - xb * xb);
            let guide = shape * z * pt.one_minus_z2 / (dp.c * (z * z - a * a));
            (root_sq, guide, I)
        }
    };
    let root = root_sq.sqrt();
    if root.norm() == 0.0 {
        return Err(Error::Singular { z, what: "zero of the height-differential denominator" });
    }
    if !guide.is_finite() {
        return Err(Error::Singular { z, what: "branch of the height differential undetermined" });
    }
    let agree = (guide * root.conj()).re;
    if agree == 0.0 {
        return Err(Error::Singular { z, what: "branch of the height differential undetermined" });
    }
    let root = if agree > 0.0 { root } else { -root };
    Ok(num / root)
}

/// |dh/dz|, which does not depend on the sheet.
pub fn dh_modulus(dp: &DerivedParams, z: Complex64) -> f64 {
    match dp.family {
        FamilyId::C2 | FamilyId::L4 => {
            let zz = big_z(dp.family, z);
            let (x, xb) = (dp.big_x, dp.big_x.conj());
            (zz / z).norm() / ((zz * zz - x * x) * (zz * zz - xb * xb)).norm().sqrt()
        }
        FamilyId::L2 => {
            let (x, xb) = (dp.x, dp.x.conj());
            1.0 / ((z * z - x * x) * (z * z - xb * xb)).norm().sqrt()
        }
    }
}

/// (φ₁, φ₂, φ₃)/dz = ½(1/g − g, i/g + i g, 2)·dh/dz.
pub fn weierstrass_forms(g: Complex64, dhdz: Complex64) -> Result<[Complex64; 3]> {
    if g.norm() == 0.0 || !g.is_finite() {
        return Err(Error::Singular { z: g, what: "Weierstrass forms at g ∈ {0, ∞}" });
    }
    let inv = 1.0 / g;
    Ok([0.5 * (inv - g) * dhdz, 0.5 * I * (inv + g) * dhdz, dhdz])
}

/// Unit normal whose stereographic projection is g (g = ∞ gives the north pole).
pub fn normal_from_g(g: Complex64) -> [f64; 3] {
    if !g.is_finite() {
        return [0.0, 0.0, 1.0];
    }
    let m = g.norm_sqr();
    let d = 1.0 + m;
    [2.0 * g.re / d, 2.0 * g.im / d, (m - 1.0) / d]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{arcs, derive_params, g_on_arc, DhLine, ShapeParams};

    #[test]
    fn forms_at_simple_points() {
        let f = weierstrass_forms(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        assert!((f[0]).norm() < 1e-15 && (f[1] - I).norm() < 1e-15 && (f[2] - 1.0).norm() < 1e-15);
        let f = weierstrass_forms(I, Complex64::new(1.0, 0.0)).unwrap();
        assert!((f[0] + I).norm() < 1e-15 && f[1].norm() < 1e-15 && (f[2] - 1.0).norm() < 1e-15);
        assert!(weierstrass_forms(Complex64::new(0.0, 0.0), I).is_err());
    }

    #[test]
    fn normal_poles() {
        assert_eq!(normal_from_g(Complex64::new(0.0, 0.0)), [0.0, 0.0, -1.0]);
        assert_eq!(normal_from_g(Complex64::new(f64::INFINITY, 0.0)), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn dh_lines_on_arcs() {
        for (fam, x) in [
            (FamilyId::C2, ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.345, -1.0)).unwrap().x),
            (FamilyId::L4, ShapeParams::from_big_x(FamilyId::L4, Complex64::new(0.6, -1.0)).unwrap().x),
            (FamilyId::L2, Complex64::new(1.0, 1.0)),
        ] {
            let dp = derive_params(&ShapeParams::new(fam, x)).unwrap();
            for arc in arcs(&dp) {
                for k in 1..10 {
                    let t = arc.t_at(k as f64 / 10.0);
                    let z = arc.z(t);
                    let g = g_on_arc(&arc, t, &dp).unwrap();
                    let d = height_differential(&dp, z, g).unwrap() * arc.dz_dt(t);
                    let off = match arc.dh_line {
                        DhLine::Real => d.im,
                        DhLine::Imaginary => d.re,
                    };
                    assert!(off.abs() < 1e-9 * d.norm(), "{fam} {} t={t} dh={d}", arc.label);
                }
            }
        }
    }
}
