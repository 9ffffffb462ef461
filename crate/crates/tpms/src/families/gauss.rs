use super::{DerivedParams, FamilyId};
use crate::error::{Error, Result};
use crate::numerics::poly;
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// p = (g − 1/g)² and q = (g + 1/g)² as functions of z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussSquares {
    pub p: Complex64,
    pub q: Complex64,
}

/// Z as a function of z: z − 1/z for C2, z + 1/z for L4.
pub(crate) fn big_z(family: FamilyId, z: Complex64) -> Complex64 {
    match family {
        FamilyId::C2 => z - 1.0 / z,
        _ => z + 1.0 / z,
    }
}

/// A point z together with the combinations that vanish at the poles of the
/// squares: Z (C2, L4) and 1 − z² (L2). Callers that know these more
/// accurately than recomputation from z allows (near a pole) supply them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverPoint {
    pub z: Complex64,
    pub big_z: Complex64,
    pub one_minus_z2: Complex64,
}

impl CoverPoint {
    pub fn new(family: FamilyId, z: Complex64) -> Self {
        Self { z, big_z: big_z(family, z), one_minus_z2: 1.0 - z * z }
    }
}

pub fn gauss_squares(dp: &DerivedParams, z: Complex64) -> Result<GaussSquares> {
    gauss_squares_at(dp, &CoverPoint::new(dp.family, z))
}

pub fn gauss_squares_at(dp: &DerivedParams, pt: &CoverPoint) -> Result<GaussSquares> {
    let z = pt.z;
    if !z.is_finite() {
        return Err(Error::Pole { z, location: "z = ∞" });
    }
    let (x, xb, sa, c) = (dp.big_x, dp.big_x.conj(), dp.script_a, dp.c);
    match dp.family {
        FamilyId::C2 | FamilyId::L4 => {
            if z.norm() == 0.0 {
                return Err(Error::Pole { z, location: "z = 0" });
            }
            let zz = pt.big_z;
            if zz.norm() <= 1e-300 {
                let location = if dp.family == FamilyId::C2 { "z = ±1" } else { "z = ±i" };
                return Err(Error::Pole { z, location });
            }
            let pre = c / (zz * zz * zz);
            let (p, q) = if dp.family == FamilyId::C2 {
                let pre = -I * pre;
                (pre * (zz - I * sa).powi(2) * (zz - x) * (zz + xb), pre * (zz + I * sa).powi(2) * (zz - xb) * (zz + x))
            } else {
                let pre = I * pre;
                (pre * (zz + I * sa).powi(2) * (zz + x) * (zz - xb), pre * (zz - I * sa).powi(2) * (zz + xb) * (zz - x))
            };
            Ok(GaussSquares { p, q })
        }
        FamilyId::L2 => {
            let (xl, xlb, a) = (dp.x, dp.x.conj(), dp.a);
            if z.norm() == 0.0 {
                return Err(Error::Pole { z, location: "z = 0" });
            }
            if pt.one_minus_z2.norm() <= 1e-300 {
                return Err(Error::Pole { z, location: "z = ±1" });
            }
            let (p, q) = if z.norm() > 2.0 {
                // Chart at infinity: u = 1/z.
                let u = 1.0 / z;
                let den = u * (u * u - 1.0);
                (
                    c * (1.0 + xl * u) * (1.0 + xlb * u) * (1.0 - a * u).powi(2) / den,
                    c * (1.0 - xl * u) * (1.0 - xlb * u) * (1.0 + a * u).powi(2) / den,
                )
            } else {
                let den = z * pt.one_minus_z2;
                (
                    c * (z + xl) * (z + xlb) * (z - a).powi(2) / den,
                    c * (z - xl) * (z - xlb) * (z + a).powi(2) / den,
                )
            };
            Ok(GaussSquares { p, q })
        }
    }
}

/// The four values {g, −g, 1/g, −1/g} over z, with |g| ≥ 1 first.
pub fn g_candidates(dp: &DerivedParams, z: Complex64) -> Result<[Complex64; 4]> {
    g_candidates_at(dp, &CoverPoint::new(dp.family, z))
}

pub fn g_candidates_at(dp: &DerivedParams, pt: &CoverPoint) -> Result<[Complex64; 4]> {
    let GaussSquares { p, q } = gauss_squares_at(dp, pt)?;
    // g² solves w² − (p + 2) w + 1 = 0, whose discriminant is p·q.
    let s = (p * q).sqrt();
    let b = p + 2.0;
    let w1 = if (b + s).norm() >= (b - s).norm() { 0.5 * (b + s) } else { 0.5 * (b - s) };
    let g = w1.sqrt();
    Ok([g, -g, 1.0 / g, -1.0 / g])
}

/// Finite branch points of z on the quotient (∞ is always one as well).
pub fn branch_points(dp: &DerivedParams) -> Vec<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let x = dp.x;
    let mut out = vec![Complex64::new(0.0, 0.0)];
    match dp.family {
        FamilyId::C2 | FamilyId::L2 => out.extend([one, -one]),
        FamilyId::L4 => out.extend([I, -I]),
    }
    for v in [x, x.conj()] {
        out.extend([v, -v]);
        if dp.family != FamilyId::L2 {
            out.extend([1.0 / v, -1.0 / v]);
        }
    }
    out
}

/// All points (z, g) with g = probe, found by solving p(z) = (probe − 1/probe)²
/// as a polynomial and then picking the matching member of each fibre.
pub fn preimages_of(dp: &DerivedParams, probe: Complex64) -> Result<Vec<(Complex64, Complex64)>> {
    let target = (probe - 1.0 / probe).powi(2);
    let one = Complex64::new(1.0, 0.0);
    let (sa, c) = (dp.script_a, dp.c);
    let zs: Vec<Complex64> = match dp.family {
        FamilyId::C2 | FamilyId::L4 => {
            // Quartic in Z, then each Z gives two z.
            let (pre, zero, xa, xb) = if dp.family == FamilyId::C2 {
                (-I * c, I * sa, dp.big_x, -dp.big_x.conj())
            } else {
                (I * c, -I * sa, -dp.big_x, dp.big_x.conj())
            };
            let mut num = vec![pre];
            for r in [zero, zero, xa, xb] {
                num = poly::mul(&num, &[-r, one]);
            }
            num[3] -= target;
            let sign = if dp.family == FamilyId::C2 { -1.0 } else { 1.0 };
            poly::roots(&num)
                .into_iter()
                .flat_map(|zz| {
                    // z² − Z z ∓ 1 = 0
                    let d = (zz * zz - 4.0 * sign).sqrt();
                    [(zz + d) / 2.0, (zz - d) / 2.0]
                })
                .collect()
        }
        FamilyId::L2 => {
            let (x, a) = (dp.x, dp.a);
            let mut num = vec![Complex64::new(c, 0.0)];
            for r in [-x, -x.conj(), Complex64::new(a, 0.0), Complex64::new(a, 0.0)] {
                num = poly::mul(&num, &[-r, one]);
            }
            // − target · z(1 − z²)
            num[1] -= target;
            num[3] += target;
            poly::roots(&num)
        }
    };
    let mut out = Vec::new();
    for z in zs {
        let cands = g_candidates(dp, z)?;
        let scale = probe.norm().max(1.0);
        for g in cands {
            if (g - probe).norm() < 1e-7 * scale {
                out.push((z, g));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{derive_params, ShapeParams};

    fn c2_ref() -> DerivedParams {
        let sp = ShapeParams::from_big_x(FamilyId::C2, Complex64::new(2.0 * 2f64.sqrt(), -1.0)).unwrap();
        derive_params(&sp).unwrap()
    }

    #[test]
    fn c2_special_points() {
        let dp = c2_ref();
        let gs = gauss_squares(&dp, -I * dp.a).unwrap();
        assert!(gs.q.norm() < 1e-12);
        assert!((gs.p + 4.0).norm() < 1e-12);
        // A itself is a zero of q; its images −x and 1/x are zeros of p.
        assert!(gauss_squares(&dp, dp.x).unwrap().q.norm() < 1e-12);
        assert!(gauss_squares(&dp, -dp.x).unwrap().p.norm() < 1e-12);
        assert!(gauss_squares(&dp, 1.0 / dp.x).unwrap().p.norm() < 1e-12);
    }

    #[test]
    fn poles_are_reported() {
        let dp = c2_ref();
        for z in [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)] {
            assert!(matches!(gauss_squares(&dp, z), Err(Error::Pole { .. })));
        }
    }

    #[test]
    fn candidates_solve_both_squares() {
        let dp = c2_ref();
        let z = Complex64::new(0.3, 0.45);
        let gs = gauss_squares(&dp, z).unwrap();
        for g in g_candidates(&dp, z).unwrap() {
            assert!(((g - 1.0 / g).powi(2) - gs.p).norm() < 1e-10 * gs.p.norm().max(1.0));
            assert!(((g + 1.0 / g).powi(2) - gs.q).norm() < 1e-10 * gs.q.norm().max(1.0));
        }
    }

    #[test]
    fn l2_chart_switch_is_seamless() {
        let dp = derive_params(&ShapeParams::new(FamilyId::L2, Complex64::new(1.0, 1.0))).unwrap();
        let z = Complex64::from_polar(2.0, 0.7);
        let inside = gauss_squares(&dp, z * (1.0 - 1e-12)).unwrap();
        let outside = gauss_squares(&dp, z * (1.0 + 1e-12)).unwrap();
        assert!((inside.p - outside.p).norm() < 1e-9 * inside.p.norm());
    }

    #[test]
    fn c2_degree_is_eight() {
        let dp = c2_ref();
        let pre = preimages_of(&dp, Complex64::new(2.0, 1.0)).unwrap();
        assert_eq!(pre.len(), 8);
    }
}
