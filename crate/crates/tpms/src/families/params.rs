use super::FamilyId;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Family plus the location x = z(A).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeParams {
    pub family: FamilyId,
    pub x: Complex64,
}

impl ShapeParams {
    pub fn new(family: FamilyId, x: Complex64) -> Self {
        Self { family, x }
    }

    /// Recovers x from X (C2: X = 1/x − x, L4: X = 1/x + x), taking the root with |x| < 1.
    pub fn from_big_x(family: FamilyId, big_x: Complex64) -> Result<Self> {
        // x² + s·X·x − 1·s' = 0 with (s, s') = (1, −1) for C2 and (−1, 1) for L4.
        let (b, c) = match family {
            FamilyId::C2 => (big_x, Complex64::new(-1.0, 0.0)),
            FamilyId::L4 => (-big_x, Complex64::new(1.0, 0.0)),
            FamilyId::L2 => return Err(Error::Domain("L2 is parameterised by x directly".into())),
        };
        let disc = (b * b - 4.0 * c).sqrt();
        let r1 = (-b + disc) / 2.0;
        let r2 = (-b - disc) / 2.0;
        let x = if r1.norm() < r2.norm() { r1 } else { r2 };
        Ok(Self { family, x })
    }

    /// The Joukowski-type image X of x (meaningless for L2, returned anyway).
    pub fn big_x(&self) -> Complex64 {
        match self.family {
            FamilyId::C2 => 1.0 / self.x - self.x,
            FamilyId::L4 | FamilyId::L2 => 1.0 / self.x + self.x,
        }
    }
}

/// Quantities fixed by the constraint equations once x is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub family: FamilyId,
    pub x: Complex64,
    /// X (C2: 1/x − x; L4: 1/x + x; L2: unused, stored as 1/x + x).
    pub big_x: Complex64,
    /// 𝒜: C2 and L2 a + 1/a, L4 1/a − a.
    pub script_a: f64,
    /// The double zeros of the squares sit at z = ±i a^{±1} (C2, L4) or z = ±a (L2); a ∈ (0, 1).
    pub a: f64,
    /// Scale of the squares: c for C2/L4, K = (1/a − a)/|x − a|² for L2.
    pub c: f64,
}

impl DerivedParams {
    pub fn shape(&self) -> ShapeParams {
        ShapeParams { family: self.family, x: self.x }
    }

    /// c from the requirement g² = −1 at z = −ia (C2/L4).
    pub fn c_from_unit_points(&self) -> f64 {
        let (s, b) = (self.script_a, self.big_x.im);
        s / (s * s + 2.0 * s * b + self.big_x.norm_sqr())
    }

    /// c from Re (g − 1/g)² = −2 on the diagonal symmetry curve (C2/L4).
    pub fn c_from_diagonal_locus(&self) -> f64 {
        1.0 / (self.script_a + self.big_x.im)
    }
}

/// Right-hand side of the C2 bound |x| < bound(θ), θ = Arg x.
pub fn c2_modulus_bound(theta: f64) -> f64 {
    let s = theta.sin();
    let r = (1.0 + 3.0 * theta.cos().powi(2)).sqrt();
    0.5 * (s + r - (2.0 * s * (r - s)).sqrt())
}

fn check_first_quadrant(x: Complex64) -> Result<()> {
    if !(x.re > 0.0 && x.im > 0.0) {
        return Err(Error::Inadmissible(format!("x = {x} is not in the open first quadrant")));
    }
    Ok(())
}

pub fn derive_params(sp: &ShapeParams) -> Result<DerivedParams> {
    let x = sp.x;
    if !(x.re.is_finite() && x.im.is_finite()) {
        return Err(Error::Inadmissible(format!("x = {x} is not finite")));
    }
    match sp.family {
        FamilyId::C2 => {
            check_first_quadrant(x)?;
            let (r, theta) = x.to_polar();
            if r >= 1.0 {
                return Err(Error::Inadmissible(format!("|x| = {r} is not below 1")));
            }
            let big_x = 1.0 / x - x;
            if big_x.im >= 0.0 {
                return Err(Error::Inadmissible(format!("Im X = {} must be negative", big_x.im)));
            }
            let bound = c2_modulus_bound(theta);
            if r >= bound {
                return Err(Error::Inadmissible(format!(
                    "|x| = {r} violates the C2 bound {bound} at Arg x = {theta} (equivalently 𝒜 ≤ 2)"
                )));
            }
            let script_a = -big_x.norm_sqr() / big_x.im;
            if script_a <= 2.0 {
                return Err(Error::Inadmissible(format!("𝒜 = {script_a} must exceed 2")));
            }
            let a = 2.0 / (script_a + (script_a * script_a - 4.0).sqrt());
            let mut dp = DerivedParams { family: sp.family, x, big_x, script_a, a, c: 0.0 };
            dp.c = dp.c_from_diagonal_locus();
            Ok(dp)
        }
        FamilyId::L4 => {
            check_first_quadrant(x)?;
            if x.norm() >= 1.0 {
                return Err(Error::Inadmissible(format!("|x| = {} is not below 1", x.norm())));
            }
            let big_x = 1.0 / x + x;
            let script_a = -big_x.norm_sqr() / big_x.im;
            let a = 2.0 / (script_a + (script_a * script_a + 4.0).sqrt());
            let mut dp = DerivedParams { family: sp.family, x, big_x, script_a, a, c: 0.0 };
            dp.c = dp.c_from_diagonal_locus();
            Ok(dp)
        }
        FamilyId::L2 => {
            if !(x.re > 0.0) {
                return Err(Error::Inadmissible(format!("Re x = {} must be positive", x.re)));
            }
            check_first_quadrant(x)?;
            let script_a = (x.norm_sqr() + 1.0) / x.re;
            // 𝒜 ≥ Re x + 1/Re x ≥ 2, with equality only on the real axis.
            let a = 2.0 / (script_a + (script_a * script_a - 4.0).max(0.0).sqrt());
            let c = (1.0 / a - a) / (x - a).norm_sqr();
            Ok(DerivedParams { family: sp.family, x, big_x: 1.0 / x + x, script_a, a, c })
        }
    }
}

/// True iff `derive_params` succeeds.
pub fn admissible(sp: &ShapeParams) -> bool {
    derive_params(sp).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn c2_reference_point() {
        let sp = ShapeParams::from_big_x(FamilyId::C2, Complex64::new(2.0 * 2f64.sqrt(), -1.0)).unwrap();
        let dp = derive_params(&sp).unwrap();
        assert_relative_eq!(dp.script_a, 9.0, max_relative = 1e-12);
        assert_relative_eq!(dp.c, 0.125, max_relative = 1e-12);
        assert_relative_eq!(dp.c_from_unit_points(), dp.c_from_diagonal_locus(), max_relative = 1e-12);
        assert_relative_eq!(dp.a, (9.0 - 77f64.sqrt()) / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn c2_rejects_upper_half_x() {
        // x outside the unit disk gives Im X ≥ 0 territory.
        let sp = ShapeParams::new(FamilyId::C2, Complex64::new(0.5, -0.2));
        assert!(derive_params(&sp).is_err());
        assert!(!admissible(&ShapeParams::new(FamilyId::C2, Complex64::from_polar(1.0, 0.7))));
    }

    #[test]
    fn l2_reference_point() {
        let dp = derive_params(&ShapeParams::new(FamilyId::L2, Complex64::new(1.0, 1.0))).unwrap();
        assert_relative_eq!(dp.script_a, 3.0, max_relative = 1e-14);
        assert_relative_eq!(dp.a, (3.0 - 5f64.sqrt()) / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn l4_unrestricted_and_consistent() {
        for &(r, t) in &[(0.1, 0.1), (0.9, 1.5), (0.5, 0.8), (0.99, 0.05)] {
            let sp = ShapeParams::new(FamilyId::L4, Complex64::from_polar(r, t));
            let dp = derive_params(&sp).unwrap();
            assert_relative_eq!(dp.script_a, 1.0 / dp.a - dp.a, max_relative = 1e-12);
            assert_relative_eq!(dp.c_from_unit_points(), dp.c, max_relative = 1e-10);
            assert!(dp.c > 0.0);
        }
    }

    #[test]
    fn big_x_round_trip() {
        for fam in [FamilyId::C2, FamilyId::L4] {
            let x = Complex64::from_polar(0.4, 0.6);
            let sp = ShapeParams::new(fam, x);
            let back = ShapeParams::from_big_x(fam, sp.big_x()).unwrap();
            assert!((back.x - x).norm() < 1e-14);
        }
    }
}
