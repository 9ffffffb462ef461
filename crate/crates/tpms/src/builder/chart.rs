//! A conformal disk chart for the fundamental domain D.
//!
//! D is a double cover of the quarter disk (first quadrant for L2) branched
//! only at A. With s the upper-half-plane image of the quarter disk
//! (C2, L4: s = ((1+z²)/(1−z²))²; L2: s = z²), the map
//! w = √((s − s_A)/(s − s̄_A)) sends D onto the unit disk with A at 0.
//! The half-turn about the normal line at A acts as w ↦ −w.

use crate::families::{dh_modulus, g_candidates, CoverPoint, DerivedParams, FamilyId};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Boundary corners in order around D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    S,
    B,
    L,
    Sp,
    Bp,
    Fp,
}

impl Corner {
    pub const ALL: [Corner; 6] = [Corner::S, Corner::B, Corner::L, Corner::Sp, Corner::Bp, Corner::Fp];

    pub fn name(self) -> &'static str {
        match self {
            Corner::S => "S",
            Corner::B => "B",
            Corner::L => "L",
            Corner::Sp => "S'",
            Corner::Bp => "B'",
            Corner::Fp => "F'",
        }
    }

    /// Image under w ↦ −w.
    pub fn mirror(self) -> Corner {
        match self {
            Corner::S => Corner::Sp,
            Corner::B => Corner::Bp,
            Corner::L => Corner::Fp,
            Corner::Sp => Corner::S,
            Corner::Bp => Corner::B,
            Corner::Fp => Corner::L,
        }
    }

    fn base(self) -> Corner {
        match self {
            Corner::Sp => Corner::S,
            Corner::Bp => Corner::B,
            Corner::Fp => Corner::L,
            c => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chart {
    pub family: FamilyId,
    s_a: Complex64,
    /// w̃ at S, the origin of the boundary angle.
    wt_s: Complex64,
    w_s: Complex64,
}

/// Principal square root taken from the closed upper half plane.
fn sqrt_upper(v: Complex64) -> Complex64 {
    Complex64::new(v.re, v.im.max(0.0)).sqrt()
}

impl Chart {
    pub fn new(dp: &DerivedParams) -> Self {
        let x = dp.x;
        let s_a = match dp.family {
            FamilyId::C2 | FamilyId::L4 => {
                let eta = (1.0 + x * x) / (1.0 - x * x);
                eta * eta
            }
            FamilyId::L2 => x * x,
        };
        let mut ch = Self { family: dp.family, s_a, wt_s: Complex64::new(1.0, 0.0), w_s: Complex64::new(1.0, 0.0) };
        ch.wt_s = ch.w_tilde(ch.corner_s(Corner::S));
        ch.w_s = ch.wt_s.sqrt();
        ch
    }

    /// The real s value of a corner (∞ for L).
    pub fn corner_s(&self, c: Corner) -> f64 {
        match (self.family, c.base()) {
            (FamilyId::L2, Corner::S) => 0.0,
            (FamilyId::L2, Corner::B) => 1.0,
            (_, Corner::S) => 1.0,
            (_, Corner::B) => 0.0,
            _ => f64::INFINITY,
        }
    }

    /// z at a corner (∞ for the L2 corner L).
    pub fn corner_z(&self, c: Corner) -> Complex64 {
        match (self.family, c.base()) {
            (_, Corner::S) => Complex64::new(0.0, 0.0),
            (FamilyId::L2, Corner::B) => Complex64::new(1.0, 0.0),
            (FamilyId::L2, _) => Complex64::new(f64::INFINITY, 0.0),
            (_, Corner::B) => Complex64::new(0.0, 1.0),
            _ => Complex64::new(1.0, 0.0),
        }
    }

    /// Whether z is a branch point of the cover at this corner, making the
    /// Weierstrass data singular there.
    pub fn corner_is_branch(&self, c: Corner) -> bool {
        match (self.family, c.base()) {
            (_, Corner::S) => true,
            (FamilyId::C2, Corner::B) => false,
            (FamilyId::L4, Corner::L) => false,
            _ => true,
        }
    }

    fn w_tilde(&self, s: f64) -> Complex64 {
        if s.is_infinite() {
            return Complex64::new(1.0, 0.0);
        }
        let s = Complex64::new(s, 0.0);
        (s - self.s_a) / (s - self.s_a.conj())
    }

    /// s(z) for z on the boundary of the quarter disk (real there).
    pub fn s_of_z(&self, z: Complex64) -> f64 {
        if !z.is_finite() {
            return f64::INFINITY;
        }
        let s = match self.family {
            FamilyId::C2 | FamilyId::L4 => {
                let eta = (1.0 + z * z) / (1.0 - z * z);
                eta * eta
            }
            FamilyId::L2 => z * z,
        };
        s.re
    }

    /// C2 and L4 run S → B → L with s decreasing (w̃ turns clockwise); L2 with s increasing.
    pub fn clockwise(&self) -> bool {
        self.family != FamilyId::L2
    }

    /// The sheet-1 (unprimed) w of a boundary point with real s, found by
    /// following the boundary from S in the direction SB → BL → LS′.
    pub fn boundary_w(&self, s: f64) -> Complex64 {
        let wt = self.w_tilde(s);
        let mut d = (wt / self.wt_s).arg();
        if self.clockwise() {
            if d > 0.0 {
                d -= TAU;
            }
        } else if d < 0.0 {
            d += TAU;
        }
        self.w_s * Complex64::from_polar(1.0, d / 2.0)
    }

    pub fn corner_w(&self, c: Corner) -> Complex64 {
        let w = match c.base() {
            Corner::S => self.w_s,
            other => self.boundary_w(self.corner_s(other)),
        };
        if c == c.base() {
            w
        } else {
            -w
        }
    }

    /// z(w) and dz/dw at an interior point of the disk.
    pub fn z_of_w(&self, w: Complex64) -> (Complex64, Complex64) {
        let (pt, dz) = self.point(w, None);
        (pt.z, dz)
    }

    /// Power p such that the metric near the corner behaves like |w − w_c|^{1/p − 1}:
    /// 4 where z is branched at the corner, 2 at the regular corner.
    pub fn corner_power(&self, c: Corner) -> i32 {
        if self.corner_is_branch(c) {
            4
        } else {
            2
        }
    }

    /// The cover point at w = w_c + δ (or at `w` itself when no corner is
    /// given) and dz/dw. Near a corner the quantities that vanish there are
    /// computed from δ directly so they keep full relative precision.
    pub fn point(&self, w: Complex64, near: Option<(Corner, Complex64)>) -> (CoverPoint, Complex64) {
        let s_ab = self.s_a.conj();
        let wt = w * w;
        let (s, s_minus_1, one_minus_wt) = match near {
            None => {
                let omw = 1.0 - wt;
                ((self.s_a - wt * s_ab) / omw, (self.s_a - 1.0 - wt * (s_ab - 1.0)) / omw, omw)
            }
            Some((c, d)) => {
                let wc = self.corner_w(c);
                let dwt = d * (2.0 * wc + d);
                let sc = self.corner_s(c);
                if sc.is_infinite() {
                    let omw = -dwt;
                    let s = (self.s_a - wt * s_ab) / omw;
                    (s, s - 1.0, omw)
                } else {
                    let omw = 1.0 - wt;
                    let ds = -(s_ab - sc) * dwt / omw;
                    (sc + ds, (sc - 1.0) + ds, omw)
                }
            }
        };
        let clamp = |v: Complex64| Complex64::new(v.re, v.im.max(0.0));
        let (s, s_minus_1) = (clamp(s), clamp(s_minus_1));
        let ds_dw = (self.s_a - s_ab) / (one_minus_wt * one_minus_wt) * 2.0 * w;
        match self.family {
            FamilyId::C2 | FamilyId::L4 => {
                let eta = s.sqrt();
                let ep1 = eta + 1.0;
                let zeta = s_minus_1 / (ep1 * ep1);
                let z = sqrt_upper(zeta);
                let big_z = if self.family == FamilyId::C2 { -2.0 / (ep1 * z) } else { 2.0 * eta / (ep1 * z) };
                let dz = ds_dw / (2.0 * eta) * 2.0 / (ep1 * ep1) / (2.0 * z);
                (CoverPoint { z, big_z, one_minus_z2: 2.0 / ep1 }, dz)
            }
            FamilyId::L2 => {
                let z = s.sqrt();
                (CoverPoint { z, big_z: z + 1.0 / z, one_minus_z2: -s_minus_1 }, ds_dw / (2.0 * z))
            }
        }
    }

    /// Conformal factor of the induced metric in z: ds = ½|dh|(|g| + 1/|g|).
    pub fn metric_z(dp: &DerivedParams, z: Complex64) -> f64 {
        let g = match g_candidates(dp, z) {
            Ok(c) => c[0].norm(),
            Err(_) => return f64::INFINITY,
        };
        0.5 * dh_modulus(dp, z) * (g + 1.0 / g)
    }

    /// Conformal factor of the induced metric in w.
    pub fn metric_w(&self, dp: &DerivedParams, w: Complex64) -> f64 {
        let (z, dz) = self.z_of_w(w);
        Self::metric_z(dp, z) * dz.norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{arcs, derive_params, ShapeParams};

    fn params() -> Vec<DerivedParams> {
        vec![
            derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.345, -1.0)).unwrap()).unwrap(),
            derive_params(&ShapeParams::from_big_x(FamilyId::L4, Complex64::new(0.6, -1.0)).unwrap()).unwrap(),
            derive_params(&ShapeParams::new(FamilyId::L2, Complex64::new(1.0, 1.0))).unwrap(),
        ]
    }

    #[test]
    fn a_maps_to_origin() {
        for dp in params() {
            let ch = Chart::new(&dp);
            let (z, _) = ch.z_of_w(Complex64::new(1e-9, 1e-9));
            assert!((z - dp.x).norm() < 1e-6, "{} {z}", dp.family);
        }
    }

    #[test]
    fn derivative_matches_difference() {
        for dp in params() {
            let ch = Chart::new(&dp);
            let w = Complex64::new(0.3, -0.4);
            let h = 1e-6;
            let (_, dz) = ch.z_of_w(w);
            let fd = (ch.z_of_w(w + h).0 - ch.z_of_w(w - h).0) / (2.0 * h);
            assert!((dz - fd).norm() < 1e-6 * dz.norm(), "{}", dp.family);
        }
    }

    #[test]
    fn corner_offsets_agree_with_plain_evaluation() {
        for dp in params() {
            let ch = Chart::new(&dp);
            for c in Corner::ALL {
                let wc = ch.corner_w(c);
                let d = -wc * 1e-3 + Complex64::new(0.0, 1e-4) * wc;
                let (near, dz_near) = ch.point(wc + d, Some((c, d)));
                let (plain, dz_plain) = ch.point(wc + d, None);
                let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm().max(1e-300);
                assert!(rel(near.z, plain.z) < 1e-8, "{} {} {} {}", dp.family, c.name(), near.z, plain.z);
                assert!(rel(near.big_z, plain.big_z) < 1e-6, "{} {}", dp.family, c.name());
                assert!(rel(near.one_minus_z2, plain.one_minus_z2) < 1e-6, "{} {}", dp.family, c.name());
                assert!(rel(dz_near, dz_plain) < 1e-6);
            }
        }
    }

    #[test]
    fn interior_lands_in_quadrant() {
        for dp in params() {
            let ch = Chart::new(&dp);
            for k in 0..50 {
                let w = Complex64::from_polar(0.95 * (k as f64 / 50.0), k as f64 * 0.77);
                let (z, _) = ch.z_of_w(w);
                assert!(z.re >= 0.0 && z.im >= 0.0);
                if dp.family != FamilyId::L2 {
                    assert!(z.norm() <= 1.0 + 1e-12);
                }
                // Both lifts of a point cover the same z.
                assert!((ch.z_of_w(-w).0 - z).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn boundary_points_approach_from_inside() {
        for dp in params() {
            let ch = Chart::new(&dp);
            for arc in &arcs(&dp)[..3] {
                for k in 1..10 {
                    let z = arc.point_at(k as f64 / 10.0);
                    let w = ch.boundary_w(ch.s_of_z(z));
                    assert!((w.norm() - 1.0).abs() < 1e-12);
                    let (zi, _) = ch.z_of_w(w * (1.0 - 1e-9));
                    assert!((zi - z).norm() < 1e-3 * z.norm().max(1.0), "{} {} {z} {zi}", dp.family, arc.label);
                }
            }
        }
    }

    #[test]
    fn corners_run_around_one_half() {
        for dp in params() {
            let ch = Chart::new(&dp);
            let ang = |c: Corner| (ch.corner_w(c) / ch.corner_w(Corner::S)).arg();
            // S, B, L and S′ appear in clockwise order, S′ diametrically opposite S.
            let sign = if ch.clockwise() { 1.0 } else { -1.0 };
            let (b, l) = (sign * ang(Corner::B), sign * ang(Corner::L));
            assert!(b < 0.0 && l < b && l > -std::f64::consts::PI, "{} {b} {l}", dp.family);
            assert!((ch.corner_w(Corner::Sp) + ch.corner_w(Corner::S)).norm() < 1e-15);
        }
    }
}
