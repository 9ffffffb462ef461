//! Boundary arcs of the fundamental domain and the Gauss-map branch on each.
//!
//! The domain D is the lift of the quarter disk (first quadrant for L2)
//! on which g(A) = −i. Its boundary consists of the three arcs SB, BL, LS′
//! on one sheet and their images S′B′, B′F′, F′S under (g, z) ↦ (−1/g, z).

use super::{g_candidates, DerivedParams, FamilyId};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcLabel {
    SB,
    BL,
    LSp,
    SpBp,
    BpFp,
    FpS,
}

impl ArcLabel {
    pub const ALL: [ArcLabel; 6] = [ArcLabel::SB, ArcLabel::BL, ArcLabel::LSp, ArcLabel::SpBp, ArcLabel::BpFp, ArcLabel::FpS];

    pub fn name(self) -> &'static str {
        match self {
            ArcLabel::SB => "SB",
            ArcLabel::BL => "BL",
            ArcLabel::LSp => "LS'",
            ArcLabel::SpBp => "S'B'",
            ArcLabel::BpFp => "B'F'",
            ArcLabel::FpS => "F'S",
        }
    }

    /// The same arc on the other sheet.
    pub fn mirror(self) -> ArcLabel {
        match self {
            ArcLabel::SB => ArcLabel::SpBp,
            ArcLabel::BL => ArcLabel::BpFp,
            ArcLabel::LSp => ArcLabel::FpS,
            ArcLabel::SpBp => ArcLabel::SB,
            ArcLabel::BpFp => ArcLabel::BL,
            ArcLabel::FpS => ArcLabel::LSp,
        }
    }

    pub fn primed(self) -> bool {
        matches!(self, ArcLabel::SpBp | ArcLabel::BpFp | ArcLabel::FpS)
    }
}

impl fmt::Display for ArcLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the arc is parameterised in z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZParam {
    /// z = t
    Real,
    /// z = i t
    Imaginary,
    /// z = e^{it}
    UnitCircle,
}

impl ZParam {
    pub fn z(self, t: f64) -> Complex64 {
        match self {
            ZParam::Real => Complex64::new(t, 0.0),
            ZParam::Imaginary => Complex64::new(0.0, t),
            ZParam::UnitCircle => Complex64::from_polar(1.0, t),
        }
    }

    pub fn dz_dt(self, t: f64) -> Complex64 {
        match self {
            ZParam::Real => Complex64::new(1.0, 0.0),
            ZParam::Imaginary => Complex64::new(0.0, 1.0),
            ZParam::UnitCircle => Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, t),
        }
    }
}

/// Which line dh(ż) lies on along the arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DhLine {
    Real,
    Imaginary,
}

/// Selects between g and 1/g when both lie on the locus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModulusRule {
    /// Only one candidate lies on the signed ray; nothing to decide.
    Free,
    Above,
    Below,
    /// |g| ≥ 1 exactly when t ≥ the threshold.
    AboveFrom(f64),
    /// |g| ≥ 1 exactly when t ≤ the threshold.
    AboveUntil(f64),
}

impl ModulusRule {
    fn flip(self) -> Self {
        match self {
            ModulusRule::Free => ModulusRule::Free,
            ModulusRule::Above => ModulusRule::Below,
            ModulusRule::Below => ModulusRule::Above,
            ModulusRule::AboveFrom(t) => ModulusRule::AboveUntil(t),
            ModulusRule::AboveUntil(t) => ModulusRule::AboveFrom(t),
        }
    }

    fn wants_above(self, t: f64) -> Option<bool> {
        match self {
            ModulusRule::Free => None,
            ModulusRule::Above => Some(true),
            ModulusRule::Below => Some(false),
            ModulusRule::AboveFrom(t0) => Some(t >= t0),
            ModulusRule::AboveUntil(t0) => Some(t <= t0),
        }
    }
}

/// One of the six boundary arcs of D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryArc {
    pub label: ArcLabel,
    pub z_param: ZParam,
    /// Parameter at the first-named corner.
    pub t_start: f64,
    /// Parameter at the second-named corner (may be +∞ for L2).
    pub t_end: f64,
    /// g = r·direction with r > 0 along the arc.
    pub direction: Complex64,
    pub modulus: ModulusRule,
    pub dh_line: DhLine,
}

impl BoundaryArc {
    pub fn z(&self, t: f64) -> Complex64 {
        self.z_param.z(t)
    }

    pub fn dz_dt(&self, t: f64) -> Complex64 {
        self.z_param.dz_dt(t)
    }

    /// Parameter at fraction s ∈ [0, 1] from the first corner; infinite ends are
    /// reached through a reciprocal map.
    pub fn t_at(&self, s: f64) -> f64 {
        match (self.t_start.is_finite(), self.t_end.is_finite()) {
            (true, true) => self.t_start + s * (self.t_end - self.t_start),
            // [t0, ∞): t = t0/(1 − s)
            (true, false) => self.t_start / (1.0 - s),
            // (∞, 0]: t = (1 − s)/s
            (false, true) => (1.0 - s) / s + self.t_end,
            (false, false) => f64::NAN,
        }
    }

    pub fn point_at(&self, s: f64) -> Complex64 {
        self.z(self.t_at(s))
    }

    /// dt/ds for [`BoundaryArc::t_at`].
    pub fn dt_ds(&self, s: f64) -> f64 {
        match (self.t_start.is_finite(), self.t_end.is_finite()) {
            (true, true) => self.t_end - self.t_start,
            (true, false) => self.t_start / ((1.0 - s) * (1.0 - s)),
            (false, true) => -1.0 / (s * s),
            (false, false) => f64::NAN,
        }
    }

    fn primed(&self) -> Self {
        Self {
            label: self.label.mirror(),
            direction: -self.direction.conj(),
            modulus: self.modulus.flip(),
            ..*self
        }
    }
}

/// The six arcs of D for the given parameters, in boundary order
/// SB, BL, LS′, S′B′, B′F′, F′S.
pub fn arcs(dp: &DerivedParams) -> [BoundaryArc; 6] {
    let one = Complex64::new(1.0, 0.0);
    let diag = -Complex64::from_polar(1.0, FRAC_PI_4);
    let a = dp.a;
    let [sb, bl, ls] = match dp.family {
        FamilyId::C2 => [
            BoundaryArc { label: ArcLabel::SB, z_param: ZParam::Imaginary, t_start: 0.0, t_end: 1.0, direction: one, modulus: ModulusRule::AboveFrom(a), dh_line: DhLine::Imaginary },
            BoundaryArc { label: ArcLabel::BL, z_param: ZParam::UnitCircle, t_start: FRAC_PI_2, t_end: 0.0, direction: one, modulus: ModulusRule::Above, dh_line: DhLine::Real },
            BoundaryArc { label: ArcLabel::LSp, z_param: ZParam::Real, t_start: 1.0, t_end: 0.0, direction: diag, modulus: ModulusRule::Free, dh_line: DhLine::Real },
        ],
        FamilyId::L4 => [
            BoundaryArc { label: ArcLabel::SB, z_param: ZParam::Imaginary, t_start: 0.0, t_end: 1.0, direction: one, modulus: ModulusRule::AboveFrom(a), dh_line: DhLine::Imaginary },
            BoundaryArc { label: ArcLabel::BL, z_param: ZParam::UnitCircle, t_start: FRAC_PI_2, t_end: 0.0, direction: diag, modulus: ModulusRule::Free, dh_line: DhLine::Imaginary },
            BoundaryArc { label: ArcLabel::LSp, z_param: ZParam::Real, t_start: 1.0, t_end: 0.0, direction: diag, modulus: ModulusRule::Free, dh_line: DhLine::Real },
        ],
        FamilyId::L2 => [
            BoundaryArc { label: ArcLabel::SB, z_param: ZParam::Real, t_start: 0.0, t_end: 1.0, direction: one, modulus: ModulusRule::AboveUntil(a), dh_line: DhLine::Imaginary },
            BoundaryArc { label: ArcLabel::BL, z_param: ZParam::Real, t_start: 1.0, t_end: f64::INFINITY, direction: Complex64::new(0.0, -1.0), modulus: ModulusRule::Below, dh_line: DhLine::Imaginary },
            BoundaryArc { label: ArcLabel::LSp, z_param: ZParam::Imaginary, t_start: f64::INFINITY, t_end: 0.0, direction: diag, modulus: ModulusRule::Free, dh_line: DhLine::Real },
        ],
    };
    [sb, bl, ls, sb.primed(), bl.primed(), ls.primed()]
}

pub fn arc(dp: &DerivedParams, label: ArcLabel) -> BoundaryArc {
    arcs(dp).into_iter().find(|a| a.label == label).expect("every label has an arc")
}

/// The value of g on D's lift of the arc point with parameter t.
pub fn g_on_arc(arc: &BoundaryArc, t: f64, dp: &DerivedParams) -> Result<Complex64> {
    let z = arc.z(t);
    let cands = g_candidates(dp, z)?;
    let on_ray: Vec<Complex64> = cands
        .iter()
        .copied()
        .filter(|g| {
            let w = g * arc.direction.conj();
            w.re > 0.0 && w.im.abs() <= 1e-6 * w.re
        })
        .collect();
    let chosen: Vec<Complex64> = match arc.modulus.wants_above(t) {
        None => on_ray.clone(),
        Some(above) => on_ray.iter().copied().filter(|g| (g.norm() >= 1.0) == above).collect(),
    };
    match chosen.as_slice() {
        [g] => Ok(*g),
        [g, h, ..] if (g - h).norm() <= 1e-9 * g.norm() => Ok(*g),
        [g, h, ..] => Err(Error::Ambiguous { arc: arc.label.name(), first: *g, second: *h }),
        [] => {
            // At the crossing |g| = 1 the rule may exclude both by rounding.
            match on_ray.as_slice() {
                [g, ..] if (g.norm() - 1.0).abs() < 1e-7 => Ok(*g),
                _ => Err(Error::Consistency(format!("no Gauss-map value on {} at t = {t}", arc.label))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{derive_params, ShapeParams};

    #[test]
    fn c2_arc_loci() {
        let sp = ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.345, -1.0)).unwrap();
        let dp = derive_params(&sp).unwrap();
        for arc in arcs(&dp) {
            for k in 1..20 {
                let t = arc.t_at(k as f64 / 20.0);
                let g = g_on_arc(&arc, t, &dp).unwrap();
                let w = g * arc.direction.conj();
                assert!(w.re > 0.0 && w.im.abs() < 1e-9 * w.re, "{} {t} {g}", arc.label);
            }
        }
    }

    #[test]
    fn sb_crosses_one_at_ia() {
        let sp = ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.345, -1.0)).unwrap();
        let dp = derive_params(&sp).unwrap();
        let sb = arc(&dp, ArcLabel::SB);
        assert!(g_on_arc(&sb, 0.9 * dp.a, &dp).unwrap().norm() < 1.0);
        assert!(g_on_arc(&sb, 1.1 * dp.a, &dp).unwrap().norm() > 1.0);
        assert!((g_on_arc(&sb, dp.a, &dp).unwrap() - 1.0).norm() < 1e-6);
    }
}
