//! The three families: parameters, Gauss map, height differential.

mod arcs;
mod continuation;
mod forms;
mod gauss;
mod params;

pub use arcs::{arc, arcs, g_on_arc, ArcLabel, BoundaryArc, DhLine, ModulusRule, ZParam};
pub use continuation::{continue_g, ContinuationOptions, Tracker, DEFAULT_CLEARANCE};
pub use forms::{dh_modulus, height_differential, height_differential_at, normal_from_g, weierstrass_forms};
pub use gauss::{branch_points, g_candidates, g_candidates_at, gauss_squares, gauss_squares_at, preimages_of, CoverPoint, GaussSquares};
pub use params::{admissible, c2_modulus_bound, derive_params, DerivedParams, ShapeParams};

use std::fmt;
use std::str::FromStr;

/// Which surface family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    C2,
    L2,
    L4,
}

impl FamilyId {
    pub const ALL: [FamilyId; 3] = [FamilyId::C2, FamilyId::L2, FamilyId::L4];

    /// Genus of the quotient by the translation group.
    pub fn genus(self) -> u32 {
        match self {
            FamilyId::C2 => 9,
            FamilyId::L2 => 5,
            FamilyId::L4 => 9,
        }
    }

    /// Degree of the Gauss map on the quotient (genus − 1).
    pub fn gauss_degree(self) -> usize {
        self.genus() as usize - 1
    }

    pub fn tag(self) -> &'static str {
        match self {
            FamilyId::C2 => "C2",
            FamilyId::L2 => "L2",
            FamilyId::L4 => "L4",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyId {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "C2" => Ok(FamilyId::C2),
            "L2" => Ok(FamilyId::L2),
            "L4" => Ok(FamilyId::L4),
            other => Err(crate::Error::Domain(format!("unknown family '{other}' (expected C2, L2 or L4)"))),
        }
    }
}
