//! Geometry from the Weierstrass data: domain sampling, the immersion,
//! symmetry copies and tiling.

mod chart;
mod domain;
mod hexmap;
mod immersion;
mod mesh;
mod symmetry;

pub use chart::{Chart, Corner};
pub use domain::{default_clearance, sample_domain, DomainGrid, DomainNode, NodeKind};
pub use immersion::{anchor_node, integrate_immersion};
pub use mesh::{Chain, Mesh, SurfaceSample, Vec3};
pub(crate) use mesh::{cross, dot, norm, sub};
pub use symmetry::{
    apply_rho_h, assemble_fundamental_piece, assemble_with_tolerance, fit_horizontal_line, fit_vertical_plane, gluing_tolerance, rho_h_motion, tile,
    place_mesh, transform_mesh, BoundaryObject, FundamentalPiece, Mat3, MotionKind, Placement, RigidMotion, TiledBlock,
};
