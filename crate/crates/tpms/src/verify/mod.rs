//! Independent numerical checks of the constructed surfaces.

mod closure;
mod degree;
mod embedded;
mod hausdorff;
mod loci;
mod minimality;
mod report;

pub use closure::{check_period_closure, CLOSURE_TOL};
pub use degree::{check_degree, is_generic_probe, GENERIC_MARGIN};
pub use embedded::{check_embeddedness_conditions, ls_height_form, positive_roots_eq27};
pub use hausdorff::{check_symmetries, point_triangle_distance, TriangleIndex, SYMMETRY_TOL};
pub use loci::check_boundary_loci;
pub use minimality::{check_minimality, mean_curvature, MeanCurvature, MINIMALITY_SCALE};
pub use report::{CheckResult, VerificationReport};
