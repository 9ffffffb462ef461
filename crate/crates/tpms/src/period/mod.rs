//! Period integrals, slice root finding, and the closed-form/limit oracles.

mod boundary;
mod integrals;
mod limits;
mod solve;

pub use boundary::{arc_integral, boundary_periods, closure_weight, BoundaryPeriods};
pub use integrals::{j2_direct, period_integrals, period_integrals_c2, period_integrals_l2, period_integrals_l4, PeriodReport};
pub use limits::{bound_checks_prop2, limit_integrals_c2, tilde_a, tilde_closed_forms, tilde_integrals, LimitKind, TildeIntegrals};
pub use solve::{default_slice, residual_on_slice, sample_slice, solve_period, trace_root_curve, FixedComponent, SliceSpec, Solution, EPS_INSET};
