//! Nearest-root continuation of g along paths in z.

use super::gauss::{g_candidates_at, CoverPoint};
use super::{branch_points, g_candidates, DerivedParams};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Default distance (in z) that user paths keep from branch points.
pub const DEFAULT_CLEARANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationOptions {
    pub clearance: f64,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        Self { clearance: DEFAULT_CLEARANCE }
    }
}

/// Incremental continuation with a linear predictor.
///
/// Each step picks the root closest to the extrapolated value and insists
/// that the prediction error is under half the distance to the next-closest
/// root; otherwise the step is rejected so the caller can refine.
#[derive(Debug, Clone)]
pub struct Tracker<'a> {
    dp: &'a DerivedParams,
    last: Complex64,
    prev: Option<(Complex64, Complex64)>,
    /// Parameter the predictor extrapolates in (z itself unless told otherwise).
    last_s: Complex64,
}

impl<'a> Tracker<'a> {
    pub fn new(dp: &'a DerivedParams, z: Complex64, g: Complex64) -> Self {
        Self { dp, last: g, prev: None, last_s: z }
    }

    pub fn g(&self) -> Complex64 {
        self.last
    }

    /// Starts a tracker whose predictor runs in a chart coordinate `s` instead of z.
    pub fn with_param(dp: &'a DerivedParams, s: Complex64, g: Complex64) -> Self {
        Self { dp, last: g, prev: None, last_s: s }
    }

    pub fn step(&mut self, z: Complex64) -> Result<Complex64> {
        self.step_param(z, z)
    }

    /// Steps to the point z whose chart coordinate is `s`; use this when g is
    /// smoother in s than in z (e.g. across a branch point of z).
    pub fn step_param(&mut self, z: Complex64, s: Complex64) -> Result<Complex64> {
        self.step_point(&CoverPoint::new(self.dp.family, z), s)
    }

    /// As [`Tracker::step_param`] with precomputed pole combinations.
    pub fn step_point(&mut self, pt: &CoverPoint, s: Complex64) -> Result<Complex64> {
        let z = pt.z;
        let pred = match self.prev {
            // Extrapolate linearly in s from the last two points.
            Some((ps, pg)) if (self.last_s - ps).norm() > 0.0 => {
                self.last + (self.last - pg) * ((s - self.last_s) / (self.last_s - ps))
            }
            _ => self.last,
        };
        let cands = g_candidates_at(self.dp, pt)?;
        let mut idx = 0;
        for k in 1..4 {
            if (cands[k] - pred).norm() < (cands[idx] - pred).norm() {
                idx = k;
            }
        }
        let g = cands[idx];
        let gap = (0..4).filter(|&k| k != idx).map(|k| (cands[k] - g).norm()).fold(f64::INFINITY, f64::min);
        let miss = (g - pred).norm();
        if !(miss < 0.5 * gap) {
            return Err(Error::Continuation { z, miss, gap });
        }
        self.prev = Some((self.last_s, self.last));
        self.last = g;
        self.last_s = s;
        Ok(g)
    }
}

/// Continues g from `g_start` at `path[0]` along the whole path.
pub fn continue_g(path: &[Complex64], g_start: Complex64, dp: &DerivedParams, opts: ContinuationOptions) -> Result<Vec<Complex64>> {
    let Some(&z0) = path.first() else {
        return Ok(vec![]);
    };
    let bps = branch_points(dp);
    for &z in path {
        if let Some(b) = bps.iter().find(|b| (z - **b).norm() < opts.clearance) {
            return Err(Error::Domain(format!("path point {z} is within clearance {} of branch point {b}", opts.clearance)));
        }
        if z.norm() > 1.0 / opts.clearance {
            return Err(Error::Domain(format!("path point {z} is within clearance of z = ∞")));
        }
    }
    let start = g_candidates(dp, z0)?;
    let nearest = start.iter().map(|c| (c - g_start).norm()).fold(f64::INFINITY, f64::min);
    if nearest > 1e-6 * g_start.norm().max(1.0) {
        return Err(Error::Consistency(format!("g_start = {g_start} is not a Gauss-map value over z = {z0}")));
    }
    let mut tr = Tracker::new(dp, z0, g_start);
    let mut out = Vec::with_capacity(path.len());
    out.push(g_start);
    for &z in &path[1..] {
        out.push(tr.step(z)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{arcs, derive_params, g_on_arc, FamilyId, ShapeParams};

    fn dp() -> DerivedParams {
        derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.345, -1.0)).unwrap()).unwrap()
    }

    #[test]
    fn constant_path() {
        let dp = dp();
        let z = Complex64::new(0.3, 0.3);
        let g0 = g_candidates(&dp, z).unwrap()[0];
        let gs = continue_g(&[z; 5], g0, &dp, Default::default()).unwrap();
        assert!(gs.iter().all(|g| *g == g0));
    }

    #[test]
    fn trivial_loop_returns() {
        let dp = dp();
        let c = Complex64::new(0.7, 0.15);
        let path: Vec<Complex64> = (0..=400).map(|k| c + Complex64::from_polar(0.05, k as f64 * std::f64::consts::TAU / 400.0)).collect();
        let g0 = g_candidates(&dp, path[0]).unwrap()[2];
        let gs = continue_g(&path, g0, &dp, Default::default()).unwrap();
        assert!((gs.last().unwrap() - g0).norm() < 1e-8);
    }

    #[test]
    fn follows_sb() {
        let dp = dp();
        let sb = arcs(&dp)[0];
        let ts: Vec<f64> = (1..200).map(|k| k as f64 / 200.0).collect();
        let path: Vec<Complex64> = ts.iter().map(|&t| sb.z(t)).collect();
        let g0 = g_on_arc(&sb, ts[0], &dp).unwrap();
        let gs = continue_g(&path, g0, &dp, Default::default()).unwrap();
        for (t, g) in ts.iter().zip(&gs) {
            assert!((g - g_on_arc(&sb, *t, &dp).unwrap()).norm() < 1e-6 * g.norm(), "t = {t}");
        }
    }

    #[test]
    fn rejects_big_steps() {
        let dp = dp();
        // Jumping onto a near-collision of two roots must be refused.
        let z0 = dp.x + 0.3;
        let g0 = g_candidates(&dp, z0).unwrap()[0];
        let mut tr = Tracker::new(&dp, z0, g0);
        assert!(matches!(tr.step(dp.x + Complex64::new(1e-9, 0.0)), Err(Error::Continuation { .. })));
        // And a path through the clearance disk is rejected up front.
        assert!(continue_g(&[z0, dp.x + 1e-5], g0, &dp, Default::default()).is_err());
    }
}
