//! Gauss-map loci and height-differential lines along the boundary arcs.

use super::report::VerificationReport;
use crate::families::{arcs, g_on_arc, height_differential, DerivedParams, DhLine};

/// For every arc, the largest |sin| of the angle between g and the arc's
/// signed ray and between dh(ż) and its line, over `samples_per_arc`
/// interior points. Ids: `loci.<arc>.g` and `loci.<arc>.dh`, tolerance 1e−8.
pub fn check_boundary_loci(dp: &DerivedParams, samples_per_arc: usize) -> VerificationReport {
    let mut r = VerificationReport::new();
    let n = samples_per_arc.max(1);
    for arc in arcs(dp) {
        let (mut dev_g, mut dev_dh) = (0.0f64, 0.0f64);
        let mut failure = None;
        for j in 0..n {
            let t = arc.t_at((j as f64 + 0.5) / n as f64);
            let z = arc.z(t);
            let sample = g_on_arc(&arc, t, dp).and_then(|g| Ok((g, height_differential(dp, z, g)? * arc.dz_dt(t))));
            match sample {
                Ok((g, dh)) => {
                    // Off the ray: the signed angle, or a full miss if the sign is wrong.
                    let u = g * arc.direction.conj();
                    dev_g = dev_g.max(if u.re > 0.0 { (u.im / u.norm()).abs() } else { 1.0 });
                    let off = match arc.dh_line {
                        DhLine::Real => dh.im,
                        DhLine::Imaginary => dh.re,
                    };
                    dev_dh = dev_dh.max((off / dh.norm()).abs());
                }
                Err(e) => {
                    failure.get_or_insert(format!("t = {t}: {e}"));
                    dev_g = f64::INFINITY;
                }
            }
        }
        let detail = failure.unwrap_or_else(|| format!("{n} samples, g on ray {:.4}", arc.direction));
        r.add(format!("loci.{}.g", arc.label), dev_g, 1e-8, detail);
        r.add(format!("loci.{}.dh", arc.label), dev_dh, 1e-8, format!("dh(ż) {}", if arc.dh_line == DhLine::Real { "real" } else { "imaginary" }));
    }
    r
}
