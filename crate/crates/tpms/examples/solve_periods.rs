//! Samples each family's default slice and solves for the closing parameter.

use tpms::families::FamilyId;
use tpms::period::{default_slice, sample_slice, solve_period, trace_root_curve};

fn main() -> tpms::Result<()> {
    for family in FamilyId::ALL {
        let slice = default_slice(family);
        let samples = sample_slice(&slice)?;
        let changes = samples.windows(2).filter(|w| w[0].1 * w[1].1 < 0.0).count();
        print!("{family} on {} = {}: {} samples, {changes} sign changes; ", slice.fixed.key(), slice.fixed.value(), samples.len());
        match solve_period(&slice, 1e-12) {
            Ok(s) => println!("root {:.12}, X = {:.10}, residual {:.1e}", s.t, s.params.big_x, s.report.residual),
            Err(e) => println!("{e}"),
        }
    }
    // A stretch of the C2 curve of closing parameters.
    let start = solve_period(&default_slice(FamilyId::C2), 1e-12)?;
    for s in trace_root_curve(FamilyId::C2, &start, &[-1.25, -1.5, -2.0, -3.0], 1e-10)? {
        println!("C2 root at Im X = {:5.2}: Re X = {:.10}, −Re X/Im X = {:.4}", s.params.big_x.im, s.params.big_x.re, -s.params.big_x.re / s.params.big_x.im);
    }
    Ok(())
}
