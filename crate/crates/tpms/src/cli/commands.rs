//! The four workflows behind the subcommands.

use super::config::{GridAxis, RunConfig};
use super::export::{export_mesh, MeshFormat};
use super::CliError;
use crate::builder::{
    assemble_fundamental_piece, assemble_with_tolerance, default_clearance, integrate_immersion, sample_domain, tile, FundamentalPiece, Mesh,
    RigidMotion,
};
use crate::error::Error;
use crate::families::{derive_params, DerivedParams, FamilyId, ShapeParams};
use crate::period::{period_integrals, sample_slice, solve_period, PeriodReport, SliceSpec};
use crate::verify::{
    check_boundary_loci, check_degree, check_embeddedness_conditions, check_minimality, check_period_closure, check_symmetries, is_generic_probe,
    VerificationReport,
};
use num_complex::Complex64;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

/// What a command did: a human-readable summary, the files it wrote, and
/// the number of failed checks (nonzero only for `verify`).
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub summary: String,
    pub files: Vec<PathBuf>,
    pub warnings: Vec<String>,
    pub failed_checks: usize,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.failed_checks > 0 {
            1
        } else {
            0
        }
    }
}

/// Files written so far, removed again if the command fails.
struct Outputs {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
        Ok(Self { dir: dir.to_path_buf(), written: Vec::new() })
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(|source| CliError::Io { path: path.clone(), source })?;
        self.written.push(path.clone());
        Ok(path)
    }

    fn mesh(&mut self, name: &str, mesh: &Mesh) -> Result<PathBuf, CliError> {
        let mut buf = Vec::new();
        export_mesh(mesh, MeshFormat::Obj, &mut buf).map_err(|source| CliError::Io { path: self.dir.join(name), source })?;
        self.write(name, &buf)
    }

    fn cleanup(&mut self) {
        for p in self.written.drain(..) {
            let _ = fs::remove_file(p);
        }
    }
}

fn residual_table(samples: &[(f64, f64)]) -> String {
    let mut s = String::from("t,residual\n");
    for (t, r) in samples {
        let _ = writeln!(s, "{t:?},{r:e}");
    }
    s
}

fn shape_of(family: FamilyId, p: Complex64) -> crate::Result<ShapeParams> {
    match family {
        FamilyId::L2 => Ok(ShapeParams::new(family, p)),
        _ => ShapeParams::from_big_x(family, p),
    }
}

/// The configured shape point, or the root of the configured slice.
fn resolve_params(cfg: &RunConfig) -> Result<(DerivedParams, PeriodReport, Option<SliceSpec>), CliError> {
    match (cfg.x_re, cfg.x_im) {
        (Some(re), Some(im)) => {
            let dp = derive_params(&shape_of(cfg.family, Complex64::new(re, im))?)?;
            Ok((dp, period_integrals(&dp)?, None))
        }
        (None, None) => {
            let slice = cfg.slice()?;
            let sol = solve_period(&slice, cfg.solve_tolerance())?;
            Ok((sol.params, sol.report, Some(slice)))
        }
        _ => Err(CliError::Usage("x_re and x_im must be given together".into())),
    }
}

fn describe(dp: &DerivedParams, report: &PeriodReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family = {}", dp.family);
    let _ = writeln!(s, "x = {:?} {:?}", dp.x.re, dp.x.im);
    if dp.family != FamilyId::L2 {
        let _ = writeln!(s, "X = {:?} {:?}", dp.big_x.re, dp.big_x.im);
    }
    let _ = writeln!(s, "script_a = {:?}", dp.script_a);
    let _ = writeln!(s, "a = {:?}", dp.a);
    let _ = writeln!(s, "c = {:?}", dp.c);
    let (n1, n2, combo) = match dp.family {
        FamilyId::C2 => ("I1", "I2", "I1 - I2"),
        FamilyId::L4 => ("I1", "I2", "2 I1 - I2"),
        FamilyId::L2 => ("J1", "J2", "J1 - J2"),
    };
    let _ = writeln!(s, "{n1} = {:?}", report.first);
    let _ = writeln!(s, "{n2} = {:?}", report.second);
    let _ = writeln!(s, "residual = {:e}   # {combo}", report.residual);
    s
}

/// Solves the period on the configured slice; writes `solve.txt` and the
/// sampled residuals. On a bracket failure the residual table is still written.
pub fn cmd_solve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let slice = cfg.slice()?;
    let mut out = Outputs::new(&cfg.output)?;
    match solve_period(&slice, cfg.solve_tolerance()) {
        Ok(sol) => {
            let mut s = describe(&sol.params, &sol.report);
            let _ = writeln!(s, "slice = {} {:?}, free coordinate {:?}", slice.fixed.key(), slice.fixed.value(), sol.t);
            let _ = writeln!(
                s,
                "bracket = [{:?}, {:?}] with sampled residuals {:e}, {:e}   # sign change verified at runtime",
                sol.bracket.lo, sol.bracket.hi, sol.bracket.f_lo, sol.bracket.f_hi
            );
            let files = vec![out.write("solve.txt", s.as_bytes())?, out.write("solve_samples.csv", residual_table(&sol.samples).as_bytes())?];
            Ok(Outcome { summary: s, files, ..Default::default() })
        }
        Err(e) => {
            let samples = match &e {
                Error::NoSignChange { samples } => samples.clone(),
                _ => sample_slice(&slice).unwrap_or_default(),
            };
            out.write("solve_residuals.csv", residual_table(&samples).as_bytes())?;
            Err(e.into())
        }
    }
}

/// The piece, falling back to an open-period assembly with a warning.
fn assemble(mesh: &Mesh, warnings: &mut Vec<String>) -> crate::Result<FundamentalPiece> {
    match assemble_fundamental_piece(mesh) {
        Err(Error::PeriodLeak { gap, norm }) => {
            warnings.push(format!("period does not close: gluing gap {gap:?} (norm {norm:.3e}); writing the open-period piece"));
            assemble_with_tolerance(mesh, None)
        }
        r => r,
    }
}

/// Writes `domain.obj`, `piece.obj`, `tiled.obj` and `lattice.txt`.
pub fn cmd_build(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (dp, report, _) = resolve_params(cfg)?;
    let mut out = Outputs::new(&cfg.output)?;
    let result = build_into(cfg, &dp, &report, &mut out);
    if result.is_err() {
        out.cleanup();
    }
    result
}

fn build_into(cfg: &RunConfig, dp: &DerivedParams, report: &PeriodReport, out: &mut Outputs) -> Result<Outcome, CliError> {
    let mut warnings = Vec::new();
    if report.residual.abs() > cfg.solve_tolerance() {
        warnings.push(format!("period residual {:e} exceeds {:e}: the surface will not close", report.residual, cfg.solve_tolerance()));
    }
    let n = cfg.resolution;
    let mesh = integrate_immersion(&sample_domain(dp, n, default_clearance(n))?, dp)?;
    let piece = assemble(&mesh, &mut warnings)?;
    let block = tile(&piece, cfg.tiles)?;
    let mut files = vec![out.mesh("domain.obj", &mesh)?, out.mesh("piece.obj", &piece.mesh)?, out.mesh("tiled.obj", &block.mesh)?];
    let mut lat = String::new();
    for (k, v) in block.lattice.iter().enumerate() {
        let _ = writeln!(lat, "lattice_{} = {:?} {:?} {:?}", k + 1, v[0], v[1], v[2]);
    }
    let _ = writeln!(lat, "leak = {:?} {:?} {:?}", piece.leak[0], piece.leak[1], piece.leak[2]);
    files.push(out.write("lattice.txt", lat.as_bytes())?);

    let mut s = describe(dp, report);
    let _ = writeln!(s, "domain: {} vertices, {} triangles (N = {n})", mesh.vertices.len(), mesh.triangles.len());
    let _ = writeln!(s, "piece: {} vertices, {} boundary curves, seam gap {:.3e}", piece.mesh.vertices.len(), piece.boundary.len(), piece.seam_gap);
    let _ = writeln!(s, "tiled {:?}: {} vertices, gluing gap {:.3e}", cfg.tiles, block.mesh.vertices.len(), block.gluing_gap);
    s += &lat;
    Ok(Outcome { summary: s, files, warnings, failed_checks: 0 })
}

/// `count` deterministic generic probes on a golden-angle spiral.
pub fn generic_probes(count: usize) -> Vec<Complex64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (1..).map(|k: usize| Complex64::from_polar(0.3 + 3.0 * ((k as f64 * 0.618_033_988_749_895) % 1.0), k as f64 * golden)).filter(|p| is_generic_probe(*p)).take(count).collect()
}

/// Runs every check that applies to the family and writes `report.txt` and
/// `report.csv` (one row per check).
pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (dp, period, _) = resolve_params(cfg)?;
    let mut r = VerificationReport::new();
    r.add("period.residual", period.residual.abs(), cfg.solve_tolerance(), format!("{} residual {:e}", dp.family, period.residual));
    r.merge("", check_boundary_loci(&dp, cfg.loci_samples));
    for (k, p) in generic_probes(cfg.probes).into_iter().enumerate() {
        r.merge(&format!("probe{k}."), check_degree(&dp, p)?);
    }
    if dp.family == FamilyId::C2 {
        r.merge("", check_embeddedness_conditions(&dp)?);
    }
    let n = cfg.resolution;
    let mesh = integrate_immersion(&sample_domain(&dp, n, default_clearance(n))?, &dp)?;
    let d = mesh.diameter();
    r.add("mesh.path_independence", mesh.tree_gap / d, 1e-6, format!("tree gap {:.3e}, diameter {d:.6}", mesh.tree_gap));
    r.merge("", check_period_closure(&mesh));
    r.merge("", check_minimality(&mesh));
    match assemble_fundamental_piece(&mesh) {
        Ok(piece) => {
            // ρ_h first, then the vertical reflections.
            let mut motions = vec![RigidMotion::identity()];
            motions.extend(piece.symmetries.iter().copied());
            r.merge("", check_symmetries(&piece.mesh, &motions));
        }
        Err(e) => r.add("symmetry.assembly", f64::INFINITY, 0.0, format!("fundamental piece not assembled: {e}")),
    }
    apply_overrides(&mut r, cfg);

    let mut out = Outputs::new(&cfg.output)?;
    let text = r.to_string();
    let files = vec![out.write("report.txt", text.as_bytes())?, out.write("report.csv", r.to_csv().as_bytes())?];
    let failed = r.failures().len();
    let summary = format!("{}{} checks, {failed} failed\n", text, r.checks.len());
    Ok(Outcome { summary, files, warnings: Vec::new(), failed_checks: failed })
}

/// `tol.<prefix>` replaces the tolerance of every check id starting with `<prefix>`.
fn apply_overrides(r: &mut VerificationReport, cfg: &RunConfig) {
    for (prefix, &tol) in cfg.tolerances.iter().filter(|(k, _)| k.as_str() != "solve") {
        for (id, c) in r.checks.iter_mut() {
            if id.starts_with(prefix.as_str()) {
                c.tolerance = tol;
                c.passed = c.residual <= tol;
            }
        }
    }
}

/// One row of the sweep table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub re: f64,
    pub im: f64,
    pub first: f64,
    pub second: f64,
    pub residual: f64,
    pub admissible: bool,
}

/// Default grids: X over (0.05, 4) × (−3, 0.5) for C2/L4, x over (0.05, 4) × (0.05, 4) for L2.
fn sweep_axes(cfg: &RunConfig) -> (GridAxis, GridAxis) {
    let re = cfg.sweep_re.unwrap_or(GridAxis { lo: 0.05, hi: 4.0, n: 40 });
    let im = cfg.sweep_im.unwrap_or(match cfg.family {
        FamilyId::L2 => GridAxis { lo: 0.05, hi: 4.0, n: 40 },
        _ => GridAxis { lo: -3.0, hi: 0.5, n: 36 },
    });
    (re, im)
}

/// Rows in grid order: Im outer, Re inner. Inadmissible points get NaN integrals.
pub fn sweep_rows(cfg: &RunConfig) -> Vec<SweepRow> {
    let (re_axis, im_axis) = sweep_axes(cfg);
    let mut rows = Vec::new();
    for im in im_axis.values() {
        for re in re_axis.values() {
            let report = shape_of(cfg.family, Complex64::new(re, im)).and_then(|sp| derive_params(&sp)).and_then(|dp| period_integrals(&dp));
            rows.push(match report {
                Ok(p) => SweepRow { re, im, first: p.first, second: p.second, residual: p.residual, admissible: true },
                Err(_) => SweepRow { re, im, first: f64::NAN, second: f64::NAN, residual: f64::NAN, admissible: false },
            });
        }
    }
    rows
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("re,im,first,second,residual,admissible\n");
    for r in rows {
        let _ = writeln!(s, "{:?},{:?},{:e},{:e},{:e},{}", r.re, r.im, r.first, r.second, r.residual, r.admissible);
    }
    s
}

/// Writes `sweep.csv`; columns are Re, Im of X (x for L2), the two period
/// integrals, the residual and the admissibility flag.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (re, im) = sweep_axes(cfg);
    if re.n == 0 || im.n == 0 {
        return Err(CliError::Usage("sweep axes need at least one point each".into()));
    }
    let rows = sweep_rows(cfg);
    let mut out = Outputs::new(&cfg.output)?;
    let files = vec![out.write("sweep.csv", sweep_csv(&rows).as_bytes())?];
    let admissible = rows.iter().filter(|r| r.admissible).count();
    let changes = rows.windows(2).filter(|w| w[0].im == w[1].im && w[0].residual * w[1].residual < 0.0).count();
    let summary = format!("{} grid points, {admissible} admissible, {changes} sign changes along Re\n", rows.len());
    Ok(Outcome { summary, files, ..Default::default() })
}
