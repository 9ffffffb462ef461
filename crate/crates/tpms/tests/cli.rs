use num_complex::Complex64;
use proptest::prelude::*;
use std::fs;
use std::path::PathBuf;
use std::process::Command;
use tpms::builder::{Mesh, SurfaceSample};
use tpms::cli::*;
use tpms::families::{derive_params, FamilyId, ShapeParams};

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("tpms-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    d
}

fn config(text: &str, out: &PathBuf) -> RunConfig {
    let mut c = RunConfig::parse(text).unwrap();
    c.output = out.clone();
    c
}

fn tpms(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_tpms")).args(args).output().unwrap();
    (o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stdout).into_owned(), String::from_utf8_lossy(&o.stderr).into_owned())
}

fn value(summary: &str, key: &str) -> Vec<f64> {
    let line = summary.lines().find(|l| l.starts_with(&format!("{key} = "))).unwrap();
    line.split('=').nth(1).unwrap().split('#').next().unwrap().split_whitespace().map(|s| s.parse().unwrap()).collect()
}

#[test]
fn solve_c2_default_slice() {
    let out = scratch("solve-c2");
    let o = cmd_solve(&config("family = C2", &out)).unwrap();
    let x = value(&o.summary, "X");
    assert!(x[0] > 1.0 && x[0] < 2.0 * 2f64.sqrt(), "{x:?}");
    assert!(value(&o.summary, "residual")[0].abs() < 1e-8);
    assert!(out.join("solve.txt").exists() && out.join("solve_samples.csv").exists());
}

#[test]
fn solve_l4_default_slice() {
    let out = scratch("solve-l4");
    let o = cmd_solve(&config("family = L4", &out)).unwrap();
    assert!(value(&o.summary, "residual")[0].abs() < 1e-8);
    assert!(o.summary.contains("sign change verified at runtime"));
}

#[test]
fn bracket_failure_writes_the_residual_table() {
    let out = scratch("solve-l2");
    let e = cmd_solve(&config("family = L2", &out)).unwrap_err();
    assert_eq!(e.exit_code(), 3);
    let table = fs::read_to_string(out.join("solve_residuals.csv")).unwrap();
    assert_eq!(table.lines().count(), 1 + 64);
}

#[test]
fn build_solved_c2_with_two_vertical_repeats() {
    let out = scratch("build");
    let o = cmd_build(&config("family = C2\nresolution = 16\ntiles = 1 1 2", &out)).unwrap();
    assert!(o.warnings.is_empty(), "{:?}", o.warnings);
    assert!(o.summary.contains("4 boundary curves"), "{}", o.summary);
    let (pv, pf) = parse_obj(&fs::read_to_string(out.join("piece.obj")).unwrap()).unwrap();
    let (tv, tf) = parse_obj(&fs::read_to_string(out.join("tiled.obj")).unwrap()).unwrap();
    assert_eq!(tf.len(), 2 * pf.len());
    // The two copies share the seam along the horizontal boundary.
    assert!(tv.len() < 2 * pv.len() && tv.len() > 2 * pv.len() - pv.len() / 4);
    assert!(tf.iter().flatten().all(|&i| i < tv.len()));
    let zs: Vec<f64> = tv.iter().map(|p| p[2]).collect();
    let height = zs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - zs.iter().cloned().fold(f64::INFINITY, f64::min);
    let lattice = fs::read_to_string(out.join("lattice.txt")).unwrap();
    let up = value(&lattice, "lattice_3");
    assert!(height > 1.5 * up[2], "{height} vs {up:?}");
}

#[test]
fn build_unsolved_params_warns_and_writes_open_piece() {
    let out = scratch("build-open");
    let o = cmd_build(&config("family = C2\nx_re = 2.5\nx_im = -1\nresolution = 12", &out)).unwrap();
    assert!(o.warnings.iter().any(|w| w.contains("period residual")), "{:?}", o.warnings);
    assert!(o.warnings.iter().any(|w| w.contains("does not close")), "{:?}", o.warnings);
    assert!(out.join("piece.obj").exists());
}

#[test]
fn build_failure_leaves_no_files() {
    let out = scratch("build-fail");
    let e = cmd_build(&config("family = C2\nresolution = 12\ntiles = 0 1 1", &out)).unwrap_err();
    assert_eq!(e.exit_code(), 3);
    assert_eq!(fs::read_dir(&out).unwrap().count(), 0);
}

#[test]
fn verify_solved_and_perturbed() {
    let out = scratch("verify");
    let o = cmd_verify(&config("family = C2\nresolution = 16", &out)).unwrap();
    assert_eq!(o.failed_checks, 0, "{}", o.summary);
    assert_eq!(o.exit_code(), 0);
    let csv = fs::read_to_string(out.join("report.csv")).unwrap();
    let checks = o.summary.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count();
    assert_eq!(csv.lines().count() - 1, checks);

    let o = cmd_verify(&config("family = C2\nx_re = 1.6\nx_im = -1\nresolution = 16", &out)).unwrap();
    assert_eq!(o.exit_code(), 1);
    assert!(o.summary.contains("FAIL period.closure"));
    assert!(!o.summary.contains("FAIL loci."));
}

#[test]
fn tolerance_overrides_apply_by_prefix() {
    let out = scratch("verify-tol");
    let o = cmd_verify(&config("family = C2\nx_re = 1.6\nx_im = -1\nresolution = 12\nprobes = 1\ntol.period = 10", &out)).unwrap();
    // Only the open-period assembly is left; its residual is infinite.
    assert_eq!(o.failed_checks, 1, "{}", o.summary);
    assert!(o.summary.contains("FAIL symmetry.assembly"));
    assert!(o.summary.contains("PASS period.closure: residual") && o.summary.contains("(tolerance 1.000e1)"));
}

#[test]
fn sweep_rows_flags_and_signs() {
    let c = config("family = C2\nsweep_re = 0.5 2.8284271247461903 3\nsweep_im = -1.5 0.5 3", &scratch("sweep"));
    let rows = sweep_rows(&c);
    assert_eq!(rows.len(), 9);
    // Grid order: Im outer, Re inner.
    assert!(rows.windows(2).all(|w| w[0].im < w[1].im || (w[0].im == w[1].im && w[0].re < w[1].re)));
    let at = |re: f64, im: f64| rows.iter().find(|r| (r.re - re).abs() < 1e-12 && r.im == im).unwrap();
    assert!(at(2.0 * 2f64.sqrt(), -0.5).admissible);
    assert!(rows.iter().filter(|r| r.im >= 0.0).all(|r| !r.admissible));
    // 𝒜 = |X|²/(−Im X) = 2.5/1.5 < 2 violates the modulus bound.
    assert!(!at(0.5, -1.5).admissible);
    assert_eq!(sweep_csv(&rows), sweep_csv(&sweep_rows(&c)));

    let one = config("family = C2\nsweep_re = 2.8284271247461903 2.8284271247461903 1\nsweep_im = -1 -1 1", &scratch("sweep1"));
    let r = sweep_rows(&one);
    assert!(r[0].admissible && r[0].residual > 0.0);
}

#[test]
fn sweep_writes_the_table() {
    let out = scratch("sweep-file");
    cmd_sweep(&config("family = L4\nsweep_re = 0.2 1.2 6\nsweep_im = -1 -1 1", &out)).unwrap();
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "re,im,first,second,residual,admissible");
    assert_eq!(csv.lines().count(), 7);
}

fn tiny_mesh() -> Mesh {
    let dp = derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(2.0, -1.0)).unwrap()).unwrap();
    let s = |p: [f64; 3]| SurfaceSample { w: Complex64::new(0.0, 0.0), z: Complex64::new(0.0, 0.0), g: Complex64::new(0.0, 0.0), position: p, normal: [0.0, 0.0, 1.0] };
    Mesh {
        family: FamilyId::C2,
        params: dp,
        resolution: 1,
        vertices: vec![s([0.0, 0.0, 0.0]), s([1.0 / 3.0, 0.0, 0.0]), s([0.0, 1.0, -2.5e-7])],
        triangles: vec![[0, 1, 2]],
        arcs: Vec::new(),
        tree_gap: 0.0,
    }
}

#[test]
fn obj_of_one_triangle() {
    let mut buf = Vec::new();
    export_mesh(&tiny_mesh(), MeshFormat::Obj, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert_eq!(text.lines().last().unwrap(), "f 1 2 3");
    let second: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(second[0], "v");
    assert!(second[1].trim_start_matches("0.").len() >= 9, "{}", second[1]);
    let (v, f) = parse_obj(&text).unwrap();
    assert_eq!(v.len(), 3);
    assert_eq!(f, vec![[0, 1, 2]]);
    assert_eq!(v[1][0], 1.0 / 3.0);
}

#[test]
fn binary_exit_codes() {
    let out = scratch("bin");
    let o = out.to_str().unwrap();
    let (code, stdout, _) = tpms(&["solve", "--family", "C2", "--output", o]);
    assert_eq!(code, 0, "{stdout}");

    let bad = out.join("bad.cfg");
    fs::create_dir_all(&out).unwrap();
    fs::write(&bad, "family = C2\nresolution = sixteen\n").unwrap();
    let (code, _, stderr) = tpms(&["verify", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2"), "{stderr}");

    let (code, _, _) = tpms(&["solve", "--family", "L2", "--output", o]);
    assert_eq!(code, 3);

    let (code, stdout, _) = tpms(&["verify", "--x_re", "1.6", "--x_im", "-1", "--resolution", "12", "--probes", "2", "--output", o]);
    assert_eq!(code, 1, "{stdout}");

    let (code, _, _) = tpms(&["build", "--frobnicate", "1"]);
    assert_eq!(code, 2);
}

fn family() -> impl Strategy<Value = FamilyId> {
    prop_oneof![Just(FamilyId::C2), Just(FamilyId::L2), Just(FamilyId::L4)]
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e3f64..1e3, any::<f64>().prop_filter("finite", |v| v.is_finite())]
}

prop_compose! {
    fn run_config()(
        family in family(),
        x in proptest::option::of((finite(), finite())),
        slice in proptest::option::of((prop_oneof![Just("im_X"), Just("re_X"), Just("im_x"), Just("re_x")], finite(), finite(), finite(), 2usize..200)),
        resolution in 1usize..512,
        tiles in [1usize..5, 1usize..5, 1usize..5],
        probes in 0usize..50,
        loci in 1usize..1000,
        sweep in proptest::option::of((finite(), finite(), 0usize..100)),
        tols in proptest::collection::btree_map("[a-z][a-z._]{0,12}", 0.0f64..1.0, 0..4),
        output in "[a-zA-Z0-9_/.-]{1,20}",
    ) -> RunConfig {
        let mut c = RunConfig { family, resolution, tiles, probes, loci_samples: loci, tolerances: tols, output: output.into(), ..RunConfig::default() };
        if let Some((re, im)) = x { c.x_re = Some(re); c.x_im = Some(im); }
        if let Some((k, v, lo, hi, n)) = slice {
            c.slice_fixed = Some(k); c.slice_value = Some(v); c.slice_lo = Some(lo); c.slice_hi = Some(hi); c.slice_samples = Some(n);
        }
        c.sweep_re = sweep.map(|(lo, hi, n)| GridAxis { lo, hi, n });
        c
    }
}

proptest! {
    #[test]
    fn config_round_trip_is_lossless(c in run_config()) {
        let text = c.to_string();
        prop_assert_eq!(RunConfig::parse(&text).unwrap(), c);
    }

    #[test]
    fn unknown_keys_are_rejected(key in "[a-z]{3,10}", line in 0usize..4) {
        prop_assume!(!KEYS.contains(&key.as_str()));
        let mut lines: Vec<String> = ["family = C2", "resolution = 8", "probes = 3", "output = o"].map(String::from).to_vec();
        lines.insert(line, format!("{key} = 1"));
        match RunConfig::parse(&lines[..].join("\n")) {
            Err(CliError::Parse { line: l, .. }) => prop_assert_eq!(l, line + 1),
            other => prop_assert!(false, "{:?}", other),
        }
    }
}
