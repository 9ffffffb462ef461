//! `key = value` run configuration.

use super::CliError;
use crate::families::FamilyId;
use crate::period::{default_slice, FixedComponent, SliceSpec};
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

/// Every accepted key, in file order. `tol.<name>` keys are accepted on top.
pub const KEYS: [&str; 15] = [
    "family",
    "x_re",
    "x_im",
    "slice_fixed",
    "slice_value",
    "slice_lo",
    "slice_hi",
    "slice_samples",
    "resolution",
    "tiles",
    "probes",
    "loci_samples",
    "sweep_re",
    "sweep_im",
    "output",
];

/// Tolerance of the slice solver when `tol.solve` is absent.
pub const DEFAULT_SOLVE_TOL: f64 = 1e-10;

/// `lo hi n`: n equally spaced values from lo to hi inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl GridAxis {
    pub fn values(&self) -> Vec<f64> {
        match self.n {
            0 => Vec::new(),
            1 => vec![self.lo],
            n => (0..n).map(|k| if k == n - 1 { self.hi } else { self.lo + (self.hi - self.lo) * k as f64 / (n - 1) as f64 }).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub family: FamilyId,
    /// The shape point: X for C2 and L4, x for L2. Both absent means "solve first".
    pub x_re: Option<f64>,
    pub x_im: Option<f64>,
    /// Overrides of the family's default slice.
    pub slice_fixed: Option<&'static str>,
    pub slice_value: Option<f64>,
    pub slice_lo: Option<f64>,
    pub slice_hi: Option<f64>,
    pub slice_samples: Option<usize>,
    pub resolution: usize,
    pub tiles: [usize; 3],
    pub probes: usize,
    pub loci_samples: usize,
    pub sweep_re: Option<GridAxis>,
    pub sweep_im: Option<GridAxis>,
    /// `tol.solve` is the solver tolerance; any other `tol.<prefix>` replaces
    /// the tolerance of the verification checks whose id starts with `<prefix>`.
    pub tolerances: BTreeMap<String, f64>,
    pub output: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            family: FamilyId::C2,
            x_re: None,
            x_im: None,
            slice_fixed: None,
            slice_value: None,
            slice_lo: None,
            slice_hi: None,
            slice_samples: None,
            resolution: 32,
            tiles: [1, 1, 1],
            probes: 10,
            loci_samples: 100,
            sweep_re: None,
            sweep_im: None,
            tolerances: BTreeMap::new(),
            output: PathBuf::from("out"),
        }
    }
}

fn real(v: &str) -> Result<f64, String> {
    let x: f64 = v.parse().map_err(|_| format!("'{v}' is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("'{v}' is not finite"))
    }
}

fn count(v: &str) -> Result<usize, String> {
    v.parse().map_err(|_| format!("'{v}' is not a non-negative integer"))
}

fn fixed_key(v: &str) -> Result<&'static str, String> {
    ["im_X", "re_X", "im_x", "re_x"].into_iter().find(|k| *k == v).ok_or_else(|| format!("slice_fixed must be one of im_X, re_X, im_x, re_x, got '{v}'"))
}

fn fields(v: &str) -> Vec<&str> {
    v.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect()
}

impl RunConfig {
    /// Parses a whole file. Errors name the offending line (1-based).
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        let mut seen = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| CliError::Parse { line: i + 1, message };
            let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected 'key = value', got '{line}'")))?;
            let key = key.trim();
            if seen.iter().any(|k| k == key) {
                return Err(err(format!("duplicate key '{key}'")));
            }
            cfg.set(key, value.trim()).map_err(err)?;
            seen.push(key.to_string());
        }
        Ok(cfg)
    }

    /// Sets one key; shared by the file parser and the command-line flags.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "family" => self.family = value.parse().map_err(|e: crate::Error| e.to_string())?,
            "x_re" => self.x_re = Some(real(value)?),
            "x_im" => self.x_im = Some(real(value)?),
            "slice_fixed" => self.slice_fixed = Some(fixed_key(value)?),
            "slice_value" => self.slice_value = Some(real(value)?),
            "slice_lo" => self.slice_lo = Some(real(value)?),
            "slice_hi" => self.slice_hi = Some(real(value)?),
            "slice_samples" => self.slice_samples = Some(count(value)?),
            "resolution" => self.resolution = count(value)?,
            "tiles" => {
                let f = fields(value);
                if f.len() != 3 {
                    return Err(format!("tiles needs three integers, got '{value}'"));
                }
                for (t, s) in self.tiles.iter_mut().zip(f) {
                    *t = count(s)?;
                }
            }
            "probes" => self.probes = count(value)?,
            "loci_samples" => self.loci_samples = count(value)?,
            "sweep_re" | "sweep_im" => {
                let f = fields(value);
                if f.len() != 3 {
                    return Err(format!("{key} needs 'lo hi n', got '{value}'"));
                }
                let axis = GridAxis { lo: real(f[0])?, hi: real(f[1])?, n: count(f[2])? };
                if key == "sweep_re" {
                    self.sweep_re = Some(axis);
                } else {
                    self.sweep_im = Some(axis);
                }
            }
            "output" => {
                if value.is_empty() {
                    return Err("output path is empty".into());
                }
                self.output = PathBuf::from(value);
            }
            _ => match key.strip_prefix("tol.") {
                Some(name) if !name.is_empty() && !name.contains(char::is_whitespace) => {
                    let t = real(value)?;
                    if t < 0.0 {
                        return Err(format!("tolerance {key} must be non-negative"));
                    }
                    self.tolerances.insert(name.to_string(), t);
                }
                _ => return Err(format!("unknown key '{key}'")),
            },
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    pub fn solve_tolerance(&self) -> f64 {
        self.tolerance("solve", DEFAULT_SOLVE_TOL)
    }

    /// The family's default slice with the configured overrides.
    pub fn slice(&self) -> Result<SliceSpec, CliError> {
        let mut s = default_slice(self.family);
        match (self.slice_fixed, self.slice_value) {
            (Some(k), Some(v)) => {
                s.fixed = match k {
                    "im_X" => FixedComponent::ImBigX(v),
                    "re_X" => FixedComponent::ReBigX(v),
                    "im_x" => FixedComponent::ImSmallX(v),
                    _ => FixedComponent::ReSmallX(v),
                };
                let big = matches!(s.fixed, FixedComponent::ImBigX(_) | FixedComponent::ReBigX(_));
                if big == (self.family == FamilyId::L2) {
                    return Err(CliError::Usage(format!("{} slices are expressed in {}, not via {k}", self.family, if big { "x" } else { "X" })));
                }
            }
            (None, None) => {}
            _ => return Err(CliError::Usage("slice_fixed and slice_value must be given together".into())),
        }
        s.range = (self.slice_lo.unwrap_or(s.range.0), self.slice_hi.unwrap_or(s.range.1));
        s.samples = self.slice_samples.unwrap_or(s.samples);
        let (lo, hi) = s.range;
        if !(lo < hi) || s.samples < 2 {
            return Err(CliError::Usage(format!("slice needs lo < hi and at least 2 samples, got ({lo}, {hi}) with {}", s.samples)));
        }
        Ok(s)
    }
}

impl fmt::Display for RunConfig {
    /// Writes every set key; `RunConfig::parse` reads it back unchanged.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family = {}", self.family)?;
        let opt = |f: &mut fmt::Formatter<'_>, k: &str, v: Option<f64>| v.map_or(Ok(()), |v| writeln!(f, "{k} = {v:?}"));
        opt(f, "x_re", self.x_re)?;
        opt(f, "x_im", self.x_im)?;
        if let Some(k) = self.slice_fixed {
            writeln!(f, "slice_fixed = {k}")?;
        }
        opt(f, "slice_value", self.slice_value)?;
        opt(f, "slice_lo", self.slice_lo)?;
        opt(f, "slice_hi", self.slice_hi)?;
        if let Some(n) = self.slice_samples {
            writeln!(f, "slice_samples = {n}")?;
        }
        writeln!(f, "resolution = {}", self.resolution)?;
        writeln!(f, "tiles = {} {} {}", self.tiles[0], self.tiles[1], self.tiles[2])?;
        writeln!(f, "probes = {}", self.probes)?;
        writeln!(f, "loci_samples = {}", self.loci_samples)?;
        for (k, a) in [("sweep_re", self.sweep_re), ("sweep_im", self.sweep_im)] {
            if let Some(a) = a {
                writeln!(f, "{k} = {:?} {:?} {}", a.lo, a.hi, a.n)?;
            }
        }
        writeln!(f, "output = {}", self.output.display())?;
        for (k, v) in &self.tolerances {
            writeln!(f, "tol.{k} = {v:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_blank_lines_and_defaults() {
        let c = RunConfig::parse("# solved C2\n\nfamily = L4   # trailing\nx_im = -1\ntiles = 1, 1, 2\ntol.solve = 1e-12\n").unwrap();
        assert_eq!(c.family, FamilyId::L4);
        assert_eq!(c.x_im, Some(-1.0));
        assert_eq!(c.tiles, [1, 1, 2]);
        assert_eq!(c.solve_tolerance(), 1e-12);
        assert_eq!(c.resolution, 32);
    }

    #[test]
    fn errors_name_the_line() {
        let e = RunConfig::parse("family = C2\nresolution = 32\ncolour = blue\n").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 3, .. }), "{e}");
        assert!(e.to_string().contains("unknown key 'colour'"));
        assert!(matches!(RunConfig::parse("family C2"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(RunConfig::parse("x_re = 1\n\nx_re = 2"), Err(CliError::Parse { line: 3, .. })));
        assert!(matches!(RunConfig::parse("resolution = -4"), Err(CliError::Parse { line: 1, .. })));
    }

    #[test]
    fn slice_overrides() {
        let c = RunConfig::parse("family = C2\nslice_fixed = im_X\nslice_value = -0.5\nslice_hi = 2.0").unwrap();
        let s = c.slice().unwrap();
        assert_eq!(s.fixed, FixedComponent::ImBigX(-0.5));
        assert_eq!(s.range.1, 2.0);
        let bad = RunConfig::parse("family = C2\nslice_fixed = im_x\nslice_value = 1").unwrap();
        assert!(matches!(bad.slice(), Err(CliError::Usage(_))));
        let half = RunConfig::parse("slice_value = 1").unwrap();
        assert!(matches!(half.slice(), Err(CliError::Usage(_))));
    }

    #[test]
    fn grid_axis_values_hit_both_ends() {
        let a = GridAxis { lo: 0.1, hi: 0.7, n: 4 };
        let v = a.values();
        assert_eq!(v.len(), 4);
        assert_eq!((v[0], v[3]), (0.1, 0.7));
    }
}
