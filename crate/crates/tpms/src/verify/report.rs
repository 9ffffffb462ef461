use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
    pub detail: String,
}

/// Named checks; `passed` is always `residual ≤ tolerance`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: BTreeMap<String, CheckResult>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check. A NaN residual fails.
    pub fn add(&mut self, id: impl Into<String>, residual: f64, tolerance: f64, detail: impl Into<String>) {
        let passed = residual <= tolerance;
        self.checks.insert(id.into(), CheckResult { passed, residual, tolerance, detail: detail.into() });
    }

    /// Adds every check of `other`, prefixing its ids.
    pub fn merge(&mut self, prefix: &str, other: VerificationReport) {
        for (k, v) in other.checks {
            self.checks.insert(format!("{prefix}{k}"), v);
        }
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.get(id)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.values().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, c)| !c.passed).map(|(k, _)| k.as_str()).collect()
    }

    /// Comma-separated rows with one header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,passed,residual,tolerance,detail\n");
        for (k, c) in &self.checks {
            out += &format!("{k},{},{:e},{:e},\"{}\"\n", c.passed, c.residual, c.tolerance, c.detail.replace('"', "'"));
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in &self.checks {
            writeln!(f, "{} {k}: residual {:.3e} (tolerance {:.3e}) {}", if c.passed { "PASS" } else { "FAIL" }, c.residual, c.tolerance, c.detail)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_iff_within_tolerance() {
        let mut r = VerificationReport::new();
        r.add("a", 1e-9, 1e-8, "");
        r.add("b", 2.0, 1.0, "too big");
        r.add("c", f64::NAN, 1.0, "nan");
        assert!(r.get("a").unwrap().passed);
        assert_eq!(r.failures(), vec!["b", "c"]);
        assert_eq!(r.to_csv().lines().count(), 4);
        assert!(r.to_string().contains("FAIL b"));
    }
}
