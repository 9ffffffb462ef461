//! Bracketed scalar root finding (Brent's method).

use crate::error::{Error, Result};

/// An interval whose endpoint values have opposite signs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and checks the sign condition.
    pub fn new<F: FnMut(f64) -> f64>(lo: f64, hi: f64, mut f: F) -> Result<Self> {
        let b = Self { lo, hi, f_lo: f(lo), f_hi: f(hi) };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.lo < self.hi && self.f_lo * self.f_hi < 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidBracket { lo: self.lo, hi: self.hi, f_lo: self.f_lo, f_hi: self.f_hi })
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Brent's method. Stops when the bracket is narrower than `tol` or `f`
/// hits zero exactly; the returned root always lies in the initial bracket.
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, bracket: Bracket, tol: f64) -> Result<f64> {
    bracket.validate()?;
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut bisected = true;

    for _ in 0..500 {
        if fb == 0.0 || (b - a).abs() <= tol {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            // Inverse quadratic interpolation.
            a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let outside = !((s > lo.min(b)) && (s < lo.max(b)));
        let slow = if bisected { (s - b).abs() >= (b - c).abs() / 2.0 } else { (s - b).abs() >= (c - d).abs() / 2.0 };
        let tiny = if bisected { (b - c).abs() < tol } else { (c - d).abs() < tol };
        if outside || slow || tiny {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }
        let fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if fa * fs < 0.0 {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Ok(b)
}
