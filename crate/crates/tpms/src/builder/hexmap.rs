//! A harmonic parametrization of D by a regular hexagon.
//!
//! The cotangent Laplacian is only pointwise consistent on meshes that are
//! locally affine images of a lattice, so the interior nodes are the images
//! of a triangular lattice under a smooth map Ψ: hexagon → D. Ψ is the
//! inverse of the harmonic map Φ: D → hexagon whose boundary values send
//! each arc linearly in metric arc length onto one side. Harmonicity is
//! conformally invariant and the hexagon is convex, so Φ is a diffeomorphism
//! (Radó–Kneser–Choquet).
//!
//! The metric blows up like |w − w_k|^{α−1} at a corner with α = 1/p, so
//! arc length grows like |w − w_k|^α there. Φ is split as
//! Σ_k L_k((1 − w/w_k)^α) + P[q]: the real-linear L_k absorb the corner
//! power exactly and the remainder q is harmonically extended in closed form
//! from a piecewise-linear fit on the boundary (upper half-plane picture).
//! In the corner variable v = (1 − w/w_k)^α the surface is smooth and Φ is
//! close to linear, so the lattice images keep their shape up to the corner.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Boundary samples of one side: w on the unit circle and the fraction t of
/// metric length from the side's first corner.
pub(crate) struct SideTable {
    pub w: Vec<Complex64>,
    pub t: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
struct CornerTerm {
    w: Complex64,
    alpha: f64,
    power: i32,
    a: Complex64,
    b: Complex64,
}

impl CornerTerm {
    /// (1 − w/w_k)^α and its w-derivative.
    fn g(&self, w: Complex64) -> (Complex64, Complex64) {
        let u = 1.0 - w / self.w;
        let g = u.powf(self.alpha);
        (g, -self.alpha / self.w * g / u)
    }

    fn apply(&self, v: Complex64) -> Complex64 {
        self.a * v + self.b * v.conj()
    }
}

/// Where a Newton iterate lives: the disk itself or a corner variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Frame {
    Disk,
    Corner(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct HexMap {
    corners: Vec<CornerTerm>,
    /// Hexagon vertices p_k.
    pub hex: Vec<Complex64>,
    /// The boundary point sent to ∞ by the Cayley map.
    e: Complex64,
    q_inf: Complex64,
    knots: Vec<f64>,
    values: Vec<Complex64>,
    slopes: Vec<Complex64>,
    kinks: Vec<Complex64>,
}

/// Selects a subset of table indices: dense (geometrically) toward both
/// ends, at most `dt` apart in t and `dphi` apart in angle in between.
fn select(tab: &SideTable, ratio: f64, dt: f64, dphi: f64) -> Vec<usize> {
    let m = tab.w.len();
    let (w0, w1) = (tab.w[0], tab.w[m - 1]);
    let rho = |i: usize| (tab.w[i] - w0).norm().min((tab.w[i] - w1).norm());
    let mut keep = vec![0];
    for i in 1..m - 1 {
        // Closer than this the Cayley abscissae no longer resolve the points.
        if rho(i) < 1e-11 {
            continue;
        }
        let last = *keep.last().unwrap();
        let (r, rl) = (rho(i).max(1e-300), rho(last).max(1e-300));
        if (r / rl).max(rl / r) > ratio || (tab.t[i] - tab.t[last]).abs() > dt || (tab.w[i] / tab.w[last]).arg().abs() > dphi {
            keep.push(i);
        }
    }
    keep.push(m - 1);
    keep
}

impl HexMap {
    /// `sides[k]` runs from corner k to corner k+1 (indices mod 6), with
    /// `powers[k]` the metric power at corner k. `ccw` tells whether this
    /// boundary order is counter-clockwise in w; the hexagon follows it.
    pub(crate) fn new(sides: &[SideTable], powers: &[i32], ccw: bool) -> Self {
        let nc = sides.len();
        let sgn = if ccw { 1.0 } else { -1.0 };
        let hex: Vec<Complex64> = (0..nc).map(|k| Complex64::from_polar(1.0, sgn * 2.0 * PI * k as f64 / nc as f64)).collect();

        // Corner terms from the leading coefficient t ≈ c|1 − w/w_k|^α.
        let mut corners = Vec::with_capacity(nc);
        for k in 0..nc {
            let wk = sides[k].w[0];
            let alpha = 1.0 / powers[k] as f64;
            let coef = |tab: &SideTable, from_end: bool| {
                let tau = |i: usize| if from_end { 1.0 - tab.t[i] } else { tab.t[i] };
                let m = tab.t.len();
                let i = (1..m - 1).min_by(|&i, &j| (tau(i) - 1e-3).abs().total_cmp(&(tau(j) - 1e-3).abs())).unwrap();
                (tau(i) / (1.0 - tab.w[i] / wk).norm().powf(alpha), tab.w[i])
            };
            let next = &sides[k];
            let prev = &sides[(k + nc - 1) % nc];
            let (c_next, w_next) = coef(next, false);
            let (c_prev, _) = coef(prev, true);
            let y_next = c_next * (hex[(k + 1) % nc] - hex[k]);
            let y_prev = c_prev * (hex[(k + nc - 1) % nc] - hex[k]);
            // (1 − w/w_k)^α ≈ |φ|^α e^{∓iαπ/2} for w = w_k e^{iφ}, φ ≷ 0.
            let up = Complex64::from_polar(1.0, -alpha * PI / 2.0);
            let (yp, ym) = if (w_next / wk).arg() > 0.0 { (y_next, y_prev) } else { (y_prev, y_next) };
            let det = up * up - up.conj() * up.conj();
            let a = (yp * up - ym * up.conj()) / det;
            let b = (ym * up - yp * up.conj()) / det;
            corners.push(CornerTerm { w: wk, alpha, power: powers[k], a, b });
        }
        let mut map = HexMap { corners, hex, e: Complex64::new(1.0, 0.0), q_inf: Complex64::new(0.0, 0.0), knots: vec![], values: vec![], slopes: vec![], kinks: vec![] };

        // Remainder data on the circle; ∞ sits at the middle of side 0.
        let mid = sides[0].t.iter().position(|&t| t >= 0.5).unwrap();
        map.e = sides[0].w[mid];
        let data = |k: usize, i: usize| {
            let tab = &sides[k];
            let b = map.hex[k] + tab.t[i] * (map.hex[(k + 1) % nc] - map.hex[k]);
            b - map.singular(tab.w[i]).0
        };
        let q_inf = data(0, mid);
        let mut pts: Vec<(f64, Complex64)> = Vec::new();
        for (k, tab) in sides.iter().enumerate() {
            let mut idx = select(tab, 1.6, 0.01, 0.01);
            if k == 0 {
                idx.extend([mid - 1, mid + 1]);
            }
            for i in idx {
                // Corners are shared by consecutive sides.
                if (k == 0 && i == mid) || i == tab.w.len() - 1 {
                    continue;
                }
                pts.push((map.cayley(tab.w[i]).0.re, data(k, i)));
            }
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12 * (1.0 + a.0.abs()));
        // Near ∞ the data approach q_inf like 1/x; geometric tail knots
        // follow that decay so the data stay continuous (and smooth in w).
        let tail = |first: (f64, Complex64), sign: f64| {
            let mut out = Vec::new();
            let mut x = first.0;
            while x.abs() < 1e10 * first.0.abs().max(1.0) {
                x *= 1.5;
                out.push((x, q_inf + (first.1 - q_inf) * (first.0 / x)));
            }
            out.push((sign * x.abs() * 1.5, q_inf));
            out
        };
        let right = tail(*pts.last().unwrap(), 1.0);
        let mut left = tail(pts[0], -1.0);
        left.reverse();
        pts = left.into_iter().chain(pts).chain(right).collect();
        map.q_inf = q_inf;
        let slope = |i: usize| (pts[i + 1].1 - pts[i].1) / (pts[i + 1].0 - pts[i].0);
        let mut prev = Complex64::new(0.0, 0.0);
        for i in 0..pts.len() {
            let s = if i + 1 < pts.len() { slope(i) } else { Complex64::new(0.0, 0.0) };
            map.knots.push(pts[i].0);
            map.values.push(pts[i].1);
            map.slopes.push(s);
            map.kinks.push(s - prev);
            prev = s;
        }
        map
    }

    /// ζ = i(e + w)/(e − w) and dζ/dw.
    fn cayley(&self, w: Complex64) -> (Complex64, Complex64) {
        let i = Complex64::new(0.0, 1.0);
        let d = self.e - w;
        (i * (self.e + w) / d, 2.0 * i * self.e / (d * d))
    }

    /// Σ L_k(G_k) with its Wirtinger derivatives ∂/∂w and ∂/∂w̄.
    fn singular(&self, w: Complex64) -> (Complex64, Complex64, Complex64) {
        let (mut v, mut p, mut q) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for c in &self.corners {
            let (g, dg) = c.g(w);
            v += c.apply(g);
            p += c.a * dg;
            q += c.b * dg.conj();
        }
        (v, p, q)
    }

    /// Φ(w) with ∂Φ/∂w and ∂Φ/∂w̄, made exactly odd: the boundary data are
    /// odd but their piecewise-linear fit in the Cayley variable is not.
    pub(crate) fn eval(&self, w: Complex64) -> (Complex64, Complex64, Complex64) {
        let (v1, p1, q1) = self.eval_raw(w);
        let (v2, p2, q2) = self.eval_raw(-w);
        (0.5 * (v1 - v2), 0.5 * (p1 + p2), 0.5 * (q1 + q2))
    }

    fn eval_raw(&self, w: Complex64) -> (Complex64, Complex64, Complex64) {
        let (mut v, mut p, mut q) = self.singular(w);
        let (zeta, dzeta) = self.cayley(w);
        // Poisson integral of the piecewise-linear data, segment by segment:
        // on [x_j, x_{j+1}] with f = f_j + m_j(t − x_j) the contribution is
        // [f_j + m_j(X − x_j)]·Δatan((t − X)/y) + m_j y Δlog|ζ − t|, both
        // O(Δf) when the differences are formed directly.
        let (xr, y) = (zeta.re, zeta.im);
        let (k0, kn) = (self.knots[0], *self.knots.last().unwrap());
        let outer = (PI / 2.0 + ((k0 - xr) / y).atan()) + (PI / 2.0 - ((kn - xr) / y).atan());
        let mut acc = self.q_inf * outer;
        for j in 0..self.knots.len() - 1 {
            let (x0, x1) = (self.knots[j], self.knots[j + 1]);
            let (d0, d1) = (x0 - xr, x1 - xr);
            let da = ((x1 - x0) * y).atan2(y * y + d0 * d1);
            let dl = 0.5 * ((x1 - x0) * (d1 + d0) / (d0 * d0 + y * y)).ln_1p();
            let m = self.slopes[j];
            acc += (self.values[j] - m * d0) * da + m * (y * dl);
        }
        v += acc / PI;
        // Derivatives from the kink form q_inf − (1/π) Σ s_j Im[(ζ − x_j) log(ζ − x_j)].
        let (mut dx, mut dy) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for (x, s) in self.knots.iter().zip(&self.kinks) {
            let dg = (zeta - x).ln() + 1.0;
            dx += s.re * dg;
            dy += s.im * dg;
        }
        // ∂(Im H)/∂w = H′ζ′/(2i) for holomorphic H.
        let two_i = Complex64::new(0.0, 2.0);
        let (ux, uy) = (dx * dzeta / two_i, dy * dzeta / two_i);
        let i = Complex64::new(0.0, 1.0);
        p -= (ux + i * uy) / PI;
        q -= (ux.conj() + i * uy.conj()) / PI;
        (v, p, q)
    }

    /// w and dw/dv for a frame variable v.
    pub(crate) fn to_w(&self, frame: Frame, v: Complex64) -> (Complex64, Complex64) {
        match frame {
            Frame::Disk => (v, Complex64::new(1.0, 0.0)),
            Frame::Corner(k) => {
                let c = &self.corners[k];
                let vp = v.powi(c.power - 1);
                (c.w * (1.0 - vp * v), -c.w * c.power as f64 * vp)
            }
        }
    }

    /// The frame variable of w.
    pub(crate) fn from_w(&self, frame: Frame, w: Complex64) -> Complex64 {
        match frame {
            Frame::Disk => w,
            Frame::Corner(k) => self.corners[k].g(w).0,
        }
    }

    /// Offset w − w_k for a corner frame, exact in the corner variable.
    pub(crate) fn corner_offset(&self, frame: Frame, v: Complex64) -> Option<(usize, Complex64)> {
        match frame {
            Frame::Disk => None,
            Frame::Corner(k) => {
                let c = &self.corners[k];
                Some((k, -c.w * v.powi(c.power)))
            }
        }
    }

    /// Frame used for the lattice point p: the corner variable near a
    /// hexagon vertex, the disk elsewhere.
    pub(crate) fn frame_for(&self, p: Complex64) -> Frame {
        let (k, d) = self.hex.iter().enumerate().map(|(k, h)| (k, (p - h).norm())).min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        if d < 0.35 {
            Frame::Corner(k)
        } else {
            Frame::Disk
        }
    }

    /// Solves Φ(w) = p by damped Newton in the given frame, from the frame
    /// variable `v0`. Returns the converged frame variable.
    pub(crate) fn invert(&self, p: Complex64, frame: Frame, v0: Complex64, tol: f64) -> Option<Complex64> {
        let inside = |v: Complex64| {
            let (w, _) = self.to_w(frame, v);
            w.norm() < 1.0 && match frame {
                Frame::Corner(k) => v.norm() > 0.0 && (1.0 - w / self.corners[k].w).re > 0.0,
                Frame::Disk => true,
            }
        };
        let resid = |v: Complex64| p - self.eval(self.to_w(frame, v).0).0;
        let mut v = v0;
        if !inside(v) {
            return None;
        }
        let mut r = resid(v);
        for _ in 0..60 {
            if r.norm() < tol {
                return Some(v);
            }
            let (w, dw) = self.to_w(frame, v);
            let (_, pw, qw) = self.eval(w);
            let (pv, qv) = (pw * dw, qw * dw.conj());
            let det = pv.norm_sqr() - qv.norm_sqr();
            if det.abs() < 1e-300 {
                return None;
            }
            let step = (pv.conj() * r - qv * r.conj()) / det;
            let mut lam = 1.0;
            loop {
                let cand = v + lam * step;
                if inside(cand) {
                    let rc = resid(cand);
                    if rc.norm() < r.norm() || lam < 1e-3 {
                        v = cand;
                        r = rc;
                        break;
                    }
                }
                lam *= 0.5;
                if lam < 1e-12 {
                    return None;
                }
            }
        }
        (r.norm() < tol).then_some(v)
    }
}
