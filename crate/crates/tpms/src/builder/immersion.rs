//! Integration of Re∫(φ₁, φ₂, φ₃) over the triangulated domain.

use super::chart::{Chart, Corner};
use super::domain::{DomainGrid, NodeKind};
use super::mesh::{add, dot, norm, sub, Chain, Mesh, SurfaceSample, Vec3};
use crate::error::{Error, Result};
use crate::families::{g_candidates, g_on_arc, height_differential_at, normal_from_g, weierstrass_forms, arc, ArcLabel, DerivedParams, FamilyId, Tracker};
use num_complex::Complex64;
use std::collections::VecDeque;

const MAX_LEVEL: u32 = 12;

/// An edge from a regular node P to Q. When Q is a corner the parameter is
/// w = Q + (P − Q)(1 − τ)^k with k from [`Chart::corner_power`], which tames
/// the integrable singularity of the forms there; at A the data are smooth
/// in w and the path stays straight. Edges between two regular nodes close
/// to one corner run straight in the corner variable v = (1 − w/w_c)^{1/k},
/// in which the surface is smooth.
#[derive(Clone, Copy)]
struct EdgePath {
    p: Complex64,
    q: Complex64,
    shape: PathShape,
    /// g is not continued onto Q itself (Q is special).
    open_end: bool,
}

#[derive(Clone, Copy)]
enum PathShape {
    Straight,
    IntoCorner(Corner, i32),
    Fan { corner: Corner, power: i32, wc: Complex64, vp: Complex64, vq: Complex64 },
}

/// Within this |1 − w/w_c| both ends of an edge use the corner variable.
const FAN_RADIUS: f64 = 0.25;

impl EdgePath {
    fn new(chart: &Chart, p: Complex64, q: Complex64, to: NodeKind, open_end: bool) -> Self {
        let shape = match to {
            NodeKind::Corner(c) => PathShape::IntoCorner(c, chart.corner_power(c)),
            NodeKind::Branch => PathShape::Straight,
            _ => Corner::ALL
                .iter()
                .find_map(|&c| {
                    let wc = chart.corner_w(c);
                    let (up, uq) = (1.0 - p / wc, 1.0 - q / wc);
                    (up.norm() < FAN_RADIUS && uq.norm() < FAN_RADIUS).then(|| {
                        let power = chart.corner_power(c);
                        let a = 1.0 / power as f64;
                        PathShape::Fan { corner: c, power, wc, vp: up.powf(a), vq: uq.powf(a) }
                    })
                })
                .unwrap_or(PathShape::Straight),
        };
        EdgePath { p, q, shape, open_end }
    }

    /// (w, offset from the corner if any, dw/dτ)
    fn at(&self, tau: f64) -> (Complex64, Option<(Corner, Complex64)>, Complex64) {
        match self.shape {
            PathShape::IntoCorner(c, k) => {
                let s = 1.0 - tau;
                let d = (self.p - self.q) * s.powi(k);
                (self.q + d, Some((c, d)), -(self.p - self.q) * (k as f64 * s.powi(k - 1)))
            }
            PathShape::Fan { corner, power, wc, vp, vq } => {
                let v = vp + (vq - vp) * tau;
                let vk = v.powi(power - 1);
                let d = -wc * vk * v;
                (wc + d, Some((corner, d)), -wc * (power as f64) * vk * (vq - vp))
            }
            PathShape::Straight => (self.p + (self.q - self.p) * tau, None, self.q - self.p),
        }
    }
}

struct Integrator<'a> {
    dp: &'a DerivedParams,
    chart: &'a Chart,
}

struct EdgeResult {
    integral: Vec3,
    /// g at the far end (for corners: at the last sample).
    g_end: Complex64,
}

impl<'a> Integrator<'a> {
    fn advance(&self, tr: &mut Tracker, path: &EdgePath, from: f64, to: f64, depth: u32) -> Result<Complex64> {
        let (w, near, _) = path.at(to);
        let (pt, _) = self.chart.point(w, near);
        match tr.step_point(&pt, w) {
            Ok(g) => Ok(g),
            Err(Error::Continuation { .. }) if depth < 40 => {
                let mid = 0.5 * (from + to);
                self.advance(tr, path, from, mid, depth + 1)?;
                self.advance(tr, path, mid, to, depth + 1)
            }
            Err(e) => Err(e),
        }
    }

    /// Composite midpoint sum with `n` panels, tracking g from P.
    fn midpoint(&self, path: &EdgePath, g0: Complex64, n: usize) -> Result<(Vec3, Complex64)> {
        let mut tr = Tracker::with_param(self.dp, path.p, g0);
        let mut sum = [0.0; 3];
        let mut prev = 0.0;
        for j in 0..n {
            let tau = (j as f64 + 0.5) / n as f64;
            let g = self.advance(&mut tr, path, prev, tau, 0)?;
            prev = tau;
            let (w, near, dw) = path.at(tau);
            let (pt, dz) = self.chart.point(w, near);
            let dh = height_differential_at(self.dp, &pt, g)?;
            let phi = weierstrass_forms(g, dh)?;
            let jac = dz * dw;
            for k in 0..3 {
                sum[k] += (phi[k] * jac).re;
            }
        }
        let g_end = if path.open_end { tr.g() } else { self.advance(&mut tr, path, prev, 1.0, 0)? };
        Ok(([sum[0] / n as f64, sum[1] / n as f64, sum[2] / n as f64], g_end))
    }

    /// Midpoint rule with Richardson extrapolation, doubled until two
    /// successive extrapolants agree or stop improving (rounding floor).
    fn edge(&self, path: &EdgePath, g0: Complex64) -> Result<EdgeResult> {
        let mut n = 4;
        let (mut m_prev, _) = self.midpoint(path, g0, n)?;
        let mut r_prev: Option<Vec3> = None;
        let mut diff_prev = f64::INFINITY;
        let mut level = 2;
        loop {
            n *= 2;
            let (m, g_end) = self.midpoint(path, g0, n)?;
            let r: Vec3 = std::array::from_fn(|k| (4.0 * m[k] - m_prev[k]) / 3.0);
            if !r.iter().all(|v| v.is_finite()) {
                return Err(Error::Singular { z: self.chart.z_of_w(path.q).0, what: "non-finite edge integral" });
            }
            if let Some(rp) = r_prev {
                let diff = norm(sub(r, rp));
                let floor = diff > diff_prev && level > 5;
                if diff <= 1e-13 + 1e-11 * norm(r) || floor || level >= MAX_LEVEL {
                    let best = if floor { rp } else { r };
                    return Ok(EdgeResult { integral: best, g_end });
                }
                diff_prev = diff;
            }
            r_prev = Some(r);
            m_prev = m;
            level += 1;
        }
    }
}

fn corner_g(dp: &DerivedParams, chart: &Chart, c: Corner, g_near: Complex64) -> Complex64 {
    if chart.corner_is_branch(c) {
        return if g_near.norm() > 1.0 { Complex64::new(f64::INFINITY, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    match g_candidates(dp, chart.corner_z(c)) {
        Ok(cands) => *cands.iter().min_by(|a, b| (*a - g_near).norm().total_cmp(&(*b - g_near).norm())).unwrap(),
        Err(_) => g_near,
    }
}

/// The node where continuation starts: the middle of SB.
fn root_node(grid: &DomainGrid) -> usize {
    let chain = &grid.arcs[&ArcLabel::SB];
    chain[chain.len() / 2]
}

/// The SB node nearest z = i·a (C2, L4) or z = a (L2); its image is the origin.
pub fn anchor_node(grid: &DomainGrid, dp: &DerivedParams) -> usize {
    let target = match dp.family {
        FamilyId::L2 => Complex64::new(dp.a, 0.0),
        _ => Complex64::new(0.0, dp.a),
    };
    *grid.arcs[&ArcLabel::SB]
        .iter()
        .filter(|&&i| !grid.nodes[i].is_special())
        .min_by(|&&i, &&j| (grid.nodes[i].z - target).norm().total_cmp(&(grid.nodes[j].z - target).norm()))
        .expect("SB has regular nodes")
}

fn tree_positions(grid: &DomainGrid, root: usize, integrals: &std::collections::HashMap<(usize, usize), Vec3>) -> Vec<Vec3> {
    let mut pos = vec![[f64::NAN; 3]; grid.nodes.len()];
    pos[root] = [0.0; 3];
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in &grid.adjacency[u] {
            if pos[v][0].is_nan() {
                let d = match integrals.get(&(u, v)) {
                    Some(d) => *d,
                    None => integrals[&(v, u)].map(|x| -x),
                };
                pos[v] = add(pos[u], d);
                if !grid.nodes[v].is_special() {
                    queue.push_back(v);
                }
            }
        }
    }
    pos
}

/// Positions by accumulating per-edge quadratures along a spanning tree,
/// with g continued from the middle of SB. A second spanning tree rooted
/// on LS′ measures path independence (stored as `tree_gap`).
pub fn integrate_immersion(grid: &DomainGrid, dp: &DerivedParams) -> Result<Mesh> {
    if grid.family != dp.family {
        return Err(Error::Domain(format!("grid built for {} but parameters are {}", grid.family, dp.family)));
    }
    let integ = Integrator { dp, chart: &grid.chart };
    let nn = grid.nodes.len();
    let mut g: Vec<Option<Complex64>> = vec![None; nn];
    let root = root_node(grid);
    let NodeKind::Arc { t, .. } = grid.nodes[root].kind else {
        return Err(Error::Construction("SB has no regular node to start from".into()));
    };
    g[root] = Some(g_on_arc(&arc(dp, ArcLabel::SB), t, dp)?);

    let mut integrals = std::collections::HashMap::with_capacity(grid.edges.len());
    let mut visited = vec![false; nn];
    visited[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let gu = g[u].expect("queued nodes carry g");
        for &v in &grid.adjacency[u] {
            if integrals.contains_key(&(v, u)) || integrals.contains_key(&(u, v)) {
                continue;
            }
            let nv = grid.nodes[v];
            let path = EdgePath::new(&grid.chart, grid.nodes[u].w, nv.w, nv.kind, nv.is_special());
            let res = integ.edge(&path, gu)?;
            integrals.insert((u, v), res.integral);
            if nv.is_special() {
                if g[v].is_none() {
                    g[v] = Some(match nv.kind {
                        NodeKind::Branch => {
                            // g(A) = −i on D.
                            let a = Complex64::new(0.0, -1.0);
                            if (res.g_end - a).norm() > 0.1 {
                                return Err(Error::Consistency(format!("continuation reached A with g = {} instead of −i", res.g_end)));
                            }
                            a
                        }
                        NodeKind::Corner(c) => corner_g(dp, &grid.chart, c, res.g_end),
                        _ => unreachable!(),
                    });
                }
                continue;
            }
            match g[v] {
                None => {
                    g[v] = Some(res.g_end);
                }
                Some(gv) => {
                    if (gv - res.g_end).norm() > 1e-6 * gv.norm().max(1.0) {
                        return Err(Error::Consistency(format!(
                            "g is not single-valued on the chart: {gv} vs {} at z = {}",
                            res.g_end, nv.z
                        )));
                    }
                }
            }
            if !visited[v] {
                visited[v] = true;
                queue.push_back(v);
            }
        }
    }
    for (i, e) in grid.edges.iter().enumerate() {
        if !integrals.contains_key(&(e[0], e[1])) && !integrals.contains_key(&(e[1], e[0])) {
            return Err(Error::Construction(format!("edge {i} {:?} joins two special nodes or is unreachable", e)));
        }
    }

    let anchor = anchor_node(grid, dp);
    let shift = |mut p: Vec<Vec3>| {
        let o = p[anchor];
        for q in p.iter_mut() {
            *q = sub(*q, o);
        }
        p
    };
    let pos1 = shift(tree_positions(grid, root, &integrals));
    let chain = &grid.arcs[&ArcLabel::LSp];
    let pos2 = shift(tree_positions(grid, chain[chain.len() / 2], &integrals));
    let tree_gap = pos1.iter().zip(&pos2).map(|(a, b)| norm(sub(*a, *b))).fold(0.0, f64::max);

    let vertices: Vec<SurfaceSample> = grid
        .nodes
        .iter()
        .enumerate()
        .map(|(i, nd)| {
            let gi = g[i].expect("every node reached");
            SurfaceSample { w: nd.w, z: nd.z, g: gi, position: pos1[i], normal: normal_from_g(gi) }
        })
        .collect();
    if let Some(v) = vertices.iter().find(|v| !v.position.iter().all(|c| c.is_finite())) {
        return Err(Error::Singular { z: v.z, what: "non-finite vertex position" });
    }
    let mut mesh = Mesh {
        family: dp.family,
        params: *dp,
        resolution: grid.resolution,
        vertices,
        triangles: grid.triangles.clone(),
        arcs: grid.arcs.iter().map(|(l, c)| Chain { label: *l, copy: 0, vertices: c.clone() }).collect(),
        tree_gap,
    };
    orient_by_gauss_map(&mut mesh);
    Ok(mesh)
}

/// Flips every triangle if the winding disagrees with the Gauss-map normal
/// on the majority of triangles.
fn orient_by_gauss_map(mesh: &mut Mesh) {
    let mut score = 0i64;
    for t in &mesh.triangles {
        let n = mesh.triangle_normal(*t);
        let gauss: Vec3 = std::array::from_fn(|k| t.iter().map(|&i| mesh.vertices[i].normal[k]).sum::<f64>());
        score += if dot(n, gauss) >= 0.0 { 1 } else { -1 };
    }
    if score < 0 {
        for t in mesh.triangles.iter_mut() {
            t.swap(1, 2);
        }
    }
}
