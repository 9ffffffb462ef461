//! Point sets on the fundamental domain and their triangulation.

use super::chart::{Chart, Corner};
use super::hexmap::{HexMap, SideTable};
use crate::error::{Error, Result};
use crate::families::{arcs, branch_points, ArcLabel, BoundaryArc, DerivedParams, FamilyId};
use delaunator::{triangulate, Point};
use num_complex::Complex64;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// The builder's default branch-point clearance at resolution `n`.
pub fn default_clearance(n: usize) -> f64 {
    1e-4 * (32.0 / n as f64).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NodeKind {
    Interior,
    /// Interior point of a boundary arc with its z-parameter.
    Arc { label: ArcLabel, t: f64 },
    Corner(Corner),
    /// The branch point A (w = 0). g is prescribed there, never continued.
    Branch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainNode {
    pub w: Complex64,
    pub z: Complex64,
    pub kind: NodeKind,
}

impl DomainNode {
    /// Corners and A: endpoints of singular edge integrals, excluded from continuation.
    pub fn is_special(&self) -> bool {
        matches!(self.kind, NodeKind::Corner(_) | NodeKind::Branch)
    }
}

#[derive(Debug, Clone)]
pub struct DomainGrid {
    pub family: FamilyId,
    pub chart: Chart,
    pub nodes: Vec<DomainNode>,
    /// Counter-clockwise in w.
    pub triangles: Vec<[usize; 3]>,
    pub edges: Vec<[usize; 2]>,
    pub adjacency: Vec<Vec<usize>>,
    /// Ordered chains from first to second corner, corners included.
    pub arcs: BTreeMap<ArcLabel, Vec<usize>>,
    pub resolution: usize,
    pub clearance: f64,
}

impl DomainGrid {
    pub fn corner(&self, c: Corner) -> usize {
        self.nodes.iter().position(|n| n.kind == NodeKind::Corner(c)).expect("all corners are nodes")
    }

    pub fn branch_node(&self) -> usize {
        self.nodes.iter().position(|n| n.kind == NodeKind::Branch).expect("A is a node")
    }

    /// Index of the node at −w (the grid is symmetric by construction).
    pub fn mirror_map(&self) -> Vec<usize> {
        mirror_indices(&self.nodes)
    }
}

fn mirror_indices(nodes: &[DomainNode]) -> Vec<usize> {
    let mut sorted: Vec<(i64, i64, usize)> = nodes.iter().enumerate().map(|(i, n)| (key(n.w.re), key(n.w.im), i)).collect();
    sorted.sort();
    nodes
        .iter()
        .map(|n| {
            let k = (key(-n.w.re), key(-n.w.im));
            let j = sorted.partition_point(|e| (e.0, e.1) < k);
            sorted.get(j).filter(|e| (e.0, e.1) == k).map(|e| e.2).unwrap_or(usize::MAX)
        })
        .collect()
}

/// Counter-clockwise Delaunay triangles of a point set, without slivers
/// of twice-area below `min_area` (collinear points along a hull side).
fn delaunay(pts: &[Complex64], min_area: f64) -> Vec<[usize; 3]> {
    let input: Vec<Point> = pts.iter().map(|p| Point { x: p.re, y: p.im }).collect();
    let tri = triangulate(&input);
    let mut triangles = Vec::with_capacity(tri.triangles.len() / 3);
    for t in tri.triangles.chunks(3) {
        let (a, b, c) = (pts[t[0]], pts[t[1]], pts[t[2]]);
        let area = ((b - a).conj() * (c - a)).im;
        if area.abs() < min_area {
            continue;
        }
        triangles.push(if area > 0.0 { [t[0], t[1], t[2]] } else { [t[0], t[2], t[1]] });
    }
    triangles
}

fn key(v: f64) -> i64 {
    (v * 1e12).round() as i64
}

fn smooth(v: f64) -> f64 {
    v * v * v * (10.0 - 15.0 * v + 6.0 * v * v)
}

/// Arc parameters u_k and the cumulative induced-metric length up to each.
struct LengthTable {
    us: Vec<f64>,
    cum: Vec<f64>,
}

impl LengthTable {
    fn new(dp: &DerivedParams, arc: &BoundaryArc) -> Self {
        const M: usize = 4000;
        let mut cum = vec![0.0; M + 1];
        let us: Vec<f64> = (0..=M).map(|k| smooth(k as f64 / M as f64)).collect();
        for k in 0..M {
            let (u0, u1) = (us[k], us[k + 1]);
            let um = 0.5 * (u0 + u1);
            let d = 0.25 * (u1 - u0);
            let dz = (arc.point_at(um + d) - arc.point_at(um - d)) / (2.0 * d);
            let lam = Chart::metric_z(dp, arc.point_at(um)) * dz.norm();
            let inc = if lam.is_finite() { lam * (u1 - u0) } else { 0.0 };
            cum[k + 1] = cum[k] + inc;
        }
        LengthTable { us, cum }
    }

    fn total(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    /// Fractions u ∈ (0, 1) splitting the arc into `n` pieces of equal length.
    fn equal_fractions(&self, n: usize) -> Vec<f64> {
        let m = self.us.len() - 1;
        (1..n)
            .map(|j| {
                let target = self.total() * j as f64 / n as f64;
                let k = self.cum.partition_point(|c| *c < target).clamp(1, m);
                let f = (target - self.cum[k - 1]) / (self.cum[k] - self.cum[k - 1]);
                self.us[k - 1] + f * (self.us[k] - self.us[k - 1])
            })
            .collect()
    }
}

fn arc_ends(l: ArcLabel) -> (Corner, Corner) {
    match l {
        ArcLabel::SB => (Corner::S, Corner::B),
        ArcLabel::BL => (Corner::B, Corner::L),
        ArcLabel::LSp => (Corner::L, Corner::Sp),
        ArcLabel::SpBp => (Corner::Sp, Corner::Bp),
        ArcLabel::BpFp => (Corner::Bp, Corner::Fp),
        ArcLabel::FpS => (Corner::Fp, Corner::S),
    }
}

/// Axial lattice coordinates (a, b) of the point a·p₀/n + b·p₁/n.
type Axial = (i64, i64);

fn ring(p: Axial) -> i64 {
    p.0.abs().max(p.1.abs()).max((p.0 + p.1).abs())
}

/// Samples D as the image of a triangular lattice on a regular hexagon (see
/// [`super::hexmap`]): each arc becomes one side carrying `n` segments of
/// equal induced length, A is the hexagon's center and every interior node
/// has a lattice neighbourhood. Regular interior nodes within `clearance`
/// (in z) of a branch point are dropped and the remaining points
/// re-triangulated. The point set is symmetric under w ↦ −w.
pub fn sample_domain(dp: &DerivedParams, n: usize, clearance: f64) -> Result<DomainGrid> {
    if n < 8 {
        return Err(Error::Domain(format!("resolution {n} below the minimum of 8")));
    }
    if !(clearance > 0.0) {
        return Err(Error::Domain(format!("clearance {clearance} must be positive")));
    }
    let chart = Chart::new(dp);
    let bps = branch_points(dp);
    let too_close = |z: Complex64| !z.is_finite() || z.norm() * clearance > 1.0 || bps.iter().any(|b| (z - b).norm() < clearance);

    let mut nodes = vec![DomainNode { w: Complex64::new(0.0, 0.0), z: dp.x, kind: NodeKind::Branch }];
    for c in Corner::ALL {
        nodes.push(DomainNode { w: chart.corner_w(c), z: chart.corner_z(c), kind: NodeKind::Corner(c) });
    }
    let corner_idx = |c: Corner| 1 + Corner::ALL.iter().position(|k| *k == c).unwrap();

    // Sides in Corner::ALL order: the three arcs, then their mirrors.
    let half = &arcs(dp)[..3];
    let mut sides: Vec<SideTable> = Vec::with_capacity(6);
    let mut chains = BTreeMap::new();
    for arc in half {
        let table = LengthTable::new(dp, arc);
        let (c0, c1) = arc_ends(arc.label);
        let m = table.us.len() - 1;
        let w: Vec<Complex64> = (0..=m)
            .map(|k| match k {
                0 => chart.corner_w(c0),
                _ if k == m => chart.corner_w(c1),
                _ => chart.boundary_w(chart.s_of_z(arc.point_at(table.us[k]))),
            })
            .collect();
        let t = table.cum.iter().map(|c| c / table.total()).collect();
        sides.push(SideTable { w, t });

        let mut own = vec![corner_idx(c0)];
        let mut mirror = vec![corner_idx(c0.mirror())];
        for u in table.equal_fractions(n) {
            let t = arc.t_at(u);
            let z = arc.z(t);
            if too_close(z) {
                return Err(Error::Construction(format!("clearance {clearance} removes boundary nodes of {} at resolution {n}", arc.label)));
            }
            let w = chart.boundary_w(chart.s_of_z(z));
            own.push(nodes.len());
            nodes.push(DomainNode { w, z, kind: NodeKind::Arc { label: arc.label, t } });
            mirror.push(nodes.len());
            nodes.push(DomainNode { w: -w, z, kind: NodeKind::Arc { label: arc.label.mirror(), t } });
        }
        own.push(corner_idx(c1));
        mirror.push(corner_idx(c1.mirror()));
        chains.insert(arc.label, own);
        chains.insert(arc.label.mirror(), mirror);
    }
    for k in 0..3 {
        let w = sides[k].w.iter().map(|w| -w).collect();
        let t = sides[k].t.clone();
        sides.push(SideTable { w, t });
    }
    let powers: Vec<i32> = Corner::ALL.iter().map(|c| chart.corner_power(*c)).collect();
    let map = HexMap::new(&sides, &powers, !chart.clockwise());

    // Lattice: side k runs from hex[k] to hex[k+1]; chain node i sits at
    // hex[k] + (i/n)(hex[k+1] − hex[k]).
    let ni = n as i64;
    let hex_axial: [Axial; 6] = [(ni, 0), (0, ni), (-ni, ni), (-ni, 0), (0, -ni), (ni, -ni)];
    let position = |p: Axial| (p.0 as f64 * map.hex[0] + p.1 as f64 * map.hex[1]) / n as f64;
    let mut at: HashMap<Axial, usize> = HashMap::new();
    at.insert((0, 0), 0);
    for (k, c) in Corner::ALL.iter().enumerate() {
        let label = ArcLabel::ALL.iter().copied().find(|l| arc_ends(*l).0 == *c).unwrap();
        let (h0, h1) = (hex_axial[k], hex_axial[(k + 1) % 6]);
        for (i, idx) in chains[&label].iter().enumerate() {
            let i = i as i64;
            at.insert((h0.0 + (h1.0 - h0.0) * i / ni, h0.1 + (h1.1 - h0.1) * i / ni), *idx);
        }
    }

    // Interior nodes ring by ring from A; each Newton solve starts from an
    // inner neighbour. Only one of each ±p pair is solved.
    let steps: [Axial; 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
    let mut dropped = false;
    for d in 1..ni {
        let mut ring_pts: Vec<Axial> = Vec::new();
        for a in -d..=d {
            for b in -d..=d {
                let p = (a, b);
                if ring(p) == d && (a > 0 || (a == 0 && b > 0)) {
                    ring_pts.push(p);
                }
            }
        }
        for p in ring_pts {
            let parent = steps.iter().map(|s| (p.0 + s.0, p.1 + s.1)).find(|q| ring(*q) == d - 1).unwrap();
            let w0 = match at.get(&parent) {
                Some(i) => nodes[*i].w,
                None => Complex64::new(0.0, 0.0),
            };
            let target = position(p);
            let frame = map.frame_for(target);
            let v = map
                .invert(target, frame, map.from_w(frame, w0), 1e-10)
                .ok_or_else(|| Error::Construction(format!("lattice point {p:?} could not be placed in D")))?;
            let (w, _) = map.to_w(frame, v);
            let near = map.corner_offset(frame, v).map(|(k, dw)| (Corner::ALL[k], dw));
            let z = chart.point(w, near).0.z;
            let zm = chart.point(-w, near.map(|(c, dw)| (c.mirror(), -dw))).0.z;
            if too_close(z) || too_close(zm) {
                dropped = true;
                continue;
            }
            at.insert(p, nodes.len());
            nodes.push(DomainNode { w, z, kind: NodeKind::Interior });
            at.insert((-p.0, -p.1), nodes.len());
            nodes.push(DomainNode { w: -w, z: zm, kind: NodeKind::Interior });
        }
    }

    // Φ preserves orientation, so triangles counter-clockwise in the
    // hexagon are counter-clockwise in w.
    let mut lattice_of = vec![(0, 0); nodes.len()];
    for (p, i) in &at {
        lattice_of[*i] = *p;
    }
    let triangles: Vec<[usize; 3]> = if dropped {
        // A lattice cell has twice-area (√3/2)/n².
        delaunay(&lattice_of.iter().map(|p| position(*p)).collect::<Vec<_>>(), 1e-6 / (n * n) as f64)
    } else {
        let inside = |p: Axial| ring(p) <= ni;
        let mut tris = Vec::new();
        for a in -ni..ni {
            for b in -ni..ni {
                for t in [[(a, b), (a + 1, b), (a, b + 1)], [(a + 1, b), (a + 1, b + 1), (a, b + 1)]] {
                    if t.iter().all(|p| inside(*p)) {
                        tris.push(t.map(|p| at[&p]));
                    }
                }
            }
        }
        let (p0, p1, p2) = (position(lattice_of[tris[0][0]]), position(lattice_of[tris[0][1]]), position(lattice_of[tris[0][2]]));
        if ((p1 - p0).conj() * (p2 - p0)).im < 0.0 {
            for t in &mut tris {
                t.swap(1, 2);
            }
        }
        tris
    };
    if triangles.is_empty() {
        return Err(Error::Construction("triangulation is empty".into()));
    }
    let mut edge_set = BTreeSet::new();
    for t in &triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            edge_set.insert([a.min(b), a.max(b)]);
        }
    }
    let edges: Vec<[usize; 2]> = edge_set.into_iter().collect();
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for e in &edges {
        adjacency[e[0]].push(e[1]);
        adjacency[e[1]].push(e[0]);
    }
    if let Some(i) = adjacency.iter().position(|a| a.is_empty()) {
        return Err(Error::Construction(format!("node {i} is isolated")));
    }
    Ok(DomainGrid { family: dp.family, chart, nodes, triangles, edges, adjacency, arcs: chains, resolution: n, clearance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{derive_params, ShapeParams};

    fn c2() -> DerivedParams {
        derive_params(&ShapeParams::from_big_x(FamilyId::C2, Complex64::new(1.345, -1.0)).unwrap()).unwrap()
    }

    #[test]
    fn structure_at_n8() {
        let g = sample_domain(&c2(), 8, default_clearance(8)).unwrap();
        assert_eq!(g.arcs.len(), 6);
        for chain in g.arcs.values() {
            assert!(chain.len() >= 9);
        }
        let mut seen = vec![false; g.nodes.len()];
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            if !std::mem::replace(&mut seen[i], true) {
                stack.extend(&g.adjacency[i]);
            }
        }
        assert!(seen.iter().all(|s| *s));
    }

    #[test]
    fn doubling_n_doubles_boundary() {
        let count = |n| sample_domain(&c2(), n, default_clearance(n)).unwrap().arcs.values().map(|c| c.len() - 1).sum::<usize>();
        assert_eq!(count(16), 2 * count(8));
    }

    #[test]
    fn symmetric_point_set() {
        for dp in [
            c2(),
            derive_params(&ShapeParams::new(FamilyId::L2, Complex64::new(1.0, 1.0))).unwrap(),
            derive_params(&ShapeParams::from_big_x(FamilyId::L4, Complex64::new(0.6, -1.0)).unwrap()).unwrap(),
        ] {
            let g = sample_domain(&dp, 16, default_clearance(16)).unwrap();
            assert!(g.mirror_map().iter().all(|j| *j != usize::MAX), "{}", dp.family);
        }
    }

    #[test]
    fn boundary_nodes_on_their_arcs() {
        let dp = c2();
        let g = sample_domain(&dp, 16, default_clearance(16)).unwrap();
        let arcs = crate::families::arcs(&dp);
        for nd in &g.nodes {
            if let NodeKind::Arc { label, t } = nd.kind {
                let arc = arcs.iter().find(|a| a.label == label).unwrap();
                assert!((arc.z(t) - nd.z).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn clearance_keeps_regular_nodes_off_a() {
        let dp = c2();
        let clr = 2e-3;
        let g = sample_domain(&dp, 16, clr).unwrap();
        let nearest = g
            .nodes
            .iter()
            .filter(|n| !n.is_special())
            .map(|n| (n.z - dp.x).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(nearest >= clr);
        assert!(sample_domain(&dp, 16, 0.9).is_err());
    }
}
