use crate::families::{ArcLabel, DerivedParams, FamilyId};
use num_complex::Complex64;

pub type Vec3 = [f64; 3];

pub(crate) fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub(crate) fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// A point of the surface with its Weierstrass data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    /// Chart coordinate in the unit disk.
    pub w: Complex64,
    pub z: Complex64,
    /// Gauss map; 0 and ∞ occur at branch corners.
    pub g: Complex64,
    pub position: Vec3,
    pub normal: Vec3,
}

/// An ordered boundary chain. `copy` tells apart the images of one arc in
/// an assembled piece or tiled block (0 is the domain itself).
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub label: ArcLabel,
    pub copy: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Mesh {
    pub family: FamilyId,
    pub params: DerivedParams,
    pub resolution: usize,
    pub vertices: Vec<SurfaceSample>,
    pub triangles: Vec<[usize; 3]>,
    pub arcs: Vec<Chain>,
    /// Largest vertex displacement between two spanning-tree integrations
    /// (zero for meshes derived by rigid motions).
    pub tree_gap: f64,
}

impl Mesh {
    pub fn chain(&self, label: ArcLabel) -> Option<&[usize]> {
        self.chain_copy(label, 0)
    }

    pub fn chain_copy(&self, label: ArcLabel, copy: usize) -> Option<&[usize]> {
        self.arcs.iter().find(|c| c.label == label && c.copy == copy).map(|c| c.vertices.as_slice())
    }

    pub fn positions(&self) -> Vec<Vec3> {
        self.vertices.iter().map(|v| v.position).collect()
    }

    /// Axis-aligned bounding box (min, max).
    pub fn bounds(&self) -> (Vec3, Vec3) {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for v in &self.vertices {
            for k in 0..3 {
                lo[k] = lo[k].min(v.position[k]);
                hi[k] = hi[k].max(v.position[k]);
            }
        }
        (lo, hi)
    }

    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounds();
        norm(sub(hi, lo))
    }

    pub fn triangle_normal(&self, t: [usize; 3]) -> Vec3 {
        let p = |i: usize| self.vertices[t[i]].position;
        cross(sub(p(1), p(0)), sub(p(2), p(0)))
    }

    /// Edges used by exactly one triangle, as (from, to) in triangle order.
    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        let mut count = std::collections::HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                *count.entry((a.min(b), a.max(b))).or_insert(0usize) += 1;
            }
        }
        let mut out = Vec::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                if count[&(a.min(b), a.max(b))] == 1 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Closed boundary loops traced from the boundary edges.
    pub fn boundary_loops(&self) -> Vec<Vec<usize>> {
        let edges = self.boundary_edges();
        let mut next: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
        for (a, b) in &edges {
            next.entry(*a).or_default().push(*b);
        }
        let mut used = std::collections::HashSet::new();
        let mut loops = Vec::new();
        for &(a, b) in &edges {
            if used.contains(&(a, b)) {
                continue;
            }
            let mut lp = vec![a];
            let (mut u, mut v) = (a, b);
            while used.insert((u, v)) {
                lp.push(v);
                let Some(ns) = next.get(&v) else { break };
                match ns.iter().find(|n| !used.contains(&(v, **n))) {
                    Some(&n) => {
                        u = v;
                        v = n;
                    }
                    None => break,
                }
            }
            if lp.last() == lp.first() {
                lp.pop();
            }
            loops.push(lp);
        }
        loops
    }
}
