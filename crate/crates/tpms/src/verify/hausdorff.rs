//! One-sided Hausdorff distances from moved vertices to a triangle mesh.

use super::report::VerificationReport;
use crate::builder::{dot, sub, Mesh, RigidMotion, Vec3};
use std::collections::HashMap;

/// Closest distance from p to triangle abc.
pub fn point_triangle_distance(p: Vec3, a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let (ab, ac, ap) = (sub(b, a), sub(c, a), sub(p, a));
    let (d1, d2) = (dot(ab, ap), dot(ac, ap));
    let at = |s: f64, t: f64| {
        let q = [a[0] + s * ab[0] + t * ac[0], a[1] + s * ab[1] + t * ac[1], a[2] + s * ab[2] + t * ac[2]];
        let d = sub(p, q);
        dot(d, d).sqrt()
    };
    if d1 <= 0.0 && d2 <= 0.0 {
        return at(0.0, 0.0);
    }
    let bp = sub(p, b);
    let (d3, d4) = (dot(ab, bp), dot(ac, bp));
    if d3 >= 0.0 && d4 <= d3 {
        return at(1.0, 0.0);
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        return at(d1 / (d1 - d3), 0.0);
    }
    let cp = sub(p, c);
    let (d5, d6) = (dot(ab, cp), dot(ac, cp));
    if d6 >= 0.0 && d5 <= d6 {
        return at(0.0, 1.0);
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        return at(0.0, d2 / (d2 - d6));
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && d4 - d3 >= 0.0 && d5 - d6 >= 0.0 {
        let u = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return at(1.0 - u, u);
    }
    let den = 1.0 / (va + vb + vc);
    at(vb * den, vc * den)
}

/// Uniform grid of triangle bounding boxes.
pub struct TriangleIndex<'a> {
    mesh: &'a Mesh,
    lo: Vec3,
    h: f64,
    dims: [i64; 3],
    cells: HashMap<[i64; 3], Vec<usize>>,
}

impl<'a> TriangleIndex<'a> {
    pub fn new(mesh: &'a Mesh) -> Self {
        let (lo, hi) = mesh.bounds();
        let extent = (0..3).map(|k| hi[k] - lo[k]).fold(0.0, f64::max).max(1e-300);
        let h = extent / (mesh.triangles.len() as f64).cbrt().max(1.0);
        let dims = std::array::from_fn(|k| (((hi[k] - lo[k]) / h).floor() as i64 + 1).max(1));
        let mut index = TriangleIndex { mesh, lo, h, dims, cells: HashMap::new() };
        for (ti, t) in mesh.triangles.iter().enumerate() {
            let ps = t.map(|i| mesh.vertices[i].position);
            let cmin: [i64; 3] = std::array::from_fn(|k| index.cell_of(ps.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min), k));
            let cmax: [i64; 3] = std::array::from_fn(|k| index.cell_of(ps.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max), k));
            for x in cmin[0]..=cmax[0] {
                for y in cmin[1]..=cmax[1] {
                    for z in cmin[2]..=cmax[2] {
                        index.cells.entry([x, y, z]).or_default().push(ti);
                    }
                }
            }
        }
        index
    }

    fn cell_of(&self, v: f64, k: usize) -> i64 {
        (((v - self.lo[k]) / self.h).floor() as i64).clamp(0, self.dims[k] - 1)
    }

    /// Distance from p to the mesh, searching shells of cells outward until
    /// no unvisited cell can hold anything closer.
    pub fn distance(&self, p: Vec3) -> f64 {
        let c: [i64; 3] = std::array::from_fn(|k| self.cell_of(p[k], k));
        let max_r = self.dims.iter().copied().max().unwrap_or(1);
        let mut best = f64::INFINITY;
        for r in 0..=max_r {
            for x in c[0] - r..=c[0] + r {
                for y in c[1] - r..=c[1] + r {
                    for z in c[2] - r..=c[2] + r {
                        let on_shell = (x - c[0]).abs() == r || (y - c[1]).abs() == r || (z - c[2]).abs() == r;
                        if !on_shell {
                            continue;
                        }
                        if let Some(ts) = self.cells.get(&[x, y, z]) {
                            for &ti in ts {
                                let [a, b, cc] = self.mesh.triangles[ti].map(|i| self.mesh.vertices[i].position);
                                best = best.min(point_triangle_distance(p, a, b, cc));
                            }
                        }
                    }
                }
            }
            // Cells beyond shell r are at least r·h away (p clamped into the grid only moves closer).
            if best <= r as f64 * self.h {
                break;
            }
        }
        best
    }
}

/// Hausdorff tolerance relative to the piece's diameter.
pub const SYMMETRY_TOL: f64 = 1e-5;

/// For each motion, the largest distance from a moved vertex to the piece,
/// relative to its diameter (`symmetry.<i>` ids, tolerance 1e−5).
pub fn check_symmetries(piece: &Mesh, motions: &[RigidMotion]) -> VerificationReport {
    let index = TriangleIndex::new(piece);
    let diam = piece.diameter();
    let mut r = VerificationReport::new();
    for (i, m) in motions.iter().enumerate() {
        let d = piece.vertices.iter().map(|v| index.distance(m.apply(v.position))).fold(0.0, f64::max);
        r.add(format!("symmetry.{i}"), d / diam, SYMMETRY_TOL, format!("{:?}, one-sided Hausdorff {d:.3e}", m.kind));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances_to_a_triangle() {
        let (a, b, c) = ([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        assert!((point_triangle_distance([0.2, 0.2, 3.0], a, b, c) - 3.0).abs() < 1e-15);
        assert!((point_triangle_distance([-1.0, -1.0, 0.0], a, b, c) - 2f64.sqrt()).abs() < 1e-15);
        assert!((point_triangle_distance([1.0, 1.0, 0.0], a, b, c) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((point_triangle_distance([0.5, -2.0, 0.0], a, b, c) - 2.0).abs() < 1e-15);
    }
}
