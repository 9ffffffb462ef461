//! Discrete mean curvature by the cotangent Laplacian with mixed areas.

use super::report::VerificationReport;
use crate::builder::{cross, dot, norm, sub, Mesh};
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq)]
pub struct MeanCurvature {
    /// |H| per vertex; NaN on boundary vertices and where the mixed area vanishes.
    pub per_vertex: Vec<f64>,
    pub max: f64,
    pub mean: f64,
    /// Vertex where `max` is attained.
    pub argmax: usize,
    pub interior: usize,
    pub degenerate_triangles: usize,
}

/// |H| = |Δx·n|/2 with Δx = (1/2A) Σ (cot α + cot β)(x_j − x_i) and the
/// mixed (Voronoi/barycentric) area A of Meyer et al. The normal is the
/// area-weighted triangle normal at the vertex.
pub fn mean_curvature(mesh: &Mesh) -> MeanCurvature {
    let n = mesh.vertices.len();
    let p = |i: usize| mesh.vertices[i].position;
    let mut lap = vec![[0.0; 3]; n];
    let mut area = vec![0.0; n];
    let mut normal = vec![[0.0; 3]; n];
    let mut degenerate = 0;
    let diam = mesh.diameter();
    for t in &mesh.triangles {
        let (a, b, c) = (p(t[0]), p(t[1]), p(t[2]));
        let nrm = cross(sub(b, a), sub(c, a));
        let twice = norm(nrm);
        if twice <= 1e-14 * diam * diam {
            degenerate += 1;
            continue;
        }
        let tri_area = 0.5 * twice;
        for k in 0..3 {
            let (i, j, l) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            for m in 0..3 {
                normal[i][m] += nrm[m];
            }
            // Angle at l opposite the edge ij.
            let (u, v) = (sub(p(i), p(l)), sub(p(j), p(l)));
            let cot = dot(u, v) / norm(cross(u, v));
            let e = sub(p(j), p(i));
            for m in 0..3 {
                lap[i][m] += 0.5 * cot * e[m];
                lap[j][m] -= 0.5 * cot * e[m];
            }
        }
        // Mixed area.
        let pts = [a, b, c];
        let obtuse = (0..3).find(|&k| dot(sub(pts[(k + 1) % 3], pts[k]), sub(pts[(k + 2) % 3], pts[k])) < 0.0);
        for k in 0..3 {
            let contrib = match obtuse {
                Some(o) if o == k => tri_area / 2.0,
                Some(_) => tri_area / 4.0,
                None => {
                    let (q, r) = (pts[(k + 1) % 3], pts[(k + 2) % 3]);
                    let cot_r = {
                        let (u, v) = (sub(pts[k], r), sub(q, r));
                        dot(u, v) / norm(cross(u, v))
                    };
                    let cot_q = {
                        let (u, v) = (sub(pts[k], q), sub(r, q));
                        dot(u, v) / norm(cross(u, v))
                    };
                    (dot(sub(q, pts[k]), sub(q, pts[k])) * cot_r + dot(sub(r, pts[k]), sub(r, pts[k])) * cot_q) / 8.0
                }
            };
            area[t[k]] += contrib;
        }
    }
    let boundary: HashSet<usize> = mesh.boundary_edges().into_iter().flat_map(|(a, b)| [a, b]).collect();
    let mut per_vertex = vec![f64::NAN; n];
    let (mut max, mut sum, mut count, mut argmax) = (0.0f64, 0.0, 0usize, 0);
    for i in 0..n {
        if boundary.contains(&i) || area[i] <= 0.0 || norm(normal[i]) == 0.0 {
            continue;
        }
        let nn = norm(normal[i]);
        let unit = [normal[i][0] / nn, normal[i][1] / nn, normal[i][2] / nn];
        let h = (dot(lap[i], unit) / area[i]).abs() / 2.0;
        per_vertex[i] = h;
        sum += h;
        count += 1;
        if h > max {
            max = h;
            argmax = i;
        }
    }
    MeanCurvature { per_vertex, max, mean: if count > 0 { sum / count as f64 } else { f64::NAN }, argmax, interior: count, degenerate_triangles: degenerate }
}

/// Mean curvature in units of 1/diameter, with tolerance `scale·(64/N)`.
pub fn check_minimality(mesh: &Mesh) -> VerificationReport {
    let h = mean_curvature(mesh);
    let d = mesh.diameter();
    let tol = MINIMALITY_SCALE * 64.0 / mesh.resolution.max(1) as f64;
    let mut r = VerificationReport::new();
    let detail = format!("{} interior vertices, {} degenerate triangles excluded", h.interior, h.degenerate_triangles);
    r.add("mean_curvature_max", h.max * d, tol, detail.clone());
    r.add("mean_curvature_mean", h.mean * d, tol / 10.0, detail);
    r
}

/// Dimensionless |H|·diameter allowed at N = 64.
pub const MINIMALITY_SCALE: f64 = 1.0;
