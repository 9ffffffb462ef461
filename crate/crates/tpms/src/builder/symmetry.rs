//! Rigid motions of the surface, assembly of the fundamental piece from
//! copies of the domain image, and tiling.
//!
//! In every family SB and S′B′ are horizontal straight lines and the
//! translation S ↦ S′ (the composite of the half-turns about SB and about
//! the ρ_h axis) is the vertical lattice vector. Its horizontal part is the
//! open period: zero exactly when the scalar period condition holds. The
//! seams SB, S′B′ stay open in the piece and are closed by that translation.
//!
//! * C2: D ∪ σ(D), σ the reflection in the vertical plane of BL (which also
//!   carries B′F′). The free boundary is LS′, F′S and their σ-images, four
//!   planar curves in vertical planes at ±45°.
//! * L2, L4: the orbit of D under the reflections in the planes of LS′ and
//!   F′S, which are perpendicular. The free boundary consists of the images
//!   of the straight segments BL and B′F′.

use super::mesh::{add, cross, dot, norm, scale, sub, Chain, Mesh, SurfaceSample, Vec3};
use crate::error::{Error, Result};
use crate::families::{ArcLabel, FamilyId};
use num_complex::Complex64;
use std::collections::HashMap;

pub type Mat3 = [[f64; 3]; 3];

const IDENTITY: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotionKind {
    /// Reflection in a vertical plane.
    VerticalReflection,
    /// Half-turn about a horizontal line.
    HorizontalHalfTurn,
    VerticalTranslation,
    /// Any other translation (horizontal lattice vectors).
    Translation,
    /// Composites that are none of the above.
    General,
}

/// p ↦ linear·p + shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub linear: Mat3,
    pub shift: Vec3,
    pub kind: MotionKind,
}

fn mat_vec(m: &Mat3, v: Vec3) -> Vec3 {
    std::array::from_fn(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
}

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

fn transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

fn det(a: &Mat3) -> f64 {
    dot(a[0], cross(a[1], a[2]))
}

fn unit(v: Vec3) -> Vec3 {
    scale(v, 1.0 / norm(v))
}

impl RigidMotion {
    pub fn identity() -> Self {
        RigidMotion { linear: IDENTITY, shift: [0.0; 3], kind: MotionKind::VerticalTranslation }
    }

    pub fn translation(v: Vec3) -> Self {
        let kind = if v[0] == 0.0 && v[1] == 0.0 { MotionKind::VerticalTranslation } else { MotionKind::Translation };
        RigidMotion { linear: IDENTITY, shift: v, kind }
    }

    /// Reflection in the vertical plane {p : n·p = offset}; `n` is made
    /// horizontal and unit.
    pub fn vertical_reflection(n: Vec3, offset: f64) -> Self {
        let h = norm([n[0], n[1], 0.0]);
        let n = [n[0] / h, n[1] / h, 0.0];
        let offset = offset / h;
        let linear = std::array::from_fn(|i| std::array::from_fn(|j| IDENTITY[i][j] - 2.0 * n[i] * n[j]));
        RigidMotion { linear, shift: scale(n, 2.0 * offset), kind: MotionKind::VerticalReflection }
    }

    /// Half-turn about the line through `point` with direction `dir`
    /// (the vertical component of `dir` is dropped).
    pub fn half_turn(point: Vec3, dir: Vec3) -> Self {
        let d = unit([dir[0], dir[1], 0.0]);
        let linear: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| 2.0 * d[i] * d[j] - IDENTITY[i][j]));
        let shift = sub(point, mat_vec(&linear, point));
        RigidMotion { linear, shift, kind: MotionKind::HorizontalHalfTurn }
    }

    pub fn apply(&self, p: Vec3) -> Vec3 {
        add(mat_vec(&self.linear, p), self.shift)
    }

    pub fn apply_vector(&self, v: Vec3) -> Vec3 {
        mat_vec(&self.linear, v)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &RigidMotion) -> RigidMotion {
        let linear = mat_mul(&self.linear, &other.linear);
        let shift = self.apply(other.shift);
        let mut m = RigidMotion { linear, shift, kind: MotionKind::General };
        if m.translation_part(1e-12).is_some() {
            m = RigidMotion::translation(shift);
        }
        m
    }

    pub fn inverse(&self) -> RigidMotion {
        let linear = transpose(&self.linear);
        let shift = scale(mat_vec(&linear, self.shift), -1.0);
        RigidMotion { linear, shift, kind: self.kind }
    }

    pub fn reverses_orientation(&self) -> bool {
        det(&self.linear) < 0.0
    }

    /// The translation vector if the linear part is the identity within `tol`.
    pub fn translation_part(&self, tol: f64) -> Option<Vec3> {
        let off = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| (self.linear[i][j] - IDENTITY[i][j]).abs()).fold(0.0, f64::max);
        (off <= tol).then_some(self.shift)
    }

    /// Orthogonality and the shape constraint of the kind.
    pub fn validate(&self) -> Result<()> {
        let q = mat_mul(&transpose(&self.linear), &self.linear);
        let err = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| (q[i][j] - IDENTITY[i][j]).abs()).fold(0.0, f64::max);
        if err > 1e-12 {
            return Err(Error::Consistency(format!("linear part is not orthogonal (error {err:.2e})")));
        }
        let l = &self.linear;
        let ok = match self.kind {
            // Fixes e₃, determinant −1, involution.
            MotionKind::VerticalReflection => (l[2][2] - 1.0).abs() < 1e-12 && l[0][2].abs() < 1e-12 && l[1][2].abs() < 1e-12 && det(l) < 0.0,
            // Sends e₃ to −e₃, trace −1 (a rotation by π about a horizontal axis).
            MotionKind::HorizontalHalfTurn => {
                (l[2][2] + 1.0).abs() < 1e-12 && (l[0][0] + l[1][1] + l[2][2] + 1.0).abs() < 1e-12 && det(l) > 0.0
            }
            MotionKind::VerticalTranslation => self.translation_part(1e-12).is_some() && self.shift[0] == 0.0 && self.shift[1] == 0.0,
            MotionKind::Translation => self.translation_part(1e-12).is_some(),
            MotionKind::General => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Consistency(format!("matrix shape does not match {:?}", self.kind)))
        }
    }
}

fn mean(points: &[Vec3]) -> Vec3 {
    let s = points.iter().fold([0.0; 3], |a, p| add(a, *p));
    scale(s, 1.0 / points.len() as f64)
}

/// Dominant eigenvector of a symmetric 3×3 matrix by power iteration.
fn principal(cov: &Mat3, start: Vec3) -> Vec3 {
    let mut v = if norm(start) > 0.0 { unit(start) } else { [1.0, 0.0, 0.0] };
    for _ in 0..500 {
        let u = mat_vec(cov, v);
        if norm(u) == 0.0 {
            break;
        }
        v = unit(u);
    }
    v
}

fn covariance(points: &[Vec3], c: Vec3) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for p in points {
        let d = sub(*p, c);
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += d[i] * d[j];
            }
        }
    }
    m
}

/// Reflection in the vertical plane through the points (least squares in
/// the horizontal projection) and the largest distance of a point from it.
pub fn fit_vertical_plane(points: &[Vec3]) -> (RigidMotion, f64) {
    let flat: Vec<Vec3> = points.iter().map(|p| [p[0], p[1], 0.0]).collect();
    let c = mean(&flat);
    let chord = sub(flat[flat.len() - 1], flat[0]);
    let d = principal(&covariance(&flat, c), chord);
    let n = [-d[1], d[0], 0.0];
    let off = dot(n, c);
    let res = points.iter().map(|p| (dot(n, *p) - off).abs()).fold(0.0, f64::max);
    (RigidMotion::vertical_reflection(n, off), res)
}

/// Half-turn about the horizontal line best fitting the points, and the
/// largest distance of a point from that line.
pub fn fit_horizontal_line(points: &[Vec3]) -> (RigidMotion, f64) {
    let c = mean(points);
    let chord = sub(points[points.len() - 1], points[0]);
    let d = principal(&covariance(points, c), chord);
    let dh = unit([d[0], d[1], 0.0]);
    let res = points
        .iter()
        .map(|p| {
            let v = sub(*p, c);
            norm(sub(v, scale(dh, dot(v, dh))))
        })
        .fold(0.0, f64::max);
    (RigidMotion::half_turn(c, dh), res)
}

fn g_from_normal(n: Vec3) -> Complex64 {
    if n[2] >= 1.0 {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    Complex64::new(n[0], n[1]) / (1.0 - n[2])
}

fn moved_sample(v: &SurfaceSample, m: &RigidMotion, swap: bool) -> SurfaceSample {
    let mut normal = m.apply_vector(v.normal);
    if swap {
        normal = scale(normal, -1.0);
    }
    // Keep g exact where the normal is unchanged (0 and ∞ at corners).
    let g = if norm(sub(normal, v.normal)) == 0.0 { v.g } else { g_from_normal(normal) };
    SurfaceSample { w: v.w, z: v.z, g, position: m.apply(v.position), normal }
}

/// A motion applied to an oriented piece of the surface. `swaps_sides` is
/// set when the image's Gauss map is the antipode of the moved normal: the
/// half-turn about a straight line on the surface does this, a reflection
/// in the plane of a symmetry curve does not.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub motion: RigidMotion,
    pub swaps_sides: bool,
}

impl Placement {
    pub fn new(motion: RigidMotion, swaps_sides: bool) -> Self {
        Placement { motion, swaps_sides }
    }

    pub fn identity() -> Self {
        Placement::new(RigidMotion::identity(), false)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Placement) -> Placement {
        Placement::new(self.motion.compose(&other.motion), self.swaps_sides != other.swaps_sides)
    }
}

/// The image of a mesh under a rigid motion, keeping the normals and the
/// triangle winding consistent.
pub fn transform_mesh(mesh: &Mesh, m: &RigidMotion) -> Mesh {
    place_mesh(mesh, &Placement::new(*m, false))
}

pub fn place_mesh(mesh: &Mesh, p: &Placement) -> Mesh {
    let flip = p.motion.reverses_orientation() != p.swaps_sides;
    Mesh {
        family: mesh.family,
        params: mesh.params,
        resolution: mesh.resolution,
        vertices: mesh.vertices.iter().map(|v| moved_sample(v, &p.motion, p.swaps_sides)).collect(),
        triangles: mesh.triangles.iter().map(|t| if flip { [t[0], t[2], t[1]] } else { *t }).collect(),
        arcs: mesh.arcs.clone(),
        tree_gap: mesh.tree_gap,
    }
}

/// Index of the branch point A (w = 0).
fn a_vertex(mesh: &Mesh) -> usize {
    (0..mesh.vertices.len()).min_by(|&i, &j| mesh.vertices[i].w.norm().total_cmp(&mesh.vertices[j].w.norm())).expect("nonempty mesh")
}

/// The half-turn about the line through A parallel to x₂:
/// (x₁, x₂, x₃) ↦ (−x₁, x₂, −x₃) relative to A.
pub fn rho_h_motion(mesh: &Mesh) -> RigidMotion {
    RigidMotion::half_turn(mesh.vertices[a_vertex(mesh)].position, [0.0, 1.0, 0.0])
}

pub fn apply_rho_h(mesh: &Mesh) -> Mesh {
    transform_mesh(mesh, &rho_h_motion(mesh))
}

/// A reflection or half-turn in one boundary object of the piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryObject {
    pub label: ArcLabel,
    /// Copy of D carrying the object (for merged collinear segments: the first).
    pub copy: usize,
    pub motion: RigidMotion,
    /// True for half-turns about boundary segments.
    pub swaps_sides: bool,
    /// Largest distance of the chain from the fitted plane or line.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct FundamentalPiece {
    pub mesh: Mesh,
    /// Placements of the copies of D; copy 0 is D itself.
    pub copies: Vec<Placement>,
    /// The free boundary: four objects for C2 and L4.
    pub boundary: Vec<BoundaryObject>,
    /// Reflections under which the piece is invariant, and ρ_h.
    pub symmetries: Vec<RigidMotion>,
    /// S′ − S: the vertical lattice vector when the period closes.
    pub vertical: Vec3,
    /// Horizontal part of `vertical`.
    pub leak: Vec3,
    /// Largest displacement of a glued chain under its gluing motion.
    pub seam_gap: f64,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut j = i;
        while self.0[j] != r {
            let next = self.0[j];
            self.0[j] = r;
            j = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Merges vertices of different groups lying within `tol` of each other.
/// Returns the merged mesh pieces (old → new index) and the largest
/// distance between merged vertices.
fn weld(vertices: &[SurfaceSample], group: &[usize], tol: f64) -> (Vec<usize>, Vec<usize>, f64) {
    let key = |p: Vec3| -> [i64; 3] { std::array::from_fn(|k| (p[k] / tol).floor() as i64) };
    let mut cells: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        cells.entry(key(v.position)).or_default().push(i);
    }
    let mut uf = UnionFind((0..vertices.len()).collect());
    let mut gap: f64 = 0.0;
    for (i, v) in vertices.iter().enumerate() {
        let k = key(v.position);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let Some(list) = cells.get(&[k[0] + dx, k[1] + dy, k[2] + dz]) else { continue };
                    for &j in list {
                        if j <= i || group[j] == group[i] {
                            continue;
                        }
                        let d = norm(sub(vertices[j].position, v.position));
                        if d <= tol {
                            gap = gap.max(d);
                            uf.union(i, j);
                        }
                    }
                }
            }
        }
    }
    let mut new_index = vec![usize::MAX; vertices.len()];
    let mut kept = Vec::new();
    for i in 0..vertices.len() {
        let r = uf.find(i);
        if new_index[r] == usize::MAX {
            new_index[r] = kept.len();
            kept.push(r);
        }
        new_index[i] = new_index[r];
    }
    (new_index, kept, gap)
}

/// Copies of `mesh` under `motions`, welded along coincident vertices.
/// Chains of copy k of a source chain with copy c get copy k·stride + c.
fn union_of_copies(mesh: &Mesh, motions: &[Placement], tol: f64) -> (Mesh, f64) {
    let nv = mesh.vertices.len();
    let stride = mesh.arcs.iter().map(|c| c.copy + 1).max().unwrap_or(1);
    let mut verts = Vec::with_capacity(nv * motions.len());
    let mut group = Vec::with_capacity(nv * motions.len());
    let mut tris = Vec::new();
    let mut arcs = Vec::new();
    for (k, m) in motions.iter().enumerate() {
        let img = place_mesh(mesh, m);
        verts.extend(img.vertices);
        group.extend(std::iter::repeat_n(k, nv));
        tris.extend(img.triangles.iter().map(|t| t.map(|i| i + k * nv)));
        arcs.extend(mesh.arcs.iter().map(|c| Chain { label: c.label, copy: k * stride + c.copy, vertices: c.vertices.iter().map(|i| i + k * nv).collect() }));
    }
    let (map, kept, gap) = weld(&verts, &group, tol);
    let vertices = kept.iter().map(|&i| verts[i]).collect();
    let triangles = tris.iter().map(|t| t.map(|i| map[i])).collect();
    for c in arcs.iter_mut() {
        for i in c.vertices.iter_mut() {
            *i = map[*i];
        }
    }
    let out = Mesh { family: mesh.family, params: mesh.params, resolution: mesh.resolution, vertices, triangles, arcs, tree_gap: mesh.tree_gap };
    (out, gap)
}

fn chain_points(mesh: &Mesh, label: ArcLabel, copy: usize) -> Result<Vec<Vec3>> {
    mesh.chain_copy(label, copy)
        .map(|c| c.iter().map(|&i| mesh.vertices[i].position).collect())
        .ok_or_else(|| Error::Construction(format!("chain {label} (copy {copy}) missing")))
}

/// Largest displacement of a chain of D under a motion.
fn chain_displacement(mesh: &Mesh, label: ArcLabel, m: &RigidMotion) -> Result<f64> {
    Ok(chain_points(mesh, label, 0)?.iter().map(|p| norm(sub(m.apply(*p), *p))).fold(0.0, f64::max))
}

/// The gap tolerance used by assembly and tiling, relative to the size of D.
pub fn gluing_tolerance(mesh: &Mesh) -> f64 {
    1e-6 * mesh.diameter()
}

/// Glues the copies of D into the fundamental piece, rejecting an open period
/// (leak beyond 1e−6 of the diameter of D).
pub fn assemble_fundamental_piece(mesh: &Mesh) -> Result<FundamentalPiece> {
    assemble_with_tolerance(mesh, Some(gluing_tolerance(mesh)))
}

/// As [`assemble_fundamental_piece`]; `None` accepts any period leak (for
/// inspecting unsolved parameters) but still requires planar and straight
/// boundary chains.
pub fn assemble_with_tolerance(mesh: &Mesh, leak_tol: Option<f64>) -> Result<FundamentalPiece> {
    let tol = gluing_tolerance(mesh);
    let s = chain_points(mesh, ArcLabel::SB, 0)?[0];
    let sp = chain_points(mesh, ArcLabel::SpBp, 0)?[0];
    let vertical = sub(sp, s);
    let leak = [vertical[0], vertical[1], 0.0];
    if let Some(lt) = leak_tol {
        if norm(leak) > lt {
            return Err(Error::PeriodLeak { gap: leak, norm: norm(leak) });
        }
    }
    let rho = rho_h_motion(mesh);
    let (copies, glued, free) = match mesh.family {
        FamilyId::C2 => {
            let (sigma, _) = fit_vertical_plane(&chain_points(mesh, ArcLabel::BL, 0)?);
            (vec![RigidMotion::identity(), sigma], vec![(ArcLabel::BL, sigma), (ArcLabel::BpFp, sigma)], [ArcLabel::LSp, ArcLabel::FpS])
        }
        FamilyId::L2 | FamilyId::L4 => {
            let (r1, _) = fit_vertical_plane(&chain_points(mesh, ArcLabel::LSp, 0)?);
            let (r2, _) = fit_vertical_plane(&chain_points(mesh, ArcLabel::FpS, 0)?);
            let r12 = r1.compose(&r2);
            (vec![RigidMotion::identity(), r1, r2, r12], vec![(ArcLabel::LSp, r1), (ArcLabel::FpS, r2)], [ArcLabel::BL, ArcLabel::BpFp])
        }
    };
    let mut seam_gap: f64 = 0.0;
    for (label, m) in &glued {
        let d = chain_displacement(mesh, *label, m)?;
        seam_gap = seam_gap.max(d);
        if d > tol {
            let worst = chain_points(mesh, *label, 0)?
                .iter().map(|p| sub(m.apply(*p), *p)).max_by(|a, b| norm(*a).total_cmp(&norm(*b))).unwrap_or([0.0; 3]);
            return Err(Error::PeriodLeak { gap: worst, norm: d });
        }
    }
    let placements: Vec<Placement> = copies.iter().map(|m| Placement::new(*m, false)).collect();
    let (piece_mesh, _) = union_of_copies(mesh, &placements, tol);

    let mut boundary: Vec<BoundaryObject> = Vec::new();
    for copy in 0..copies.len() {
        for label in free {
            let pts = chain_points(&piece_mesh, label, copy)?;
            let (motion, residual) = match mesh.family {
                FamilyId::C2 => fit_vertical_plane(&pts),
                _ => fit_horizontal_line(&pts),
            };
            if residual > tol {
                return Err(Error::Consistency(format!("boundary chain {label} (copy {copy}) is off its {} by {residual:.3e}", if mesh.family == FamilyId::C2 { "plane" } else { "line" })));
            }
            // Collinear segments meeting at a corner form one boundary segment.
            let dup = boundary.iter().any(|b| same_motion(&b.motion, &motion, tol));
            if !dup {
                let swaps_sides = motion.kind == MotionKind::HorizontalHalfTurn;
                boundary.push(BoundaryObject { label, copy, motion, swaps_sides, residual });
            }
        }
    }
    let mut symmetries = vec![rho];
    symmetries.extend(copies.iter().skip(1).filter(|m| m.kind == MotionKind::VerticalReflection).copied());
    Ok(FundamentalPiece { mesh: piece_mesh, copies: placements, boundary, symmetries, vertical, leak, seam_gap })
}

fn same_motion(a: &RigidMotion, b: &RigidMotion, tol: f64) -> bool {
    let dl = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| (a.linear[i][j] - b.linear[i][j]).abs()).fold(0.0, f64::max);
    dl < 1e-6 && norm(sub(a.shift, b.shift)) < 100.0 * tol
}

#[derive(Debug, Clone)]
pub struct TiledBlock {
    pub mesh: Mesh,
    /// Two horizontal lattice vectors (each the composite of two parallel
    /// boundary symmetries) and the vertical one.
    pub lattice: [Vec3; 3],
    /// Placement of each copy of the piece, in (i, j, k) order with i fastest.
    pub placements: Vec<Placement>,
    /// Largest distance between vertices identified across copies.
    pub gluing_gap: f64,
}

/// Pairs of parallel boundary symmetries whose composite is a horizontal
/// translation, shortest first, with independent directions.
fn horizontal_generators(piece: &FundamentalPiece) -> Result<[(Placement, Placement, Vec3); 2]> {
    let b = &piece.boundary;
    let tol = 1e-9;
    let mut pairs = Vec::new();
    for i in 0..b.len() {
        for j in 0..b.len() {
            if i == j {
                continue;
            }
            let m = b[i].motion.compose(&b[j].motion);
            if let Some(t) = m.translation_part(tol) {
                let horiz = t[2].abs() <= 1e-9 * norm(t).max(1.0);
                if horiz && norm(t) > 1e-6 {
                    let (pi, pj) = (Placement::new(b[i].motion, b[i].swaps_sides), Placement::new(b[j].motion, b[j].swaps_sides));
                    pairs.push((pi, pj, [t[0], t[1], 0.0]));
                }
            }
        }
    }
    pairs.sort_by(|x, y| norm(x.2).total_cmp(&norm(y.2)));
    let first = *pairs.first().ok_or_else(|| Error::Construction("no parallel boundary symmetries".into()))?;
    let second = pairs
        .iter()
        .find(|p| norm(cross(first.2, p.2)) > 1e-6 * norm(first.2) * norm(p.2))
        .copied()
        .ok_or_else(|| Error::Construction("boundary symmetries give only one horizontal direction".into()))?;
    Ok([first, second])
}

/// Successive symmetries a, a∘b, a∘b∘a, … (the image after `n` crossings).
fn word(a: &Placement, b: &Placement, n: usize) -> Placement {
    let mut m = Placement::identity();
    for k in 0..n {
        m = m.compose(if k % 2 == 0 { a } else { b });
    }
    m
}

/// Builds an `n₁ × n₂ × n₃` block of pieces by successive boundary
/// symmetries in two horizontal directions and vertical translations.
pub fn tile(piece: &FundamentalPiece, counts: [usize; 3]) -> Result<TiledBlock> {
    if counts.contains(&0) {
        return Err(Error::Domain(format!("tile counts must be positive, got {counts:?}")));
    }
    let [(a1, b1, v1), (a2, b2, v2)] = horizontal_generators(piece)?;
    // S ↦ S′ is the half-turn about SB followed by ρ_h: it swaps the sides.
    let up = Placement::new(RigidMotion::translation(piece.vertical), true);
    let mut placements = Vec::with_capacity(counts.iter().product());
    for k in 0..counts[2] {
        let tk = word(&up, &up, k);
        for j in 0..counts[1] {
            let wj = word(&a2, &b2, j);
            for i in 0..counts[0] {
                placements.push(tk.compose(&word(&a1, &b1, i)).compose(&wj));
            }
        }
    }
    let tol = gluing_tolerance(&piece.mesh) * 0.5;
    let (mesh, gluing_gap) = union_of_copies(&piece.mesh, &placements, tol);
    Ok(TiledBlock { mesh, lattice: [v1, v2, piece.vertical], placements, gluing_gap })
}
