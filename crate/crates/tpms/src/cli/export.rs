//! Mesh files.

use crate::builder::{Mesh, Vec3};
use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
}

/// Plain decimal with 17 significant digits, enough to round-trip an f64.
fn decimal(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.16}");
    }
    let decimals = (16 - v.abs().log10().floor() as i64).max(0) as usize;
    format!("{v:.decimals$}")
}

/// ASCII OBJ: one `v x y z` line per vertex in mesh order, then one
/// 1-indexed `f i j k` line per triangle.
pub fn export_mesh<W: Write>(mesh: &Mesh, format: MeshFormat, out: &mut W) -> io::Result<()> {
    match format {
        MeshFormat::Obj => {
            let mut w = io::BufWriter::new(out);
            for v in &mesh.vertices {
                let [x, y, z] = v.position;
                writeln!(w, "v {} {} {}", decimal(x), decimal(y), decimal(z))?;
            }
            for t in &mesh.triangles {
                writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
            }
            w.flush()
        }
    }
}

/// Reads back the `v` and `f` lines of an OBJ file (triangles only; `i/j/k`
/// index forms keep the vertex index). Returns 0-indexed triangles.
pub fn parse_obj(text: &str) -> Result<(Vec<Vec3>, Vec<[usize; 3]>), String> {
    let (mut vs, mut fs) = (Vec::new(), Vec::new());
    for (i, line) in text.lines().enumerate() {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let c: Vec<f64> = it.map(|s| s.parse::<f64>().map_err(|_| format!("line {}: bad coordinate '{s}'", i + 1))).collect::<Result<_, _>>()?;
                if c.len() < 3 {
                    return Err(format!("line {}: vertex needs 3 coordinates", i + 1));
                }
                vs.push([c[0], c[1], c[2]]);
            }
            Some("f") => {
                let idx: Vec<usize> = it
                    .map(|s| s.split('/').next().unwrap_or("").parse::<usize>().map_err(|_| format!("line {}: bad index '{s}'", i + 1)))
                    .collect::<Result<_, _>>()?;
                if idx.len() != 3 || idx.contains(&0) {
                    return Err(format!("line {}: expected three 1-based indices", i + 1));
                }
                fs.push([idx[0] - 1, idx[1] - 1, idx[2] - 1]);
            }
            _ => {}
        }
    }
    if let Some(t) = fs.iter().find(|t| t.iter().any(|&k| k >= vs.len())) {
        return Err(format!("face {t:?} refers past the {} vertices", vs.len()));
    }
    Ok((vs, fs))
}
