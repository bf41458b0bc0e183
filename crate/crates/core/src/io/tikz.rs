//! TikZ fragments: 2-D mesh drawings and layered Hasse diagrams.

use std::io::Write;

use crate::error::{Error, Result};
use crate::geometry::{cell_vertices, Coordinates};
use crate::topology::MeshTopology;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TikzMode {
    /// Vertices, edges, and cell numbers of a 2-D embedded mesh.
    Mesh,
    /// One row of nodes per stratum, arrows from each cone point up to its
    /// supported point.
    Hasse,
}

pub fn write_tikz<W: Write>(
    w: &mut W,
    mesh: &dyn MeshTopology,
    coords: Option<&Coordinates<f64>>,
    mode: TikzMode,
) -> Result<()> {
    match mode {
        TikzMode::Hasse => hasse(w, mesh),
        TikzMode::Mesh => {
            let coords = coords.ok_or_else(|| {
                Error::InvalidOptions("tikz mesh mode needs coordinates".into())
            })?;
            mesh_2d(w, mesh, coords)
        }
    }
}

fn hasse<W: Write>(w: &mut W, mesh: &dyn MeshTopology) -> Result<()> {
    let top = mesh.dim();
    writeln!(w, "\\begin{{tikzpicture}}[scale=1.0,>=stealth]")?;
    for d in 0..=top {
        let row = mesh.stratum(d);
        let y = top as isize - d as isize;
        for (i, &p) in row.iter().enumerate() {
            writeln!(
                w,
                "  \\node({p}) [draw,shape=circle,minimum size=6mm] at ({i}.0,{y}.0) {{{p}}};"
            )?;
        }
    }
    for d in 1..=top {
        for p in mesh.stratum(d) {
            for (q, _) in mesh.cone(p)? {
                writeln!(w, "  \\draw[->,shorten >=1pt] ({q}) -- ({p});")?;
            }
        }
    }
    writeln!(w, "\\end{{tikzpicture}}")?;
    Ok(())
}

fn mesh_2d<W: Write>(w: &mut W, mesh: &dyn MeshTopology, coords: &Coordinates<f64>) -> Result<()> {
    if mesh.dim() != 2 || coords.dim() != 2 {
        return Err(Error::InvalidOptions(
            "tikz mesh mode draws 2-D meshes with 2-D coordinates".into(),
        ));
    }
    writeln!(w, "\\begin{{tikzpicture}}[scale=4.0]")?;
    for v in mesh.stratum(0) {
        let x = coords.get(v);
        writeln!(
            w,
            "  \\node({v}) [fill,inner sep=1pt,shape=circle,color=gray] at ({},{}) {{}};",
            x[0], x[1]
        )?;
    }
    for e in mesh.stratum(1) {
        let cone = mesh.cone(e)?;
        writeln!(w, "  \\draw[color=gray] ({}) -- ({});", cone[0].0, cone[1].0)?;
    }
    for c in mesh.stratum(2) {
        let verts = cell_vertices(mesh, c)?;
        let (mut cx, mut cy) = (0.0, 0.0);
        for &v in &verts {
            let x = coords.get(v);
            cx += x[0];
            cy += x[1];
        }
        let n = verts.len() as f64;
        writeln!(
            w,
            "  \\node [color=green!50!black] at ({},{}) {{{c}}};",
            cx / n,
            cy / n
        )?;
    }
    writeln!(w, "\\end{{tikzpicture}}")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn doublet_hasse_counts() {
        let (mesh, _) = generate::gen_box::<f64>(&[1, 1], true).unwrap();
        let mut buf = Vec::new();
        write_tikz(&mut buf, &mesh, None, TikzMode::Hasse).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("\\node").count(), 11); // 4 + 5 + 2
        assert_eq!(text.matches("\\draw[->").count(), 16); // 6 + 10
        // one row per stratum
        for y in 0..=2 {
            assert!(text.contains(&format!(",{y}.0)")));
        }
    }

    #[test]
    fn mesh_mode_requires_coordinates() {
        let (mesh, coords) = generate::gen_box::<f64>(&[2, 2], false).unwrap();
        assert!(write_tikz(&mut Vec::new(), &mesh, None, TikzMode::Mesh).is_err());
        let mut buf = Vec::new();
        write_tikz(&mut buf, &mesh, Some(&coords), TikzMode::Mesh).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("\\draw[color=gray]").count(), 12);
    }
}
