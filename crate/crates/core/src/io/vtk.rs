//! Legacy VTK ASCII unstructured-grid output.

use std::io::Write;

use crate::error::{Error, Result};
use crate::geometry::{cell_vertices, Coordinates};
use crate::polytope::Polytope;
use crate::topology::MeshTopology;

/// VTK cell id and the permutation from our closure vertex order to VTK's.
/// Tensor cells borrow the id of their box counterpart.
fn vtk_map(shape: Polytope) -> Result<(u8, &'static [usize], bool)> {
    use Polytope::*;
    Ok(match shape {
        Point => (1, &[0], false),
        Segment => (3, &[0, 1], false),
        PointPrismTensor => (3, &[0, 1], true),
        Triangle => (5, &[0, 1, 2], false),
        Quadrilateral => (9, &[0, 1, 2, 3], false),
        SegPrismTensor => (9, &[0, 1, 3, 2], true),
        Tetrahedron => (10, &[0, 2, 1, 3], false),
        Hexahedron => (12, &[0, 3, 2, 1, 4, 5, 6, 7], false),
        TriPrism => (13, &[0, 2, 1, 3, 5, 4], false),
        TriPrismTensor => (13, &[0, 2, 1, 3, 5, 4], true),
        QuadPrismTensor => (12, &[0, 1, 2, 3, 4, 5, 6, 7], true),
    })
}

/// Write the top-dimensional cells as a legacy VTK unstructured grid.
/// Returns warnings for tensor shapes mapped onto standard ids.
pub fn write_vtk<W: Write>(
    w: &mut W,
    mesh: &dyn MeshTopology,
    coords: &Coordinates<f64>,
) -> Result<Vec<String>> {
    let verts = mesh.stratum(0);
    let mut vtk_index = std::collections::HashMap::new();
    for (i, &v) in verts.iter().enumerate() {
        vtk_index.insert(v, i);
    }
    writeln!(w, "# vtk DataFile Version 3.0")?;
    writeln!(w, "plexmesh output")?;
    writeln!(w, "ASCII")?;
    writeln!(w, "DATASET UNSTRUCTURED_GRID")?;
    writeln!(w, "POINTS {} double", verts.len())?;
    for &v in &verts {
        let x = coords.try_get(v).ok_or_else(|| {
            Error::InvalidOptions(format!("vertex {v} has no coordinates"))
        })?;
        let mut padded = [0.0; 3];
        padded[..x.len().min(3)].copy_from_slice(&x[..x.len().min(3)]);
        writeln!(w, "{} {} {}", padded[0], padded[1], padded[2])?;
    }
    let cells = mesh.stratum(mesh.dim());
    let mut warnings = Vec::new();
    let mut warned: Vec<Polytope> = Vec::new();
    let mut body = String::new();
    let mut types = String::new();
    let mut total = 0usize;
    for &c in &cells {
        let shape = mesh.shape_of(c)?;
        let (id, perm, tensor) = vtk_map(shape)?;
        if tensor && !warned.contains(&shape) {
            warned.push(shape);
            warnings.push(format!(
                "tensor cells of shape {shape} written with VTK type {id}"
            ));
        }
        let cv = cell_vertices(mesh, c)?;
        body.push_str(&cv.len().to_string());
        for &k in perm {
            body.push(' ');
            body.push_str(&vtk_index[&cv[k]].to_string());
        }
        body.push('\n');
        types.push_str(&id.to_string());
        types.push('\n');
        total += cv.len() + 1;
    }
    writeln!(w, "CELLS {} {total}", cells.len())?;
    w.write_all(body.as_bytes())?;
    writeln!(w, "CELL_TYPES {}", cells.len())?;
    w.write_all(types.as_bytes())?;
    Ok(warnings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn quad_box_writes_nine_quads() {
        let (mesh, coords) = generate::gen_box::<f64>(&[3, 3], false).unwrap();
        let mut buf = Vec::new();
        let warnings = write_vtk(&mut buf, &mesh, &coords).unwrap();
        assert!(warnings.is_empty());
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("POINTS 16 double"));
        assert!(text.contains("CELLS 9 45"));
        let quad_lines = text
            .lines()
            .skip_while(|l| !l.starts_with("CELL_TYPES"))
            .skip(1)
            .filter(|l| *l == "9")
            .count();
        assert_eq!(quad_lines, 9);
    }

    #[test]
    fn tensor_cells_warn() {
        use crate::polytope::Polytope::TriPrismTensor;
        let (mesh, coords) = generate::reference_cell::<f64>(TriPrismTensor).unwrap();
        let mut buf = Vec::new();
        let warnings = write_vtk(&mut buf, &mesh, &coords).unwrap();
        assert_eq!(warnings.len(), 1);
    }
}
