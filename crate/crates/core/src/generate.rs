//! Mesh generators: interpolated box meshes, reference cells, and the unit
//! cube surface.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{Coordinates, Real};
use crate::plex::Plex;
use crate::polytope::{align_tuples, Orientation, Polytope};
use crate::Point;

/// Build a fully interpolated mesh from cells given as vertex lists.
///
/// Faces and edges are created on first use with the vertex order the first
/// incident cell induces; later cells attach with the orientation aligning
/// their induced traversal. The chart is ordered cells, vertices, faces,
/// edges.
pub fn from_cells(
    cell_shapes: &[Polytope],
    cell_vertices: &[Vec<usize>],
    num_vertices: usize,
) -> Result<Plex> {
    assert_eq!(cell_shapes.len(), cell_vertices.len());
    let top = cell_shapes.iter().map(|s| s.dim()).max().unwrap_or(0);
    for (s, vs) in cell_shapes.iter().zip(cell_vertices) {
        if s.dim() != top {
            return Err(Error::InvalidOptions(
                "all cells must have the top dimension".into(),
            ));
        }
        if vs.len() != s.vertex_count() {
            return Err(Error::InvalidOptions(format!(
                "{s} needs {} vertices, got {}",
                s.vertex_count(),
                vs.len()
            )));
        }
    }
    // entities per level, top-down; each holds (shape, global vertex tuple)
    // and oriented cones into the next level down
    struct Level {
        shapes: Vec<Polytope>,
        verts: Vec<Vec<usize>>,
        cones: Vec<Vec<(usize, Orientation)>>, // indices within the next level
        lookup: HashMap<Vec<usize>, usize>,
    }
    let mut levels: Vec<Level> = Vec::new();
    levels.push(Level {
        shapes: cell_shapes.to_vec(),
        verts: cell_vertices.to_vec(),
        cones: vec![Vec::new(); cell_shapes.len()],
        lookup: HashMap::new(),
    });
    for d in (1..=top).rev() {
        let mut next = Level {
            shapes: Vec::new(),
            verts: Vec::new(),
            cones: Vec::new(),
            lookup: HashMap::new(),
        };
        let cur = levels.last_mut().unwrap();
        for i in 0..cur.shapes.len() {
            let shape = cur.shapes[i];
            let verts = cur.verts[i].clone();
            for (k, cv) in shape.cone_vertices().iter().enumerate() {
                let fshape = shape.cone_types()[k];
                let induced: Vec<usize> = cv.iter().map(|&j| verts[j]).collect();
                let mut key = induced.clone();
                key.sort_unstable();
                let (fi, ornt) = match next.lookup.get(&key) {
                    Some(&fi) => {
                        let o = align_tuples(fshape, &next.verts[fi], &induced)?;
                        (fi, o)
                    }
                    None => {
                        let fi = next.shapes.len();
                        next.lookup.insert(key, fi);
                        next.shapes.push(fshape);
                        next.verts.push(induced);
                        next.cones.push(Vec::new());
                        (fi, Orientation::IDENTITY)
                    }
                };
                cur.cones[i].push((fi, ornt));
            }
        }
        if d == 1 {
            // the level below is the vertices themselves
            for i in 0..next.shapes.len() {
                next.cones[i] = next.verts[i]
                    .iter()
                    .map(|&v| (v, Orientation::IDENTITY))
                    .collect();
            }
        }
        levels.push(next);
    }
    // chart: cells, vertices, faces, edges
    let nc = cell_shapes.len();
    let mut offsets = vec![0usize; levels.len() + 1]; // level index -> chart offset
    offsets[0] = 0;
    let mut at = nc + num_vertices;
    for (li, level) in levels.iter().enumerate().skip(1) {
        offsets[li] = at;
        at += level.shapes.len();
    }
    let vertex_offset = nc;
    let total = at;
    let mut shapes = vec![Polytope::Point; total];
    let mut cones: Vec<Vec<(Point, Orientation)>> = vec![Vec::new(); total];
    for (li, level) in levels.iter().enumerate() {
        let child_level_is_vertices = li + 1 == levels.len();
        for i in 0..level.shapes.len() {
            let p = offsets[li] + i;
            shapes[p] = level.shapes[i];
            cones[p] = level.cones[i]
                .iter()
                .map(|&(ci, o)| {
                    let q = if child_level_is_vertices {
                        vertex_offset + ci
                    } else {
                        offsets[li + 1] + ci
                    };
                    (q, o)
                })
                .collect();
        }
        if child_level_is_vertices && level.shapes.first().map(|s| s.dim()) == Some(1) {
            // ok: 1-cells point at vertices
        }
    }
    Plex::build(shapes, cones)
}

/// The closure mesh of a single reference cell, with reference coordinates.
pub fn reference_cell<R: Real>(shape: Polytope) -> Result<(Plex, Coordinates<R>)> {
    if shape == Polytope::Point {
        let mesh = Plex::build(vec![Polytope::Point], vec![vec![]])?;
        let coords = Coordinates::new(0);
        let mut c = coords;
        c.set(0, &[]);
        return Ok((mesh, c));
    }
    let nv = shape.vertex_count();
    let mesh = from_cells(&[shape], &[(0..nv).collect()], nv)?;
    let mut coords = Coordinates::new(shape.dim());
    for (i, xyz) in shape.reference_coordinates().iter().enumerate() {
        let x: Vec<R> = xyz.iter().map(|&v| R::from_f64(v).unwrap()).collect();
        coords.set(1 + i, &x);
    }
    Ok((mesh, coords))
}

/// Tensor-product or simplex box mesh of the unit domain, interpolated, with
/// a `marker` label on the boundary faces (one value per side).
///
/// Sides are numbered like the separated box markers: in 2-D bottom 1,
/// right 2, top 3, left 4; in 3-D -z 1, +z 2, -y 3, +y 4, +x 5, -x 6.
pub fn gen_box<R: Real>(faces: &[usize], simplex: bool) -> Result<(Plex, Coordinates<R>)> {
    if faces.is_empty() || faces.len() > 3 || faces.iter().any(|&n| n == 0) {
        return Err(Error::InvalidOptions(
            "box needs 1-3 per-dimension face counts, all nonzero".into(),
        ));
    }
    let dim = faces.len();
    let (mesh, coords) = match (dim, simplex) {
        (1, _) => box_1d(faces[0])?,
        (2, false) => box_2d_quad(faces[0], faces[1])?,
        (2, true) => box_2d_simplex(faces[0], faces[1])?,
        (3, false) => box_3d_hex(faces[0], faces[1], faces[2])?,
        (3, true) => {
            return Err(Error::Unsupported(
                "3-D simplex box meshes are not implemented".into(),
            ))
        }
        _ => unreachable!(),
    };
    let mut mesh = mesh;
    mark_boundary(&mut mesh, &coords)?;
    Ok((mesh, coords))
}

fn box_1d<R: Real>(nx: usize) -> Result<(Plex, Coordinates<R>)> {
    let shapes = vec![Polytope::Segment; nx];
    let cells: Vec<Vec<usize>> = (0..nx).map(|i| vec![i, i + 1]).collect();
    let mesh = from_cells(&shapes, &cells, nx + 1)?;
    let mut coords = Coordinates::new(1);
    for i in 0..=nx {
        coords.set(nx + i, &[R::from_usize(i).unwrap() / R::from_usize(nx).unwrap()]);
    }
    Ok((mesh, coords))
}

fn grid_coords<R: Real>(
    mesh_cells: usize,
    ns: &[usize],
) -> impl Iterator<Item = (usize, Vec<R>)> + '_ {
    let dim = ns.len();
    let counts: Vec<usize> = ns.iter().map(|&n| n + 1).collect();
    let total: usize = counts.iter().product();
    (0..total).map(move |idx| {
        let mut rem = idx;
        let mut x = Vec::with_capacity(dim);
        for k in 0..dim {
            let i = rem % counts[k];
            rem /= counts[k];
            x.push(R::from_usize(i).unwrap() / R::from_usize(ns[k]).unwrap());
        }
        (mesh_cells + idx, x)
    })
}

fn box_2d_quad<R: Real>(nx: usize, ny: usize) -> Result<(Plex, Coordinates<R>)> {
    let vid = |i: usize, j: usize| j * (nx + 1) + i;
    let mut shapes = Vec::new();
    let mut cells = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            shapes.push(Polytope::Quadrilateral);
            cells.push(vec![vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)]);
        }
    }
    let mesh = from_cells(&shapes, &cells, (nx + 1) * (ny + 1))?;
    let mut coords = Coordinates::new(2);
    for (p, x) in grid_coords::<R>(shapes.len(), &[nx, ny]) {
        coords.set(p, &x);
    }
    Ok((mesh, coords))
}

/// Each grid square splits along the anti-diagonal (lower-right to
/// upper-left) into two triangles.
fn box_2d_simplex<R: Real>(nx: usize, ny: usize) -> Result<(Plex, Coordinates<R>)> {
    let vid = |i: usize, j: usize| j * (nx + 1) + i;
    let mut shapes = Vec::new();
    let mut cells = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let (ll, lr, ul, ur) = (vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1));
            shapes.push(Polytope::Triangle);
            cells.push(vec![ll, lr, ul]);
            shapes.push(Polytope::Triangle);
            cells.push(vec![lr, ur, ul]);
        }
    }
    let mesh = from_cells(&shapes, &cells, (nx + 1) * (ny + 1))?;
    let mut coords = Coordinates::new(2);
    for (p, x) in grid_coords::<R>(shapes.len(), &[nx, ny]) {
        coords.set(p, &x);
    }
    Ok((mesh, coords))
}

fn box_3d_hex<R: Real>(nx: usize, ny: usize, nz: usize) -> Result<(Plex, Coordinates<R>)> {
    let vid = |i: usize, j: usize, k: usize| (k * (ny + 1) + j) * (nx + 1) + i;
    let mut shapes = Vec::new();
    let mut cells = Vec::new();
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                shapes.push(Polytope::Hexahedron);
                // reference hex vertex order: bottom 0,1,2,3 then top 4..7
                cells.push(vec![
                    vid(i, j, k),
                    vid(i, j + 1, k),
                    vid(i + 1, j + 1, k),
                    vid(i + 1, j, k),
                    vid(i, j, k + 1),
                    vid(i + 1, j, k + 1),
                    vid(i + 1, j + 1, k + 1),
                    vid(i, j + 1, k + 1),
                ]);
            }
        }
    }
    let mesh = from_cells(&shapes, &cells, (nx + 1) * (ny + 1) * (nz + 1))?;
    let mut coords = Coordinates::new(3);
    for (p, x) in grid_coords::<R>(shapes.len(), &[nx, ny, nz]) {
        coords.set(p, &x);
    }
    Ok((mesh, coords))
}

/// Label codim-1 boundary faces of a unit-domain box with per-side values.
fn mark_boundary<R: Real>(mesh: &mut Plex, coords: &Coordinates<R>) -> Result<()> {
    use crate::topology::MeshTopology;
    let dim = mesh.dim();
    if dim == 0 {
        return Ok(());
    }
    let half = R::from_f64(0.5).unwrap();
    let faces = mesh.stratum(dim - 1);
    let mut marks = Vec::new();
    for f in faces {
        if mesh.support(f)?.len() != 1 {
            continue;
        }
        let verts = crate::geometry::cell_vertices(mesh, f)?;
        let mut lo = vec![true; dim];
        let mut hi = vec![true; dim];
        for &v in &verts {
            let x = coords.get(v);
            for k in 0..dim {
                lo[k] &= x[k] < R::epsilon();
                hi[k] &= x[k] > half;
            }
        }
        // side values: last axis first (bottom/top), then the rest
        let value = if dim == 1 {
            if lo[0] { 1 } else { 2 }
        } else if dim == 2 {
            if lo[1] {
                1
            } else if hi[0] {
                2
            } else if hi[1] {
                3
            } else {
                4
            }
        } else if lo[2] {
            1
        } else if hi[2] {
            2
        } else if lo[1] {
            3
        } else if hi[1] {
            4
        } else if hi[0] {
            5
        } else {
            6
        };
        marks.push((f, value));
    }
    for (f, value) in marks {
        mesh.label_set("marker", f, value)?;
    }
    Ok(())
}

/// The boundary of the unit cube as a standalone quad surface mesh with
/// outward windings.
pub fn unit_cube_surface<R: Real>() -> Result<(Plex, Coordinates<R>)> {
    let corners: [[f64; 3]; 8] = [
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [1.0, 1.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0, 0.0, 1.0],
        [1.0, 1.0, 1.0],
        [0.0, 1.0, 1.0],
    ];
    let quads: [[usize; 4]; 6] = [
        [0, 3, 2, 1], // bottom, -z
        [4, 5, 6, 7], // top, +z
        [0, 1, 5, 4], // front, -y
        [2, 3, 7, 6], // back, +y
        [1, 2, 6, 5], // right, +x
        [3, 0, 4, 7], // left, -x
    ];
    let mesh = from_cells(
        &[Polytope::Quadrilateral; 6],
        &quads.iter().map(|q| q.to_vec()).collect::<Vec<_>>(),
        8,
    )?;
    let mut coords = Coordinates::new(3);
    for (i, c) in corners.iter().enumerate() {
        let x: Vec<R> = c.iter().map(|&v| R::from_f64(v).unwrap()).collect();
        coords.set(6 + i, &x);
    }
    Ok((mesh, coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::MeshTopology;

    #[test]
    fn box_2d_quad_counts() {
        let (m, _) = gen_box::<f64>(&[3, 3], false).unwrap();
        assert_eq!(m.stratum_size(2), 9);
        assert_eq!(m.stratum_size(1), 24);
        assert_eq!(m.stratum_size(0), 16);
        assert!(m.validate().is_valid());
        assert_eq!(m.euler_characteristic(), 1);
    }

    #[test]
    fn box_doublet_matches_figure() {
        let (m, _) = gen_box::<f64>(&[1, 1], true).unwrap();
        assert_eq!(m.stratum_size(0), 4);
        assert_eq!(m.stratum_size(1), 5);
        assert_eq!(m.stratum_size(2), 2);
        let cone0: Vec<_> = m.cone(0).unwrap();
        assert_eq!(cone0.len(), 3);
        // exactly one shared edge, with both cells in its support
        let shared: Vec<_> = m
            .stratum(1)
            .into_iter()
            .filter(|&e| m.support(e).unwrap().len() == 2)
            .collect();
        assert_eq!(shared.len(), 1);
        assert_eq!(m.support(shared[0]).unwrap(), vec![0, 1]);
        assert!(m.validate().is_valid());
    }

    #[test]
    fn box_3d_counts() {
        let (m, _) = gen_box::<f64>(&[2, 2, 2], false).unwrap();
        assert_eq!(m.stratum_size(3), 8);
        assert_eq!(m.stratum_size(0), 27);
        assert_eq!(m.stratum_size(2), 36);
        assert_eq!(m.stratum_size(1), 54);
        assert_eq!(m.euler_characteristic(), 1);
        assert!(m.validate().is_valid());
    }

    #[test]
    fn box_markers_separate_sides() {
        let (m, _) = gen_box::<f64>(&[2, 2, 2], false).unwrap();
        for v in 1..=6 {
            assert_eq!(m.label_stratum("marker", v).unwrap().len(), 4, "side {v}");
        }
    }

    #[test]
    fn reference_cells_validate() {
        use crate::polytope::ALL_SHAPES;
        for s in ALL_SHAPES {
            let (m, _) = reference_cell::<f64>(s).unwrap();
            let r = m.validate();
            assert!(r.is_valid(), "{s:?}: {:?}", r.violations);
            assert_eq!(m.euler_characteristic(), 1, "{s:?}");
        }
    }

    #[test]
    fn cube_surface_is_closed() {
        let (m, _) = unit_cube_surface::<f64>().unwrap();
        assert_eq!(m.stratum_size(2), 6);
        assert_eq!(m.stratum_size(1), 12);
        assert_eq!(m.stratum_size(0), 8);
        assert_eq!(m.euler_characteristic(), 2);
        assert!(m.validate().is_valid());
        for e in m.stratum(1) {
            assert_eq!(m.support(e).unwrap().len(), 2);
        }
    }
}
