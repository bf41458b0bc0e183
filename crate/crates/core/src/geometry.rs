//! Vertex coordinates, measures, and normals.
//!
//! Everything here is generic over the scalar type; `f64` aliases live at the
//! crate root. Topology stays integer-valued, so only this module and the
//! writers touch the scalar.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::topology::MeshTopology;
use crate::transform::{OffsetIndex, TransformSpec, TransformType};
use crate::Point;

/// Scalar type for coordinates and measures.
pub trait Real:
    num_traits::Float + num_traits::FromPrimitive + std::fmt::Debug + std::fmt::Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: num_traits::Float
        + num_traits::FromPrimitive
        + std::fmt::Debug
        + std::fmt::Display
        + Default
        + Send
        + Sync
        + 'static
{
}

fn r<R: Real>(x: f64) -> R {
    R::from_f64(x).unwrap()
}

fn ru<R: Real>(x: usize) -> R {
    R::from_usize(x).unwrap()
}

/// Per-vertex coordinates of a mesh. Every depth-0 point has a tuple of
/// length `dim`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Coordinates<R> {
    dim: usize,
    data: BTreeMap<Point, Vec<R>>,
}

impl<R: Real> Coordinates<R> {
    pub fn new(dim: usize) -> Self {
        Coordinates {
            dim,
            data: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn set(&mut self, p: Point, coords: &[R]) {
        debug_assert_eq!(coords.len(), self.dim);
        self.data.insert(p, coords.to_vec());
    }

    pub fn get(&self, p: Point) -> &[R] {
        self.data
            .get(&p)
            .map(|v| v.as_slice())
            .unwrap_or_else(|| panic!("no coordinates for point {p}"))
    }

    pub fn try_get(&self, p: Point) -> Option<&[R]> {
        self.data.get(&p).map(|v| v.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Point, &[R])> {
        self.data.iter().map(|(&p, v)| (p, v.as_slice()))
    }
}

/// Closure vertices of a cell, in canonical (reference) order.
pub fn cell_vertices(mesh: &dyn MeshTopology, cell: Point) -> Result<Vec<Point>> {
    Ok(mesh
        .closure(cell)?
        .into_iter()
        .filter(|&(q, _)| mesh.shape_of(q).map(|s| s.dim() == 0).unwrap_or(false))
        .map(|(q, _)| q)
        .collect())
}

// --------------------------------------------------------------- refinement

/// Coordinates for a refined mesh: copied vertices keep their coordinates,
/// interior vertices sit at the barycenter of their parent's vertices.
pub fn refine_coordinates<R: Real>(
    base: &dyn MeshTopology,
    base_coords: &Coordinates<R>,
    refined: &dyn MeshTopology,
    index: &OffsetIndex,
) -> Result<Coordinates<R>> {
    let mut out = Coordinates::new(base_coords.dim());
    for v in refined.stratum(0) {
        out.set(v, &refine_vertex_coord(base, base_coords, index, v)?);
    }
    Ok(out)
}

/// The per-vertex kernel behind [`refine_coordinates`].
pub fn refine_vertex_coord<R: Real>(
    base: &dyn MeshTopology,
    base_coords: &Coordinates<R>,
    index: &OffsetIndex,
    v: Point,
) -> Result<Vec<R>> {
    let (p, _, _) = index.parent_of(v)?;
    if base.shape_of(p)?.dim() == 0 {
        return Ok(base_coords.get(p).to_vec());
    }
    let verts = cell_vertices(base, p)?;
    let mut acc = vec![R::zero(); base_coords.dim()];
    for &w in &verts {
        for (a, b) in acc.iter_mut().zip(base_coords.get(w)) {
            *a = *a + *b;
        }
    }
    let n = ru::<R>(verts.len());
    Ok(acc.into_iter().map(|x| x / n).collect())
}

// ----------------------------------------------------------------- measures

/// Length, area, or volume of an affine cell. Signed by the cell's induced
/// windings for planar 2-D meshes and for 3-cells; degenerate cells report 0.
pub fn cell_measure<R: Real>(
    mesh: &dyn MeshTopology,
    coords: &Coordinates<R>,
    cell: Point,
) -> Result<R> {
    let shape = mesh.shape_of(cell)?;
    let verts = cell_vertices(mesh, cell)?;
    let pts: Vec<&[R]> = verts.iter().map(|&v| coords.get(v)).collect();
    Ok(match shape.dim() {
        0 => R::zero(),
        1 => {
            let mut s = R::zero();
            for (a, b) in pts[0].iter().zip(pts[1]) {
                s = s + (*a - *b) * (*a - *b);
            }
            s.sqrt()
        }
        2 => polygon_area(shape, &pts, coords.dim()),
        _ => polyhedron_volume(shape, &pts),
    })
}

/// Map a tensor cell's vertex order onto its box counterpart.
fn tensor_reorder(shape: Polytope) -> Option<&'static [usize]> {
    match shape {
        Polytope::SegPrismTensor => Some(&[0, 1, 3, 2]),
        Polytope::QuadPrismTensor => Some(&[0, 1, 2, 3, 4, 7, 6, 5]),
        _ => None,
    }
}

fn polygon_area<R: Real>(shape: Polytope, pts: &[&[R]], embed: usize) -> R {
    let order: Vec<usize> = match tensor_reorder(shape) {
        Some(p) => p.to_vec(),
        None => (0..pts.len()).collect(),
    };
    if embed == 2 {
        // signed shoelace
        let mut s = R::zero();
        for i in 0..order.len() {
            let a = pts[order[i]];
            let b = pts[order[(i + 1) % order.len()]];
            s = s + a[0] * b[1] - b[0] * a[1];
        }
        s / r(2.0)
    } else {
        let n = newell(&order.iter().map(|&i| pts[i]).collect::<Vec<_>>());
        norm(&n) / r(2.0)
    }
}

fn polyhedron_volume<R: Real>(shape: Polytope, pts: &[&[R]]) -> R {
    // divergence theorem over the induced (outward) face loops; tensor cells
    // go through their box counterpart's loops
    let (loops_shape, order): (Polytope, Vec<usize>) = match shape {
        Polytope::TriPrismTensor => (Polytope::TriPrism, (0..6).collect()),
        Polytope::QuadPrismTensor => (Polytope::Hexahedron, vec![0, 1, 2, 3, 4, 7, 6, 5]),
        s => (s, (0..pts.len()).collect()),
    };
    let mut s = R::zero();
    for face in loops_shape.cone_vertices() {
        let loop_pts: Vec<&[R]> = face.iter().map(|&k| pts[order[k]]).collect();
        let nvec = newell(&loop_pts);
        let g = centroid(&loop_pts);
        s = s + g[0] * nvec[0] + g[1] * nvec[1] + g[2] * nvec[2];
    }
    s / r(6.0)
}

fn newell<R: Real>(pts: &[&[R]]) -> [R; 3] {
    let mut n = [R::zero(); 3];
    let get = |p: &[R], k: usize| if k < p.len() { p[k] } else { R::zero() };
    for i in 0..pts.len() {
        let a = pts[i];
        let b = pts[(i + 1) % pts.len()];
        n[0] = n[0] + get(a, 1) * get(b, 2) - get(a, 2) * get(b, 1);
        n[1] = n[1] + get(a, 2) * get(b, 0) - get(a, 0) * get(b, 2);
        n[2] = n[2] + get(a, 0) * get(b, 1) - get(a, 1) * get(b, 0);
    }
    n
}

fn centroid<R: Real>(pts: &[&[R]]) -> [R; 3] {
    let mut g = [R::zero(); 3];
    for p in pts {
        for k in 0..p.len().min(3) {
            g[k] = g[k] + p[k];
        }
    }
    let n = ru::<R>(pts.len());
    [g[0] / n, g[1] / n, g[2] / n]
}

fn norm<R: Real>(v: &[R]) -> R {
    v.iter().fold(R::zero(), |s, &x| s + x * x).sqrt()
}

/// Sum of the measures of all top-dimensional cells.
pub fn total_measure<R: Real>(mesh: &dyn MeshTopology, coords: &Coordinates<R>) -> Result<R> {
    let mut s = R::zero();
    for c in mesh.stratum(mesh.dim()) {
        s = s + cell_measure(mesh, coords, c)?;
    }
    Ok(s)
}

// ------------------------------------------------------------------ normals

/// How the extrusion direction is chosen.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum NormalMode<R> {
    /// Embedded surfaces average cell normals; flat meshes extrude along the
    /// next coordinate axis.
    #[default]
    Auto,
    /// A fixed global direction.
    Global(Vec<R>),
}

/// Per-vertex unit normals of a surface mesh.
///
/// For a mesh of dimension `d` embedded in `d+1` coordinates, the normal at a
/// vertex is the normalized unweighted average of the normals of the cells in
/// its star (accumulated in point order, so the result is traversal
/// independent). A flat mesh (embedding dimension equals `d`) uses the next
/// axis for every vertex. Points whose average vanishes are reported.
pub fn compute_normals<R: Real>(
    mesh: &dyn MeshTopology,
    coords: &Coordinates<R>,
) -> Result<BTreeMap<Point, Vec<R>>> {
    let dim = mesh.dim();
    let embed = coords.dim();
    let mut out = BTreeMap::new();
    if embed == dim {
        // flat: unit vector along the new axis
        let mut n = vec![R::zero(); embed + 1];
        n[embed] = R::one();
        for v in mesh.stratum(0) {
            out.insert(v, n.clone());
        }
        return Ok(out);
    }
    if embed != dim + 1 {
        return Err(Error::InvalidOptions(format!(
            "normals need a flat mesh or codimension 1 (dim {dim}, embedding {embed})"
        )));
    }
    let mut degenerate = Vec::new();
    for v in mesh.stratum(0) {
        let mut cells: Vec<Point> = mesh
            .star(v)?
            .into_iter()
            .filter(|&c| mesh.shape_of(c).map(|s| s.dim() == dim).unwrap_or(false))
            .collect();
        cells.sort_unstable();
        let mut acc = vec![R::zero(); embed];
        for c in cells {
            let n = cell_normal(mesh, coords, c)?;
            for (a, b) in acc.iter_mut().zip(&n) {
                *a = *a + *b;
            }
        }
        let len = norm(&acc);
        if len <= R::epsilon() {
            degenerate.push(v);
            continue;
        }
        out.insert(v, acc.into_iter().map(|x| x / len).collect());
    }
    if !degenerate.is_empty() {
        return Err(Error::InvalidOptions(format!(
            "zero average normal at points {degenerate:?}"
        )));
    }
    Ok(out)
}

/// Unit normal of one cell of a surface mesh, from its stored winding.
pub fn cell_normal<R: Real>(
    mesh: &dyn MeshTopology,
    coords: &Coordinates<R>,
    cell: Point,
) -> Result<Vec<R>> {
    let shape = mesh.shape_of(cell)?;
    let verts = cell_vertices(mesh, cell)?;
    let pts: Vec<&[R]> = verts.iter().map(|&v| coords.get(v)).collect();
    match shape.dim() {
        1 => {
            // left normal of the direction in the plane
            let d = [pts[1][0] - pts[0][0], pts[1][1] - pts[0][1]];
            let len = norm(&d);
            if len <= R::epsilon() {
                return Ok(vec![R::zero(); 2]);
            }
            Ok(vec![-d[1] / len, d[0] / len])
        }
        2 => {
            let order: Vec<usize> = match tensor_reorder(shape) {
                Some(p) => p.to_vec(),
                None => (0..pts.len()).collect(),
            };
            let n = newell(&order.iter().map(|&i| pts[i]).collect::<Vec<_>>());
            let len = norm(&n);
            if len <= R::epsilon() {
                return Ok(vec![R::zero(); 3]);
            }
            Ok(n.iter().map(|&x| x / len).collect())
        }
        d => Err(Error::InvalidOptions(format!(
            "cell normal undefined for dimension {d}"
        ))),
    }
}

// ---------------------------------------------------------------- extrusion

/// Layer offsets along the normal: uniform spacing `k*T/Nl`; symmetric mode
/// shifts the whole stack by `-T/2`.
pub fn extrude_offsets<R: Real>(layers: usize, thickness: R, symmetric: bool) -> Vec<R> {
    let shift = if symmetric {
        thickness / r(2.0)
    } else {
        R::zero()
    };
    (0..=layers)
        .map(|k| ru::<R>(k) * thickness / ru::<R>(layers) - shift)
        .collect()
}

/// Per-base-vertex normals used when extruding, honoring the normal mode and
/// (for restricted extrusion inside a volume mesh) orienting active faces
/// outward via their supporting cell.
pub fn extrusion_normals<R: Real>(
    base: &dyn MeshTopology,
    base_coords: &Coordinates<R>,
    mode: &NormalMode<R>,
    active: Option<&[bool]>,
    out_dim: usize,
) -> Result<BTreeMap<Point, Vec<R>>> {
    if let NormalMode::Global(v) = mode {
        if v.len() != out_dim || norm(v.as_slice()) <= R::epsilon() {
            return Err(Error::InvalidOptions(
                "global normal must be nonzero and match the output dimension".into(),
            ));
        }
        let len = norm(v.as_slice());
        let unit: Vec<R> = v.iter().map(|&x| x / len).collect();
        let mut out = BTreeMap::new();
        for p in base.stratum(0) {
            out.insert(p, unit.clone());
        }
        return Ok(out);
    }
    let embed = base_coords.dim();
    if embed == base.dim() && active.is_none() {
        let mut n = vec![R::zero(); embed + 1];
        n[embed] = R::one();
        let mut out = BTreeMap::new();
        for p in base.stratum(0) {
            out.insert(p, n.clone());
        }
        return Ok(out);
    }
    // embedded surface (possibly the active subset of a volume mesh)
    let surf_dim = embed - 1;
    let mut out = BTreeMap::new();
    for v in base.stratum(0) {
        if let Some(a) = active {
            if !a[v] {
                continue;
            }
        }
        let mut cells: Vec<Point> = mesh_surface_cells(base, v, surf_dim, active)?;
        cells.sort_unstable();
        if cells.is_empty() {
            continue;
        }
        let mut acc = vec![R::zero(); embed];
        for c in cells {
            let mut n = cell_normal(base, base_coords, c)?;
            if outward_flip(base, c)? {
                for x in &mut n {
                    *x = -*x;
                }
            }
            for (a, b) in acc.iter_mut().zip(&n) {
                *a = *a + *b;
            }
        }
        let len = norm(&acc);
        if len <= R::epsilon() {
            return Err(Error::InvalidOptions(format!(
                "zero average normal at point {v}"
            )));
        }
        out.insert(v, acc.into_iter().map(|x| x / len).collect());
    }
    Ok(out)
}

fn mesh_surface_cells(
    base: &dyn MeshTopology,
    v: Point,
    surf_dim: usize,
    active: Option<&[bool]>,
) -> Result<Vec<Point>> {
    Ok(base
        .star(v)?
        .into_iter()
        .filter(|&c| {
            base.shape_of(c).map(|s| s.dim() == surf_dim).unwrap_or(false)
                && active.map(|a| a[c]).unwrap_or(true)
        })
        .collect())
}

/// Whether a surface cell's stored winding points into its supporting volume
/// cell (true means the outward normal is the reverse of the stored one).
fn outward_flip(base: &dyn MeshTopology, cell: Point) -> Result<bool> {
    let supports = base.support(cell)?;
    if supports.len() != 1 {
        return Ok(false);
    }
    let cell_owner = supports[0];
    for (q, o) in base.cone(cell_owner)? {
        if q == cell {
            return Ok(o.is_reflection());
        }
    }
    Ok(false)
}

/// Coordinates for an extruded mesh: replica `k` of base vertex `v` sits at
/// `x(v) + offset(k) * n(v)`; identity-copied vertices keep their position.
pub fn extrude_coordinates<R: Real>(
    base: &dyn MeshTopology,
    base_coords: &Coordinates<R>,
    extruded: &dyn MeshTopology,
    index: &OffsetIndex,
    layers: usize,
    thickness: R,
    symmetric: bool,
    mode: &NormalMode<R>,
    active: Option<&[bool]>,
) -> Result<Coordinates<R>> {
    let embed = base_coords.dim();
    let out_dim = match mode {
        NormalMode::Global(v) => v.len(),
        NormalMode::Auto => {
            if embed == base.dim() && active.is_none() {
                embed + 1
            } else {
                embed
            }
        }
    };
    let normals = extrusion_normals(base, base_coords, mode, active, out_dim)?;
    let offsets = extrude_offsets(layers, thickness, symmetric);
    let mut out = Coordinates::new(out_dim);
    for v in extruded.stratum(0) {
        let (p, _, k) = index.parent_of(v)?;
        let mut x = base_coords.get(p).to_vec();
        x.resize(out_dim, R::zero());
        if let Some(n) = normals.get(&p) {
            let is_identity = matches!(index.type_of(p)?, TransformType::Identity(_));
            if !is_identity {
                for (xi, ni) in x.iter_mut().zip(n) {
                    *xi = *xi + offsets[k] * *ni;
                }
            }
        }
        out.set(v, &x);
    }
    Ok(out)
}

// ---------------------------------------------------------- coordinate rules

/// How a transform places vertices, for lazily evaluated meshes and for the
/// action-table oracle.
#[derive(Clone, Debug)]
pub enum CoordinateRule<R> {
    /// Copies keep coordinates; interior vertices go to the parent barycenter.
    RefineBarycentric,
    Extrude {
        layers: usize,
        thickness: R,
        symmetric: bool,
        normal: NormalMode<R>,
        active: Option<Vec<bool>>,
    },
}

impl<R: Real> CoordinateRule<R> {
    pub fn apply(
        &self,
        base: &dyn MeshTopology,
        base_coords: &Coordinates<R>,
        new_mesh: &dyn MeshTopology,
        index: &OffsetIndex,
        _spec: &TransformSpec,
    ) -> Result<Coordinates<R>> {
        match self {
            CoordinateRule::RefineBarycentric => {
                refine_coordinates(base, base_coords, new_mesh, index)
            }
            CoordinateRule::Extrude {
                layers,
                thickness,
                symmetric,
                normal,
                active,
            } => extrude_coordinates(
                base,
                base_coords,
                new_mesh,
                index,
                *layers,
                *thickness,
                *symmetric,
                normal,
                active.as_deref(),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn reference_triangle_area() {
        let (mesh, coords) = generate::reference_cell::<f64>(Polytope::Triangle).unwrap();
        let a = cell_measure(&mesh, &coords, 0).unwrap();
        assert!((a - 2.0).abs() < 1e-15);
    }

    #[test]
    fn reference_hexahedron_volume() {
        let (mesh, coords) = generate::reference_cell::<f64>(Polytope::Hexahedron).unwrap();
        let v = cell_measure(&mesh, &coords, 0).unwrap();
        assert!((v - 8.0).abs() < 1e-12);
    }

    #[test]
    fn reference_tet_volume() {
        let (mesh, coords) = generate::reference_cell::<f64>(Polytope::Tetrahedron).unwrap();
        let v = cell_measure(&mesh, &coords, 0).unwrap();
        assert!((v - 8.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn offsets_uniform_and_symmetric() {
        let offs = extrude_offsets::<f64>(3, 0.25, false);
        let want = [0.0, 1.0 / 12.0, 1.0 / 6.0, 0.25];
        for (a, b) in offs.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        let offs = extrude_offsets::<f64>(4, 0.2, true);
        assert!((offs[0] + 0.1).abs() < 1e-15);
        assert!((offs[4] - 0.1).abs() < 1e-15);
        assert!((offs[0] + offs[4]).abs() < 1e-15);
    }

    #[test]
    fn flat_square_normals_default_z() {
        let (mesh, coords) = generate::gen_box::<f64>(&[2, 2], false).unwrap();
        let normals = compute_normals(&mesh, &coords).unwrap();
        for (_, n) in normals {
            assert_eq!(n, vec![0.0, 0.0, 1.0]);
        }
    }

    #[test]
    fn cube_surface_corner_normals() {
        let (mesh, coords) = generate::unit_cube_surface::<f64>().unwrap();
        let normals = compute_normals(&mesh, &coords).unwrap();
        let s = 1.0 / 3.0f64.sqrt();
        for (v, n) in normals {
            let x = coords.get(v);
            for k in 0..3 {
                let want = if x[k] > 0.5 { s } else { -s };
                assert!((n[k] - want).abs() < 1e-12, "corner {v}: {n:?}");
            }
        }
    }

    #[test]
    fn opposing_normals_report_zero_average() {
        // two coincident triangles with opposite windings
        use crate::plex::Plex;
        use crate::polytope::{Orientation, Polytope::*};
        let o = Orientation;
        let mesh = Plex::build(
            vec![Triangle, Triangle, Point, Point, Point, Segment, Segment, Segment],
            vec![
                vec![(5, o(0)), (6, o(0)), (7, o(-1))],
                vec![(7, o(0)), (6, o(-1)), (5, o(-1))],
                vec![],
                vec![],
                vec![],
                vec![(2, o(0)), (3, o(0))],
                vec![(3, o(0)), (4, o(0))],
                vec![(2, o(0)), (4, o(0))],
            ],
        )
        .unwrap();
        let mut coords = Coordinates::new(3);
        coords.set(2, &[0.0, 0.0, 0.0]);
        coords.set(3, &[1.0, 0.0, 0.0]);
        coords.set(4, &[0.0, 1.0, 0.0]);
        assert!(compute_normals(&mesh, &coords).is_err());
    }
}
