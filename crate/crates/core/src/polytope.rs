//! Cell shapes, their reference structure, and their orientation groups.
//!
//! Every mesh point carries a [`Polytope`] shape. A shape knows its reference
//! cone (which shapes bound it, and which of its vertices each cone point
//! covers), its reference coordinates, and its symmetry group. Orientations
//! are integers naming elements of the dihedral group of the shape: `0` is the
//! identity, positive values are rotations, negative values are reflections.

use crate::error::{Error, Result};

/// Supported cell shapes.
///
/// Tensor-prism shapes arise from extrusion: they pair two copies of a base
/// cell with tensor side faces instead of the usual outward-oriented boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polytope {
    Point,
    Segment,
    PointPrismTensor,
    Triangle,
    Quadrilateral,
    SegPrismTensor,
    Tetrahedron,
    Hexahedron,
    TriPrism,
    TriPrismTensor,
    QuadPrismTensor,
}

/// An orientation: an integer labeling a symmetry-group element of a shape.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orientation(pub i8);

impl Orientation {
    pub const IDENTITY: Orientation = Orientation(0);

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    /// Reflections are the negative labels.
    pub fn is_reflection(self) -> bool {
        self.0 < 0
    }
}

impl std::fmt::Display for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The concrete realization of an orientation: how vertices and cone points
/// rearrange, and how each cone point flips.
///
/// With `perm = vertex_perm`, the arranged vertex at position `i` is the
/// stored vertex `perm[i]`. Likewise the arranged cone at position `m` is the
/// stored cone point `cone_perm[m]`, carried with the extra flip
/// `cone_flips[m]` in that cone point's own group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub vertex_perm: Vec<usize>,
    pub cone_perm: Vec<usize>,
    pub cone_flips: Vec<Orientation>,
}

use Polytope::*;

pub const ALL_SHAPES: [Polytope; 11] = [
    Point,
    Segment,
    PointPrismTensor,
    Triangle,
    Quadrilateral,
    SegPrismTensor,
    Tetrahedron,
    Hexahedron,
    TriPrism,
    TriPrismTensor,
    QuadPrismTensor,
];

impl Polytope {
    pub fn dim(self) -> usize {
        match self {
            Point => 0,
            Segment | PointPrismTensor => 1,
            Triangle | Quadrilateral | SegPrismTensor => 2,
            Tetrahedron | Hexahedron | TriPrism | TriPrismTensor | QuadPrismTensor => 3,
        }
    }

    pub fn is_tensor(self) -> bool {
        matches!(
            self,
            PointPrismTensor | SegPrismTensor | TriPrismTensor | QuadPrismTensor
        )
    }

    pub fn cone_size(self) -> usize {
        self.cone_types().len()
    }

    /// Shapes of the cone points, in reference order.
    pub fn cone_types(self) -> &'static [Polytope] {
        match self {
            Point => &[],
            Segment | PointPrismTensor => &[Point, Point],
            Triangle => &[Segment, Segment, Segment],
            Quadrilateral => &[Segment, Segment, Segment, Segment],
            SegPrismTensor => &[Segment, Segment, PointPrismTensor, PointPrismTensor],
            Tetrahedron => &[Triangle, Triangle, Triangle, Triangle],
            Hexahedron => &[
                Quadrilateral,
                Quadrilateral,
                Quadrilateral,
                Quadrilateral,
                Quadrilateral,
                Quadrilateral,
            ],
            TriPrism => &[
                Triangle,
                Triangle,
                Quadrilateral,
                Quadrilateral,
                Quadrilateral,
            ],
            TriPrismTensor => &[
                Triangle,
                Triangle,
                SegPrismTensor,
                SegPrismTensor,
                SegPrismTensor,
            ],
            QuadPrismTensor => &[
                Quadrilateral,
                Quadrilateral,
                SegPrismTensor,
                SegPrismTensor,
                SegPrismTensor,
                SegPrismTensor,
            ],
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            Point => 1,
            Segment | PointPrismTensor => 2,
            Triangle => 3,
            Quadrilateral | SegPrismTensor | Tetrahedron => 4,
            TriPrism | TriPrismTensor => 6,
            Hexahedron | QuadPrismTensor => 8,
        }
    }

    /// For each cone position, the vertices of the parent it covers, in the
    /// order the parent's reference arrangement traverses them.
    pub fn cone_vertices(self) -> &'static [&'static [usize]] {
        match self {
            Point => &[],
            Segment | PointPrismTensor => &[&[0], &[1]],
            Triangle => &[&[0, 1], &[1, 2], &[2, 0]],
            Quadrilateral => &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
            SegPrismTensor => &[&[0, 1], &[2, 3], &[0, 2], &[1, 3]],
            Tetrahedron => &[&[0, 1, 2], &[0, 3, 1], &[0, 2, 3], &[2, 1, 3]],
            Hexahedron => &[
                &[0, 1, 2, 3],
                &[4, 5, 6, 7],
                &[0, 3, 5, 4],
                &[2, 1, 7, 6],
                &[3, 2, 6, 5],
                &[0, 4, 7, 1],
            ],
            TriPrism => &[&[0, 2, 1], &[3, 4, 5], &[0, 1, 4, 3], &[1, 2, 5, 4], &[2, 0, 3, 5]],
            TriPrismTensor => &[
                &[0, 1, 2],
                &[3, 4, 5],
                &[0, 1, 3, 4],
                &[1, 2, 4, 5],
                &[2, 0, 5, 3],
            ],
            QuadPrismTensor => &[
                &[0, 1, 2, 3],
                &[4, 5, 6, 7],
                &[0, 1, 4, 5],
                &[1, 2, 5, 6],
                &[2, 3, 6, 7],
                &[3, 0, 7, 4],
            ],
        }
    }

    /// Reference vertex coordinates; simplex and box cells use `[-1, 1]`
    /// cube corners, prisms stack the base cell along the last axis.
    pub fn reference_coordinates(self) -> &'static [&'static [f64]] {
        match self {
            Point => &[&[]],
            Segment | PointPrismTensor => &[&[-1.0], &[1.0]],
            Triangle => &[&[-1.0, -1.0], &[1.0, -1.0], &[-1.0, 1.0]],
            Quadrilateral => &[&[-1.0, -1.0], &[1.0, -1.0], &[1.0, 1.0], &[-1.0, 1.0]],
            SegPrismTensor => &[&[-1.0, -1.0], &[1.0, -1.0], &[-1.0, 1.0], &[1.0, 1.0]],
            Tetrahedron => &[
                &[-1.0, -1.0, -1.0],
                &[-1.0, 1.0, -1.0],
                &[1.0, -1.0, -1.0],
                &[-1.0, -1.0, 1.0],
            ],
            Hexahedron => &[
                &[-1.0, -1.0, -1.0],
                &[-1.0, 1.0, -1.0],
                &[1.0, 1.0, -1.0],
                &[1.0, -1.0, -1.0],
                &[-1.0, -1.0, 1.0],
                &[1.0, -1.0, 1.0],
                &[1.0, 1.0, 1.0],
                &[-1.0, 1.0, 1.0],
            ],
            TriPrism | TriPrismTensor => &[
                &[-1.0, -1.0, -1.0],
                &[1.0, -1.0, -1.0],
                &[-1.0, 1.0, -1.0],
                &[-1.0, -1.0, 1.0],
                &[1.0, -1.0, 1.0],
                &[-1.0, 1.0, 1.0],
            ],
            QuadPrismTensor => &[
                &[-1.0, -1.0, -1.0],
                &[1.0, -1.0, -1.0],
                &[1.0, 1.0, -1.0],
                &[-1.0, 1.0, -1.0],
                &[-1.0, -1.0, 1.0],
                &[1.0, -1.0, 1.0],
                &[1.0, 1.0, 1.0],
                &[-1.0, 1.0, 1.0],
            ],
        }
    }

    /// Legal orientations as the half-open range `[lo, hi)`.
    ///
    /// Tensor cells and 3-cells carry only the identity: 3-cells are never
    /// attached to anything, and the extrusion tables use orientation 0 for
    /// every tensor cone point.
    pub fn orientation_range(self) -> (i8, i8) {
        match self {
            Point => (0, 1),
            Segment => (-1, 1),
            Triangle => (-3, 3),
            Quadrilateral => (-4, 4),
            _ => (0, 1),
        }
    }

    pub fn orientations(self) -> impl Iterator<Item = Orientation> {
        let (lo, hi) = self.orientation_range();
        (lo..hi).map(Orientation)
    }

    pub fn check_orientation(self, o: Orientation) -> Result<()> {
        let (lo, hi) = self.orientation_range();
        if o.0 < lo || o.0 >= hi {
            return Err(Error::OrientationOutOfRange {
                shape: self,
                ornt: o.0,
            });
        }
        Ok(())
    }

    /// Vertex permutation of an orientation: the arranged vertex at position
    /// `i` is the stored vertex `perm[i]`.
    pub fn vertex_arrangement(self, o: Orientation) -> Result<&'static [usize]> {
        self.check_orientation(o)?;
        Ok(match self {
            Segment => match o.0 {
                0 => &[0, 1],
                _ => &[1, 0],
            },
            Triangle => match o.0 {
                0 => &[0, 1, 2],
                1 => &[1, 2, 0],
                2 => &[2, 0, 1],
                -1 => &[2, 1, 0],
                -2 => &[0, 2, 1],
                _ => &[1, 0, 2],
            },
            Quadrilateral => match o.0 {
                0 => &[0, 1, 2, 3],
                1 => &[1, 2, 3, 0],
                2 => &[2, 3, 0, 1],
                3 => &[3, 0, 1, 2],
                -1 => &[3, 2, 1, 0],
                -2 => &[0, 3, 2, 1],
                -3 => &[1, 0, 3, 2],
                _ => &[2, 1, 0, 3],
            },
            Point => &[0],
            PointPrismTensor => &[0, 1],
            SegPrismTensor => &[0, 1, 2, 3],
            Tetrahedron => &[0, 1, 2, 3],
            TriPrism | TriPrismTensor => &[0, 1, 2, 3, 4, 5],
            Hexahedron | QuadPrismTensor => &[0, 1, 2, 3, 4, 5, 6, 7],
        })
    }

    /// The cone-level realization of an orientation. The arranged cone at
    /// position `m` is the stored cone point `cone_perm[m]`, flipped by
    /// `cone_flips[m]`.
    pub fn cone_arrangement(self, o: Orientation) -> Result<Arrangement> {
        let vperm = self.vertex_arrangement(o)?;
        let cvs = self.cone_vertices();
        let mut cone_perm = Vec::with_capacity(cvs.len());
        let mut cone_flips = Vec::with_capacity(cvs.len());
        for (m, cv) in cvs.iter().enumerate() {
            let induced: Vec<usize> = cv.iter().map(|&k| vperm[k]).collect();
            let cone_shape = self.cone_types()[m];
            let mut found = None;
            for (j, sv) in cvs.iter().enumerate() {
                if self.cone_types()[j] != cone_shape {
                    continue;
                }
                let mut a: Vec<usize> = induced.clone();
                let mut b: Vec<usize> = sv.to_vec();
                a.sort_unstable();
                b.sort_unstable();
                if a != b {
                    continue;
                }
                let flip = align_tuples(cone_shape, sv, &induced)?;
                found = Some((j, flip));
                break;
            }
            let (j, flip) = found.ok_or(Error::OrientationOutOfRange {
                shape: self,
                ornt: o.0,
            })?;
            cone_perm.push(j);
            cone_flips.push(flip);
        }
        Ok(Arrangement {
            vertex_perm: vperm.to_vec(),
            cone_perm,
            cone_flips,
        })
    }

    /// Group composition: `vertex_arrangement(compose(a, b))` equals
    /// `vertex_arrangement(a) ∘ vertex_arrangement(b)` (apply `b`, then `a`).
    pub fn compose(self, a: Orientation, b: Orientation) -> Result<Orientation> {
        let pa = self.vertex_arrangement(a)?;
        let pb = self.vertex_arrangement(b)?;
        let net: Vec<usize> = (0..pa.len()).map(|i| pa[pb[i]]).collect();
        self.orientation_of_perm(&net)
            .ok_or(Error::OrientationOutOfRange {
                shape: self,
                ornt: a.0,
            })
    }

    pub fn invert(self, o: Orientation) -> Result<Orientation> {
        for cand in self.orientations() {
            if self.compose(o, cand)? == Orientation::IDENTITY {
                return Ok(cand);
            }
        }
        unreachable!("every orientation has an inverse")
    }

    /// Look up the orientation whose vertex permutation is `perm`.
    pub fn orientation_of_perm(self, perm: &[usize]) -> Option<Orientation> {
        self.orientations()
            .find(|&o| self.vertex_arrangement(o).map(|p| p == perm).unwrap_or(false))
    }

    pub fn name(self) -> &'static str {
        match self {
            Point => "point",
            Segment => "segment",
            PointPrismTensor => "point_prism_tensor",
            Triangle => "triangle",
            Quadrilateral => "quadrilateral",
            SegPrismTensor => "seg_prism_tensor",
            Tetrahedron => "tetrahedron",
            Hexahedron => "hexahedron",
            TriPrism => "tri_prism",
            TriPrismTensor => "tri_prism_tensor",
            QuadPrismTensor => "quad_prism_tensor",
        }
    }

    pub fn from_name(s: &str) -> Option<Polytope> {
        ALL_SHAPES.iter().copied().find(|p| p.name() == s)
    }

    /// Index in the canonical shape order, used for deterministic block
    /// ordering in the transform index.
    pub fn index(self) -> usize {
        ALL_SHAPES.iter().position(|&s| s == self).unwrap()
    }
}

impl std::fmt::Display for Polytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Find `o` with `needed[i] == stored[perm_o[i]]` for all `i`.
pub fn align_tuples(shape: Polytope, stored: &[usize], needed: &[usize]) -> Result<Orientation> {
    for o in shape.orientations() {
        let p = shape.vertex_arrangement(o)?;
        if (0..needed.len()).all(|i| needed[i] == stored[p[i]]) {
            return Ok(o);
        }
    }
    Err(Error::UnresolvablePath {
        point: 0,
        reason: format!("no {shape:?} orientation aligns {stored:?} with {needed:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_and_cone_sizes() {
        assert_eq!(Triangle.dim(), 2);
        assert_eq!(Point.dim(), 0);
        assert_eq!(TriPrismTensor.dim(), 3);
        let sizes = [
            (Point, 0),
            (Segment, 2),
            (PointPrismTensor, 2),
            (Triangle, 3),
            (Quadrilateral, 4),
            (SegPrismTensor, 4),
            (Tetrahedron, 4),
            (Hexahedron, 6),
            (TriPrism, 5),
            (TriPrismTensor, 5),
            (QuadPrismTensor, 6),
        ];
        for (s, n) in sizes {
            assert_eq!(s.cone_size(), n, "{s:?}");
        }
        // every cone point sits exactly one dimension down
        for s in ALL_SHAPES {
            for c in s.cone_types() {
                assert_eq!(c.dim() + 1, s.dim(), "{s:?} -> {c:?}");
            }
        }
    }

    #[test]
    fn prism_cone_types() {
        assert_eq!(Tetrahedron.cone_types(), &[Triangle; 4]);
        assert_eq!(
            TriPrism.cone_types(),
            &[Triangle, Triangle, Quadrilateral, Quadrilateral, Quadrilateral]
        );
        assert_eq!(
            TriPrismTensor.cone_types(),
            &[Triangle, Triangle, SegPrismTensor, SegPrismTensor, SegPrismTensor]
        );
    }

    #[test]
    fn orientation_ranges() {
        assert_eq!(Triangle.orientation_range(), (-3, 3));
        assert_eq!(Point.orientation_range(), (0, 1));
        assert_eq!(Segment.orientation_range(), (-1, 1));
        assert_eq!(Quadrilateral.orientation_range(), (-4, 4));
        assert_eq!(TriPrismTensor.orientation_range(), (0, 1));
    }

    #[test]
    fn vertex_arrangements_match_group_table() {
        assert_eq!(
            Triangle.vertex_arrangement(Orientation(1)).unwrap(),
            &[1, 2, 0]
        );
        assert_eq!(
            Triangle.vertex_arrangement(Orientation(-2)).unwrap(),
            &[0, 2, 1]
        );
        assert_eq!(
            Segment.vertex_arrangement(Orientation(-1)).unwrap(),
            &[1, 0]
        );
        assert!(Triangle.vertex_arrangement(Orientation(3)).is_err());
    }

    #[test]
    fn cone_arrangements() {
        let a = Triangle.cone_arrangement(Orientation(0)).unwrap();
        assert_eq!(a.cone_perm, vec![0, 1, 2]);
        assert_eq!(a.cone_flips, vec![Orientation(0); 3]);

        let a = Triangle.cone_arrangement(Orientation(-2)).unwrap();
        assert_eq!(a.cone_perm, vec![2, 1, 0]);
        assert_eq!(a.cone_flips, vec![Orientation(-1); 3]);

        let a = Quadrilateral.cone_arrangement(Orientation(1)).unwrap();
        assert_eq!(a.cone_perm, vec![1, 2, 3, 0]);
        assert_eq!(a.cone_flips, vec![Orientation(0); 4]);
    }

    #[test]
    fn compose_and_invert() {
        assert_eq!(
            Segment
                .compose(Orientation(-1), Orientation(-1))
                .unwrap(),
            Orientation(0)
        );
        assert_eq!(
            Triangle.compose(Orientation(1), Orientation(1)).unwrap(),
            Orientation(2)
        );
        assert_eq!(
            Triangle.compose(Orientation(0), Orientation(-3)).unwrap(),
            Orientation(-3)
        );
        assert_eq!(Triangle.invert(Orientation(1)).unwrap(), Orientation(2));
        assert_eq!(Triangle.invert(Orientation(-2)).unwrap(), Orientation(-2));
        assert_eq!(Point.invert(Orientation(0)).unwrap(), Orientation(0));
    }

    #[test]
    fn group_axioms_exhaustive() {
        for shape in ALL_SHAPES {
            let os: Vec<_> = shape.orientations().collect();
            for &a in &os {
                // identity laws
                assert_eq!(shape.compose(a, Orientation(0)).unwrap(), a);
                assert_eq!(shape.compose(Orientation(0), a).unwrap(), a);
                // inverse
                let inv = shape.invert(a).unwrap();
                assert_eq!(shape.compose(a, inv).unwrap(), Orientation(0));
                assert_eq!(shape.compose(inv, a).unwrap(), Orientation(0));
                for &b in &os {
                    let ab = shape.compose(a, b).unwrap();
                    shape.check_orientation(ab).unwrap();
                    for &c in &os {
                        // associativity
                        let left = shape.compose(shape.compose(a, b).unwrap(), c).unwrap();
                        let right = shape.compose(a, shape.compose(b, c).unwrap()).unwrap();
                        assert_eq!(left, right, "{shape:?} {a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn cone_arrangement_is_group_action() {
        for shape in [Segment, Triangle, Quadrilateral] {
            let os: Vec<_> = shape.orientations().collect();
            for &a in &os {
                for &b in &os {
                    let ab = shape.compose(a, b).unwrap();
                    let arr_a = shape.cone_arrangement(a).unwrap();
                    let arr_b = shape.cone_arrangement(b).unwrap();
                    let arr_ab = shape.cone_arrangement(ab).unwrap();
                    for m in 0..shape.cone_size() {
                        // compose(a, b) views through a first, b on top; a
                        // final position unwinds through b's perm, then a's
                        let j = arr_a.cone_perm[arr_b.cone_perm[m]];
                        assert_eq!(arr_ab.cone_perm[m], j);
                        let cs = shape.cone_types()[j];
                        let f = cs
                            .compose(arr_a.cone_flips[arr_b.cone_perm[m]], arr_b.cone_flips[m])
                            .unwrap();
                        assert_eq!(arr_ab.cone_flips[m], f, "{shape:?} {a:?} {b:?} pos {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn reflections_reverse_cyclic_order() {
        // negative orientations of non-tensor shapes of dim >= 1 reverse the
        // traversal: their vertex permutation has odd cycle parity on the
        // boundary loop
        for shape in [Segment, Triangle, Quadrilateral] {
            for o in shape.orientations() {
                let p = shape.vertex_arrangement(o).unwrap();
                let n = p.len();
                // walk the boundary cycle 0->1->...->n-1->0 through the
                // arrangement; reflections must traverse it backwards
                let fwd = (0..n).all(|i| p[(i + 1) % n] == (p[i] + 1) % n);
                let bwd = (0..n).all(|i| p[(i + 1) % n] == (p[i] + n - 1) % n);
                if o.is_reflection() {
                    assert!(bwd && !fwd, "{shape:?} {o:?}");
                } else {
                    assert!(fwd && !bwd, "{shape:?} {o:?}");
                }
            }
        }
    }

    #[test]
    fn arranged_cones_cover_cone_vertex_sets() {
        for shape in ALL_SHAPES {
            for o in shape.orientations() {
                // cone_arrangement would fail if some arranged cone's vertex
                // set matched no stored cone point
                shape.cone_arrangement(o).unwrap();
            }
        }
    }

    #[test]
    fn reference_coordinates_spot_checks() {
        assert_eq!(Segment.reference_coordinates(), &[&[-1.0][..], &[1.0][..]]);
        assert_eq!(
            Triangle.reference_coordinates(),
            &[&[-1.0, -1.0][..], &[1.0, -1.0][..], &[-1.0, 1.0][..]]
        );
        assert!(Tetrahedron
            .reference_coordinates()
            .contains(&&[-1.0, -1.0, -1.0][..]));
        for s in ALL_SHAPES {
            let coords = s.reference_coordinates();
            assert_eq!(coords.len(), s.vertex_count());
            for c in coords {
                assert_eq!(c.len(), if s == Point { 0 } else { s.dim() });
            }
        }
    }
}
