//! Regular refinement tables.
//!
//! Each parent produces only its interior: boundary pieces come from the
//! parent's own boundary points. Vertices copy themselves; an edge yields its
//! midpoint and two halves; a triangle three medial segments and four
//! triangles; a quadrilateral a center, four spokes, and four quadrants; a
//! tetrahedron one diagonal segment, eight triangles, and eight tetrahedra; a
//! hexahedron a center, six spokes, twelve interior quadrilaterals, and eight
//! octants. Cone tables are written against the reference cells and certified
//! by the geometric oracle in the test suite.

use crate::catalog::action_table;
use crate::polytope::Polytope::{self, *};
use crate::transform::{
    cp, ActionTable, LabelRule, Production, ProductionBuilder, TransformSpec, TransformType,
    TypeRule,
};

/// The published replica/orientation action array for the four triangles of a
/// refined triangle, rows for parent orientations -3..=2, entries `(r_c, o_c)`
/// per replica.
pub const PAPER_TRIANGLE_REFINE_ACTIONS: [[(usize, i8); 4]; 6] = [
    [(1, -3), (0, -3), (2, -3), (3, -2)],
    [(0, -2), (2, -2), (1, -2), (3, -1)],
    [(2, -1), (1, -1), (0, -1), (3, -3)],
    [(0, 0), (1, 0), (2, 0), (3, 0)],
    [(1, 1), (2, 1), (0, 1), (3, 1)],
    [(2, 2), (0, 2), (1, 2), (3, 2)],
];

fn point_production() -> Production {
    ProductionBuilder::new().target(Point).child(&[], &[]).build()
}

fn segment_production() -> Production {
    ProductionBuilder::new()
        .target(Point)
        .child(&[], &[])
        .target(Segment)
        .child(&[cp(Point, &[0], 0), cp(Point, &[], 0)], &[0, 0])
        .child(&[cp(Point, &[], 0), cp(Point, &[1], 0)], &[0, 0])
        .build()
}

fn triangle_production() -> Production {
    ProductionBuilder::new()
        .target(Segment)
        .child(&[cp(Point, &[0], 0), cp(Point, &[1], 0)], &[0, 0])
        .child(&[cp(Point, &[1], 0), cp(Point, &[2], 0)], &[0, 0])
        .child(&[cp(Point, &[2], 0), cp(Point, &[0], 0)], &[0, 0])
        .target(Triangle)
        .child(
            &[cp(Segment, &[0], 0), cp(Segment, &[], 2), cp(Segment, &[2], 1)],
            &[0, -1, 0],
        )
        .child(
            &[cp(Segment, &[0], 1), cp(Segment, &[1], 0), cp(Segment, &[], 0)],
            &[0, 0, -1],
        )
        .child(
            &[cp(Segment, &[], 1), cp(Segment, &[1], 1), cp(Segment, &[2], 0)],
            &[-1, 0, 0],
        )
        .child(
            &[cp(Segment, &[], 0), cp(Segment, &[], 1), cp(Segment, &[], 2)],
            &[0, 0, 0],
        )
        .build()
}

fn quad_production() -> Production {
    ProductionBuilder::new()
        .target(Point)
        .child(&[], &[])
        .target(Segment)
        .child(&[cp(Point, &[0], 0), cp(Point, &[], 0)], &[0, 0])
        .child(&[cp(Point, &[1], 0), cp(Point, &[], 0)], &[0, 0])
        .child(&[cp(Point, &[2], 0), cp(Point, &[], 0)], &[0, 0])
        .child(&[cp(Point, &[3], 0), cp(Point, &[], 0)], &[0, 0])
        .target(Quadrilateral)
        .child(
            &[
                cp(Segment, &[0], 0),
                cp(Segment, &[], 0),
                cp(Segment, &[], 3),
                cp(Segment, &[3], 1),
            ],
            &[0, 0, -1, 0],
        )
        .child(
            &[
                cp(Segment, &[0], 1),
                cp(Segment, &[1], 0),
                cp(Segment, &[], 1),
                cp(Segment, &[], 0),
            ],
            &[0, 0, 0, -1],
        )
        .child(
            &[
                cp(Segment, &[], 1),
                cp(Segment, &[1], 1),
                cp(Segment, &[2], 0),
                cp(Segment, &[], 2),
            ],
            &[-1, 0, 0, 0],
        )
        .child(
            &[
                cp(Segment, &[], 3),
                cp(Segment, &[], 2),
                cp(Segment, &[2], 1),
                cp(Segment, &[3], 0),
            ],
            &[0, -1, 0, 0],
        )
        .build()
}

fn tetrahedron_production() -> Production {
    ProductionBuilder::new()
        // the diagonal segment joining the bottom-left and front-diagonal
        // edge midpoints
        .target(Segment)
        .child(&[cp(Point, &[0, 0], 0), cp(Point, &[2, 1], 0)], &[0, 0])
        // four corner-cut triangles, then four around the diagonal
        .target(Triangle)
        .child(
            &[cp(Segment, &[0], 2), cp(Segment, &[1], 2), cp(Segment, &[2], 2)],
            &[0, 0, 0],
        )
        .child(
            &[cp(Segment, &[0], 0), cp(Segment, &[3], 0), cp(Segment, &[1], 1)],
            &[0, 0, 0],
        )
        .child(
            &[cp(Segment, &[2], 0), cp(Segment, &[3], 2), cp(Segment, &[0], 1)],
            &[0, 0, 0],
        )
        .child(
            &[cp(Segment, &[1], 0), cp(Segment, &[3], 1), cp(Segment, &[2], 1)],
            &[0, 0, 0],
        )
        .child(
            &[cp(Segment, &[0], 2), cp(Segment, &[], 0), cp(Segment, &[2], 0)],
            &[0, 0, -1],
        )
        .child(
            &[cp(Segment, &[0], 0), cp(Segment, &[], 0), cp(Segment, &[3], 2)],
            &[-1, 0, 0],
        )
        .child(
            &[cp(Segment, &[1], 2), cp(Segment, &[], 0), cp(Segment, &[2], 1)],
            &[-1, 0, 0],
        )
        .child(
            &[cp(Segment, &[1], 1), cp(Segment, &[], 0), cp(Segment, &[3], 1)],
            &[0, 0, -1],
        )
        // four corner tetrahedra, then four central ones around the diagonal
        .target(Tetrahedron)
        .child(
            &[
                cp(Triangle, &[0], 0),
                cp(Triangle, &[1], 0),
                cp(Triangle, &[2], 0),
                cp(Triangle, &[], 0),
            ],
            &[0, 0, 0, 0],
        )
        .child(
            &[
                cp(Triangle, &[0], 1),
                cp(Triangle, &[1], 2),
                cp(Triangle, &[], 1),
                cp(Triangle, &[3], 1),
            ],
            &[0, 0, 0, 0],
        )
        .child(
            &[
                cp(Triangle, &[0], 2),
                cp(Triangle, &[], 2),
                cp(Triangle, &[2], 1),
                cp(Triangle, &[3], 0),
            ],
            &[0, 0, 0, 0],
        )
        .child(
            &[
                cp(Triangle, &[], 3),
                cp(Triangle, &[1], 1),
                cp(Triangle, &[2], 2),
                cp(Triangle, &[3], 2),
            ],
            &[0, 0, 0, 0],
        )
        .child(
            &[
                cp(Triangle, &[0], 3),
                cp(Triangle, &[], 5),
                cp(Triangle, &[], 4),
                cp(Triangle, &[], 2),
            ],
            &[0, 1, -3, -2],
        )
        .child(
            &[
                cp(Triangle, &[], 1),
                cp(Triangle, &[], 7),
                cp(Triangle, &[], 5),
                cp(Triangle, &[3], 3),
            ],
            &[-2, 1, -3, 0],
        )
        .child(
            &[
                cp(Triangle, &[1], 3),
                cp(Triangle, &[], 6),
                cp(Triangle, &[], 7),
                cp(Triangle, &[], 3),
            ],
            &[2, 1, -3, -3],
        )
        .child(
            &[
                cp(Triangle, &[], 0),
                cp(Triangle, &[], 4),
                cp(Triangle, &[], 6),
                cp(Triangle, &[2], 3),
            ],
            &[-3, 1, -3, 2],
        )
        .build()
}

fn hexahedron_production() -> Production {
    ProductionBuilder::new()
        .target(Point)
        .child(&[], &[])
        // spokes from each face center to the cell center
        .target(Segment)
        .child(&[cp(Point, &[0], 0), cp(Point, &[], 0)], &[0, 0])
        .child(&[cp(Point, &[1], 0), cp(Point, &[], 0)], &[0, 0])
        .child(&[cp(Point, &[2], 0), cp(Point, &[], 0)], &[0, 0])
        .child(&[cp(Point, &[3], 0), cp(Point, &[], 0)], &[0, 0])
        .child(&[cp(Point, &[4], 0), cp(Point, &[], 0)], &[0, 0])
        .child(&[cp(Point, &[5], 0), cp(Point, &[], 0)], &[0, 0])
        // one interior quadrilateral per parent edge; cones run edge-midpoint
        // spoke, face spoke, reversed face spoke, reversed face-interior spoke
        .target(Quadrilateral)
        .child(
            &[cp(Segment, &[0], 0), cp(Segment, &[], 0), cp(Segment, &[], 5), cp(Segment, &[5], 3)],
            &[0, 0, -1, -1],
        )
        .child(
            &[cp(Segment, &[0], 1), cp(Segment, &[], 0), cp(Segment, &[], 3), cp(Segment, &[3], 0)],
            &[0, 0, -1, -1],
        )
        .child(
            &[cp(Segment, &[0], 2), cp(Segment, &[], 0), cp(Segment, &[], 4), cp(Segment, &[4], 0)],
            &[0, 0, -1, -1],
        )
        .child(
            &[cp(Segment, &[0], 3), cp(Segment, &[], 0), cp(Segment, &[], 2), cp(Segment, &[2], 0)],
            &[0, 0, -1, -1],
        )
        .child(
            &[cp(Segment, &[1], 0), cp(Segment, &[], 1), cp(Segment, &[], 2), cp(Segment, &[2], 2)],
            &[0, 0, -1, -1],
        )
        .child(
            &[cp(Segment, &[1], 1), cp(Segment, &[], 1), cp(Segment, &[], 4), cp(Segment, &[4], 2)],
            &[0, 0, -1, -1],
        )
        .child(
            &[cp(Segment, &[1], 2), cp(Segment, &[], 1), cp(Segment, &[], 3), cp(Segment, &[3], 2)],
            &[0, 0, -1, -1],
        )
        .child(
            &[cp(Segment, &[1], 3), cp(Segment, &[], 1), cp(Segment, &[], 5), cp(Segment, &[5], 1)],
            &[0, 0, -1, -1],
        )
        .child(
            &[cp(Segment, &[2], 1), cp(Segment, &[], 2), cp(Segment, &[], 4), cp(Segment, &[4], 3)],
            &[0, 0, -1, -1],
        )
        .child(
            &[cp(Segment, &[2], 3), cp(Segment, &[], 2), cp(Segment, &[], 5), cp(Segment, &[5], 0)],
            &[0, 0, -1, -1],
        )
        .child(
            &[cp(Segment, &[3], 1), cp(Segment, &[], 3), cp(Segment, &[], 5), cp(Segment, &[5], 2)],
            &[0, 0, -1, -1],
        )
        .child(
            &[cp(Segment, &[3], 3), cp(Segment, &[], 3), cp(Segment, &[], 4), cp(Segment, &[4], 1)],
            &[0, 0, -1, -1],
        )
        // eight octants, one per corner
        .target(Hexahedron)
        .child(
            &[
                cp(Quadrilateral, &[0], 0),
                cp(Quadrilateral, &[], 9),
                cp(Quadrilateral, &[2], 0),
                cp(Quadrilateral, &[], 0),
                cp(Quadrilateral, &[], 3),
                cp(Quadrilateral, &[5], 0),
            ],
            &[0, 0, 0, -3, 0, 0],
        )
        .child(
            &[
                cp(Quadrilateral, &[0], 1),
                cp(Quadrilateral, &[], 10),
                cp(Quadrilateral, &[], 0),
                cp(Quadrilateral, &[3], 1),
                cp(Quadrilateral, &[], 1),
                cp(Quadrilateral, &[5], 3),
            ],
            &[0, -1, 0, 0, -3, 0],
        )
        .child(
            &[
                cp(Quadrilateral, &[0], 2),
                cp(Quadrilateral, &[], 11),
                cp(Quadrilateral, &[], 2),
                cp(Quadrilateral, &[3], 0),
                cp(Quadrilateral, &[4], 1),
                cp(Quadrilateral, &[], 1),
            ],
            &[0, 2, -3, 0, 0, 1],
        )
        .child(
            &[
                cp(Quadrilateral, &[0], 3),
                cp(Quadrilateral, &[], 8),
                cp(Quadrilateral, &[2], 1),
                cp(Quadrilateral, &[], 2),
                cp(Quadrilateral, &[4], 0),
                cp(Quadrilateral, &[], 3),
            ],
            &[0, -3, 0, 0, 0, -2],
        )
        .child(
            &[
                cp(Quadrilateral, &[], 9),
                cp(Quadrilateral, &[1], 0),
                cp(Quadrilateral, &[2], 3),
                cp(Quadrilateral, &[], 7),
                cp(Quadrilateral, &[], 4),
                cp(Quadrilateral, &[5], 1),
            ],
            &[-2, 0, 0, 2, -1, 0],
        )
        .child(
            &[
                cp(Quadrilateral, &[], 8),
                cp(Quadrilateral, &[1], 1),
                cp(Quadrilateral, &[2], 2),
                cp(Quadrilateral, &[], 5),
                cp(Quadrilateral, &[4], 3),
                cp(Quadrilateral, &[], 4),
            ],
            &[1, 0, 0, -1, 0, 3],
        )
        .child(
            &[
                cp(Quadrilateral, &[], 11),
                cp(Quadrilateral, &[1], 2),
                cp(Quadrilateral, &[], 5),
                cp(Quadrilateral, &[3], 3),
                cp(Quadrilateral, &[4], 2),
                cp(Quadrilateral, &[], 6),
            ],
            &[-4, 0, 2, 0, 0, -4],
        )
        .child(
            &[
                cp(Quadrilateral, &[], 10),
                cp(Quadrilateral, &[1], 3),
                cp(Quadrilateral, &[], 7),
                cp(Quadrilateral, &[3], 2),
                cp(Quadrilateral, &[], 6),
                cp(Quadrilateral, &[5], 2),
            ],
            &[3, 0, -1, 0, 2, 0],
        )
        .build()
}

fn point_actions() -> ActionTable {
    action_table(&[(0, &[(Point, &[(0, 0)])])])
}

pub(crate) fn segment_refine_actions() -> ActionTable {
    action_table(&[
        (0, &[(Point, &[(0, 0)]), (Segment, &[(0, 0), (1, 0)])]),
        (-1, &[(Point, &[(0, 0)]), (Segment, &[(1, -1), (0, -1)])]),
    ])
}

fn triangle_refine_actions() -> ActionTable {
    let mut t = action_table(&[
        (-3, &[(Segment, &[(2, -1), (1, -1), (0, -1)])]),
        (-2, &[(Segment, &[(1, -1), (0, -1), (2, -1)])]),
        (-1, &[(Segment, &[(0, -1), (2, -1), (1, -1)])]),
        (0, &[(Segment, &[(0, 0), (1, 0), (2, 0)])]),
        (1, &[(Segment, &[(1, 0), (2, 0), (0, 0)])]),
        (2, &[(Segment, &[(2, 0), (0, 0), (1, 0)])]),
    ]);
    for (row, o_p) in PAPER_TRIANGLE_REFINE_ACTIONS.iter().zip(-3i8..) {
        t.set(
            crate::polytope::Orientation(o_p),
            Triangle,
            row.iter()
                .map(|&(r, o)| (r, crate::polytope::Orientation(o)))
                .collect(),
        );
    }
    t
}

pub(crate) fn quad_refine_actions() -> ActionTable {
    action_table(&[
        (
            -4,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(1, 0), (0, 0), (3, 0), (2, 0)]),
                (Quadrilateral, &[(2, -4), (1, -4), (0, -4), (3, -4)]),
            ],
        ),
        (
            -3,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(0, 0), (3, 0), (2, 0), (1, 0)]),
                (Quadrilateral, &[(1, -3), (0, -3), (3, -3), (2, -3)]),
            ],
        ),
        (
            -2,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(3, 0), (2, 0), (1, 0), (0, 0)]),
                (Quadrilateral, &[(0, -2), (3, -2), (2, -2), (1, -2)]),
            ],
        ),
        (
            -1,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(2, 0), (1, 0), (0, 0), (3, 0)]),
                (Quadrilateral, &[(3, -1), (2, -1), (1, -1), (0, -1)]),
            ],
        ),
        (
            0,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(0, 0), (1, 0), (2, 0), (3, 0)]),
                (Quadrilateral, &[(0, 0), (1, 0), (2, 0), (3, 0)]),
            ],
        ),
        (
            1,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(1, 0), (2, 0), (3, 0), (0, 0)]),
                (Quadrilateral, &[(1, 1), (2, 1), (3, 1), (0, 1)]),
            ],
        ),
        (
            2,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(2, 0), (3, 0), (0, 0), (1, 0)]),
                (Quadrilateral, &[(2, 2), (3, 2), (0, 2), (1, 2)]),
            ],
        ),
        (
            3,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(3, 0), (0, 0), (1, 0), (2, 0)]),
                (Quadrilateral, &[(3, 3), (0, 3), (1, 3), (2, 3)]),
            ],
        ),
    ])
}

/// Regular refinement for points, segments, triangles, quadrilaterals,
/// tetrahedra, and hexahedra.
pub fn regular_refine_spec() -> TransformSpec {
    let mut spec = TransformSpec {
        label_rule: LabelRule::Inherit,
        ..Default::default()
    };
    let entries: [(Polytope, Production, ActionTable); 6] = [
        (Point, point_production(), point_actions()),
        (Segment, segment_production(), segment_refine_actions()),
        (Triangle, triangle_production(), triangle_refine_actions()),
        (Quadrilateral, quad_production(), quad_refine_actions()),
        (Tetrahedron, tetrahedron_production(), {
            let p = tetrahedron_production();
            ActionTable::identity(&p)
        }),
        (Hexahedron, hexahedron_production(), {
            let p = hexahedron_production();
            ActionTable::identity(&p)
        }),
    ];
    for (shape, production, actions) in entries {
        spec.types
            .insert(TransformType::Primary(shape), TypeRule { production, actions });
    }
    spec
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn production_counts_match_interiors() {
        let spec = regular_refine_spec();
        let counts = |s: Polytope| {
            let p = &spec.types[&TransformType::Primary(s)].production;
            p.targets
                .iter()
                .map(|t| (t.shape, t.count()))
                .collect::<Vec<_>>()
        };
        assert_eq!(counts(Segment), vec![(Point, 1), (Segment, 2)]);
        assert_eq!(counts(Triangle), vec![(Segment, 3), (Triangle, 4)]);
        assert_eq!(
            counts(Tetrahedron),
            vec![(Segment, 1), (Triangle, 8), (Tetrahedron, 8)]
        );
        assert_eq!(
            counts(Hexahedron),
            vec![(Point, 1), (Segment, 6), (Quadrilateral, 12), (Hexahedron, 8)]
        );
        assert_eq!(
            counts(Quadrilateral),
            vec![(Point, 1), (Segment, 4), (Quadrilateral, 4)]
        );
    }
}
