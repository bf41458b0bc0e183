//! Triangle-to-quadrilateral conversion.
//!
//! Each triangle splits into three quadrilaterals around its centroid;
//! segments and points refine as in the regular tables, so box cells refine
//! regularly and mixed meshes come out all-quadrilateral.

use crate::catalog::action_table;
use crate::catalog::refine::{quad_refine_actions, segment_refine_actions};
use crate::error::{Error, Result};
use crate::polytope::Polytope::{self, *};
use crate::topology::MeshTopology;
use crate::transform::{
    cp, ActionTable, LabelRule, Production, ProductionBuilder, TransformSpec, TransformType,
    TypeRule,
};

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
        .target(Point)
        .child(&[], &[])
        .target(Segment)
        .child(&[cp(Point, &[0], 0), cp(Point, &[], 0)], &[0, 0])
        .child(&[cp(Point, &[1], 0), cp(Point, &[], 0)], &[0, 0])
        .child(&[cp(Point, &[2], 0), cp(Point, &[], 0)], &[0, 0])
        .target(Quadrilateral)
        .child(
            &[
                cp(Segment, &[0], 0),
                cp(Segment, &[], 0),
                cp(Segment, &[], 2),
                cp(Segment, &[2], 1),
            ],
            &[0, 0, -1, 0],
        )
        .child(
            &[
                cp(Segment, &[1], 0),
                cp(Segment, &[], 1),
                cp(Segment, &[], 0),
                cp(Segment, &[0], 1),
            ],
            &[0, 0, -1, 0],
        )
        .child(
            &[
                cp(Segment, &[2], 0),
                cp(Segment, &[], 2),
                cp(Segment, &[], 1),
                cp(Segment, &[1], 1),
            ],
            &[0, 0, -1, 0],
        )
        .build()
}

fn triangle_actions() -> ActionTable {
    action_table(&[
        (
            -3,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(0, 0), (2, 0), (1, 0)]),
                (Quadrilateral, &[(1, -2), (0, -2), (2, -2)]),
            ],
        ),
        (
            -2,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(2, 0), (1, 0), (0, 0)]),
                (Quadrilateral, &[(0, -2), (2, -2), (1, -2)]),
            ],
        ),
        (
            -1,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(1, 0), (0, 0), (2, 0)]),
                (Quadrilateral, &[(2, -2), (1, -2), (0, -2)]),
            ],
        ),
        (
            0,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(0, 0), (1, 0), (2, 0)]),
                (Quadrilateral, &[(0, 0), (1, 0), (2, 0)]),
            ],
        ),
        (
            1,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(1, 0), (2, 0), (0, 0)]),
                (Quadrilateral, &[(1, 0), (2, 0), (0, 0)]),
            ],
        ),
        (
            2,
            &[
                (Point, &[(0, 0)]),
                (Segment, &[(2, 0), (0, 0), (1, 0)]),
                (Quadrilateral, &[(2, 0), (0, 0), (1, 0)]),
            ],
        ),
    ])
}

/// Conversion to box cells. 2-D only; triangles become three quadrilaterals,
/// quadrilaterals refine regularly.
pub fn tobox_spec(base: &dyn MeshTopology) -> Result<TransformSpec> {
    if base.dim() > 2 {
        return Err(Error::Unsupported(
            "tobox is implemented for 2-D meshes only".into(),
        ));
    }
    let mut spec = TransformSpec {
        label_rule: LabelRule::Inherit,
        ..Default::default()
    };
    let quad_production = {
        // regular refinement of a quadrilateral is already all-box
        let refine = crate::catalog::regular_refine_spec();
        refine.types[&TransformType::Primary(Quadrilateral)]
            .production
            .clone()
    };
    let entries: [(Polytope, Production, ActionTable); 4] = [
        (Point, point_production(), action_table(&[(0, &[(Point, &[(0, 0)])])])),
        (Segment, segment_production(), segment_refine_actions()),
        (Triangle, triangle_production(), triangle_actions()),
        (Quadrilateral, quad_production, quad_refine_actions()),
    ];
    for (shape, production, actions) in entries {
        spec.types
            .insert(TransformType::Primary(shape), TypeRule { production, actions });
    }
    Ok(spec)
}
