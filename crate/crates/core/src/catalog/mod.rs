//! Ready-made transformations: regular refinement, triangle-to-quad
//! conversion, and extrusion.

mod extrude;
mod refine;
mod tobox;

pub use extrude::{active_restriction, extrude_spec, ExtrudeOptions};
pub use refine::{regular_refine_spec, PAPER_TRIANGLE_REFINE_ACTIONS};
pub use tobox::tobox_spec;

use crate::polytope::{Orientation, Polytope};
use crate::transform::ActionTable;

/// Refinement flavor and sweep count for pipelines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefineOptions {
    pub kind: RefineKind,
    pub sweeps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefineKind {
    Regular,
    ToBox,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions {
            kind: RefineKind::Regular,
            sweeps: 1,
        }
    }
}

/// Assemble an action table from per-orientation rows of
/// `(target shape, [(replica, orientation)])`.
pub(crate) fn action_table(rows: &[(i8, &[(Polytope, &[(usize, i8)])])]) -> ActionTable {
    let mut t = ActionTable::default();
    for &(o_p, targets) in rows {
        for &(shape, entries) in targets {
            t.set(
                Orientation(o_p),
                shape,
                entries.iter().map(|&(r, o)| (r, Orientation(o))).collect(),
            );
        }
    }
    t
}
