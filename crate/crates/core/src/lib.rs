//! Unstructured meshes as stratified DAGs with table-driven transformations.
//!
//! A mesh is a graded, directed acyclic graph: one point per k-cell, arrows
//! for the boundary relation, and an orientation on every arrow saying how
//! the boundary cell attaches. Transformations (regular refinement, cell
//! conversion, extrusion) are tables of production rules applied uniformly by
//! one engine, either materialized ([`transform::apply_concrete`]) or
//! evaluated lazily with output-sensitive cost ([`ephemeral::EphemeralMesh`]).

pub mod catalog;
pub mod ephemeral;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod pipeline;
pub mod plex;
pub mod polytope;
pub mod topology;
pub mod transform;

pub use error::{Error, Result};
pub use plex::Plex;
pub use polytope::{Orientation, Polytope};
pub use topology::MeshTopology;

/// A point in the chart: the graph-vertex id of one mesh cell.
pub type Point = usize;

/// Default-precision coordinates.
pub type Coords = geometry::Coordinates<f64>;
/// Single-precision coordinates.
pub type Coords32 = geometry::Coordinates<f32>;
