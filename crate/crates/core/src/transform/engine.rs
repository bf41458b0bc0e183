//! Cone-path resolution and concrete application of a transform.

use crate::error::{Error, Result};
use crate::plex::{Label, Plex};
use crate::polytope::Orientation;
use crate::topology::MeshTopology;
use crate::transform::{ConePath, LabelRule, OffsetIndex, TransformSpec};
use crate::Point;

/// Resolve one cone path of a child produced by base point `p`.
///
/// Walks `path.steps` cone indices down from `p`, accumulating how each
/// reached point is arranged from the walk's perspective; the final replica
/// and orientation are arrangement-adjusted through the action table. `given`
/// is the orientation the production table attaches the cone point with.
/// Returns the child point number and its final orientation.
///
/// The optional `visit` hook sees every base point the walk touches.
pub fn resolve_cone_path(
    base: &dyn MeshTopology,
    spec: &TransformSpec,
    index: &OffsetIndex,
    p: Point,
    path: &ConePath,
    given: Orientation,
) -> Result<(Point, Orientation)> {
    resolve_cone_path_traced(base, spec, index, p, path, given, &mut |_| {})
}

pub fn resolve_cone_path_traced(
    base: &dyn MeshTopology,
    spec: &TransformSpec,
    index: &OffsetIndex,
    p: Point,
    path: &ConePath,
    given: Orientation,
    visit: &mut dyn FnMut(Point),
) -> Result<(Point, Orientation)> {
    let mut at = p;
    let mut acc = Orientation::IDENTITY;
    visit(at);
    for &idx in &path.steps {
        let shape = base.shape_of(at)?;
        let arr = shape.cone_arrangement(acc)?;
        if idx >= arr.cone_perm.len() {
            return Err(Error::UnresolvablePath {
                point: at,
                reason: format!("cone index {idx} out of range for {shape}"),
            });
        }
        let cone = base.cone(at)?;
        let (next, stored) = cone[arr.cone_perm[idx]];
        let next_shape = base.shape_of(next)?;
        acc = next_shape.compose(stored, arr.cone_flips[idx])?;
        at = next;
        visit(at);
    }
    let ty = index.type_of(at)?;
    let (r_c, ornt) = spec.apply_action(ty, acc, path.shape, path.replica, given)?;
    let q = index.child_number(at, path.shape, r_c)?;
    Ok((q, ornt))
}

/// The resolved cone of child `q` in the transformed mesh.
pub fn child_cone(
    base: &dyn MeshTopology,
    spec: &TransformSpec,
    index: &OffsetIndex,
    q: Point,
) -> Result<Vec<(Point, Orientation)>> {
    child_cone_traced(base, spec, index, q, &mut |_| {})
}

pub fn child_cone_traced(
    base: &dyn MeshTopology,
    spec: &TransformSpec,
    index: &OffsetIndex,
    q: Point,
    visit: &mut dyn FnMut(Point),
) -> Result<Vec<(Point, Orientation)>> {
    let (p, shape, r) = index.parent_of(q)?;
    let ty = index.type_of(p)?;
    let rule = spec.rule(ty)?;
    let target = rule
        .production
        .target(shape)
        .ok_or(Error::ShapeNotProduced { parent: p, shape })?;
    let paths = &target.cones[r];
    let ornts = &target.ornts[r];
    let mut cone = Vec::with_capacity(paths.len());
    for (path, &given) in paths.iter().zip(ornts) {
        cone.push(resolve_cone_path_traced(
            base, spec, index, p, path, given, visit,
        )?);
    }
    Ok(cone)
}

/// The label value of child `q`, under the spec's propagation rule.
pub fn child_label(
    base: &dyn MeshTopology,
    spec: &TransformSpec,
    index: &OffsetIndex,
    name: &str,
    q: Point,
) -> Result<Option<i64>> {
    let (p, shape, r) = index.parent_of(q)?;
    match spec.label_rule {
        LabelRule::Inherit => base.label_get(name, p),
        LabelRule::Layer(layer) => {
            if name != layer {
                return Err(Error::UnknownLabel(name.to_string()));
            }
            let ty = index.type_of(p)?;
            if matches!(ty, crate::transform::TransformType::Identity(_)) {
                return Ok(None);
            }
            // copies carry their layer index, extruded cells the layer they
            // start at; both are the replica number
            let _ = shape;
            Ok(Some(r as i64))
        }
    }
}

/// Names of the labels the transformed mesh carries.
pub fn child_label_names(base: &dyn MeshTopology, spec: &TransformSpec) -> Vec<String> {
    match spec.label_rule {
        LabelRule::Inherit => base.label_names(),
        LabelRule::Layer(layer) => vec![layer.to_string()],
    }
}

/// Materialize the transformed mesh: every child's cone resolved through the
/// production tables, labels propagated, supports and strata derived.
pub fn apply_concrete(
    base: &dyn MeshTopology,
    spec: &TransformSpec,
) -> Result<(Plex, OffsetIndex)> {
    let index = OffsetIndex::build(base, spec)?;
    let n = index.total();
    let mut shapes = Vec::with_capacity(n);
    let mut cones = Vec::with_capacity(n);
    for q in 0..n {
        let (_, shape, _) = index.parent_of(q)?;
        shapes.push(shape);
        cones.push(child_cone(base, spec, &index, q)?);
    }
    let mut mesh = Plex::build(shapes, cones)?;
    for name in child_label_names(base, spec) {
        let mut label = Label::default();
        for q in 0..n {
            if let Some(v) = child_label(base, spec, &index, &name, q)? {
                label.set(q, v);
            }
        }
        if !label.is_empty() {
            mesh.set_label(&name, label);
        }
    }
    Ok((mesh, index))
}
