//! Extrusion: replace each cell by a stack of higher-dimensional cells with
//! two copies of the original as faces.
//!
//! The productions are sized by the layer count, so they are assembled
//! dynamically. Non-tensor stacks use ordinary prisms whose bottom endcap
//! reverses orientation for an outward normal; tensor stacks use tensor
//! cells with every cone orientation zero.

use crate::error::{Error, Result};
use crate::geometry::{NormalMode, Real};
use crate::polytope::{Orientation, Polytope::{self, *}};
use crate::topology::MeshTopology;
use crate::transform::{
    cp, identity_actions, identity_production, ActionTable, ConePath, LabelRule, Production,
    ProductionBuilder, TransformSpec, TransformType, TypeAssignment, TypeRule,
};
use crate::Point as MeshPoint;

/// Options controlling extrusion.
#[derive(Clone, Debug)]
pub struct ExtrudeOptions<R> {
    pub layers: usize,
    pub use_tensor: bool,
    pub thickness: R,
    pub symmetric: bool,
    pub normal: NormalMode<R>,
    /// Restrict the transform to the closure of the labeled points.
    pub active: Option<(String, Vec<i64>)>,
}

impl<R: Real> Default for ExtrudeOptions<R> {
    fn default() -> Self {
        ExtrudeOptions {
            layers: 1,
            use_tensor: false,
            thickness: R::one(),
            symmetric: false,
            normal: NormalMode::Auto,
            active: None,
        }
    }
}

impl<R: Real> ExtrudeOptions<R> {
    pub fn check(&self) -> Result<()> {
        if self.layers < 1 {
            return Err(Error::InvalidOptions("extrusion needs at least one layer".into()));
        }
        if self.thickness <= R::zero() {
            return Err(Error::InvalidOptions("extrusion thickness must be positive".into()));
        }
        if let NormalMode::Global(v) = &self.normal {
            if v.iter().all(|x| *x == R::zero()) {
                return Err(Error::InvalidOptions("global normal must be nonzero".into()));
            }
        }
        Ok(())
    }
}

fn point_extrusion(nl: usize, tensor: bool) -> Production {
    let vertical = if tensor { PointPrismTensor } else { Segment };
    let mut b = ProductionBuilder::new().target(Point);
    for _ in 0..=nl {
        b = b.child(&[], &[]);
    }
    b = b.target(vertical);
    for i in 0..nl {
        b = b.child(&[cp(Point, &[], i), cp(Point, &[], i + 1)], &[0, 0]);
    }
    b.build()
}

fn segment_extrusion(nl: usize, tensor: bool) -> Production {
    let mut b = ProductionBuilder::new().target(Segment);
    for i in 0..=nl {
        b = b.child(&[cp(Point, &[0], i), cp(Point, &[1], i)], &[0, 0]);
    }
    if tensor {
        b = b.target(SegPrismTensor);
        for i in 0..nl {
            b = b.child(
                &[
                    cp(Segment, &[], i),
                    cp(Segment, &[], i + 1),
                    cp(PointPrismTensor, &[0], i),
                    cp(PointPrismTensor, &[1], i),
                ],
                &[0, 0, 0, 0],
            );
        }
    } else {
        b = b.target(Quadrilateral);
        for i in 0..nl {
            b = b.child(
                &[
                    cp(Segment, &[], i),
                    cp(Segment, &[1], i),
                    cp(Segment, &[], i + 1),
                    cp(Segment, &[0], i),
                ],
                &[0, 0, -1, -1],
            );
        }
    }
    b.build()
}

fn triangle_extrusion(nl: usize, tensor: bool) -> Production {
    let mut b = ProductionBuilder::new().target(Triangle);
    for i in 0..=nl {
        b = b.child(
            &[cp(Segment, &[0], i), cp(Segment, &[1], i), cp(Segment, &[2], i)],
            &[0, 0, 0],
        );
    }
    if tensor {
        b = b.target(TriPrismTensor);
        for i in 0..nl {
            b = b.child(
                &[
                    cp(Triangle, &[], i),
                    cp(Triangle, &[], i + 1),
                    cp(SegPrismTensor, &[0], i),
                    cp(SegPrismTensor, &[1], i),
                    cp(SegPrismTensor, &[2], i),
                ],
                &[0, 0, 0, 0, 0],
            );
        }
    } else {
        b = b.target(TriPrism);
        for i in 0..nl {
            b = b.child(
                &[
                    cp(Triangle, &[], i),
                    cp(Triangle, &[], i + 1),
                    cp(Quadrilateral, &[0], i),
                    cp(Quadrilateral, &[1], i),
                    cp(Quadrilateral, &[2], i),
                ],
                &[-2, 0, 0, 0, 0],
            );
        }
    }
    b.build()
}

fn quad_extrusion(nl: usize, tensor: bool) -> Production {
    let mut b = ProductionBuilder::new().target(Quadrilateral);
    for i in 0..=nl {
        b = b.child(
            &[
                cp(Segment, &[0], i),
                cp(Segment, &[1], i),
                cp(Segment, &[2], i),
                cp(Segment, &[3], i),
            ],
            &[0, 0, 0, 0],
        );
    }
    if tensor {
        b = b.target(QuadPrismTensor);
        for i in 0..nl {
            b = b.child(
                &[
                    cp(Quadrilateral, &[], i),
                    cp(Quadrilateral, &[], i + 1),
                    cp(SegPrismTensor, &[0], i),
                    cp(SegPrismTensor, &[1], i),
                    cp(SegPrismTensor, &[2], i),
                    cp(SegPrismTensor, &[3], i),
                ],
                &[0, 0, 0, 0, 0, 0],
            );
        }
    } else {
        b = b.target(Hexahedron);
        for i in 0..nl {
            // side order front, back, right, left matches the reference hex
            b = b.child(
                &[
                    cp(Quadrilateral, &[], i),
                    cp(Quadrilateral, &[], i + 1),
                    cp(Quadrilateral, &[0], i),
                    cp(Quadrilateral, &[2], i),
                    cp(Quadrilateral, &[1], i),
                    cp(Quadrilateral, &[3], i),
                ],
                &[-2, 0, 0, 0, 0, 1],
            );
        }
    }
    b.build()
}

/// Copies track the parent orientation layer by layer; the stacked cells keep
/// identity (3-cells and tensor cells admit no other), and quadrilateral
/// sides of a reversed segment pick up the reflection that swaps the two
/// vertical edges.
fn extrusion_actions(shape: Polytope, prod: &Production, nl: usize, tensor: bool) -> ActionTable {
    let mut t = ActionTable::default();
    for o in shape.orientations() {
        for target in &prod.targets {
            let row: Vec<(usize, Orientation)> = if target.shape == shape {
                (0..=nl).map(|i| (i, o)).collect()
            } else if !tensor && shape == Segment && target.shape == Quadrilateral {
                let oc = if o.is_identity() { 0 } else { -3 };
                (0..nl).map(|i| (i, Orientation(oc))).collect()
            } else {
                (0..nl).map(|i| (i, Orientation(0))).collect()
            };
            t.set(o, target.shape, row);
        }
    }
    t
}

fn extrusion_rule(shape: Polytope, nl: usize, tensor: bool) -> Result<TypeRule> {
    let production = match shape {
        Point => point_extrusion(nl, tensor),
        Segment => segment_extrusion(nl, tensor),
        Triangle => triangle_extrusion(nl, tensor),
        Quadrilateral => quad_extrusion(nl, tensor),
        other => {
            return Err(Error::Unsupported(format!(
                "extrusion of {other} cells is not implemented"
            )))
        }
    };
    let actions = extrusion_actions(shape, &production, nl, tensor);
    Ok(TypeRule { production, actions })
}

/// Build the extrusion spec for a base mesh. Full-mesh extrusion needs a base
/// of dimension at most 2; with an active label, the labeled closure (of
/// dimension at most 2) extrudes and everything else is identity-copied.
pub fn extrude_spec<R: Real>(
    base: &dyn MeshTopology,
    opts: &ExtrudeOptions<R>,
) -> Result<TransformSpec> {
    opts.check()?;
    let mut spec = TransformSpec {
        label_rule: LabelRule::Layer("layer"),
        ..Default::default()
    };
    let mut present: Vec<Polytope> = (0..base.chart_size())
        .map(|p| base.shape_of(p))
        .collect::<Result<Vec<_>>>()?;
    present.sort_unstable_by_key(|s| s.index());
    present.dedup();
    match &opts.active {
        None => {
            if base.dim() > 2 {
                return Err(Error::InvalidOptions(
                    "full-mesh extrusion needs a base of dimension <= 2".into(),
                ));
            }
            for &s in &present {
                spec.types.insert(
                    TransformType::Primary(s),
                    extrusion_rule(s, opts.layers, opts.use_tensor)?,
                );
            }
        }
        Some((label, values)) => {
            base.label_stratum(label, *values.first().unwrap_or(&0))?; // label must exist
            let mut active_shapes: Vec<Polytope> = Vec::new();
            for &v in values {
                for p in base.label_stratum(label, v)? {
                    for (q, _) in base.closure(p)? {
                        let s = base.shape_of(q)?;
                        if s.dim() > 2 {
                            return Err(Error::InvalidOptions(
                                "active extrusion set may only contain points of dimension <= 2"
                                    .into(),
                            ));
                        }
                        if !active_shapes.contains(&s) {
                            active_shapes.push(s);
                        }
                    }
                }
            }
            for &s in &active_shapes {
                spec.types.insert(
                    TransformType::Primary(s),
                    extrusion_rule(s, opts.layers, opts.use_tensor)?,
                );
            }
            for &s in &present {
                let production = identity_production(s);
                let actions = identity_actions(s, &production);
                spec.types
                    .insert(TransformType::Identity(s), TypeRule { production, actions });
            }
            spec.assignment = TypeAssignment::Restricted {
                label: label.clone(),
                values: values.clone(),
            };
        }
    }
    Ok(spec)
}

/// Resolve the per-point transform types of a restricted transform: the
/// closure of the labeled points is active, everything else is identity.
pub fn active_restriction(
    base: &dyn MeshTopology,
    label: &str,
    values: &[i64],
) -> Result<Vec<TransformType>> {
    base.label_stratum(label, *values.first().unwrap_or(&0))?;
    let mut active = vec![false; base.chart_size()];
    for &v in values {
        for p in base.label_stratum(label, v)? {
            for (q, _) in base.closure(p)? {
                active[q] = true;
            }
        }
    }
    (0..base.chart_size())
        .map(|p: MeshPoint| {
            let s = base.shape_of(p)?;
            Ok(if active[p] {
                TransformType::Primary(s)
            } else {
                TransformType::Identity(s)
            })
        })
        .collect()
}

/// A cone path used by the identity production, re-exported for tests.
pub fn identity_path(shape: Polytope, slot: usize) -> ConePath {
    cp(shape.cone_types()[slot], &[slot], 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_extrusion_counts() {
        let p = point_extrusion(3, false);
        assert_eq!(p.count(Point), 4);
        assert_eq!(p.count(Segment), 3);
        // segment i joins replicas i and i+1
        let t = p.target(Segment).unwrap();
        for (i, cone) in t.cones.iter().enumerate() {
            assert_eq!(cone[0].replica, i);
            assert_eq!(cone[1].replica, i + 1);
            assert!(cone.iter().all(|c| c.steps.is_empty()));
        }
    }

    #[test]
    fn prism_bottom_reverses() {
        let p = triangle_extrusion(2, false);
        let t = p.target(TriPrism).unwrap();
        for ornts in &t.ornts {
            assert_eq!(
                ornts.iter().map(|o| o.0).collect::<Vec<_>>(),
                vec![-2, 0, 0, 0, 0]
            );
        }
        let p = triangle_extrusion(2, true);
        let t = p.target(TriPrismTensor).unwrap();
        for ornts in &t.ornts {
            assert!(ornts.iter().all(|o| o.is_identity()));
        }
    }

    #[test]
    fn layer_replicas_are_monotone() {
        for tensor in [false, true] {
            let p = quad_extrusion(3, tensor);
            let cells = &p.targets[1];
            for (i, cone) in cells.cones.iter().enumerate() {
                assert_eq!(cone[0].replica, i);
                assert_eq!(cone[1].replica, i + 1);
            }
        }
    }

    #[test]
    fn invalid_options_rejected() {
        let mut o = ExtrudeOptions::<f64>::default();
        o.layers = 0;
        assert!(o.check().is_err());
        let mut o = ExtrudeOptions::<f64>::default();
        o.thickness = 0.0;
        assert!(o.check().is_err());
        let mut o = ExtrudeOptions::<f64>::default();
        o.normal = NormalMode::Global(vec![0.0, 0.0, 0.0]);
        assert!(o.check().is_err());
    }
}
