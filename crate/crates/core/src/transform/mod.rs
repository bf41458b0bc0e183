//! Table-driven mesh transformations.
//!
//! A transformation is described per *transform type* (by default the cell
//! shape): each type produces a set of children, and each child's cone is
//! encoded as paths through the parent's closure together with orientations.
//! Action tables describe how replicas permute and reorient when the parent is
//! seen through a nonzero orientation.

mod derive;
mod engine;
mod index;

pub use derive::derive_action_table;
pub use engine::{apply_concrete, resolve_cone_path};
pub use index::OffsetIndex;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polytope::{Orientation, Polytope};
use crate::topology::MeshTopology;
use crate::Point;

/// Locates one cone point of a produced child: walk `steps` cone indices down
/// from the producing point (indices are in the arrangement-adjusted frame at
/// each step), then take the `replica`-th child of the given shape there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePath {
    pub shape: Polytope,
    pub steps: Vec<usize>,
    pub replica: usize,
}

/// Shorthand for building cone paths in production tables.
pub fn cp(shape: Polytope, steps: &[usize], replica: usize) -> ConePath {
    ConePath {
        shape,
        steps: steps.to_vec(),
        replica,
    }
}

/// The children of one target shape: per replica, the cone paths and the
/// orientation each resolved cone point is attached with.
#[derive(Clone, Debug, Default)]
pub struct TargetRule {
    pub shape: Polytope,
    pub cones: Vec<Vec<ConePath>>,
    pub ornts: Vec<Vec<Orientation>>,
}

impl TargetRule {
    pub fn count(&self) -> usize {
        self.cones.len()
    }
}

/// Everything one transform type produces.
#[derive(Clone, Debug, Default)]
pub struct Production {
    pub targets: Vec<TargetRule>,
}

impl Production {
    pub fn target(&self, shape: Polytope) -> Option<&TargetRule> {
        self.targets.iter().find(|t| t.shape == shape)
    }

    pub fn count(&self, shape: Polytope) -> usize {
        self.target(shape).map(|t| t.count()).unwrap_or(0)
    }
}

/// Builder for production tables; children are listed per target shape.
#[derive(Default)]
pub struct ProductionBuilder {
    prod: Production,
}

impl ProductionBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn target(mut self, shape: Polytope) -> Self {
        self.prod.targets.push(TargetRule {
            shape,
            cones: Vec::new(),
            ornts: Vec::new(),
        });
        self
    }

    pub fn child(mut self, cones: &[ConePath], ornts: &[i8]) -> Self {
        let t = self.prod.targets.last_mut().expect("target() before child()");
        assert_eq!(cones.len(), ornts.len());
        t.cones.push(cones.to_vec());
        t.ornts.push(ornts.iter().map(|&o| Orientation(o)).collect());
        self
    }

    pub fn build(self) -> Production {
        self.prod
    }
}

/// Per parent orientation and produced shape, the replica permutation and
/// orientation corrections: replica `r` of the arranged parent is replica
/// `r_c` of the stored parent, carried with `o_c`.
#[derive(Clone, Debug, Default)]
pub struct ActionTable {
    rows: BTreeMap<i8, BTreeMap<Polytope, Vec<(usize, Orientation)>>>,
}

impl ActionTable {
    /// The identity table for a production under parent orientation 0 only.
    pub fn identity(prod: &Production) -> ActionTable {
        let mut t = ActionTable::default();
        t.set_identity_row(prod);
        t
    }

    pub fn set_identity_row(&mut self, prod: &Production) {
        let row = prod
            .targets
            .iter()
            .map(|t| {
                (
                    t.shape,
                    (0..t.count()).map(|r| (r, Orientation::IDENTITY)).collect(),
                )
            })
            .collect();
        self.rows.insert(0, row);
    }

    pub fn set(&mut self, o_p: Orientation, shape: Polytope, entries: Vec<(usize, Orientation)>) {
        self.rows.entry(o_p.0).or_default().insert(shape, entries);
    }

    pub fn get(&self, o_p: Orientation, shape: Polytope) -> Option<&[(usize, Orientation)]> {
        self.rows
            .get(&o_p.0)
            .and_then(|row| row.get(&shape))
            .map(|v| v.as_slice())
    }

    pub fn rows(&self) -> impl Iterator<Item = (Orientation, &BTreeMap<Polytope, Vec<(usize, Orientation)>>)> {
        self.rows.iter().map(|(&o, row)| (Orientation(o), row))
    }
}

/// A transform type: the production selector for a point. Points default to
/// the primary production of their shape; restricted transforms map inactive
/// points to identity copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformType {
    Primary(Polytope),
    Identity(Polytope),
}

impl TransformType {
    pub fn shape(self) -> Polytope {
        match self {
            TransformType::Primary(s) | TransformType::Identity(s) => s,
        }
    }

    /// Deterministic ordering key: parent dimension ascending, then shape,
    /// then primary before identity.
    fn order_key(self) -> (usize, usize, usize) {
        let variant = match self {
            TransformType::Primary(_) => 0,
            TransformType::Identity(_) => 1,
        };
        (self.shape().dim(), self.shape().index(), variant)
    }
}

impl PartialOrd for TransformType {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TransformType {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl std::fmt::Display for TransformType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransformType::Primary(s) => write!(f, "{s}"),
            TransformType::Identity(s) => write!(f, "identity({s})"),
        }
    }
}

/// How points map to transform types.
#[derive(Clone, Debug, Default)]
pub enum TypeAssignment {
    /// Every point uses the primary production of its shape.
    #[default]
    ByShape,
    /// Points in the closure of the labeled set use the primary production;
    /// everything else is identity-copied.
    Restricted { label: String, values: Vec<i64> },
}

/// How label values propagate to children.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LabelRule {
    /// Children inherit the parent's value under every base label.
    #[default]
    Inherit,
    /// Emit a layer label: copies get their replica index, extruded cells get
    /// the layer they span. Base labels are not propagated.
    Layer(&'static str),
}

/// A complete transformation: productions and action tables per type, plus
/// the point-to-type assignment and label propagation rule.
#[derive(Clone, Debug, Default)]
pub struct TransformSpec {
    pub types: BTreeMap<TransformType, TypeRule>,
    pub assignment: TypeAssignment,
    pub label_rule: LabelRule,
}

#[derive(Clone, Debug, Default)]
pub struct TypeRule {
    pub production: Production,
    pub actions: ActionTable,
}

impl TransformSpec {
    pub fn rule(&self, ty: TransformType) -> Result<&TypeRule> {
        self.types
            .get(&ty)
            .ok_or_else(|| Error::MissingProduction(ty.to_string()))
    }

    /// Resolve the transform type of every base point.
    pub fn assign_types(&self, base: &dyn MeshTopology) -> Result<Vec<TransformType>> {
        match &self.assignment {
            TypeAssignment::ByShape => (0..base.chart_size())
                .map(|p| Ok(TransformType::Primary(base.shape_of(p)?)))
                .collect(),
            TypeAssignment::Restricted { label, values } => {
                let mut active = vec![false; base.chart_size()];
                for &v in values {
                    for p in base.label_stratum(label, v)? {
                        for (q, _) in base.closure(p)? {
                            active[q] = true;
                        }
                    }
                }
                (0..base.chart_size())
                    .map(|p| {
                        let s = base.shape_of(p)?;
                        Ok(if active[p] {
                            TransformType::Primary(s)
                        } else {
                            TransformType::Identity(s)
                        })
                    })
                    .collect()
            }
        }
    }

    /// Replica permutation and orientation correction for children of an
    /// arranged parent: returns `(r_c, compose(o_c, given))`.
    pub fn apply_action(
        &self,
        ty: TransformType,
        o_p: Orientation,
        child: Polytope,
        replica: usize,
        given: Orientation,
    ) -> Result<(usize, Orientation)> {
        let rule = self.rule(ty)?;
        let row = rule
            .actions
            .get(o_p, child)
            .ok_or_else(|| Error::MissingActionRow {
                ty: ty.to_string(),
                ornt: o_p.0,
            })?;
        let &(r_c, o_c) = row.get(replica).ok_or(Error::ReplicaOutOfRange {
            parent: 0,
            shape: child,
            replica,
            count: row.len(),
        })?;
        Ok((r_c, child.compose(o_c, given)?))
    }
}

/// The identity production for a shape: one same-shape copy whose cone
/// references replica 0 of each cone point's same-shape child.
pub fn identity_production(shape: Polytope) -> Production {
    let cones: Vec<ConePath> = shape
        .cone_types()
        .iter()
        .enumerate()
        .map(|(k, &cs)| cp(cs, &[k], 0))
        .collect();
    let ornts = vec![0i8; shape.cone_size()];
    ProductionBuilder::new()
        .target(shape)
        .child(&cones, &ornts)
        .build()
}

/// Identity action rows: the copy tracks the parent's orientation.
pub fn identity_actions(shape: Polytope, prod: &Production) -> ActionTable {
    let mut t = ActionTable::default();
    for o in shape.orientations() {
        t.set(o, shape, vec![(0, o)]);
        for target in &prod.targets {
            if target.shape != shape {
                t.set(o, target.shape, (0..target.count()).map(|r| (r, Orientation::IDENTITY)).collect());
            }
        }
    }
    t
}

/// The identity transform: every point produces one copy of itself.
pub fn identity_spec(shapes: &[Polytope]) -> TransformSpec {
    let mut spec = TransformSpec::default();
    for &s in shapes {
        let production = identity_production(s);
        let actions = identity_actions(s, &production);
        spec.types
            .insert(TransformType::Primary(s), TypeRule { production, actions });
    }
    spec
}

/// Dimension classes in numbering order: cells, vertices, faces, edges.
pub fn dim_class_order(top_dim: usize) -> Vec<usize> {
    let mut order = vec![top_dim];
    if top_dim > 0 {
        order.push(0);
    }
    for d in (1..top_dim).rev() {
        order.push(d);
    }
    order
}

/// A single defect found by [`validate_spec`].
#[derive(Clone, Debug)]
pub enum SpecViolation {
    MissingType(TransformType),
    /// A cone path is deeper than the producing point allows (Condition 1).
    PathTooDeep { ty: TransformType, child: Polytope, replica: usize },
    Unresolvable { point: Point, detail: String },
    /// An action row's replica map is not a permutation.
    NotAPermutation { ty: TransformType, ornt: i8, child: Polytope },
    MissingActionRow { ty: TransformType, ornt: i8 },
    NonIdentityZeroRow { ty: TransformType, child: Polytope },
}

/// Check a spec against a base mesh: type coverage, Condition-1 path depths,
/// walkability of every cone path on every point, and action-table sanity.
pub fn validate_spec(base: &dyn MeshTopology, spec: &TransformSpec) -> Result<Vec<SpecViolation>> {
    let mut out = Vec::new();
    let types = spec.assign_types(base)?;
    let mut present: Vec<TransformType> = types.clone();
    present.sort_unstable();
    present.dedup();
    for &ty in &present {
        let rule = match spec.types.get(&ty) {
            Some(r) => r,
            None => {
                out.push(SpecViolation::MissingType(ty));
                continue;
            }
        };
        // structural checks
        for target in &rule.production.targets {
            for (r, cone) in target.cones.iter().enumerate() {
                if cone.len() != target.shape.cone_size() {
                    out.push(SpecViolation::Unresolvable {
                        point: 0,
                        detail: format!(
                            "{ty}: {}#{r} lists {} cone paths, shape needs {}",
                            target.shape,
                            cone.len(),
                            target.shape.cone_size()
                        ),
                    });
                }
                for path in cone {
                    if path.steps.len() > ty.shape().dim() {
                        out.push(SpecViolation::PathTooDeep {
                            ty,
                            child: target.shape,
                            replica: r,
                        });
                    }
                }
            }
        }
        // action rows: every legal parent orientation, permutation per target,
        // identity at orientation 0
        for o in ty.shape().orientations() {
            let mut any = false;
            for target in &rule.production.targets {
                match rule.actions.get(o, target.shape) {
                    None => {}
                    Some(row) => {
                        any = true;
                        let mut seen = vec![false; target.count()];
                        let mut perm = row.len() == target.count();
                        for &(rc, _) in row {
                            if rc >= target.count() || seen[rc] {
                                perm = false;
                                break;
                            }
                            seen[rc] = true;
                        }
                        if !perm {
                            out.push(SpecViolation::NotAPermutation {
                                ty,
                                ornt: o.0,
                                child: target.shape,
                            });
                        }
                        if o.is_identity()
                            && row
                                .iter()
                                .enumerate()
                                .any(|(r, &(rc, oc))| rc != r || !oc.is_identity())
                        {
                            out.push(SpecViolation::NonIdentityZeroRow {
                                ty,
                                child: target.shape,
                            });
                        }
                    }
                }
            }
            if !any {
                out.push(SpecViolation::MissingActionRow { ty, ornt: o.0 });
            }
        }
    }
    if !out.is_empty() {
        return Ok(out);
    }
    // walk every path on every point
    let index = OffsetIndex::build(base, spec)?;
    for p in 0..base.chart_size() {
        let rule = spec.rule(types[p])?;
        for target in &rule.production.targets {
            for r in 0..target.count() {
                for (slot, path) in target.cones[r].iter().enumerate() {
                    let given = target.ornts[r][slot];
                    if let Err(e) = resolve_cone_path(base, spec, &index, p, path, given) {
                        out.push(SpecViolation::Unresolvable {
                            point: p,
                            detail: format!("{}#{r} slot {slot}: {e}", target.shape),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Polytope::*;

    #[test]
    fn type_ordering() {
        let mut tys = vec![
            TransformType::Primary(Triangle),
            TransformType::Primary(Point),
            TransformType::Identity(Segment),
            TransformType::Primary(Segment),
        ];
        tys.sort_unstable();
        assert_eq!(
            tys,
            vec![
                TransformType::Primary(Point),
                TransformType::Primary(Segment),
                TransformType::Identity(Segment),
                TransformType::Primary(Triangle),
            ]
        );
    }

    #[test]
    fn dim_class_orders() {
        assert_eq!(dim_class_order(3), vec![3, 0, 2, 1]);
        assert_eq!(dim_class_order(2), vec![2, 0, 1]);
        assert_eq!(dim_class_order(1), vec![1, 0]);
        assert_eq!(dim_class_order(0), vec![0]);
    }

    #[test]
    fn identity_production_structure() {
        let p = identity_production(Triangle);
        assert_eq!(p.targets.len(), 1);
        assert_eq!(p.count(Triangle), 1);
        assert_eq!(
            p.targets[0].cones[0],
            vec![cp(Segment, &[0], 0), cp(Segment, &[1], 0), cp(Segment, &[2], 0)]
        );
    }
}
