//! Derive action tables by brute force on the reference cell.
//!
//! For each parent orientation, the production is applied to the reference
//! cell with arranged coordinates; children are matched to the orientation-0
//! children by vertex-coordinate multisets, and the orientation correction is
//! the arrangement aligning the matched vertex orders.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::{CoordinateRule, Coordinates};
use crate::polytope::{Orientation, Polytope};
use crate::topology::MeshTopology;
use crate::transform::{apply_concrete, ActionTable, OffsetIndex, TransformSpec};
use crate::Point;

/// Vertex coordinate tuples of every child of the reference cell's top point,
/// with vertices in canonical closure order.
fn realize_children(
    shape: Polytope,
    spec: &TransformSpec,
    rule: &CoordinateRule,
    arranged: Orientation,
) -> Result<BTreeMap<Polytope, Vec<Vec<Vec<f64>>>>> {
    let (base, mut coords) = crate::generate::reference_cell::<f64>(shape)?;
    if !arranged.is_identity() {
        let perm = shape.vertex_arrangement(arranged)?;
        let verts = base.stratum(0);
        let orig: Vec<Vec<f64>> = verts.iter().map(|&v| coords.get(v).to_vec()).collect();
        for (i, &v) in verts.iter().enumerate() {
            coords.set(v, &orig[perm[i]]);
        }
    }
    let (mesh, index) = apply_concrete(&base, spec)?;
    let new_coords = rule.apply(&base, &coords, &mesh, &index, spec)?;
    let top: Point = 0; // reference cells put the sole cell first
    let ty = index.type_of(top)?;
    let mut out: BTreeMap<Polytope, Vec<Vec<Vec<f64>>>> = BTreeMap::new();
    for target in &spec.rule(ty)?.production.targets {
        let mut tuples = Vec::with_capacity(target.count());
        for r in 0..target.count() {
            let q = index.child_number(top, target.shape, r)?;
            let verts: Vec<Vec<f64>> = mesh
                .closure(q)?
                .into_iter()
                .filter(|&(c, _)| mesh.shape_of(c).map(|s| s.dim() == 0).unwrap_or(false))
                .map(|(c, _)| new_coords.get(c).to_vec())
                .collect();
            tuples.push(verts);
        }
        out.insert(target.shape, tuples);
    }
    Ok(out)
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
}

fn same_multiset(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for x in a {
        for (i, y) in b.iter().enumerate() {
            if !used[i] && close(x, y) {
                used[i] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Derive the full action table of `shape` under the given spec.
///
/// The spec must already hold productions and action tables for every shape
/// in the reference cell's closure (lower dimensions bootstrap first). Child
/// shapes with a trivial orientation group are matched by multiset only and
/// recorded with correction 0.
pub fn derive_action_table(
    shape: Polytope,
    spec: &TransformSpec,
    rule: &CoordinateRule,
) -> Result<ActionTable> {
    let reference = realize_children(shape, spec, rule, Orientation::IDENTITY)?;
    let mut table = ActionTable::default();
    for o_p in shape.orientations() {
        let arranged = if o_p.is_identity() {
            reference.clone()
        } else {
            realize_children(shape, spec, rule, o_p)?
        };
        for (&target, arr_children) in &arranged {
            let ref_children = &reference[&target];
            let mut row = Vec::with_capacity(arr_children.len());
            for (r, child) in arr_children.iter().enumerate() {
                let matches: Vec<usize> = ref_children
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| same_multiset(child, c))
                    .map(|(i, _)| i)
                    .collect();
                if matches.len() != 1 {
                    return Err(Error::AmbiguousActionMatch {
                        shape,
                        ornt: o_p.0,
                        replica: r,
                    });
                }
                let r_c = matches[0];
                let o_c = if target.orientations().count() == 1 {
                    Orientation::IDENTITY
                } else {
                    align_coords(target, &ref_children[r_c], child)?
                };
                row.push((r_c, o_c));
            }
            table.set(o_p, target, row);
        }
    }
    Ok(table)
}

/// Find `o` with `arranged[i] == stored[perm_o[i]]` on coordinate tuples.
fn align_coords(shape: Polytope, stored: &[Vec<f64>], arranged: &[Vec<f64>]) -> Result<Orientation> {
    for o in shape.orientations() {
        let p = shape.vertex_arrangement(o)?;
        if (0..arranged.len()).all(|i| close(&arranged[i], &stored[p[i]])) {
            return Ok(o);
        }
    }
    Err(Error::UnresolvablePath {
        point: 0,
        reason: format!("no {shape:?} orientation aligns derived children"),
    })
}

/// Coordinates wrapper used while realizing (re-exported for catalog use).
pub(crate) fn _unused(_: &Coordinates<f64>, _: &OffsetIndex) {}
