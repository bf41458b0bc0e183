//! The numbering index for transformed meshes.
//!
//! Child points are numbered by blocks keyed `(parent type, child shape)`:
//! the block offset plus `reduced-point-number * replicas + replica` gives the
//! child number. Blocks are ordered by child dimension class (cells, vertices,
//! faces, edges), then child shape, then parent type (dimension ascending),
//! which keeps each block contiguous and the whole chart a bijection.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::topology::MeshTopology;
use crate::transform::{dim_class_order, TransformSpec, TransformType};
use crate::Point;

#[derive(Clone, Debug)]
pub struct Block {
    pub parent_type: TransformType,
    pub child_shape: Polytope,
    pub offset: usize,
    /// Children of this shape per parent point.
    pub replicas: usize,
    /// Number of base points of the parent type.
    pub parents: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.replicas * self.parents
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Offsets, reduced point numbers, and their inverses for one (base, spec)
/// pair.
#[derive(Clone, Debug)]
pub struct OffsetIndex {
    blocks: Vec<Block>,
    /// (parent type, child shape) -> block position.
    block_of: BTreeMap<(TransformType, Polytope), usize>,
    /// Per base point: its transform type and reduced point number.
    point_types: Vec<(TransformType, usize)>,
    /// Per type: base points in chart order.
    type_points: BTreeMap<TransformType, Vec<Point>>,
    total: usize,
}

impl OffsetIndex {
    pub fn build(base: &dyn MeshTopology, spec: &TransformSpec) -> Result<OffsetIndex> {
        let types = spec.assign_types(base)?;
        let mut type_points: BTreeMap<TransformType, Vec<Point>> = BTreeMap::new();
        let mut point_types = Vec::with_capacity(types.len());
        for (p, &ty) in types.iter().enumerate() {
            let list = type_points.entry(ty).or_default();
            point_types.push((ty, list.len()));
            list.push(p);
        }
        // collect nonempty blocks and sort by (child class, child shape, parent type)
        let mut keys: Vec<(TransformType, Polytope, usize)> = Vec::new();
        let mut out_dim = 0;
        for (&ty, points) in &type_points {
            let rule = spec.rule(ty)?;
            for target in &rule.production.targets {
                if target.count() == 0 || points.is_empty() {
                    continue;
                }
                out_dim = out_dim.max(target.shape.dim());
                keys.push((ty, target.shape, target.count()));
            }
        }
        let class_order = dim_class_order(out_dim);
        let class_rank =
            |d: usize| class_order.iter().position(|&c| c == d).unwrap_or(usize::MAX);
        keys.sort_by_key(|&(ty, shape, _)| (class_rank(shape.dim()), shape.index(), ty));
        let mut blocks = Vec::with_capacity(keys.len());
        let mut block_of = BTreeMap::new();
        let mut offset = 0;
        for (ty, shape, replicas) in keys {
            let parents = type_points[&ty].len();
            block_of.insert((ty, shape), blocks.len());
            blocks.push(Block {
                parent_type: ty,
                child_shape: shape,
                offset,
                replicas,
                parents,
            });
            offset += replicas * parents;
        }
        Ok(OffsetIndex {
            blocks,
            block_of,
            point_types,
            type_points,
            total: offset,
        })
    }

    /// Size of the transformed chart.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Block offset for a (parent type, child shape) pair.
    pub fn offset(&self, ty: TransformType, shape: Polytope) -> Option<usize> {
        self.block_of.get(&(ty, shape)).map(|&i| self.blocks[i].offset)
    }

    pub fn type_of(&self, p: Point) -> Result<TransformType> {
        self.point_types
            .get(p)
            .map(|&(ty, _)| ty)
            .ok_or(Error::PointOutOfChart(p, self.point_types.len()))
    }

    /// Rank of `p` among base points of its transform type.
    pub fn reduced_number(&self, p: Point) -> Result<usize> {
        self.point_types
            .get(p)
            .map(|&(_, rp)| rp)
            .ok_or(Error::PointOutOfChart(p, self.point_types.len()))
    }

    /// Number of the `r`-th child of shape `t_q` produced by base point `p`.
    pub fn child_number(&self, p: Point, t_q: Polytope, r: usize) -> Result<Point> {
        let &(ty, rp) = self
            .point_types
            .get(p)
            .ok_or(Error::PointOutOfChart(p, self.point_types.len()))?;
        let &bi = self
            .block_of
            .get(&(ty, t_q))
            .ok_or(Error::ShapeNotProduced { parent: p, shape: t_q })?;
        let b = &self.blocks[bi];
        if r >= b.replicas {
            return Err(Error::ReplicaOutOfRange {
                parent: p,
                shape: t_q,
                replica: r,
                count: b.replicas,
            });
        }
        Ok(b.offset + rp * b.replicas + r)
    }

    /// The unique `(parent, child shape, replica)` with `child_number == q`.
    pub fn parent_of(&self, q: Point) -> Result<(Point, Polytope, usize)> {
        if q >= self.total {
            return Err(Error::PointOutOfChart(q, self.total));
        }
        let bi = match self
            .blocks
            .binary_search_by(|b| b.offset.cmp(&q))
        {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let b = &self.blocks[bi];
        let local = q - b.offset;
        let rp = local / b.replicas;
        let r = local % b.replicas;
        let p = self.type_points[&b.parent_type][rp];
        Ok((p, b.child_shape, r))
    }

    /// Stratum sizes of the transformed mesh, computed from the blocks alone.
    pub fn stratum_sizes(&self) -> [usize; 4] {
        let mut sizes = [0; 4];
        for b in &self.blocks {
            sizes[b.child_shape.dim()] += b.len();
        }
        sizes
    }

    /// Points of `shape` in the transformed chart, from the blocks alone.
    pub fn shape_points(&self, shape: Polytope) -> Vec<Point> {
        let mut out = Vec::new();
        for b in &self.blocks {
            if b.child_shape == shape {
                out.extend(b.offset..b.offset + b.len());
            }
        }
        out
    }

    pub fn shape_of(&self, q: Point) -> Result<Polytope> {
        self.parent_of(q).map(|(_, s, _)| s)
    }
}
