//! Lazily evaluated transformed meshes.
//!
//! An [`EphemeralMesh`] is a base mesh, a transform, and the numbering index;
//! every read query is answered by running the transform machinery on the
//! spot, so the cost of a query is proportional to its output (bounded by the
//! closure or star of the parent point), never the mesh size.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::geometry::{extrusion_normals, refine_vertex_coord, CoordinateRule, Coordinates, Real};
use crate::plex::Plex;
use crate::polytope::{Orientation, Polytope};
use crate::topology::MeshTopology;
use crate::transform::{
    apply_concrete, child_cone_traced, child_label, child_label_names, OffsetIndex, TransformSpec,
    TransformType,
};
use crate::Point;

/// Counters for the output-sensitivity contract.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryCounters {
    /// Distinct base points touched since the last reset.
    pub base_points_visited: usize,
    pub queries: u64,
}

#[derive(Default)]
struct Instrumentation {
    enabled: AtomicBool,
    visited: Mutex<std::collections::HashSet<Point>>,
    queries: AtomicU64,
}

struct ConeCache {
    map: HashMap<Point, Vec<(Point, Orientation)>>,
    cap: usize,
}

/// A transformed mesh that is never materialized.
pub struct EphemeralMesh {
    base: Arc<dyn MeshTopology + Send + Sync>,
    spec: Arc<TransformSpec>,
    index: OffsetIndex,
    coords: Option<EphemeralCoords>,
    instr: Instrumentation,
    cache: Mutex<Option<ConeCache>>,
}

struct EphemeralCoords {
    rule: CoordinateRule<f64>,
    base_coords: Arc<Coordinates<f64>>,
    /// Extrusion normals are a whole-base quantity, computed once.
    normals: Option<std::collections::BTreeMap<Point, Vec<f64>>>,
    out_dim: usize,
}

impl EphemeralMesh {
    pub fn new(
        base: Arc<dyn MeshTopology + Send + Sync>,
        spec: Arc<TransformSpec>,
    ) -> Result<EphemeralMesh> {
        let index = OffsetIndex::build(base.as_ref(), &spec)?;
        Ok(EphemeralMesh {
            base,
            spec,
            index,
            coords: None,
            instr: Instrumentation::default(),
            cache: Mutex::new(None),
        })
    }

    pub fn base(&self) -> &dyn MeshTopology {
        self.base.as_ref()
    }

    pub fn spec(&self) -> &TransformSpec {
        &self.spec
    }

    pub fn index(&self) -> &OffsetIndex {
        &self.index
    }

    /// Attach a coordinate rule so vertices can be placed on demand.
    pub fn with_coordinates(
        mut self,
        rule: CoordinateRule<f64>,
        base_coords: Arc<Coordinates<f64>>,
    ) -> Result<Self> {
        let (normals, out_dim) = match &rule {
            CoordinateRule::RefineBarycentric => (None, base_coords.dim()),
            CoordinateRule::Extrude { normal, active, .. } => {
                let out_dim = match normal {
                    crate::geometry::NormalMode::Global(v) => v.len(),
                    crate::geometry::NormalMode::Auto => {
                        if base_coords.dim() == self.base.dim() && active.is_none() {
                            base_coords.dim() + 1
                        } else {
                            base_coords.dim()
                        }
                    }
                };
                let n = extrusion_normals(
                    self.base.as_ref(),
                    &base_coords,
                    normal,
                    active.as_deref(),
                    out_dim,
                )?;
                (Some(n), out_dim)
            }
        };
        self.coords = Some(EphemeralCoords {
            rule,
            base_coords,
            normals,
            out_dim,
        });
        Ok(self)
    }

    /// Coordinate of one vertex, computed on demand.
    pub fn vertex_coordinates(&self, v: Point) -> Result<Vec<f64>> {
        let ec = self.coords.as_ref().ok_or_else(|| {
            crate::error::Error::InvalidOptions("no coordinate rule attached".into())
        })?;
        match &ec.rule {
            CoordinateRule::RefineBarycentric => {
                refine_vertex_coord(self.base.as_ref(), &ec.base_coords, &self.index, v)
            }
            CoordinateRule::Extrude {
                layers,
                thickness,
                symmetric,
                ..
            } => {
                let (p, _, k) = self.index.parent_of(v)?;
                let mut x = ec.base_coords.get(p).to_vec();
                x.resize(ec.out_dim, 0.0);
                if let Some(n) = ec.normals.as_ref().and_then(|m| m.get(&p)) {
                    if !matches!(self.index.type_of(p)?, TransformType::Identity(_)) {
                        let offs =
                            crate::geometry::extrude_offsets(*layers, *thickness, *symmetric);
                        for (xi, ni) in x.iter_mut().zip(n) {
                            *xi += offs[k] * *ni;
                        }
                    }
                }
                Ok(x)
            }
        }
    }

    /// Full coordinates, for materialization.
    pub fn all_coordinates(&self) -> Result<Coordinates<f64>> {
        let ec = self.coords.as_ref().ok_or_else(|| {
            crate::error::Error::InvalidOptions("no coordinate rule attached".into())
        })?;
        let mut out = Coordinates::new(ec.out_dim);
        for v in self.stratum(0) {
            out.set(v, &self.vertex_coordinates(v)?);
        }
        Ok(out)
    }

    // ------------------------------------------------------ instrumentation

    pub fn enable_instrumentation(&self, on: bool) {
        self.instr.enabled.store(on, Ordering::Relaxed);
        self.reset_counters();
    }

    pub fn reset_counters(&self) {
        self.instr.visited.lock().unwrap().clear();
        self.instr.queries.store(0, Ordering::Relaxed);
    }

    pub fn counters(&self) -> QueryCounters {
        QueryCounters {
            base_points_visited: self.instr.visited.lock().unwrap().len(),
            queries: self.instr.queries.load(Ordering::Relaxed),
        }
    }

    fn record_query(&self) {
        if self.instr.enabled.load(Ordering::Relaxed) {
            self.instr.queries.fetch_add(1, Ordering::Relaxed);
        }
    }

    fn visit_hook(&self) -> impl FnMut(Point) + '_ {
        let on = self.instr.enabled.load(Ordering::Relaxed);
        move |p| {
            if on {
                self.instr.visited.lock().unwrap().insert(p);
            }
        }
    }

    // --------------------------------------------------------------- cache

    /// Bounded point-keyed cone cache; results are identical with the cache
    /// on or off. Off by default.
    pub fn enable_cone_cache(&self, cap: usize) {
        *self.cache.lock().unwrap() = if cap == 0 {
            None
        } else {
            Some(ConeCache {
                map: HashMap::new(),
                cap,
            })
        };
    }

    /// Materialize: identical, point for point, to applying the transform
    /// concretely.
    pub fn materialize(&self) -> Result<Plex> {
        Ok(apply_concrete(self.base.as_ref(), &self.spec)?.0)
    }
}

impl MeshTopology for EphemeralMesh {
    fn chart_size(&self) -> usize {
        self.index.total()
    }

    fn shape_of(&self, q: Point) -> Result<Polytope> {
        self.index.shape_of(q)
    }

    fn cone(&self, q: Point) -> Result<Vec<(Point, Orientation)>> {
        self.record_query();
        if let Some(cache) = self.cache.lock().unwrap().as_ref() {
            if let Some(hit) = cache.map.get(&q) {
                return Ok(hit.clone());
            }
        }
        let mut visit = self.visit_hook();
        let cone = child_cone_traced(self.base.as_ref(), &self.spec, &self.index, q, &mut visit)?;
        drop(visit);
        if let Some(cache) = self.cache.lock().unwrap().as_mut() {
            if cache.map.len() < cache.cap {
                cache.map.insert(q, cone.clone());
            }
        }
        Ok(cone)
    }

    fn support(&self, q: Point) -> Result<Vec<Point>> {
        self.record_query();
        let (p, _, _) = self.index.parent_of(q)?;
        let mut visit = self.visit_hook();
        visit(p);
        let mut out = Vec::new();
        for cand_parent in self.base.star(p)? {
            visit(cand_parent);
            let ty = self.index.type_of(cand_parent)?;
            let rule = self.spec.rule(ty)?;
            for target in &rule.production.targets {
                for r in 0..target.count() {
                    let c = self.index.child_number(cand_parent, target.shape, r)?;
                    let cone = child_cone_traced(
                        self.base.as_ref(),
                        &self.spec,
                        &self.index,
                        c,
                        &mut visit,
                    )?;
                    if cone.iter().any(|&(x, _)| x == q) {
                        out.push(c);
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn stratum(&self, dim: usize) -> Vec<Point> {
        let mut out = Vec::new();
        for b in self.index.blocks() {
            if b.child_shape.dim() == dim {
                out.extend(b.offset..b.offset + b.len());
            }
        }
        out.sort_unstable();
        out
    }

    fn stratum_size(&self, dim: usize) -> usize {
        self.index
            .blocks()
            .iter()
            .filter(|b| b.child_shape.dim() == dim)
            .map(|b| b.len())
            .sum()
    }

    fn label_names(&self) -> Vec<String> {
        child_label_names(self.base.as_ref(), &self.spec)
    }

    fn label_get(&self, name: &str, q: Point) -> Result<Option<i64>> {
        child_label(self.base.as_ref(), &self.spec, &self.index, name, q)
    }

    fn label_stratum(&self, name: &str, value: i64) -> Result<Vec<Point>> {
        let mut out = Vec::new();
        for q in 0..self.index.total() {
            if child_label(self.base.as_ref(), &self.spec, &self.index, name, q)? == Some(value) {
                out.push(q);
            }
        }
        Ok(out)
    }
}
