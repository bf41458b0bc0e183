//! The concrete stratified-DAG mesh.
//!
//! A [`Plex`] stores one ordered, oriented cone per point; supports, strata,
//! and transitive queries are derived. The DAG is graded: every cone point of
//! `p` sits exactly one dimension below `p`, which also guarantees acyclicity.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polytope::{Orientation, Polytope};
use crate::topology::MeshTopology;
use crate::Point;

/// A named point->integer map with a per-value stratum index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Label {
    values: BTreeMap<Point, i64>,
    strata: BTreeMap<i64, Vec<Point>>,
}

impl Label {
    pub fn get(&self, p: Point) -> Option<i64> {
        self.values.get(&p).copied()
    }

    /// Set or move `p` to `value`; a point appears under at most one value.
    pub fn set(&mut self, p: Point, value: i64) {
        if let Some(old) = self.values.insert(p, value) {
            if old == value {
                return;
            }
            let s = self.strata.get_mut(&old).unwrap();
            s.retain(|&q| q != p);
            if s.is_empty() {
                self.strata.remove(&old);
            }
        }
        let s = self.strata.entry(value).or_default();
        match s.binary_search(&p) {
            Ok(_) => {}
            Err(i) => s.insert(i, p),
        }
    }

    pub fn stratum(&self, value: i64) -> &[Point] {
        self.strata.get(&value).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.strata.keys().copied()
    }

    pub fn points(&self) -> impl Iterator<Item = (Point, i64)> + '_ {
        self.values.iter().map(|(&p, &v)| (p, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A single violation found by [`Plex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Grading { point: Point, cone_point: Point },
    ConeSize { point: Point, expected: usize, got: usize },
    OrientationRange { point: Point, slot: usize },
    SupportMismatch { point: Point, cone_point: Point },
    /// Boundary of a 2-cell does not chain into a closed loop.
    BrokenCycle { point: Point, slot: usize },
    /// A sub-sub-point appears an odd number of times under `point`.
    OddIncidence { point: Point, sub: Point },
    /// Induced traversal directions on a sub-sub-point fail to cancel.
    Cancellation { point: Point, sub: Point },
    /// A tensor cone point stored with a nonzero orientation.
    TensorFlip { point: Point, slot: usize },
}

/// Report from [`Plex::validate`]: empty means the mesh is consistent.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The stratified-DAG mesh.
#[derive(Clone, Debug, Default)]
pub struct Plex {
    shapes: Vec<Polytope>,
    cones: Vec<Vec<(Point, Orientation)>>,
    supports: Vec<Vec<Point>>,
    strata: [Vec<Point>; 4],
    labels: BTreeMap<String, Label>,
}

impl Plex {
    /// Build a mesh from per-point shapes and oriented cones, deriving
    /// supports and strata. Fails on grading violations, cone size
    /// mismatches, out-of-range orientations, and out-of-chart references.
    pub fn build(shapes: Vec<Polytope>, cones: Vec<Vec<(Point, Orientation)>>) -> Result<Plex> {
        let n = shapes.len();
        if cones.len() != n {
            return Err(Error::ConeSizeMismatch {
                point: cones.len().min(n),
                shape: Polytope::Point,
                expected: n,
                got: cones.len(),
            });
        }
        for (p, cone) in cones.iter().enumerate() {
            let shape = shapes[p];
            if cone.len() != shape.cone_size() {
                return Err(Error::ConeSizeMismatch {
                    point: p,
                    shape,
                    expected: shape.cone_size(),
                    got: cone.len(),
                });
            }
            for &(q, o) in cone {
                if q >= n {
                    return Err(Error::PointOutOfChart(q, n));
                }
                if shapes[q].dim() + 1 != shape.dim() {
                    return Err(Error::GradingViolation {
                        parent: p,
                        parent_shape: shape,
                        parent_dim: shape.dim(),
                        child: q,
                        child_shape: shapes[q],
                        child_dim: shapes[q].dim(),
                    });
                }
                shapes[q].check_orientation(o)?;
            }
        }
        let mut supports = vec![Vec::new(); n];
        for (p, cone) in cones.iter().enumerate() {
            for &(q, _) in cone {
                supports[q].push(p);
            }
        }
        for s in &mut supports {
            s.sort_unstable();
            s.dedup();
        }
        let mut strata: [Vec<Point>; 4] = Default::default();
        for (p, shape) in shapes.iter().enumerate() {
            strata[shape.dim()].push(p);
        }
        Ok(Plex {
            shapes,
            cones,
            supports,
            strata,
            labels: BTreeMap::new(),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    fn check_point(&self, p: Point) -> Result<()> {
        if p >= self.shapes.len() {
            return Err(Error::PointOutOfChart(p, self.shapes.len()));
        }
        Ok(())
    }

    pub fn shapes(&self) -> &[Polytope] {
        &self.shapes
    }

    pub fn cones(&self) -> &[Vec<(Point, Orientation)>] {
        &self.cones
    }

    // ----------------------------------------------------------- labels

    pub fn label_create(&mut self, name: &str) -> &mut Label {
        self.labels.entry(name.to_string()).or_default()
    }

    pub fn label_set(&mut self, name: &str, p: Point, value: i64) -> Result<()> {
        self.check_point(p)?;
        self.label_create(name).set(p, value);
        Ok(())
    }

    pub fn label(&self, name: &str) -> Result<&Label> {
        self.labels
            .get(name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn labels(&self) -> impl Iterator<Item = (&str, &Label)> {
        self.labels.iter().map(|(n, l)| (n.as_str(), l))
    }

    pub fn set_label(&mut self, name: &str, label: Label) {
        self.labels.insert(name.to_string(), label);
    }

    // ------------------------------------------------------- validation

    /// Full consistency check: grading, cone sizes and orientation ranges,
    /// cone/support duality, and oriented boundary cancellation. For every
    /// point of dim >= 2, each point two levels down must appear an even
    /// number of times among cones-of-cone with pairwise cancelling induced
    /// directions; tensor cells are checked with flips fixed at 0.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let n = self.shapes.len();
        for p in 0..n {
            let shape = self.shapes[p];
            let cone = &self.cones[p];
            if cone.len() != shape.cone_size() {
                v.push(Violation::ConeSize {
                    point: p,
                    expected: shape.cone_size(),
                    got: cone.len(),
                });
                continue;
            }
            for (slot, &(q, o)) in cone.iter().enumerate() {
                if self.shapes[q].dim() + 1 != shape.dim() {
                    v.push(Violation::Grading { point: p, cone_point: q });
                }
                if self.shapes[q].check_orientation(o).is_err() {
                    v.push(Violation::OrientationRange { point: p, slot });
                }
                if !self.supports[q].contains(&p) {
                    v.push(Violation::SupportMismatch { point: p, cone_point: q });
                }
            }
        }
        if !v.is_empty() {
            return ValidationReport { violations: v };
        }
        for p in 0..n {
            self.check_cancellation(p, &mut v);
        }
        ValidationReport { violations: v }
    }

    fn check_cancellation(&self, p: Point, out: &mut Vec<Violation>) {
        let shape = self.shapes[p];
        if shape.dim() < 2 {
            return;
        }
        let tensor = shape.is_tensor();
        // induced traversal of each cone point's own cone
        let mut dirs: BTreeMap<Point, (usize, i64)> = BTreeMap::new(); // sub -> (count, signed sum)
        let mut chain: Vec<(Point, Point)> = Vec::new(); // 2-cells: directed vertex pairs
        for (slot, &(f, of)) in self.cones[p].iter().enumerate() {
            let fs = self.shapes[f];
            if tensor && !of.is_identity() {
                out.push(Violation::TensorFlip { point: p, slot });
                continue;
            }
            let arr = match fs.cone_arrangement(of) {
                Ok(a) => a,
                Err(_) => return,
            };
            let fcone = &self.cones[f];
            if shape.dim() == 2 {
                // f is a segment (or tensor segment): induced endpoints
                let (a, _) = fcone[arr.cone_perm[0]];
                let (b, _) = fcone[arr.cone_perm[1]];
                chain.push((a, b));
                for q in [a, b] {
                    let e = dirs.entry(q).or_insert((0, 0));
                    e.0 += 1;
                }
            } else {
                for m in 0..fcone.len() {
                    let (e, oe) = fcone[arr.cone_perm[m]];
                    let es = self.shapes[e];
                    let net = match es.compose(oe, arr.cone_flips[m]) {
                        Ok(o) => o,
                        Err(_) => return,
                    };
                    let entry = dirs.entry(e).or_insert((0, 0));
                    entry.0 += 1;
                    entry.1 += if net.is_reflection() { -1 } else { 1 };
                }
            }
        }
        if shape.dim() == 2 && !tensor {
            // the induced edges must chain into a closed loop
            for i in 0..chain.len() {
                let next = (i + 1) % chain.len();
                if chain[i].1 != chain[next].0 {
                    out.push(Violation::BrokenCycle { point: p, slot: i });
                }
            }
            return;
        }
        for (&sub, &(count, signed)) in &dirs {
            if count % 2 != 0 {
                out.push(Violation::OddIncidence { point: p, sub });
            } else if !tensor && shape.dim() == 3 && signed != 0 {
                out.push(Violation::Cancellation { point: p, sub });
            }
        }
    }

    // ----------------------------------------------------------- filter

    /// Extract the submesh spanned by the closures of the selected cells,
    /// renumbered contiguously (cells, vertices, faces, edges). Returns the
    /// submesh and the old-to-new point map.
    pub fn filter(&self, cells: &[Point]) -> Result<(Plex, BTreeMap<Point, Point>)> {
        let top = self.dim();
        for &c in cells {
            self.check_point(c)?;
            if self.shapes[c].dim() != top {
                return Err(Error::FilterNonCell(c));
            }
        }
        let mut keep = std::collections::BTreeSet::new();
        for &c in cells {
            for (q, _) in self.closure(c)? {
                keep.insert(q);
            }
        }
        // new chart in class order: cells, vertices, faces, edges
        let mut order: Vec<Point> = Vec::with_capacity(keep.len());
        for d in crate::transform::dim_class_order(top) {
            order.extend(keep.iter().copied().filter(|&p| self.shapes[p].dim() == d));
        }
        let map: BTreeMap<Point, Point> = order.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let shapes = order.iter().map(|&p| self.shapes[p]).collect();
        let cones = order
            .iter()
            .map(|&p| {
                self.cones[p]
                    .iter()
                    .map(|&(q, o)| (map[&q], o))
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut sub = Plex::build(shapes, cones)?;
        for (name, label) in &self.labels {
            let mut l = Label::default();
            for (p, value) in label.points() {
                if let Some(&np) = map.get(&p) {
                    l.set(np, value);
                }
            }
            if !l.is_empty() {
                sub.set_label(name, l);
            }
        }
        Ok((sub, map))
    }
}

impl MeshTopology for Plex {
    fn chart_size(&self) -> usize {
        self.shapes.len()
    }

    fn shape_of(&self, p: Point) -> Result<Polytope> {
        self.check_point(p)?;
        Ok(self.shapes[p])
    }

    fn cone(&self, p: Point) -> Result<Vec<(Point, Orientation)>> {
        self.check_point(p)?;
        Ok(self.cones[p].clone())
    }

    fn support(&self, p: Point) -> Result<Vec<Point>> {
        self.check_point(p)?;
        Ok(self.supports[p].clone())
    }

    fn stratum(&self, dim: usize) -> Vec<Point> {
        if dim < 4 {
            self.strata[dim].clone()
        } else {
            Vec::new()
        }
    }

    fn stratum_size(&self, dim: usize) -> usize {
        if dim < 4 {
            self.strata[dim].len()
        } else {
            0
        }
    }

    fn label_names(&self) -> Vec<String> {
        self.labels.keys().cloned().collect()
    }

    fn label_get(&self, name: &str, p: Point) -> Result<Option<i64>> {
        self.check_point(p)?;
        Ok(self.label(name)?.get(p))
    }

    fn label_stratum(&self, name: &str, value: i64) -> Result<Vec<Point>> {
        Ok(self.label(name)?.stratum(value).to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Polytope::*;

    fn o(v: i8) -> Orientation {
        Orientation(v)
    }

    /// The two-triangle mesh: cells 0-1, vertices 2-5, edges 6-10.
    /// Vertices 2=(0,0) 3=(1,0) 4=(0,1) 5=(1,1); edges 6=(2,4) 7=(2,3)
    /// 8=(3,4) 9=(3,5) 10=(4,5); cell 0=(2,3,4), cell 1=(3,5,4).
    pub(crate) fn doublet() -> Plex {
        let shapes = vec![
            Triangle, Triangle, Point, Point, Point, Point, Segment, Segment, Segment, Segment,
            Segment,
        ];
        let cones = vec![
            vec![(7, o(0)), (8, o(0)), (6, o(-1))],
            vec![(9, o(0)), (10, o(-1)), (8, o(-1))],
            vec![],
            vec![],
            vec![],
            vec![],
            vec![(2, o(0)), (4, o(0))],
            vec![(2, o(0)), (3, o(0))],
            vec![(3, o(0)), (4, o(0))],
            vec![(3, o(0)), (5, o(0))],
            vec![(4, o(0)), (5, o(0))],
        ];
        Plex::build(shapes, cones).unwrap()
    }

    #[test]
    fn doublet_builds_with_expected_strata() {
        let m = doublet();
        assert_eq!(m.stratum_size(0), 4);
        assert_eq!(m.stratum_size(1), 5);
        assert_eq!(m.stratum_size(2), 2);
        assert_eq!(m.dim(), 2);
    }

    #[test]
    fn single_segment_builds() {
        let m = Plex::build(
            vec![Segment, Point, Point],
            vec![vec![(1, o(0)), (2, o(0))], vec![], vec![]],
        )
        .unwrap();
        assert_eq!(m.euler_characteristic(), 1);
    }

    #[test]
    fn triangle_with_point_cone_is_grading_error() {
        let err = Plex::build(
            vec![Triangle, Point, Point, Point],
            vec![vec![(1, o(0)), (2, o(0)), (3, o(0))], vec![], vec![], vec![]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::GradingViolation { .. }));
    }

    #[test]
    fn cone_and_support_duality() {
        let m = doublet();
        let cone0: Vec<Point> = m.cone(0).unwrap().iter().map(|&(q, _)| q).collect();
        let mut s = cone0.clone();
        s.sort_unstable();
        assert_eq!(s, vec![6, 7, 8]);
        assert_eq!(m.support(8).unwrap(), vec![0, 1]);
        let mut c6: Vec<Point> = m.cone(6).unwrap().iter().map(|&(q, _)| q).collect();
        c6.sort_unstable();
        assert_eq!(c6, vec![2, 4]);
        // full duality
        for p in 0..m.chart_size() {
            for (q, _) in m.cone(p).unwrap() {
                assert!(m.support(q).unwrap().contains(&p));
            }
            for q in m.support(p).unwrap() {
                assert!(m.cone(q).unwrap().iter().any(|&(r, _)| r == p));
            }
        }
    }

    #[test]
    fn closure_and_star() {
        let m = doublet();
        let mut cl: Vec<Point> = m.closure(0).unwrap().iter().map(|&(q, _)| q).collect();
        cl.sort_unstable();
        assert_eq!(cl, vec![0, 2, 3, 4, 6, 7, 8]);
        assert_eq!(m.star(8).unwrap(), vec![8, 0, 1]);
        assert_eq!(m.closure(2).unwrap(), vec![(2, o(0))]);
        // duality on the whole chart
        for p in 0..m.chart_size() {
            for (q, _) in m.closure(p).unwrap() {
                assert!(m.star(q).unwrap().contains(&p));
            }
        }
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(doublet().euler_characteristic(), 1);
        assert_eq!(Plex::default().euler_characteristic(), 0);
    }

    #[test]
    fn doublet_validates() {
        let r = doublet().validate();
        assert!(r.is_valid(), "{:?}", r.violations);
    }

    #[test]
    fn unflipped_third_edge_breaks_cancellation() {
        // edges stored (v0,v1), (v1,v2), (v0,v2): the third must be flipped
        let build = |third: i8| {
            Plex::build(
                vec![Triangle, Point, Point, Point, Segment, Segment, Segment],
                vec![
                    vec![(4, o(0)), (5, o(0)), (6, o(third))],
                    vec![],
                    vec![],
                    vec![],
                    vec![(1, o(0)), (2, o(0))],
                    vec![(2, o(0)), (3, o(0))],
                    vec![(1, o(0)), (3, o(0))],
                ],
            )
            .unwrap()
        };
        assert!(!build(0).validate().is_valid());
        assert!(build(-1).validate().is_valid());
    }

    #[test]
    fn labels() {
        let mut m = doublet();
        m.label_set("marker", 6, 1).unwrap();
        m.label_set("marker", 7, 1).unwrap();
        m.label_set("marker", 7, 2).unwrap();
        assert_eq!(m.label_get("marker", 6).unwrap(), Some(1));
        assert_eq!(m.label_get("marker", 7).unwrap(), Some(2));
        assert_eq!(m.label_get("marker", 8).unwrap(), None);
        assert_eq!(m.label_stratum("marker", 1).unwrap(), vec![6]);
        assert!(m.label_get("missing", 0).is_err());
    }

    #[test]
    fn filter_single_cell() {
        let m = doublet();
        let (sub, map) = m.filter(&[0]).unwrap();
        assert_eq!(sub.stratum_size(2), 1);
        assert_eq!(sub.stratum_size(1), 3);
        assert_eq!(sub.stratum_size(0), 3);
        assert_eq!(sub.euler_characteristic(), 1);
        assert!(sub.validate().is_valid());
        // shapes and orientations preserved under the map
        for (&old, &new) in &map {
            assert_eq!(m.shape_of(old).unwrap(), sub.shape_of(new).unwrap());
        }
        let old_cone = m.cone(0).unwrap();
        let new_cone = sub.cone(map[&0]).unwrap();
        for (i, &(q, ornt)) in old_cone.iter().enumerate() {
            assert_eq!(new_cone[i], (map[&q], ornt));
        }
    }

    #[test]
    fn filter_all_and_none() {
        let m = doublet();
        let (sub, _) = m.filter(&[0, 1]).unwrap();
        assert_eq!(sub.chart_size(), m.chart_size());
        assert_eq!(sub.euler_characteristic(), 1);
        let (empty, _) = m.filter(&[]).unwrap();
        assert_eq!(empty.chart_size(), 0);
        assert!(m.filter(&[6]).is_err());
    }
}
