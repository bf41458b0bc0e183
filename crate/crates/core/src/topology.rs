//! Read-side mesh queries shared by concrete and ephemeral meshes.

use crate::error::Result;
use crate::polytope::{Orientation, Polytope};
use crate::Point;

/// The read interface of a stratified-DAG mesh.
///
/// Both [`Plex`](crate::plex::Plex) and
/// [`EphemeralMesh`](crate::ephemeral::EphemeralMesh) implement this, so
/// traversals, validation, geometry, and writers run on either.
pub trait MeshTopology {
    /// Number of points in the chart `[0, n)`.
    fn chart_size(&self) -> usize;

    fn shape_of(&self, p: Point) -> Result<Polytope>;

    /// Ordered, oriented cone of `p`.
    fn cone(&self, p: Point) -> Result<Vec<(Point, Orientation)>>;

    /// Points whose cones contain `p`, ordered by point number.
    fn support(&self, p: Point) -> Result<Vec<Point>>;

    /// All points of the given dimension, ascending.
    fn stratum(&self, dim: usize) -> Vec<Point>;

    fn stratum_size(&self, dim: usize) -> usize {
        self.stratum(dim).len()
    }

    /// Topological dimension: the largest nonempty stratum.
    fn dim(&self) -> usize {
        (0..4).rev().find(|&d| self.stratum_size(d) > 0).unwrap_or(0)
    }

    fn label_names(&self) -> Vec<String>;

    fn label_get(&self, name: &str, p: Point) -> Result<Option<i64>>;

    /// All points carrying `value` under the named label, ascending.
    fn label_stratum(&self, name: &str, value: i64) -> Result<Vec<Point>>;

    /// Transitive closure of the cone relation, breadth-first over oriented
    /// cones in arrangement-adjusted order, first occurrence wins. The
    /// returned orientations are relative to `p`'s frame; `p` itself comes
    /// first with orientation 0.
    fn closure(&self, p: Point) -> Result<Vec<(Point, Orientation)>> {
        let mut out: Vec<(Point, Orientation)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back((p, Orientation::IDENTITY));
        seen.insert(p);
        while let Some((a, acc)) = queue.pop_front() {
            out.push((a, acc));
            let shape = self.shape_of(a)?;
            if shape.cone_size() == 0 {
                continue;
            }
            let arr = shape.cone_arrangement(acc)?;
            let cone = self.cone(a)?;
            for m in 0..cone.len() {
                let (b, stored) = cone[arr.cone_perm[m]];
                let bs = self.shape_of(b)?;
                let net = bs.compose(stored, arr.cone_flips[m])?;
                if seen.insert(b) {
                    queue.push_back((b, net));
                }
            }
        }
        Ok(out)
    }

    /// Transitive closure of the support relation, breadth-first, first
    /// occurrence wins; `p` itself comes first.
    fn star(&self, p: Point) -> Result<Vec<Point>> {
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(p);
        seen.insert(p);
        while let Some(a) = queue.pop_front() {
            out.push(a);
            for b in self.support(a)? {
                if seen.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        Ok(out)
    }

    /// Alternating sum of stratum sizes.
    fn euler_characteristic(&self) -> i64 {
        (0..4)
            .map(|d| {
                let n = self.stratum_size(d) as i64;
                if d % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }
}
