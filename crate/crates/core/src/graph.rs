//! Order-k TD-Delaunay graphs: the brute-force definition and the cone construction.

use rayon::prelude::*;

use crate::combinatorics::Graph;
use crate::geometry::{support_values, Point, PointSet, SupportTriple, SIZE_TIE_TOL};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    /// σ of the smallest downward triangle through both endpoints.
    pub size: f64,
    /// Area of that triangle, `σ²/√3`.
    pub weight: f64,
}

/// A geometric graph over a point set, weighted by triangle area.
#[derive(Clone, Debug)]
pub struct GeoGraph {
    points: PointSet,
    k: Option<usize>,
    edges: Vec<Edge>,
    topology: Graph,
}

pub fn area_of_size(sigma: f64) -> f64 {
    sigma * sigma / crate::geometry::SQRT_3
}

impl GeoGraph {
    /// Builds the graph from index pairs; duplicates and loops are dropped.
    pub fn from_pairs<I>(points: PointSet, k: Option<usize>, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let topology = Graph::from_edges(points.len(), pairs);
        let edges = topology
            .edges()
            .map(|(i, j)| {
                let size = support_values(points[i])
                    .max(&support_values(points[j]))
                    .sigma();
                Edge {
                    i,
                    j,
                    size,
                    weight: area_of_size(size),
                }
            })
            .collect();
        GeoGraph {
            points,
            k,
            edges,
            topology,
        }
    }

    /// Complete graph on the point set.
    pub fn complete(points: PointSet) -> Self {
        let n = points.len();
        GeoGraph::from_pairs(
            points,
            None,
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))),
        )
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// The order the graph was built for, if any.
    pub fn k(&self) -> Option<usize> {
        self.k
    }

    /// Edges with `i < j` in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn topology(&self) -> &Graph {
        &self.topology
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.topology.has_edge(i, j)
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.i, e.j)).collect()
    }

    /// Subgraph of edges whose σ is at most `max_size`, ties within
    /// [`SIZE_TIE_TOL`] included.
    pub fn threshold(&self, max_size: f64) -> Graph {
        Graph::from_edges(
            self.n(),
            self.edges
                .iter()
                .filter(|e| e.size <= max_size + SIZE_TIE_TOL)
                .map(|e| (e.i, e.j)),
        )
    }

    pub fn weight_sequence(&self) -> WeightSequence {
        WeightSequence::new(self.edges.iter().map(|e| e.weight).collect())
    }
}

/// Edge weights in non-increasing order, compared lexicographically.
#[derive(Clone, Debug, Default, PartialEq, PartialOrd)]
pub struct WeightSequence(Vec<f64>);

impl WeightSequence {
    pub fn new(mut weights: Vec<f64>) -> Self {
        weights.sort_by(|a, b| b.total_cmp(a));
        WeightSequence(weights)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn weight_sequence(g: &GeoGraph) -> WeightSequence {
    g.weight_sequence()
}

/// Strictly inside the downward triangle with support `t`.
#[inline]
fn strictly_below(u: &SupportTriple, t: &SupportTriple) -> bool {
    u.0[0] < t.0[0] && u.0[1] < t.0[1] && u.0[2] < t.0[2]
}

/// Points of `P` strictly inside `t(p_i, p_j)`, other than the endpoints.
pub fn interior_count(points: &[Point], i: usize, j: usize) -> usize {
    let supports: Vec<SupportTriple> = points.iter().map(|&p| support_values(p)).collect();
    let t = supports[i].max(&supports[j]);
    (0..points.len())
        .filter(|&r| r != i && r != j && strictly_below(&supports[r], &t))
        .count()
}

/// k-TD straight from the definition: `(p, q)` is an edge iff the open
/// triangle `t(p, q)` holds at most `k` points. Cubic time.
pub fn build_ktd_definition(points: &PointSet, k: usize) -> GeoGraph {
    let n = points.len();
    let supports: Vec<SupportTriple> = points.points().iter().map(|&p| support_values(p)).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let supports = &supports;
            (i + 1..n).filter_map(move |j| {
                let t = supports[i].max(&supports[j]);
                let mut inside = 0;
                for (r, u) in supports.iter().enumerate() {
                    if r != i && r != j && strictly_below(u, &t) {
                        inside += 1;
                        if inside > k {
                            return None;
                        }
                    }
                }
                Some((i, j))
            })
        })
        .collect();
    GeoGraph::from_pairs(points.clone(), Some(k), pairs)
}

/// Even cone (2, 4 or 6) of `q` around `p`, as a bucket index 0..3, or `None`
/// for odd cones. Cone 2 has only the top difference positive, cone 4 only
/// the left one and cone 6 only the right one.
#[inline]
fn even_cone_bucket(up: &SupportTriple, uq: &SupportTriple) -> Option<usize> {
    let pos = [uq.0[0] > up.0[0], uq.0[1] > up.0[1], uq.0[2] > up.0[2]];
    match pos {
        [true, false, false] => Some(0),
        [false, true, false] => Some(1),
        [false, false, true] => Some(2),
        _ => None,
    }
}

/// k-TD by the cone construction: every point is joined to its `k + 1`
/// nearest neighbours (in triangular distance) in each of its even cones.
pub fn build_ktd_cones(points: &PointSet, k: usize) -> Result<GeoGraph> {
    let n = points.len();
    let supports: Vec<SupportTriple> = points.points().iter().map(|&p| support_values(p)).collect();
    let per_point: Vec<Result<Vec<(usize, usize)>>> = (0..n)
        .into_par_iter()
        .map(|p| {
            let mut buckets: [Vec<(f64, usize)>; 3] = Default::default();
            for q in 0..n {
                if q == p {
                    continue;
                }
                if let Some(b) = even_cone_bucket(&supports[p], &supports[q]) {
                    buckets[b].push((supports[p].max(&supports[q]).sigma(), q));
                }
            }
            let mut out = Vec::new();
            for bucket in &mut buckets {
                bucket.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                if bucket.len() > k + 1 && bucket[k + 1].0 - bucket[k].0 <= SIZE_TIE_TOL {
                    return Err(Error::DistanceTie(bucket[k].1, bucket[k + 1].1, p));
                }
                out.extend(
                    bucket
                        .iter()
                        .take(k + 1)
                        .map(|&(_, q)| (p.min(q), p.max(q))),
                );
            }
            Ok(out)
        })
        .collect();
    let mut pairs = Vec::new();
    for r in per_point {
        pairs.extend(r?);
    }
    Ok(GeoGraph::from_pairs(points.clone(), Some(k), pairs))
}
