//! Minimum spanning trees over partitions of a point set, and the checks on
//! the triangles realizing their edges.

use serde::Serialize;

use crate::geometry::{
    smallest_down_triangle, support_values, triangle_size, DownTriangle, Point, PointSet,
    SupportTriple,
};
use crate::rng::{uniform, uniform01, Rng};
use crate::{Error, Result};

/// Disjoint, nonempty blocks of point indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Validates that blocks are nonempty, pairwise disjoint and index into
    /// `0..n`.
    pub fn new(blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("index {v} out of range")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("index {v} appears twice")));
                }
            }
        }
        Ok(Partition { blocks })
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// Assigns every index in `0..n` to one of `m` blocks uniformly at random,
    /// dropping blocks that end up empty.
    pub fn random(rng: &mut Rng, n: usize, m: usize) -> Self {
        let mut blocks = vec![Vec::new(); m.max(1)];
        for v in 0..n {
            let b = crate::rng::uniform_int(rng, 0, blocks.len() - 1);
            blocks[b].push(v);
        }
        blocks.retain(|b| !b.is_empty());
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// True if every index in `0..n` belongs to some block.
    pub fn covers(&self, n: usize) -> bool {
        self.blocks.iter().map(Vec::len).sum::<usize>() == n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TreeEdge {
    pub block_i: usize,
    pub block_j: usize,
    /// The cross pair realizing the block distance, `a` in `block_i`.
    pub a: usize,
    pub b: usize,
    /// σ of `t(a, b)`.
    pub size: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionMst {
    pub edges: Vec<TreeEdge>,
    #[serde(skip)]
    pub triangles: Vec<DownTriangle>,
}

impl PartitionMst {
    pub fn total_size(&self) -> f64 {
        self.edges.iter().map(|e| e.size).sum()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Block-to-block distances: the smallest `t(a, b)` over cross pairs.
pub fn block_distances(points: &PointSet, part: &Partition) -> Vec<TreeEdge> {
    let blocks = part.blocks();
    let mut out = Vec::new();
    for bi in 0..blocks.len() {
        for bj in bi + 1..blocks.len() {
            let mut best: Option<TreeEdge> = None;
            for &a in &blocks[bi] {
                for &b in &blocks[bj] {
                    let size = triangle_size(points[a], points[b]);
                    if best.is_none_or(|e| size < e.size) {
                        best = Some(TreeEdge {
                            block_i: bi,
                            block_j: bj,
                            a,
                            b,
                            size,
                        });
                    }
                }
            }
            out.extend(best);
        }
    }
    out
}

/// Kruskal over the complete block graph; ties go to the smaller
/// `(block_i, block_j)`.
pub fn partition_mst(points: &PointSet, part: &Partition) -> Result<PartitionMst> {
    if part.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let mut candidates = block_distances(points, part);
    candidates.sort_by(|x, y| {
        x.size
            .total_cmp(&y.size)
            .then((x.block_i, x.block_j).cmp(&(y.block_i, y.block_j)))
    });
    let mut uf = UnionFind::new(part.len());
    let edges: Vec<TreeEdge> = candidates
        .into_iter()
        .filter(|e| uf.union(e.block_i, e.block_j))
        .collect();
    let triangles = edges
        .iter()
        .map(|e| smallest_down_triangle(points[e.a], points[e.b]))
        .collect::<Result<_>>()?;
    Ok(PartitionMst { edges, triangles })
}

/// No point of `points` lies strictly inside any tree triangle.
pub fn check_mst_triangles_empty(points: &PointSet, mst: &PartitionMst) -> bool {
    empty_triangle_violations(points, &mst.triangles).is_empty()
}

/// `(triangle index, point index)` pairs with the point strictly inside.
pub fn empty_triangle_violations(
    points: &PointSet,
    triangles: &[DownTriangle],
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (t, tri) in triangles.iter().enumerate() {
        for (i, &p) in points.points().iter().enumerate() {
            if tri.interior_contains(p) {
                out.push((t, i));
            }
        }
    }
    out
}

fn depth_at(triangles: &[DownTriangle], p: Point) -> usize {
    triangles.iter().filter(|t| t.interior_contains(p)).count()
}

fn segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Option<Point> {
    let (dx, dy) = (p2.x - p1.x, p2.y - p1.y);
    let (ex, ey) = (q2.x - q1.x, q2.y - q1.y);
    let den = dx * ey - dy * ex;
    if den.abs() < 1e-300 {
        return None;
    }
    let s = ((q1.x - p1.x) * ey - (q1.y - p1.y) * ex) / den;
    let u = ((q1.x - p1.x) * dy - (q1.y - p1.y) * dx) / den;
    ((0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&u))
        .then(|| Point::new(p1.x + s * dx, p1.y + s * dy))
}

/// Largest number of triangles sharing an interior point, estimated by
/// probing candidate points: every corner, every crossing of two sides and
/// every centroid, each also nudged by `1e-7` times the scale of the
/// configuration in twelve directions.
pub fn max_overlap_depth(triangles: &[DownTriangle]) -> usize {
    if triangles.is_empty() {
        return 0;
    }
    let scale = triangles
        .iter()
        .map(|t| t.side_length())
        .fold(0.0, f64::max);
    let nudge = 1e-7 * scale.max(f64::MIN_POSITIVE);
    let mut candidates = Vec::new();
    for t in triangles {
        candidates.extend(t.corners());
        let [c0, c1, c2] = t.corners();
        candidates.push(Point::new(
            (c0.x + c1.x + c2.x) / 3.0,
            (c0.y + c1.y + c2.y) / 3.0,
        ));
    }
    for (i, s) in triangles.iter().enumerate() {
        for t in &triangles[i + 1..] {
            let (cs, ct) = (s.corners(), t.corners());
            for a in 0..3 {
                for b in 0..3 {
                    if let Some(x) =
                        segment_intersection(cs[a], cs[(a + 1) % 3], ct[b], ct[(b + 1) % 3])
                    {
                        candidates.push(x);
                    }
                }
            }
        }
    }
    let directions: Vec<(f64, f64)> = (0..12)
        .map(|k| {
            let a = k as f64 * std::f64::consts::PI / 6.0;
            (a.cos(), a.sin())
        })
        .collect();
    let mut best = 0;
    for c in candidates {
        best = best.max(depth_at(triangles, c));
        for &(dx, dy) in &directions {
            best = best.max(depth_at(
                triangles,
                Point::new(c.x + nudge * dx, c.y + nudge * dy),
            ));
        }
    }
    best
}

/// Exact maximum overlap depth. Downward triangles with supports `t^s` share
/// an interior point iff `Σ_j min_s t^s_j > 0`, so it suffices to try every
/// choice of the three minimizing triangles.
pub fn max_overlap_depth_exact(triangles: &[DownTriangle]) -> usize {
    let sup: Vec<SupportTriple> = triangles.iter().map(|t| t.support()).collect();
    let mut best = 0;
    for a in &sup {
        for b in &sup {
            for c in &sup {
                let floor = [a.0[0], b.0[1], c.0[2]];
                if floor.iter().sum::<f64>() <= 0.0 {
                    continue;
                }
                let depth = sup
                    .iter()
                    .filter(|s| (0..3).all(|j| s.0[j] >= floor[j]))
                    .count();
                best = best.max(depth);
            }
        }
    }
    best
}

/// A sampled four-point configuration for the two-triangle exchange check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExchangeConfig {
    pub a: Point,
    pub b: Point,
    pub p: Point,
    pub q: Point,
    /// Height of the horizontal line.
    pub line_y: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExchangeOutcome {
    /// `max(σ(t(a,p)), σ(t(b,q)))`
    pub crossed: f64,
    /// `max(σ(t(a,b)), σ(t(p,q)))`
    pub original: f64,
    pub holds: bool,
}

/// Two overlapping tree triangles `t(a,b)` (above) and `t(p,q)` (below),
/// both crossing the horizontal line `y = line_y`. Pairs are matched right
/// with right: `a` and `p` are the points of larger x in their pairs (the
/// arguments are reordered to enforce this).
///
/// Hypotheses, checked in order:
/// 1. `a != b` and `p != q`;
/// 2. both triangles cross the line;
/// 3. the apex of `t(a,b)` lies strictly inside `t(p,q)` and `t(a,b)` meets
///    the top side of `t(p,q)`;
/// 4. `a` and `b` lie above the top of `t(p,q)`;
/// 5. `p` and `q` lie above the line.
///
/// If all hold, reports whether `max(t(a,p), t(b,q)) < max(t(a,b), t(p,q))`.
pub fn check_lemma_triangle3(cfg: &ExchangeConfig) -> Result<ExchangeOutcome> {
    let (mut a, mut b, mut p, mut q) = (cfg.a, cfg.b, cfg.p, cfg.q);
    if a == b || p == q {
        return Err(Error::HypothesisNotMet(
            "the points of each pair must differ",
        ));
    }
    if a.x < b.x {
        std::mem::swap(&mut a, &mut b);
    }
    if p.x < q.x {
        std::mem::swap(&mut p, &mut q);
    }
    let ab = smallest_down_triangle(a, b)?;
    let pq = smallest_down_triangle(p, q)?;
    let y = cfg.line_y;
    let crosses = |t: &DownTriangle| t.apex_y() < y && y < t.top_y();
    if !crosses(&ab) || !crosses(&pq) {
        return Err(Error::HypothesisNotMet(
            "both triangles must cross the line",
        ));
    }
    if !pq.interior_contains(ab.apex()) {
        return Err(Error::HypothesisNotMet(
            "t(p,q) must contain the lowest corner of t(a,b)",
        ));
    }
    // t(a,b) must reach the top side of t(p,q): its cross-section at that
    // height has to overlap the side
    let top = pq.top_y();
    if top >= ab.top_y() {
        return Err(Error::HypothesisNotMet(
            "t(a,b) must meet the top side of t(p,q)",
        ));
    }
    let half = |t: &DownTriangle| (top - t.apex_y()) / crate::geometry::SQRT_3;
    let (ca, cp) = (ab.apex().x, pq.apex().x);
    if ca + half(&ab) < cp - half(&pq) || ca - half(&ab) > cp + half(&pq) {
        return Err(Error::HypothesisNotMet(
            "t(a,b) must meet the top side of t(p,q)",
        ));
    }
    if a.y <= top || b.y <= top {
        return Err(Error::HypothesisNotMet(
            "a and b must lie above the top of t(p,q)",
        ));
    }
    if p.y <= y || q.y <= y {
        return Err(Error::HypothesisNotMet("p and q must lie above the line"));
    }
    let crossed = triangle_size(a, p).max(triangle_size(b, q));
    let original = ab.size().max(pq.size());
    Ok(ExchangeOutcome {
        crossed,
        original,
        holds: crossed < original,
    })
}

/// One random configuration around a random `t(p,q)`: the line is placed
/// between the apex of `t(p,q)` and its lower defining point, and `a`, `b`
/// are drawn from a box just above its top side. The result still has to be
/// checked with [`check_lemma_triangle3`].
pub fn sample_exchange_config(rng: &mut Rng) -> ExchangeConfig {
    let p = Point::new(uniform01(rng), uniform01(rng));
    let q = Point::new(uniform01(rng), uniform01(rng));
    let pq = DownTriangle::from_support(support_values(p).max(&support_values(q)))
        .expect("σ of two points is nonnegative");
    let line_y = uniform(rng, pq.apex_y(), p.y.min(q.y));
    let side = pq.side_length();
    let (left, right) = (pq.top_left().x - side, pq.top_right().x + side);
    let top = pq.top_y();
    let mut draw = || Point::new(uniform(rng, left, right), uniform(rng, top, top + side));
    let a = draw();
    let b = draw();
    ExchangeConfig { a, b, p, q, line_y }
}
