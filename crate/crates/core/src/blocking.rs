//! Blocking sets: extra points that leave no edge between original points.

use serde::Serialize;

use crate::geometry::{Point, PointSet};
use crate::graph::build_ktd_cones;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockingInstance {
    pub base: Vec<Point>,
    pub blockers: Vec<Point>,
    pub k: usize,
    /// Smallest vertical gap between two base points.
    pub delta: f64,
    /// Vertical offset of the first blocker above its base point.
    pub epsilon: f64,
}

/// An edge of k-TD(P ∪ K) joining two base points, if any.
pub fn unblocked_edge(
    base: &PointSet,
    blockers: &[Point],
    k: usize,
) -> Result<Option<(usize, usize)>> {
    let all = base.union(blockers)?;
    let g = build_ktd_cones(&all, k)?;
    let n = base.len();
    Ok(g.edges().iter().find(|e| e.j < n).map(|e| (e.i, e.j)))
}

/// True iff the base points form an independent set in k-TD(P ∪ K).
pub fn blocks(base: &PointSet, blockers: &[Point], k: usize) -> Result<bool> {
    Ok(unblocked_edge(base, blockers, k)?.is_none())
}

/// Smallest vertical gap between two points; infinite for fewer than two.
pub fn min_vertical_gap(points: &[Point]) -> f64 {
    let mut ys: Vec<f64> = points.iter().map(|p| p.y).collect();
    ys.sort_by(f64::total_cmp);
    ys.windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

const MAX_RETRIES: usize = 10;

/// `(k+1)(n-1)` blockers: above each base point except the highest, `k+1`
/// points at heights `ε(1 + j/(k+2))` with `ε = δ/2`, so every copy stays
/// below the next base point. Copies `j` are shifted right by
/// `δ·10⁻⁶·(j+1)` to keep them distinct; for `k = 0` the single copy sits
/// straight above its point. If the union is not in general position the
/// shifts are rescaled and the construction retried.
pub fn blocking_construction(base: &PointSet, k: usize) -> Result<BlockingInstance> {
    let n = base.len();
    let pts = base.points();
    let delta = min_vertical_gap(pts);
    let epsilon = delta / 2.0;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pts[a].y.total_cmp(&pts[b].y));
    let lower = &order[..n.saturating_sub(1)];

    let mut last_err = String::new();
    for attempt in 0..MAX_RETRIES {
        // irrational-ish rescaling so retries do not repeat alignments
        let jitter_scale = delta * 1e-6 * (1.0 + attempt as f64 * 0.618_033_988_749_895);
        let blockers: Vec<Point> = lower
            .iter()
            .flat_map(|&i| {
                (0..=k).map(move |j| {
                    let dx = if k == 0 && attempt == 0 {
                        0.0
                    } else {
                        jitter_scale * (j + 1) as f64
                    };
                    let dy = epsilon * (1.0 + j as f64 / (k + 2) as f64);
                    Point::new(pts[i].x + dx, pts[i].y + dy)
                })
            })
            .collect();
        match base.union(&blockers) {
            Ok(_) => {
                return Ok(BlockingInstance {
                    base: pts.to_vec(),
                    blockers,
                    k,
                    delta,
                    epsilon,
                })
            }
            Err(e) => last_err = e.to_string(),
        }
    }
    Err(Error::RetriesExhausted(MAX_RETRIES, last_err))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub n: usize,
    pub k: usize,
    pub blockers: usize,
    /// `⌈(k+1)(n-1)/3⌉`, necessary for every k.
    pub general_bound: usize,
    /// `⌈(n-1)/2⌉`, necessary for `k = 0`.
    pub k0_bound: Option<usize>,
    pub bound: usize,
    pub satisfied: bool,
}

pub fn lower_bound(n: usize, k: usize) -> (usize, Option<usize>) {
    let m = n.saturating_sub(1);
    let general = ((k + 1) * m).div_ceil(3);
    let k0 = (k == 0).then(|| m.div_ceil(2));
    (general, k0)
}

/// Checks that `blockers` really blocks and compares its size against the
/// known lower bounds.
pub fn lower_bound_report(
    base: &PointSet,
    blockers: &[Point],
    k: usize,
) -> Result<LowerBoundReport> {
    if let Some((i, j)) = unblocked_edge(base, blockers, k)? {
        return Err(Error::NotABlocker(i, j));
    }
    let n = base.len();
    let (general_bound, k0_bound) = lower_bound(n, k);
    let bound = general_bound.max(k0_bound.unwrap_or(0));
    Ok(LowerBoundReport {
        n,
        k,
        blockers: blockers.len(),
        general_bound,
        k0_bound,
        bound,
        satisfied: blockers.len() >= bound,
    })
}

/// Smallest subset of `candidates` (up to `max_size` points) that blocks
/// 0-TD of the base set, by exhaustive search in order of size.
pub fn smallest_blocker_from(
    base: &PointSet,
    candidates: &[Point],
    max_size: usize,
) -> Result<Option<Vec<Point>>> {
    fn rec(
        base: &PointSet,
        candidates: &[Point],
        start: usize,
        left: usize,
        chosen: &mut Vec<Point>,
    ) -> Result<bool> {
        if left == 0 {
            return match base.union(chosen) {
                Ok(_) => blocks(base, chosen, 0),
                Err(_) => Ok(false),
            };
        }
        for c in start..candidates.len() {
            chosen.push(candidates[c]);
            if rec(base, candidates, c + 1, left - 1, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    for size in 0..=max_size.min(candidates.len()) {
        let mut chosen = Vec::new();
        if rec(base, candidates, 0, size, &mut chosen)? {
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}
