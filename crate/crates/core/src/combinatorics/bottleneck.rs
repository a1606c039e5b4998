use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{hamiltonian_cycle, is_biconnected, max_matching_blossom, Graph, HAMILTONIAN_CAP};
use crate::geometry::{support_values, PointSet, SIZE_TIE_TOL};
use crate::graph::{area_of_size, build_ktd_cones};
use crate::{Error, Result};

/// Matching and biconnected searches are limited to this many points.
pub const BOTTLENECK_CAP: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Matching,
    Hamiltonian,
    Biconnected,
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::Matching => "matching",
            StructureKind::Hamiltonian => "hamiltonian",
            StructureKind::Biconnected => "biconnected",
        })
    }
}

impl FromStr for StructureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matching" => Ok(StructureKind::Matching),
            "hamiltonian" => Ok(StructureKind::Hamiltonian),
            "biconnected" => Ok(StructureKind::Biconnected),
            other => Err(Error::Parse(format!("unknown structure kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BottleneckResult {
    pub kind: StructureKind,
    /// Bottleneck weight: the area of the largest triangle used.
    pub lambda: f64,
    /// σ of that triangle.
    pub size: f64,
    /// Edges of a structure attaining the bottleneck.
    pub edges: Vec<(usize, usize)>,
}

fn check_size(n: usize, kind: StructureKind) -> Result<()> {
    match kind {
        StructureKind::Matching if n % 2 == 1 => Err(Error::OddN(n)),
        StructureKind::Matching if n == 0 => Err(Error::TooFewPoints {
            what: "bottleneck matching",
            n,
            min: 2,
        }),
        StructureKind::Hamiltonian if n > HAMILTONIAN_CAP => Err(Error::SizeLimit {
            what: "bottleneck Hamiltonian cycle",
            n,
            cap: HAMILTONIAN_CAP,
        }),
        StructureKind::Hamiltonian | StructureKind::Biconnected if n < 3 => {
            Err(Error::TooFewPoints {
                what: "bottleneck cycle or biconnected subgraph",
                n,
                min: 3,
            })
        }
        _ if n > BOTTLENECK_CAP => Err(Error::SizeLimit {
            what: "bottleneck search",
            n,
            cap: BOTTLENECK_CAP,
        }),
        _ => Ok(()),
    }
}

/// Whether `g` contains a structure of the given kind; if so, returns the
/// edges of one. For the biconnected kind that is all of `g`.
pub fn feasible(g: &Graph, kind: StructureKind) -> Result<Option<Vec<(usize, usize)>>> {
    let n = g.n();
    Ok(match kind {
        StructureKind::Matching => {
            if n % 2 == 1 {
                return Err(Error::OddN(n));
            }
            let m = max_matching_blossom(g);
            m.is_perfect.then_some(m.edges)
        }
        StructureKind::Hamiltonian => hamiltonian_cycle(g)?.map(|c| {
            let mut edges: Vec<(usize, usize)> = (0..c.len())
                .map(|i| {
                    let (u, v) = (c[i], c[(i + 1) % c.len()]);
                    (u.min(v), u.max(v))
                })
                .collect();
            edges.sort_unstable();
            edges
        }),
        StructureKind::Biconnected => is_biconnected(g).then(|| g.edges().collect()),
    })
}

/// All pairs sorted by σ, grouped into levels; pairs within
/// [`SIZE_TIE_TOL`] of their predecessor join its level.
fn sorted_levels(points: &PointSet) -> (Vec<(f64, usize, usize)>, Vec<usize>) {
    let n = points.len();
    let supports: Vec<_> = points.points().iter().map(|&p| support_values(p)).collect();
    let mut pairs: Vec<(f64, usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (supports[i].max(&supports[j]).sigma(), i, j))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    // level_end[l] = number of pairs in levels 0..=l
    let mut level_end = Vec::new();
    for idx in 1..=pairs.len() {
        if idx == pairs.len() || pairs[idx].0 - pairs[idx - 1].0 > SIZE_TIE_TOL {
            level_end.push(idx);
        }
    }
    (pairs, level_end)
}

/// Smallest λ such that the pairs with triangle area at most λ contain a
/// structure of the given kind. Binary search over the distinct pair sizes.
pub fn bottleneck_value(points: &PointSet, kind: StructureKind) -> Result<BottleneckResult> {
    let n = points.len();
    check_size(n, kind)?;
    let (pairs, level_end) = sorted_levels(points);
    let graph_at = |level: usize| {
        Graph::from_edges(n, pairs[..level_end[level]].iter().map(|&(_, i, j)| (i, j)))
    };
    let (mut lo, mut hi) = (0, level_end.len() - 1);
    let mut best =
        feasible(&graph_at(hi), kind)?.expect("complete graph always contains the structure");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match feasible(&graph_at(mid), kind)? {
            Some(edges) => {
                hi = mid;
                best = edges;
            }
            None => lo = mid + 1,
        }
    }
    let size = best
        .iter()
        .map(|&(i, j)| {
            support_values(points[i])
                .max(&support_values(points[j]))
                .sigma()
        })
        .fold(0.0, f64::max);
    Ok(BottleneckResult {
        kind,
        lambda: area_of_size(size),
        size,
        edges: best,
    })
}

/// Whether the bottleneck value of `kind` is attained inside k-TD: the
/// sub-graph of k-TD with triangle sizes up to the optimum must still contain
/// the structure.
pub fn bottleneck_within_ktd(points: &PointSet, kind: StructureKind, k: usize) -> Result<bool> {
    let best = bottleneck_value(points, kind)?;
    let ktd = build_ktd_cones(points, k)?;
    Ok(feasible(&ktd.threshold(best.size), kind)?.is_some())
}
