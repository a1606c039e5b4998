//! Order-k triangular-distance Delaunay graphs.
//!
//! The distance underlying everything here is the convex distance induced by a
//! fixed downward equilateral triangle. A pair `(p, q)` is an edge of the order-k
//! graph when the smallest downward triangle with `p` and `q` on its boundary
//! holds at most `k` other points in its open interior.
//!
//! Besides the two graph builders, the crate carries the graph algorithms and
//! brute-force checks used to exercise the structural properties of these graphs:
//! connectivity, bottleneck structures, matchings, partition spanning trees and
//! blocking sets.

pub mod blocking;
pub mod combinatorics;
pub mod experiment;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod partition;
pub mod render;
pub mod rng;
pub mod scenarios;

pub use geometry::{ConeIndex, DownTriangle, Hexagon, Point, PointSet, SupportTriple};
pub use graph::{build_ktd_cones, build_ktd_definition, GeoGraph, WeightSequence};

/// Single error type for the whole crate.
#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("invalid point set: {0}")]
    InvalidPointSet(String),

    #[error("direction from point {from} to point {to} is parallel to the {direction} line")]
    DegenerateDirection {
        from: Point,
        to: Point,
        direction: geometry::Direction,
    },

    #[error("the two points coincide")]
    CoincidentPoints,

    #[error("points {0} and {1} are tied in a cone of point {2}")]
    DistanceTie(usize, usize, usize),

    #[error("{what} supports at most {cap} vertices, got {n}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("{what} needs at least {min} points, got {n}")]
    TooFewPoints {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("a perfect matching needs an even number of vertices, got {0}")]
    OddN(usize),

    #[error("partition has no blocks")]
    EmptyPartition,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(&'static str),

    #[error("the blocker set leaves edge ({0}, {1}) between base points")]
    NotABlocker(usize, usize),

    #[error("role mismatch: {0}")]
    RoleMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),

    #[error("trial {trial}: {source}")]
    Trial {
        trial: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("gave up after {0} attempts: {1}")]
    RetriesExhausted(usize, String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// The innermost error, looking through trial wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Trial { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
