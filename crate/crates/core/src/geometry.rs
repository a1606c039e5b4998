//! The triangular distance.
//!
//! A downward triangle (a homothet of the reference triangle with a horizontal
//! top side and its apex at the bottom) is the intersection of three half-planes
//! `{x : x·n_i <= t_i}` whose outward normals are
//!
//! ```text
//! n0 = (0, 1)        top side
//! n1 = (-√3/2, -1/2) left side
//! n2 = ( √3/2, -1/2) right side
//! ```
//!
//! so a triangle is stored as its three support values `(t0, t1, t2)`. The normals
//! sum to zero, which makes `σ = t0 + t1 + t2` translation invariant: it is the
//! height of the triangle. Side length is `2σ/√3` and area is `σ²/√3`. All size
//! comparisons go through `σ` since it is linear in the coordinates.
//!
//! Cones around a point are numbered 1..=6 counter-clockwise starting at the
//! positive x axis: cone 1 spans directions (0°, 60°), cone 2 spans (60°, 120°)
//! and so on. Points in an even cone of `p` see `p` as a corner of their smallest
//! downward triangle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Outward unit normals of the top, left and right sides of a downward triangle.
pub const NORMALS: [[f64; 2]; 3] = [[0.0, 1.0], [-SQRT_3 / 2.0, -0.5], [SQRT_3 / 2.0, -0.5]];

/// Absolute tolerance on support-value differences used by the general-position test.
pub const GENERAL_POSITION_TOL: f64 = 1e-9;

/// Two triangle sizes closer than this are treated as equal.
pub const SIZE_TIE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn support(&self) -> SupportTriple {
        support_values(*self)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point { x, y }
    }
}

/// Support values along `n0, n1, n2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportTriple(pub [f64; 3]);

impl SupportTriple {
    pub fn sigma(&self) -> f64 {
        self.0[0] + self.0[1] + self.0[2]
    }

    pub fn max(&self, other: &SupportTriple) -> SupportTriple {
        SupportTriple([
            self.0[0].max(other.0[0]),
            self.0[1].max(other.0[1]),
            self.0[2].max(other.0[2]),
        ])
    }

    pub fn min(&self, other: &SupportTriple) -> SupportTriple {
        SupportTriple([
            self.0[0].min(other.0[0]),
            self.0[1].min(other.0[1]),
            self.0[2].min(other.0[2]),
        ])
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &SupportTriple) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }
}

impl std::ops::Index<usize> for SupportTriple {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub fn support_values(p: Point) -> SupportTriple {
    SupportTriple([
        p.y,
        NORMALS[1][0] * p.x + NORMALS[1][1] * p.y,
        NORMALS[2][0] * p.x + NORMALS[2][1] * p.y,
    ])
}

/// A homothet of the downward reference triangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DownTriangle {
    support: SupportTriple,
}

impl DownTriangle {
    /// Fails when the support values describe an empty triangle (`σ < 0`).
    pub fn from_support(support: SupportTriple) -> Option<Self> {
        (support.sigma() >= 0.0).then_some(DownTriangle { support })
    }

    pub fn support(&self) -> SupportTriple {
        self.support
    }

    /// σ, the height of the triangle.
    pub fn size(&self) -> f64 {
        self.support.sigma()
    }

    pub fn side_length(&self) -> f64 {
        2.0 * self.size() / SQRT_3
    }

    pub fn area(&self) -> f64 {
        let s = self.size();
        s * s / SQRT_3
    }

    pub fn top_left(&self) -> Point {
        let [t0, t1, _] = self.support.0;
        Point::new(-(2.0 * t1 + t0) / SQRT_3, t0)
    }

    pub fn top_right(&self) -> Point {
        let [t0, _, t2] = self.support.0;
        Point::new((2.0 * t2 + t0) / SQRT_3, t0)
    }

    /// The lowest corner.
    pub fn apex(&self) -> Point {
        let [_, t1, t2] = self.support.0;
        Point::new((t2 - t1) / SQRT_3, -(t1 + t2))
    }

    /// Corners in the order top-left, top-right, apex.
    pub fn corners(&self) -> [Point; 3] {
        [self.top_left(), self.top_right(), self.apex()]
    }

    pub fn top_y(&self) -> f64 {
        self.support.0[0]
    }

    pub fn apex_y(&self) -> f64 {
        self.support.0[0] - self.size()
    }

    /// Strict interior test; boundary points are outside.
    pub fn interior_contains(&self, r: Point) -> bool {
        let u = support_values(r);
        (0..3).all(|i| u.0[i] < self.support.0[i])
    }

    /// Closed containment of another downward triangle.
    pub fn contains_triangle(&self, other: &DownTriangle) -> bool {
        other.support.le(&self.support)
    }

    /// Intersection of two triangles, `None` when it has no interior.
    pub fn intersection(&self, other: &DownTriangle) -> Option<DownTriangle> {
        let s = self.support.min(&other.support);
        (s.sigma() > 0.0).then_some(DownTriangle { support: s })
    }
}

pub fn interior_contains(tri: &DownTriangle, r: Point) -> bool {
    tri.interior_contains(r)
}

/// One of the six 60° cones around a point, numbered 1..=6 counter-clockwise
/// from the positive x axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConeIndex(u8);

impl ConeIndex {
    pub fn new(i: u8) -> Option<Self> {
        (1..=6).contains(&i).then_some(ConeIndex(i))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn opposite(self) -> ConeIndex {
        ConeIndex((self.0 + 2) % 6 + 1)
    }

    /// For an even cone, the index of the normal that bisects it.
    pub fn bisector_normal(self) -> Option<usize> {
        match self.0 {
            2 => Some(0),
            4 => Some(1),
            6 => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for ConeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

/// The three line directions that general position forbids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    Deg0,
    Deg60,
    Deg120,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Deg0 => write!(f, "0°"),
            Direction::Deg60 => write!(f, "60°"),
            Direction::Deg120 => write!(f, "120°"),
        }
    }
}

/// The support index whose difference vanishes along each forbidden direction.
fn direction_of_support(i: usize) -> Direction {
    match i {
        0 => Direction::Deg0,
        1 => Direction::Deg120,
        _ => Direction::Deg60,
    }
}

fn degenerate_direction(p: Point, q: Point) -> Option<Direction> {
    let (up, uq) = (support_values(p), support_values(q));
    (0..3)
        .find(|&i| (uq.0[i] - up.0[i]).abs() < GENERAL_POSITION_TOL)
        .map(direction_of_support)
}

pub fn cone_of(p: Point, q: Point) -> Result<ConeIndex> {
    if let Some(direction) = degenerate_direction(p, q) {
        return Err(Error::DegenerateDirection {
            from: p,
            to: q,
            direction,
        });
    }
    let (up, uq) = (support_values(p), support_values(q));
    let s = |i: usize| uq.0[i] > up.0[i];
    let cone = match (s(0), s(1), s(2)) {
        (true, false, true) => 1,
        (true, false, false) => 2,
        (true, true, false) => 3,
        (false, true, false) => 4,
        (false, true, true) => 5,
        (false, false, true) => 6,
        // all three differences share a sign only if they sum to nonzero
        _ => unreachable!("support differences sum to zero"),
    };
    Ok(ConeIndex(cone))
}

/// The smallest downward triangle with `p` and `q` on its boundary.
pub fn smallest_down_triangle(p: Point, q: Point) -> Result<DownTriangle> {
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    Ok(DownTriangle {
        support: support_values(p).max(&support_values(q)),
    })
}

/// σ of the smallest downward triangle through `p` and `q`, without any
/// validation. This is the hot path used by the graph builders.
#[inline]
pub fn triangle_size(p: Point, q: Point) -> f64 {
    support_values(p).max(&support_values(q)).sigma()
}

/// Triangular distance `d(p, q)`, equal to σ of the smallest downward triangle
/// through both points.
pub fn td_distance(p: Point, q: Point) -> Result<f64> {
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    if let Some(direction) = degenerate_direction(p, q) {
        return Err(Error::DegenerateDirection {
            from: p,
            to: q,
            direction,
        });
    }
    Ok(triangle_size(p, q))
}

/// σ of the smallest upward triangle through `p` and `q`.
pub fn up_triangle_size(p: Point, q: Point) -> f64 {
    let (up, uq) = (support_values(p), support_values(q));
    (0..3).map(|i| (-up.0[i]).max(-uq.0[i])).sum()
}

/// Regular hexagon centred at `center`, sides parallel to the 0°, 60° and 120°
/// lines. `radius` is the support value in each of the six normal directions,
/// which is also the triangular distance from the centre to the boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hexagon {
    pub center: Point,
    pub radius: f64,
}

impl Hexagon {
    /// The hexagon centred at `center` with `boundary` on its boundary.
    pub fn through(center: Point, boundary: Point) -> Self {
        Hexagon {
            center,
            radius: hex_norm(center, boundary),
        }
    }

    pub fn corners(&self) -> [Point; 6] {
        let r = self.radius * 2.0 / SQRT_3;
        std::array::from_fn(|i| {
            let a = (i as f64) * std::f64::consts::FRAC_PI_3;
            Point::new(self.center.x + r * a.cos(), self.center.y + r * a.sin())
        })
    }

    pub fn contains(&self, r: Point) -> bool {
        hex_norm(self.center, r) < self.radius
    }
}

pub fn hexagon_contains(hex: &Hexagon, r: Point) -> bool {
    hex.contains(r)
}

/// Largest support-value difference between two points.
pub fn hex_norm(p: Point, q: Point) -> f64 {
    let (up, uq) = (support_values(p), support_values(q));
    (0..3)
        .map(|i| (uq.0[i] - up.0[i]).abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    /// `None` means the two points coincide.
    pub direction: Option<Direction>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct GeneralPositionReport {
    pub non_finite: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl GeneralPositionReport {
    pub fn is_ok(&self) -> bool {
        self.non_finite.is_empty() && self.violations.is_empty()
    }
}

impl fmt::Display for GeneralPositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let mut parts = Vec::new();
        for &i in &self.non_finite {
            parts.push(format!("point {i} is not finite"));
        }
        for v in self.violations.iter().take(5) {
            match v.direction {
                None => parts.push(format!("points {} and {} coincide", v.i, v.j)),
                Some(d) => parts.push(format!("points {} and {} are aligned at {d}", v.i, v.j)),
            }
        }
        if self.violations.len() > 5 {
            parts.push(format!("{} more", self.violations.len() - 5));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Lists every pair of points aligned along 0°, 60° or 120° (or coinciding).
pub fn validate_general_position(points: &[Point]) -> GeneralPositionReport {
    let mut report = GeneralPositionReport::default();
    for (i, p) in points.iter().enumerate() {
        if !p.is_finite() {
            report.non_finite.push(i);
        }
    }
    if !report.non_finite.is_empty() {
        return report;
    }
    let supports: Vec<SupportTriple> = points.iter().map(|p| support_values(*p)).collect();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let close: Vec<usize> = (0..3)
                .filter(|&c| (supports[i].0[c] - supports[j].0[c]).abs() < GENERAL_POSITION_TOL)
                .collect();
            if close.len() == 3 || points[i] == points[j] {
                report.violations.push(Violation {
                    i,
                    j,
                    direction: None,
                });
            } else {
                for c in close {
                    report.violations.push(Violation {
                        i,
                        j,
                        direction: Some(direction_of_support(c)),
                    });
                }
            }
        }
    }
    report
}

/// A validated point set: finite, distinct and in general position.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let report = validate_general_position(&points);
        if !report.is_ok() {
            return Err(Error::InvalidPointSet(report.to_string()));
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Appends `others` after the current points and revalidates.
    pub fn union(&self, others: &[Point]) -> Result<PointSet> {
        let mut all = self.points.clone();
        all.extend_from_slice(others);
        PointSet::new(all)
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

impl std::ops::Index<usize> for PointSet {
    type Output = Point;
    fn index(&self, i: usize) -> &Point {
        &self.points[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn support_values_of_axis_points() {
        assert_eq!(support_values(p(0.0, 0.0)).0, [0.0, 0.0, 0.0]);
        let s = support_values(p(0.0, 1.0)).0;
        assert_relative_eq!(s[0], 1.0);
        assert_relative_eq!(s[1], -0.5);
        assert_relative_eq!(s[2], -0.5);
        let s = support_values(p(1.0, 0.0)).0;
        assert_relative_eq!(s[0], 0.0);
        assert_relative_eq!(s[1], -SQRT_3 / 2.0);
        assert_relative_eq!(s[2], SQRT_3 / 2.0);
    }

    #[test]
    fn cone_examples() {
        assert_eq!(cone_of(p(0.0, 0.0), p(0.0, 1.0)).unwrap().get(), 2);
        assert_eq!(cone_of(p(0.0, 0.0), p(1.0, 0.1)).unwrap().get(), 1);
        assert_eq!(cone_of(p(0.0, 0.0), p(-1.0, -0.1)).unwrap().get(), 4);
        assert!(matches!(
            cone_of(p(0.0, 0.0), p(1.0, 0.0)),
            Err(Error::DegenerateDirection {
                direction: Direction::Deg0,
                ..
            })
        ));
        assert!(matches!(
            cone_of(p(0.0, 0.0), p(1.0, SQRT_3)),
            Err(Error::DegenerateDirection {
                direction: Direction::Deg60,
                ..
            })
        ));
        assert!(matches!(
            cone_of(p(0.0, 0.0), p(-1.0, SQRT_3)),
            Err(Error::DegenerateDirection {
                direction: Direction::Deg120,
                ..
            })
        ));
    }

    #[test]
    fn opposite_cones() {
        let opp: Vec<u8> = (1..=6).map(|i| ConeIndex(i).opposite().get()).collect();
        assert_eq!(opp, vec![4, 5, 6, 1, 2, 3]);
    }

    #[test]
    fn vertical_pair_triangle() {
        let t = smallest_down_triangle(p(0.0, 0.0), p(0.0, 1.0)).unwrap();
        assert_eq!(t.support().0, [1.0, 0.0, 0.0]);
        assert_relative_eq!(t.side_length(), 2.0 / SQRT_3);
        let apex = t.apex();
        assert_relative_eq!(apex.x, 0.0);
        assert_relative_eq!(apex.y, 0.0);
        assert_relative_eq!(t.top_y(), 1.0);
        assert!(matches!(
            smallest_down_triangle(p(0.0, 0.0), p(0.0, 0.0)),
            Err(Error::CoincidentPoints)
        ));
    }

    #[test]
    fn area_matches_side_length() {
        let t = smallest_down_triangle(p(0.3, -0.2), p(1.1, 0.7)).unwrap();
        let l = t.side_length();
        assert_relative_eq!(t.area(), SQRT_3 / 4.0 * l * l, max_relative = 1e-9);
        // corners lie on their support lines
        let [tl, tr, ap] = t.corners();
        let s = t.support().0;
        assert_relative_eq!(support_values(tl).0[0], s[0], epsilon = 1e-12);
        assert_relative_eq!(support_values(tl).0[1], s[1], epsilon = 1e-12);
        assert_relative_eq!(support_values(tr).0[2], s[2], epsilon = 1e-12);
        assert_relative_eq!(support_values(ap).0[1], s[1], epsilon = 1e-12);
        assert_relative_eq!(support_values(ap).0[2], s[2], epsilon = 1e-12);
        // Euclidean side length from the corners
        let side = ((tr.x - tl.x).powi(2) + (tr.y - tl.y).powi(2)).sqrt();
        assert_relative_eq!(side, l, max_relative = 1e-12);
        let side = ((ap.x - tl.x).powi(2) + (ap.y - tl.y).powi(2)).sqrt();
        assert_relative_eq!(side, l, max_relative = 1e-12);
    }

    #[test]
    fn distance_examples() {
        assert_relative_eq!(td_distance(p(0.0, 0.0), p(0.0, 1.0)).unwrap(), 1.0);
        assert_relative_eq!(td_distance(p(0.0, 1.0), p(0.0, 0.0)).unwrap(), 1.0);
        assert_relative_eq!(up_triangle_size(p(0.0, 0.0), p(0.0, 1.0)), 1.0);
        let (a, b) = (p(0.0, 0.0), p(1.0, 0.1));
        assert_relative_eq!(
            up_triangle_size(a, b),
            td_distance(a, b).unwrap(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn interior_examples() {
        let t = smallest_down_triangle(p(0.0, 0.0), p(0.0, 1.0)).unwrap();
        assert!(t.interior_contains(p(0.0, 0.5)));
        assert!(!t.interior_contains(p(0.0, 0.0)));
        assert!(!t.interior_contains(p(5.0, 5.0)));
        assert!(!t.interior_contains(p(0.0, 1.0)));
    }

    #[test]
    fn hexagon_examples() {
        let hex = Hexagon::through(p(0.0, 0.0), p(0.0, 1.0));
        assert!(hex.contains(p(0.0, 0.0)));
        assert!(!hex.contains(p(0.0, 1.0)));
        assert_relative_eq!(hex.radius, 1.0);
        // corners sit on the boundary
        for c in hex.corners() {
            assert_relative_eq!(hex_norm(hex.center, c), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn general_position_examples() {
        let r = validate_general_position(&[p(0.0, 0.0), p(1.0, 0.0)]);
        assert_eq!(
            r.violations,
            vec![Violation {
                i: 0,
                j: 1,
                direction: Some(Direction::Deg0)
            }]
        );
        assert!(validate_general_position(&[p(0.0, 0.0), p(1.0, 0.1)]).is_ok());
        let r = validate_general_position(&[p(0.0, 0.0), p(1.0, SQRT_3)]);
        assert_eq!(r.violations[0].direction, Some(Direction::Deg60));
        let r = validate_general_position(&[p(0.2, 0.3), p(0.2, 0.3)]);
        assert_eq!(r.violations[0].direction, None);
        let r = validate_general_position(&[p(f64::NAN, 0.0)]);
        assert_eq!(r.non_finite, vec![0]);
        assert!(PointSet::new(vec![p(0.0, 0.0), p(2.0, 0.0)]).is_err());
    }

    #[test]
    fn intersection_of_triangles() {
        let a = DownTriangle::from_support(SupportTriple([1.0, 0.0, 0.0])).unwrap();
        let b = DownTriangle::from_support(SupportTriple([1.5, -0.3, 0.2])).unwrap();
        let c = a.intersection(&b).unwrap();
        assert_eq!(c.support().0, [1.0, -0.3, 0.0]);
        let far = DownTriangle::from_support(SupportTriple([-5.0, 2.0, 3.1])).unwrap();
        assert!(a.intersection(&far).is_none());
        assert!(DownTriangle::from_support(SupportTriple([-1.0, 0.0, 0.0])).is_none());
    }
}
