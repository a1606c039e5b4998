//! Constructed point sets: a witness that k-TD need not be (k+2)-connected,
//! and validators for the two configurations in which every bottleneck
//! structure needs an edge missing from 5-TD.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    enumerate_perfect_matchings, hamiltonian_cycle, has_perfect_matching, is_hamiltonian_cycle,
    Graph,
};
use crate::geometry::{
    smallest_down_triangle, triangle_size, Point, PointSet, GENERAL_POSITION_TOL,
};
use crate::graph::build_ktd_cones;
use crate::{Error, Result};

/// ε used by the shipped counterexamples.
pub const COUNTEREXAMPLE_EPSILON: f64 = 0.05;

/// Distances closer than this to a threshold count as equal to it.
pub const DISTANCE_TOL: f64 = GENERAL_POSITION_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    Connectivity,
    HamiltonicityCounterexample,
    MatchingCounterexample,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Connectivity => "connectivity",
            WitnessKind::HamiltonicityCounterexample => "hamiltonicity-counterexample",
            WitnessKind::MatchingCounterexample => "matching-counterexample",
        })
    }
}

/// Labelled point indices. The counterexamples use `a`, `b`, `U` and `R`;
/// the connectivity witness uses `A`, `K` and `B`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(default, rename = "U", skip_serializing_if = "Vec::is_empty")]
    pub u: Vec<usize>,
    #[serde(default, rename = "R", skip_serializing_if = "Vec::is_empty")]
    pub r: Vec<usize>,
    #[serde(default, rename = "A", skip_serializing_if = "Vec::is_empty")]
    pub a_set: Vec<usize>,
    #[serde(default, rename = "K", skip_serializing_if = "Vec::is_empty")]
    pub k_set: Vec<usize>,
    #[serde(default, rename = "B", skip_serializing_if = "Vec::is_empty")]
    pub b_set: Vec<usize>,
}

impl Roles {
    /// Single-letter role name of a point, for colouring.
    pub fn label_of(&self, i: usize) -> Option<&'static str> {
        if self.a == Some(i) {
            Some("a")
        } else if self.b == Some(i) {
            Some("b")
        } else if self.u.contains(&i) {
            Some("U")
        } else if self.r.contains(&i) {
            Some("R")
        } else if self.a_set.contains(&i) {
            Some("A")
        } else if self.k_set.contains(&i) {
            Some("K")
        } else if self.b_set.contains(&i) {
            Some("B")
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSpec {
    pub kind: WitnessKind,
    pub k: usize,
    pub epsilon: Option<f64>,
    pub points: PointSet,
    pub roles: Roles,
}

/// A fixed, well spread pattern of offsets in `[-0.5, 0.5)²`.
fn offset(i: usize, salt: f64) -> (f64, f64) {
    let t = i as f64 + salt;
    let fx = (t * 0.618_033_988_749_895).fract();
    let fy = (t * 0.414_213_562_373_095_1 + 0.25).fract();
    (fx - 0.5, fy - 0.5)
}

/// `A` near the origin, `K` (k+1 points) about 10 units away in direction
/// 210° and `B` about 20 units away in the same direction. Every `K` point
/// lies in cone 4 of every `A` point, and every `B` point in cone 4 of every
/// `K` point, so each `t(a, b)` holds all of `K` and deleting `K`
/// disconnects k-TD.
pub fn connectivity_witness(k: usize, size_a: usize, size_b: usize) -> Result<WitnessSpec> {
    if size_a == 0 || size_b == 0 {
        return Err(Error::InvalidPointSet(
            "both sides of the witness need a point".into(),
        ));
    }
    let (dx, dy) = (210f64.to_radians().cos(), 210f64.to_radians().sin());
    let mut points = Vec::new();
    let mut roles = Roles::default();
    for (count, dist, salt, list) in [
        (size_a, 0.0, 0.1, &mut roles.a_set),
        (k + 1, 10.0, 0.35, &mut roles.k_set),
        (size_b, 20.0, 0.7, &mut roles.b_set),
    ] {
        for i in 0..count {
            let (ox, oy) = offset(i, salt);
            list.push(points.len());
            points.push(Point::new(dist * dx + ox, dist * dy + oy));
        }
    }
    Ok(WitnessSpec {
        kind: WitnessKind::Connectivity,
        k,
        epsilon: None,
        points: PointSet::new(points)?,
        roles,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of a counterexample validation, one entry per checked constraint.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "[{}] {}: {}",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

fn check_roles(spec: &WitnessSpec, n: usize, u: usize, r: usize) -> Result<(usize, usize)> {
    let roles = &spec.roles;
    let mismatch = |m: String| Err(Error::RoleMismatch(m));
    if spec.points.len() != n {
        return mismatch(format!("expected {n} points, found {}", spec.points.len()));
    }
    let (Some(a), Some(b)) = (roles.a, roles.b) else {
        return mismatch("roles a and b are required".into());
    };
    if roles.u.len() != u || roles.r.len() != r {
        return mismatch(format!(
            "expected |U| = {u} and |R| = {r}, found {} and {}",
            roles.u.len(),
            roles.r.len()
        ));
    }
    let mut seen = vec![false; n];
    for &i in [a, b].iter().chain(&roles.u).chain(&roles.r) {
        if i >= n {
            return mismatch(format!("index {i} out of range"));
        }
        if std::mem::replace(&mut seen[i], true) {
            return mismatch(format!("index {i} has two roles"));
        }
    }
    Ok((a, b))
}

fn epsilon_of(spec: &WitnessSpec) -> f64 {
    spec.epsilon.unwrap_or(COUNTEREXAMPLE_EPSILON)
}

/// Graph of pairs at triangular distance at most `limit` (ties included).
pub fn threshold_graph(points: &PointSet, limit: f64) -> Graph {
    let n = points.len();
    Graph::from_edges(
        n,
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| triangle_size(points[i], points[j]) <= limit + DISTANCE_TOL),
    )
}

/// `d(a, b) = 1` and the open triangle `t(a, b)` holds exactly the `U` points.
fn check_ab_triangle(v: &mut Verdict, spec: &WitnessSpec, a: usize, b: usize) {
    let p = &spec.points;
    let d = triangle_size(p[a], p[b]);
    let tri = smallest_down_triangle(p[a], p[b]).expect("validated points are distinct");
    let mut inside: Vec<usize> = (0..p.len())
        .filter(|&i| i != a && i != b && tri.interior_contains(p[i]))
        .collect();
    inside.sort_unstable();
    let mut expected = spec.roles.u.clone();
    expected.sort_unstable();
    v.push(
        "ab-triangle",
        (d - 1.0).abs() <= DISTANCE_TOL && inside == expected,
        format!("d(a,b) = {d:.12}, interior holds {inside:?}, U = {expected:?}"),
    );
}

/// `(a, b)` must be missing from 5-TD: `t(a, b)` has six points inside.
fn check_not_in_ktd(v: &mut Verdict, spec: &WitnessSpec, a: usize, b: usize) -> Result<()> {
    let g = build_ktd_cones(&spec.points, spec.k)?;
    let present = g.has_edge(a, b);
    v.push(
        "ab-not-in-ktd",
        !present,
        format!(
            "(a,b) {} in {}-TD",
            if present { "is" } else { "is not" },
            spec.k
        ),
    );
    Ok(())
}

/// Checks a 14-point configuration (`a`, `b`, `U` with 6 points, `R` with 6
/// points, `R[i]` paired with `U[i]`) in which every bottleneck perfect
/// matching uses `(a, b)` although `t(a, b)` holds six points.
pub fn validate_matching_counterexample(spec: &WitnessSpec) -> Result<Verdict> {
    let (a, b) = check_roles(spec, 14, 6, 6)?;
    let p = &spec.points;
    let eps = epsilon_of(spec);
    let limit = 1.0 + eps;
    let mut v = Verdict { checks: Vec::new() };

    check_ab_triangle(&mut v, spec, a, b);

    let mut problems = Vec::new();
    for (i, (&r, &u)) in spec.roles.r.iter().zip(&spec.roles.u).enumerate() {
        let d = triangle_size(p[r], p[u]);
        if (d - limit).abs() > DISTANCE_TOL {
            problems.push(format!("d(r{0},u{0}) = {d:.12}", i + 1));
        }
        for x in (0..p.len()).filter(|&x| x != r && x != u) {
            let d = triangle_size(p[r], p[x]);
            if d <= limit + DISTANCE_TOL {
                problems.push(format!("d(r{}, point {x}) = {d:.12}", i + 1));
            }
        }
    }
    v.push(
        "r-distances",
        problems.is_empty(),
        if problems.is_empty() {
            format!("each r_i is at distance {limit} from u_i and farther from everything else")
        } else {
            problems.join("; ")
        },
    );

    let g = threshold_graph(p, limit);
    let matchings = enumerate_perfect_matchings(&g)?;
    let ab = (a.min(b), a.max(b));
    let without = matchings.iter().filter(|m| !m.contains(&ab)).count();
    let mut g_minus = g.clone();
    g_minus.remove_edge(a, b);
    let forced = !matchings.is_empty() && without == 0 && !has_perfect_matching(&g_minus);
    v.push(
        "ab-forced",
        forced,
        format!(
            "{} perfect matchings with bottleneck <= {limit}, {without} avoid (a,b)",
            matchings.len()
        ),
    );

    check_not_in_ktd(&mut v, spec, a, b)?;
    Ok(v)
}

/// Cycle order `u4 r4 u5 r5 u6 r6 t1 t2 t3 r1 u1 r2 u2 r3 u3 a b`, with `R`
/// listed as `[t1, t2, t3, r1, …, r6]`.
fn hamiltonian_reference_cycle(spec: &WitnessSpec, a: usize, b: usize) -> Vec<usize> {
    let u = |i: usize| spec.roles.u[i - 1];
    let r = |i: usize| spec.roles.r[i + 2];
    let t = |i: usize| spec.roles.r[i - 1];
    vec![
        u(4),
        r(4),
        u(5),
        r(5),
        u(6),
        r(6),
        t(1),
        t(2),
        t(3),
        r(1),
        u(1),
        r(2),
        u(2),
        r(3),
        u(3),
        a,
        b,
    ]
}

/// Checks a 17-point configuration (`a`, `b`, `U` with 6 points, `R` =
/// `[t1, t2, t3, r1, …, r6]`) in which every bottleneck Hamiltonian cycle
/// uses `(a, b)` although `t(a, b)` holds six points.
pub fn validate_hamiltonicity_counterexample(spec: &WitnessSpec) -> Result<Verdict> {
    let (a, b) = check_roles(spec, 17, 6, 9)?;
    let p = &spec.points;
    let eps = epsilon_of(spec);
    let limit = 1.0 + eps;
    let mut v = Verdict { checks: Vec::new() };

    check_ab_triangle(&mut v, spec, a, b);

    // distances stated for the configuration: d(r_i,u_i) = 1+ε, and every
    // r_i is farther than 1+ε from b and from the other r_j
    let rs = &spec.roles.r[3..];
    let mut problems = Vec::new();
    for (i, (&r, &u)) in rs.iter().zip(&spec.roles.u).enumerate() {
        let d = triangle_size(p[r], p[u]);
        if (d - limit).abs() > DISTANCE_TOL {
            problems.push(format!("d(r{0},u{0}) = {d:.12}", i + 1));
        }
        for x in rs.iter().copied().filter(|&x| x != r).chain([b]) {
            let d = triangle_size(p[r], p[x]);
            if d <= limit + DISTANCE_TOL {
                problems.push(format!("d(r{}, point {x}) = {d:.12}", i + 1));
            }
        }
    }
    v.push(
        "r-distances",
        problems.is_empty(),
        if problems.is_empty() {
            "stated distances hold".to_string()
        } else {
            problems.join("; ")
        },
    );

    let g = threshold_graph(p, limit);
    let cycle = hamiltonian_reference_cycle(spec, a, b);
    let h_ok = is_hamiltonian_cycle(&g, &cycle);
    v.push(
        "reference-cycle",
        h_ok,
        format!(
            "cycle (u4, r4, …, u3, a, b) {} Hamiltonian with bottleneck <= {limit}",
            if h_ok { "is" } else { "is not" }
        ),
    );

    let mut g_minus = g;
    g_minus.remove_edge(a, b);
    let avoiding = hamiltonian_cycle(&g_minus)?;
    v.push(
        "ab-forced",
        avoiding.is_none(),
        match &avoiding {
            None => format!("no Hamiltonian cycle with bottleneck <= {limit} avoids (a,b)"),
            Some(c) => format!("cycle {c:?} avoids (a,b)"),
        },
    );

    check_not_in_ktd(&mut v, spec, a, b)?;
    Ok(v)
}

/// The shipped 14-point configuration.
pub fn shipped_matching_counterexample() -> WitnessSpec {
    crate::io::witness_from_json(include_str!("../data/matching_counterexample.json"))
        .expect("shipped witness parses")
}

/// The shipped 17-point configuration.
pub fn shipped_hamiltonicity_counterexample() -> WitnessSpec {
    crate::io::witness_from_json(include_str!("../data/hamiltonicity_counterexample.json"))
        .expect("shipped witness parses")
}
