//! Deterministic SVG drawings of point sets, graphs and triangles.

use std::fmt::Write;

use crate::geometry::{smallest_down_triangle, DownTriangle, Point};
use crate::graph::GeoGraph;
use crate::scenarios::{threshold_graph, WitnessKind, WitnessSpec, COUNTEREXAMPLE_EPSILON};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeStyle {
    Normal,
    /// Drawn thicker and coloured, e.g. edges that are new at a larger k.
    Highlight,
    /// Drawn light, e.g. edges shared with a smaller k.
    Faint,
}

#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub points: Vec<Point>,
    pub edges: Vec<(usize, usize, EdgeStyle)>,
    pub triangles: Vec<DownTriangle>,
    /// Role label per point (`a`, `b`, `U`, `R`, `A`, `K`, `B`).
    pub labels: Vec<Option<&'static str>>,
}

fn role_colour(label: Option<&str>) -> &'static str {
    match label {
        Some("a") | Some("b") => "#d62728",
        Some("U") => "#1f77b4",
        Some("R") => "#2ca02c",
        Some("A") => "#9467bd",
        Some("K") => "#ff7f0e",
        Some("B") => "#8c564b",
        _ => "#000000",
    }
}

fn f(x: f64) -> String {
    let s = format!("{x:.6}");
    // avoid "-0.000000"
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Renders the scene with y pointing up. The view box fits every point and
/// triangle corner with a 5% margin; output depends only on the input.
pub fn render_svg(scene: &Scene) -> String {
    let mut xs: Vec<f64> = scene.points.iter().map(|p| p.x).collect();
    let mut ys: Vec<f64> = scene.points.iter().map(|p| p.y).collect();
    for t in &scene.triangles {
        for c in t.corners() {
            xs.push(c.x);
            ys.push(c.y);
        }
    }
    let (min_x, max_x) = bounds(&xs);
    let (min_y, max_y) = bounds(&ys);
    let extent = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let margin = 0.05 * extent;
    let (vx, vy) = (min_x - margin, -max_y - margin);
    let (vw, vh) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);
    let stroke = extent * 0.002;
    let radius = extent * 0.006;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">",
        f(vx),
        f(vy),
        f(vw),
        f(vh),
        (800.0 * vh / vw).round() as i64
    );
    let _ = writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        f(vx),
        f(vy),
        f(vw),
        f(vh)
    );
    for t in &scene.triangles {
        let [c0, c1, c2] = t.corners();
        let _ = writeln!(
            out,
            "<polygon points=\"{},{} {},{} {},{}\" fill=\"#ffbb78\" fill-opacity=\"0.25\" stroke=\"#ff7f0e\" stroke-width=\"{}\"/>",
            f(c0.x), f(-c0.y), f(c1.x), f(-c1.y), f(c2.x), f(-c2.y), f(stroke)
        );
    }
    for &(i, j, style) in &scene.edges {
        let (p, q) = (scene.points[i], scene.points[j]);
        let (colour, width) = match style {
            EdgeStyle::Normal => ("#555555", stroke),
            EdgeStyle::Highlight => ("#d62728", 2.0 * stroke),
            EdgeStyle::Faint => ("#bbbbbb", stroke),
        };
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{colour}\" stroke-width=\"{}\"/>",
            f(p.x), f(-p.y), f(q.x), f(-q.y), f(width)
        );
    }
    for (i, p) in scene.points.iter().enumerate() {
        let label = scene.labels.get(i).copied().flatten();
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            f(p.x),
            f(-p.y),
            f(radius),
            role_colour(label)
        );
        if let Some(l) = label {
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-size=\"{}\" fill=\"{}\">{l}</text>",
                f(p.x + 1.5 * radius),
                f(-p.y - 1.5 * radius),
                f(4.0 * radius),
                role_colour(label)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Scene of a graph. Edges also present in `previous` are drawn faint and
/// the rest highlighted; without `previous` every edge is normal. With
/// `triangles`, the triangle `t(p, q)` of every edge is overlaid.
pub fn graph_scene(
    points: &[Point],
    edges: &[(usize, usize)],
    previous: Option<&GeoGraph>,
    triangles: bool,
) -> Result<Scene> {
    let mut scene = Scene {
        points: points.to_vec(),
        labels: vec![None; points.len()],
        ..Scene::default()
    };
    for &(i, j) in edges {
        let style = match previous {
            None => EdgeStyle::Normal,
            Some(g) if g.has_edge(i, j) => EdgeStyle::Faint,
            Some(_) => EdgeStyle::Highlight,
        };
        scene.edges.push((i, j, style));
        if triangles {
            scene
                .triangles
                .push(smallest_down_triangle(points[i], points[j])?);
        }
    }
    Ok(scene)
}

/// Scene of a witness: role-coloured points. Counterexamples show the
/// threshold graph at `1 + ε` with `(a, b)` highlighted and `t(a, b)`
/// overlaid; the connectivity witness shows its k-TD.
pub fn witness_scene(spec: &WitnessSpec) -> Result<Scene> {
    let pts = spec.points.points();
    let n = pts.len();
    let mut scene = Scene {
        points: pts.to_vec(),
        labels: (0..n).map(|i| spec.roles.label_of(i)).collect(),
        ..Scene::default()
    };
    let ab = spec
        .roles
        .a
        .zip(spec.roles.b)
        .map(|(a, b)| (a.min(b), a.max(b)));
    let pairs: Vec<(usize, usize)> = match spec.kind {
        WitnessKind::Connectivity => {
            crate::graph::build_ktd_cones(&spec.points, spec.k)?.edge_pairs()
        }
        _ => threshold_graph(
            &spec.points,
            1.0 + spec.epsilon.unwrap_or(COUNTEREXAMPLE_EPSILON),
        )
        .edges()
        .collect(),
    };
    for (i, j) in pairs {
        let style = if Some((i, j)) == ab {
            EdgeStyle::Highlight
        } else {
            EdgeStyle::Normal
        };
        scene.edges.push((i, j, style));
    }
    if let Some((a, b)) = ab {
        scene
            .triangles
            .push(smallest_down_triangle(pts[a], pts[b])?);
    }
    Ok(scene)
}

fn bounds(v: &[f64]) -> (f64, f64) {
    if v.is_empty() {
        return (0.0, 1.0);
    }
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_only_and_deterministic() {
        let scene = Scene {
            points: vec![Point::new(0.0, 0.0), Point::new(1.0, 2.0)],
            ..Scene::default()
        };
        let a = render_svg(&scene);
        assert_eq!(a, render_svg(&scene));
        assert_eq!(a.matches("<circle").count(), 2);
        assert!(!a.contains("<line"));
        // 5% margin around a 1 x 2 box, extent 2
        assert!(a.contains("viewBox=\"-0.100000 -2.100000 1.200000 2.200000\""));
    }

    #[test]
    fn labels_are_coloured() {
        let scene = Scene {
            points: vec![Point::new(0.0, 0.0), Point::new(1.0, 0.5)],
            edges: vec![(0, 1, EdgeStyle::Highlight)],
            triangles: vec![],
            labels: vec![Some("a"), Some("b")],
        };
        let svg = render_svg(&scene);
        assert_eq!(svg.matches("#d62728").count(), 5);
        assert!(svg.contains(">a</text>"));
    }

    #[test]
    fn witness_scene_marks_ab() {
        let spec = crate::scenarios::shipped_matching_counterexample();
        let scene = witness_scene(&spec).unwrap();
        assert_eq!(scene.triangles.len(), 1);
        assert_eq!(
            scene
                .edges
                .iter()
                .filter(|e| e.2 == EdgeStyle::Highlight)
                .count(),
            1
        );
        assert_eq!(
            render_svg(&scene),
            render_svg(&witness_scene(&spec).unwrap())
        );
    }
}
