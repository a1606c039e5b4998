use proptest::prelude::*;

use ktd_core::blocking::{blocking_construction, blocks, lower_bound, smallest_blocker_from};
use ktd_core::combinatorics::{
    bottleneck_value, components_without, feasible, is_connected, max_matching,
    tutte_berge_deficiency, Graph, StructureKind,
};
use ktd_core::geometry::{
    smallest_down_triangle, support_values, td_distance, triangle_size, up_triangle_size, Hexagon,
    Point, SIZE_TIE_TOL,
};
use ktd_core::graph::area_of_size;
use ktd_core::partition::{
    check_mst_triangles_empty, max_overlap_depth, max_overlap_depth_exact, partition_mst, Partition,
};
use ktd_core::rng::{random_point_set, rng_for};
use ktd_core::{build_ktd_cones, build_ktd_definition, PointSet};

fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

fn point_set(n: usize, seed: u64) -> PointSet {
    random_point_set(&mut rng_for(seed, 0), n).unwrap()
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Strict point-in-triangle test by orientation signs.
fn inside_by_orientation(c: [Point; 3], r: Point) -> Option<bool> {
    let s = [
        cross(c[0], c[1], r),
        cross(c[1], c[2], r),
        cross(c[2], c[0], r),
    ];
    let scale = 1e-9 * (1.0 + c.iter().map(|p| p.x.abs() + p.y.abs()).sum::<f64>()).powi(2);
    if s.iter().any(|v| v.abs() < scale) {
        return None; // too close to call
    }
    Some(s.iter().all(|&v| v > 0.0) || s.iter().all(|&v| v < 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn support_values_sum_to_zero(p in point()) {
        let u = support_values(p);
        prop_assert!((u[0] + u[1] + u[2]).abs() <= 1e-12 * (1.0 + p.x.abs() + p.y.abs()));
    }

    #[test]
    fn each_side_of_the_triangle_holds_an_endpoint(p in point(), q in point()) {
        prop_assume!(p != q);
        let t = smallest_down_triangle(p, q).unwrap();
        let (up, uq, s) = (support_values(p), support_values(q), t.support());
        for i in 0..3 {
            let on = |u: f64| (u - s[i]).abs() <= 1e-12 * (1.0 + s[i].abs());
            prop_assert!(on(up[i]) || on(uq[i]));
        }
        prop_assert!(t.size() >= 0.0);
    }

    #[test]
    fn triangle_corners_lie_on_support_lines(p in point(), q in point()) {
        prop_assume!(p != q);
        let t = smallest_down_triangle(p, q).unwrap();
        let s = t.support();
        let c = t.corners();
        // every corner touches two of the three support lines
        for corner in c {
            let u = support_values(corner);
            let touching = (0..3).filter(|&i| (u[i] - s[i]).abs() <= 1e-9 * (1.0 + s[i].abs())).count();
            prop_assert!(touching >= 2);
        }
        let l = t.side_length();
        prop_assert!((t.area() - 3f64.sqrt() / 4.0 * l * l).abs() <= 1e-9 * (1.0 + t.area()));
    }

    #[test]
    fn containment_shrinks_triangles(p in point(), q in point(), w in [0.01..1.0f64, 0.01..1.0, 0.01..1.0]) {
        prop_assume!(p != q);
        let t = smallest_down_triangle(p, q).unwrap();
        // a convex combination of the corners with positive weights
        let c = t.corners();
        let total: f64 = w.iter().sum();
        let r = Point::new(
            (0..3).map(|i| w[i] * c[i].x).sum::<f64>() / total,
            (0..3).map(|i| w[i] * c[i].y).sum::<f64>() / total,
        );
        prop_assume!(t.interior_contains(r));
        let (pr, qr) = (smallest_down_triangle(p, r).unwrap(), smallest_down_triangle(q, r).unwrap());
        prop_assert!(pr.size() < t.size() && qr.size() < t.size());
        prop_assert!(t.contains_triangle(&pr) && t.contains_triangle(&qr));
    }

    #[test]
    fn up_and_down_triangles_have_equal_size(p in point(), q in point()) {
        let (up, down) = (up_triangle_size(p, q), triangle_size(p, q));
        prop_assert!((up - down).abs() <= 1e-12 * (1.0 + down));
    }

    #[test]
    fn hexagon_points_are_closer(p in point(), q in point(), shrink in 0.01..0.86f64, angle in 0.0..std::f64::consts::TAU) {
        prop_assume!(p != q);
        // the hex norm varies by at most a factor cos 30° over directions,
        // so shrinking and rotating q - p keeps r inside the hexagon
        let (dx, dy) = (q.x - p.x, q.y - p.y);
        let (s, c) = angle.sin_cos();
        let r = Point::new(p.x + shrink * (c * dx - s * dy), p.y + shrink * (s * dx + c * dy));
        prop_assume!(r != p);
        prop_assert!(Hexagon::through(p, q).contains(r));
        prop_assert!(triangle_size(p, r) < triangle_size(p, q));
    }

    #[test]
    fn size_area_and_distance_order_agree(p in point(), q in point(), r in point(), s in point()) {
        prop_assume!(p != q && r != s);
        let (a, b) = (smallest_down_triangle(p, q).unwrap(), smallest_down_triangle(r, s).unwrap());
        let (da, db) = (td_distance(p, q).unwrap(), td_distance(r, s).unwrap());
        prop_assume!((a.size() - b.size()).abs() > SIZE_TIE_TOL);
        prop_assert_eq!(da < db, a.size() < b.size());
        prop_assert_eq!(a.area() < b.area(), a.size() < b.size());
        prop_assert_eq!(da, a.size());
    }

    #[test]
    fn strict_containment_matches_orientation_oracle(p in point(), q in point(), r in point()) {
        prop_assume!(p != q);
        let t = smallest_down_triangle(p, q).unwrap();
        if let Some(expected) = inside_by_orientation(t.corners(), r) {
            prop_assert_eq!(t.interior_contains(r), expected);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn graphs_grow_with_k(seed in any::<u64>(), n in 2usize..40, k in 0usize..6) {
        let p = point_set(n, seed);
        let (g, h) = (build_ktd_cones(&p, k).unwrap(), build_ktd_cones(&p, k + 1).unwrap());
        prop_assert!(g.edge_pairs().iter().all(|&(i, j)| h.has_edge(i, j)));
    }

    #[test]
    fn zero_td_is_connected_and_sparse(seed in any::<u64>(), n in 3usize..60) {
        let g = build_ktd_cones(&point_set(n, seed), 0).unwrap();
        prop_assert!(is_connected(g.topology()));
        prop_assert!(g.edge_count() <= 3 * n - 6);
    }

    #[test]
    fn builders_agree(seed in any::<u64>(), n in 2usize..40, k in 0usize..8) {
        let p = point_set(n, seed);
        prop_assert_eq!(build_ktd_cones(&p, k).unwrap().edge_pairs(), build_ktd_definition(&p, k).edge_pairs());
    }

    #[test]
    fn edges_are_simple_and_weighted_by_area(seed in any::<u64>(), n in 2usize..30, k in 0usize..4) {
        let g = build_ktd_cones(&point_set(n, seed), k).unwrap();
        let mut seen = std::collections::HashSet::new();
        for e in g.edges() {
            prop_assert!(e.i < e.j && seen.insert((e.i, e.j)));
            let w = area_of_size(e.size);
            prop_assert!((e.weight - w).abs() <= 1e-9 * w);
        }
        let ws = g.weight_sequence();
        prop_assert_eq!(ws.len(), g.edge_count());
        prop_assert!(ws.as_slice().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn matching_size_matches_deficiency(seed in any::<u64>(), n in 1usize..15, density in 0.05..0.9f64) {
        let mut rng = rng_for(seed, 1);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| ktd_core::rng::uniform01(&mut rng) < density)
            .collect();
        let g = Graph::from_edges(n, edges);
        let m = max_matching(&g);
        let def = tutte_berge_deficiency(&g).unwrap().deficiency;
        prop_assert_eq!(2 * m.size, n - def);
        prop_assert_eq!(m.is_perfect, def == 0 && n % 2 == 0);
    }

    #[test]
    fn feasibility_is_monotone_in_the_threshold(seed in any::<u64>(), half in 2usize..7) {
        let p = point_set(2 * half, seed);
        let best = bottleneck_value(&p, StructureKind::Matching).unwrap();
        let complete = ktd_core::GeoGraph::complete(p.clone());
        // every larger threshold still admits the structure, a smaller one does not
        let mut sizes: Vec<f64> = complete.edges().iter().map(|e| e.size).collect();
        sizes.sort_by(f64::total_cmp);
        for s in sizes {
            let ok = feasible(&complete.threshold(s), StructureKind::Matching).unwrap().is_some();
            prop_assert_eq!(ok, s >= best.size - SIZE_TIE_TOL);
        }
    }

    #[test]
    fn partition_trees_have_empty_shallow_triangles(seed in any::<u64>(), n in 2usize..40, m in 1usize..40) {
        let mut rng = rng_for(seed, 2);
        let p = point_set(n, seed);
        let part = Partition::random(&mut rng, n, m.min(n));
        let mst = partition_mst(&p, &part).unwrap();
        prop_assert_eq!(mst.edges.len(), part.len() - 1);
        prop_assert!(check_mst_triangles_empty(&p, &mst));
        prop_assert!(max_overlap_depth(&mst.triangles) <= 3);
        prop_assert!(max_overlap_depth_exact(&mst.triangles) <= 3);
    }

    #[test]
    fn removed_sets_leave_few_components(seed in any::<u64>(), n in 3usize..30, kk in 0usize..12) {
        let p = point_set(n, seed);
        let g1 = build_ktd_cones(&p, 1).unwrap();
        let g2 = build_ktd_cones(&p, 2).unwrap();
        let mut rng = rng_for(seed, 3);
        let mut removed = vec![false; n];
        for _ in 0..kk.min(n - 1) {
            removed[ktd_core::rng::uniform_int(&mut rng, 0, n - 1)] = true;
        }
        let k = removed.iter().filter(|&&r| r).count();
        prop_assert!(2 * components_without(g1.topology(), &removed).len() <= 3 * k + 2);
        prop_assert!(components_without(g2.topology(), &removed).len() <= k + 1);
    }

    #[test]
    fn construction_always_blocks(seed in any::<u64>(), n in 1usize..40, k in 0usize..4) {
        let p = point_set(n, seed);
        let inst = blocking_construction(&p, k).unwrap();
        prop_assert_eq!(inst.blockers.len(), (k + 1) * (n - 1));
        prop_assert!(n < 2 || inst.epsilon < inst.delta);
        prop_assert!(blocks(&p, &inst.blockers, k).unwrap());
    }
}

/// Every subset K of a 14-point set: removing K from 1-TD leaves at most
/// 3|K|/2 + 1 components, and from 2-TD at most |K| + 1.
#[test]
fn component_bounds_hold_for_every_removed_set() {
    for seed in 0..2 {
        let n = 14;
        let p = point_set(n, 100 + seed);
        let g1 = build_ktd_cones(&p, 1).unwrap();
        let g2 = build_ktd_cones(&p, 2).unwrap();
        for mask in 0u32..(1 << n) - 1 {
            let removed: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let k = mask.count_ones() as usize;
            assert!(2 * components_without(g1.topology(), &removed).len() <= 3 * k + 2);
            assert!(components_without(g2.topology(), &removed).len() <= k + 1);
        }
    }
}

/// Exhaustive search over subsets of a candidate set never finds a 0-TD
/// blocker smaller than the lower bound.
#[test]
fn small_blockers_respect_the_lower_bound() {
    for seed in 0..6 {
        let n = 3 + seed as usize % 4;
        let base = point_set(n, 200 + seed);
        let (general, k0) = lower_bound(n, 0);
        let bound = general.max(k0.unwrap());
        let mut rng = rng_for(200 + seed, 9);
        let candidates: Vec<Point> = (0..10)
            .map(|_| {
                Point::new(
                    ktd_core::rng::uniform(&mut rng, -0.1, 1.1),
                    ktd_core::rng::uniform(&mut rng, -0.1, 1.1),
                )
            })
            .collect();
        if let Some(found) = smallest_blocker_from(&base, &candidates, bound).unwrap() {
            assert!(
                found.len() >= bound,
                "seed {seed}: {} < {bound}",
                found.len()
            );
        }
    }
}
