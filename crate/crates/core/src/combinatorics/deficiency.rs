use serde::Serialize;

use super::Graph;
use crate::{Error, Result};

/// Largest graph for which the exhaustive Tutte-Berge search is allowed.
pub const DEFICIENCY_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeficiencyReport {
    /// `max_K (odd(G - K) - |K|)`.
    pub deficiency: usize,
    /// A vertex set attaining the maximum.
    pub witness: Vec<usize>,
    /// Odd components of `G - witness`.
    pub odd_components: usize,
}

/// Number of odd components of `g` after deleting the vertices in `removed`.
pub fn odd_components(g: &Graph, removed: &[usize]) -> usize {
    let mut flags = vec![false; g.n()];
    for &v in removed {
        flags[v] = true;
    }
    super::components_without(g, &flags)
        .iter()
        .filter(|c| c.len() % 2 == 1)
        .count()
}

fn odd_components_masked(adj: &[u64], alive: u64) -> usize {
    let mut remaining = alive;
    let mut odd = 0;
    while remaining != 0 {
        let start = remaining & remaining.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & alive & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        remaining &= !comp;
        odd += (comp.count_ones() % 2) as usize;
    }
    odd
}

/// Tutte-Berge deficiency by enumerating every vertex subset.
pub fn tutte_berge_deficiency(g: &Graph) -> Result<DeficiencyReport> {
    let n = g.n();
    if n > DEFICIENCY_CAP {
        return Err(Error::SizeLimit {
            what: "Tutte-Berge deficiency",
            n,
            cap: DEFICIENCY_CAP,
        });
    }
    let adj = g.masks();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut best = (0i64, 0u64, odd_components_masked(&adj, full));
    best.0 = best.2 as i64;
    for k in 1..=full {
        let size = k.count_ones() as i64;
        // odd(G - K) <= n - |K|, so small gains cannot beat the current best
        if n as i64 - 2 * size <= best.0 {
            continue;
        }
        let odd = odd_components_masked(&adj, full & !k);
        let def = odd as i64 - size;
        if def > best.0 {
            best = (def, k, odd);
        }
    }
    Ok(DeficiencyReport {
        deficiency: best.0 as usize,
        witness: (0..n).filter(|&v| best.1 >> v & 1 == 1).collect(),
        odd_components: best.2,
    })
}

#[cfg(test)]
mod tests {
    use super::super::max_matching_exact;
    use super::*;

    #[test]
    fn star_has_deficiency_two() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        let r = tutte_berge_deficiency(&star).unwrap();
        assert_eq!(r.deficiency, 2);
        assert_eq!(r.witness, vec![0]);
        assert_eq!(r.odd_components, 3);
        assert_eq!(odd_components(&star, &[0]), 3);
    }

    #[test]
    fn empty_and_complete() {
        assert_eq!(
            tutte_berge_deficiency(&Graph::new(0)).unwrap().deficiency,
            0
        );
        assert_eq!(
            tutte_berge_deficiency(&Graph::new(5)).unwrap().deficiency,
            5
        );
        assert_eq!(
            tutte_berge_deficiency(&Graph::complete(7))
                .unwrap()
                .deficiency,
            1
        );
        assert!(tutte_berge_deficiency(&Graph::new(21)).is_err());
    }

    #[test]
    fn matches_matching_size() {
        let mut state = 0xdeadbeefcafef00du64;
        for _ in 0..150 {
            let n = 1 + (state % 12) as usize;
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 100 < 30 {
                        g.add_edge(u, v);
                    }
                }
            }
            let def = tutte_berge_deficiency(&g).unwrap().deficiency;
            let nu = max_matching_exact(&g).unwrap().size;
            assert_eq!(n - 2 * nu, def, "{g:?}");
        }
    }
}
