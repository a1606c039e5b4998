use std::collections::VecDeque;

use serde::Serialize;

use super::Graph;
use crate::{Error, Result};

/// Largest graph handled by the subset dynamic program.
pub const EXACT_MATCHING_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    /// Matched pairs `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub size: usize,
    pub is_perfect: bool,
}

impl MatchingReport {
    fn from_mates(mate: &[Option<usize>]) -> Self {
        let edges: Vec<(usize, usize)> = mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| v > u).map(|v| (u, v)))
            .collect();
        let size = edges.len();
        MatchingReport {
            is_perfect: 2 * size == mate.len(),
            edges,
            size,
        }
    }
}

/// Maximum-cardinality matching. Small graphs go through the subset dynamic
/// program, larger ones through Edmonds' blossom algorithm.
pub fn max_matching(g: &Graph) -> MatchingReport {
    if g.n() <= EXACT_MATCHING_CAP {
        max_matching_exact(g).expect("size checked")
    } else {
        max_matching_blossom(g)
    }
}

/// Subset dynamic program: the lowest remaining vertex is either left
/// unmatched or matched to one of its remaining neighbours.
pub fn max_matching_exact(g: &Graph) -> Result<MatchingReport> {
    let n = g.n();
    if n > EXACT_MATCHING_CAP {
        return Err(Error::SizeLimit {
            what: "exact matching",
            n,
            cap: EXACT_MATCHING_CAP,
        });
    }
    let adj: Vec<u32> = g.masks().into_iter().map(|m| m as u32).collect();
    let mut memo = vec![u8::MAX; 1 << n];

    fn solve(set: u32, adj: &[u32], memo: &mut [u8]) -> u8 {
        if set == 0 {
            return 0;
        }
        if memo[set as usize] != u8::MAX {
            return memo[set as usize];
        }
        let v = set.trailing_zeros();
        let rest = set & !(1 << v);
        let mut best = solve(rest, adj, memo);
        let mut partners = adj[v as usize] & rest;
        while partners != 0 {
            let u = partners.trailing_zeros();
            partners &= partners - 1;
            best = best.max(1 + solve(rest & !(1 << u), adj, memo));
        }
        memo[set as usize] = best;
        best
    }

    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    solve(full, &adj, &mut memo);

    let mut mate = vec![None; n];
    let mut set = full;
    while set != 0 {
        let v = set.trailing_zeros();
        let rest = set & !(1 << v);
        let target = memo[set as usize];
        if solve(rest, &adj, &mut memo) == target {
            set = rest;
            continue;
        }
        let mut partners = adj[v as usize] & rest;
        while partners != 0 {
            let u = partners.trailing_zeros();
            partners &= partners - 1;
            let next = rest & !(1 << u);
            if 1 + solve(next, &adj, &mut memo) == target {
                mate[v as usize] = Some(u as usize);
                mate[u as usize] = Some(v as usize);
                set = next;
                break;
            }
        }
    }
    Ok(MatchingReport::from_mates(&mate))
}

const NIL: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate: vec![NIL; n],
            parent: vec![NIL; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NIL {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Grows an alternating tree from `root`; returns the free vertex at the
    /// end of an augmenting path, if any.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.fill(false);
        self.parent.fill(NIL);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.neighbors(v).len() {
                let to = self.g.neighbors(v)[idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NIL && self.parent[self.mate[to]] != NIL) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NIL {
                    self.parent[to] = v;
                    if self.mate[to] == NIL {
                        return Some(to);
                    }
                    self.used[self.mate[to]] = true;
                    self.queue.push_back(self.mate[to]);
                }
            }
        }
        None
    }

    fn run(mut self) -> Vec<Option<usize>> {
        let n = self.g.n();
        // greedy start
        for v in 0..n {
            if self.mate[v] == NIL {
                if let Some(&u) = self.g.neighbors(v).iter().find(|&&u| self.mate[u] == NIL) {
                    self.mate[v] = u;
                    self.mate[u] = v;
                }
            }
        }
        for root in 0..n {
            if self.mate[root] != NIL {
                continue;
            }
            if let Some(mut v) = self.find_path(root) {
                while v != NIL {
                    let pv = self.parent[v];
                    let ppv = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = ppv;
                }
            }
        }
        self.mate
            .into_iter()
            .map(|m| (m != NIL).then_some(m))
            .collect()
    }
}

/// Edmonds' blossom algorithm, O(n³).
pub fn max_matching_blossom(g: &Graph) -> MatchingReport {
    MatchingReport::from_mates(&Blossom::new(g).run())
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    g.n().is_multiple_of(2) && max_matching_blossom(g).is_perfect
}

/// Every perfect matching of `g`, each as a sorted edge list.
pub fn enumerate_perfect_matchings(g: &Graph) -> Result<Vec<Vec<(usize, usize)>>> {
    let n = g.n();
    if n > EXACT_MATCHING_CAP {
        return Err(Error::SizeLimit {
            what: "perfect matching enumeration",
            n,
            cap: EXACT_MATCHING_CAP,
        });
    }
    fn rec(
        g: &Graph,
        free: &mut [bool],
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(v) = free.iter().position(|&f| f) else {
            out.push(current.clone());
            return;
        };
        free[v] = false;
        for &u in g.neighbors(v) {
            if free[u] {
                free[u] = false;
                current.push((v, u));
                rec(g, free, current, out);
                current.pop();
                free[u] = true;
            }
        }
        free[v] = true;
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(g, &mut vec![true; n], &mut Vec::new(), &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        for m in [
            max_matching_exact(&Graph::complete(2)).unwrap(),
            max_matching_blossom(&Graph::complete(2)),
        ] {
            assert_eq!(m.size, 1);
            assert!(m.is_perfect);
        }
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        assert_eq!(max_matching(&star).size, 1);
        assert_eq!(max_matching_blossom(&star).size, 1);
        assert_eq!(max_matching(&Graph::cycle(5)).size, 2);
        assert_eq!(max_matching_blossom(&Graph::cycle(5)).size, 2);
        assert_eq!(max_matching(&Graph::new(0)).size, 0);
    }

    #[test]
    fn exact_mode_is_capped() {
        assert!(matches!(
            max_matching_exact(&Graph::new(25)),
            Err(Error::SizeLimit { cap: 24, .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        // (2m - 1)!! perfect matchings in K_{2m}
        assert_eq!(
            enumerate_perfect_matchings(&Graph::complete(8))
                .unwrap()
                .len(),
            105
        );
        assert_eq!(
            enumerate_perfect_matchings(&Graph::cycle(6)).unwrap().len(),
            2
        );
        assert!(enumerate_perfect_matchings(&Graph::complete(5))
            .unwrap()
            .is_empty());
    }

    fn valid_matching(g: &Graph, m: &MatchingReport) -> bool {
        let mut used = vec![false; g.n()];
        m.edges.iter().all(|&(u, v)| {
            let ok = g.has_edge(u, v) && !used[u] && !used[v];
            used[u] = true;
            used[v] = true;
            ok
        })
    }

    #[test]
    fn blossom_agrees_with_subset_program() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..300 {
            let n = 1 + (state % 16) as usize;
            let density = 10 + state % 60;
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    if (state >> 33) % 100 < density {
                        g.add_edge(u, v);
                    }
                }
            }
            let exact = max_matching_exact(&g).unwrap();
            let blossom = max_matching_blossom(&g);
            assert_eq!(exact.size, blossom.size, "{g:?}");
            assert!(valid_matching(&g, &exact));
            assert!(valid_matching(&g, &blossom));
        }
    }
}
