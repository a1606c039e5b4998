use std::collections::VecDeque;

use super::Graph;

pub fn is_connected(g: &Graph) -> bool {
    components_without(g, &vec![false; g.n()]).len() <= 1
}

/// Connected components of `g` after deleting the vertices flagged in `removed`.
pub fn components_without(g: &Graph, removed: &[bool]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = removed.to_vec();
    let mut comps = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Articulation vertices, found with an iterative lowpoint DFS.
pub fn articulation_points(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour position)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*pos) {
                *pos += 1;
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// Connected, at least three vertices and no articulation vertex.
pub fn is_biconnected(g: &Graph) -> bool {
    g.n() >= 3 && is_connected(g) && articulation_points(g).is_empty()
}

/// Unit-capacity flow network where every vertex `v` is split into `2v -> 2v+1`.
struct SplitNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    next: Vec<usize>,
    cap: Vec<u8>,
}

const NIL: usize = usize::MAX;

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let mut net = SplitNetwork {
            head: vec![NIL; 2 * g.n()],
            to: Vec::new(),
            next: Vec::new(),
            cap: Vec::new(),
        };
        for v in 0..g.n() {
            net.arc(2 * v, 2 * v + 1);
        }
        for (u, v) in g.edges() {
            net.arc(2 * u + 1, 2 * v);
            net.arc(2 * v + 1, 2 * u);
        }
        net
    }

    fn arc(&mut self, from: usize, to: usize) {
        for (a, b, c) in [(from, to, 1), (to, from, 0)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    /// Number of internally vertex-disjoint `s`-`t` paths, stopping early at `limit`.
    fn local_connectivity(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let (src, sink) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        let mut pred = vec![NIL; self.head.len()];
        while flow < limit {
            pred.fill(NIL);
            let mut queue = VecDeque::from([src]);
            pred[src] = NIL - 1;
            while let Some(x) = queue.pop_front() {
                if x == sink {
                    break;
                }
                let mut e = self.head[x];
                while e != NIL {
                    let y = self.to[e];
                    if self.cap[e] > 0 && pred[y] == NIL {
                        pred[y] = e;
                        queue.push_back(y);
                    }
                    e = self.next[e];
                }
            }
            if pred[sink] == NIL {
                break;
            }
            let mut x = sink;
            while x != src {
                let e = pred[x];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                x = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }

    fn reset(&mut self) {
        for e in (0..self.cap.len()).step_by(2) {
            self.cap[e] = 1;
            self.cap[e + 1] = 0;
        }
    }
}

/// Minimum number of vertices whose removal disconnects `g`; `n - 1` for
/// complete graphs.
///
/// Uses Even's scheme: some vertex among the first `κ + 1` lies outside any
/// minimum separator, so it suffices to run max-flow from those vertices to
/// every later non-adjacent vertex.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let mut best = n - 1;
    let mut net = SplitNetwork::new(g);
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            net.reset();
            best = best.min(net.local_connectivity(i, j, best));
            if best == 0 {
                return 0;
            }
        }
        i += 1;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Smallest vertex subset whose removal leaves a disconnected graph.
    fn connectivity_by_subsets(g: &Graph) -> usize {
        let n = g.n();
        let mut best = n - 1;
        for mask in 0u32..1 << n {
            let size = mask.count_ones() as usize;
            if size >= best || n - size < 2 {
                continue;
            }
            let removed: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            if components_without(g, &removed).len() > 1 {
                best = size;
            }
        }
        best
    }

    #[test]
    fn small_examples() {
        assert_eq!(vertex_connectivity(&Graph::path(3)), 1);
        assert_eq!(vertex_connectivity(&Graph::complete(4)), 3);
        assert_eq!(vertex_connectivity(&Graph::cycle(6)), 2);
        assert_eq!(
            vertex_connectivity(&Graph::from_edges(4, [(0, 1), (2, 3)])),
            0
        );
    }

    #[test]
    fn biconnectivity_examples() {
        assert!(is_biconnected(&Graph::cycle(3)));
        assert!(!is_biconnected(&Graph::path(3)));
        assert!(!is_biconnected(&Graph::complete(2)));
        // two triangles sharing vertex 2
        let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(articulation_points(&bowtie), vec![2]);
        assert!(!is_biconnected(&bowtie));
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        let mut state = 0x2545f4914f6cdd1du64;
        for _ in 0..200 {
            let n = 2 + (state % 8) as usize;
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 100 < 55 {
                        g.add_edge(u, v);
                    }
                }
            }
            assert_eq!(
                vertex_connectivity(&g),
                connectivity_by_subsets(&g),
                "{g:?}"
            );
            let bic = n >= 3 && connectivity_by_subsets(&g) >= 2;
            assert_eq!(is_biconnected(&g), bic, "{g:?}");
        }
    }
}
