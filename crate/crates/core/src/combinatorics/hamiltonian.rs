use super::Graph;
use crate::{Error, Result};

/// Largest graph handled by the Held-Karp search.
pub const HAMILTONIAN_CAP: usize = 18;

/// A Hamiltonian cycle as a vertex order starting at 0, or `None`.
///
/// Held-Karp over subsets containing vertex 0: `reach[S]` is the set of
/// vertices at which some path from 0 covering exactly `S` can end.
pub fn hamiltonian_cycle(g: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > HAMILTONIAN_CAP {
        return Err(Error::SizeLimit {
            what: "Hamiltonian cycle search",
            n,
            cap: HAMILTONIAN_CAP,
        });
    }
    if n < 3 {
        return Ok(None);
    }
    let adj: Vec<u32> = g.masks().into_iter().map(|m| m as u32).collect();
    let full: u32 = (1 << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for set in (1..=full).step_by(2) {
        let mut ends = reach[set as usize];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut next = adj[v] & !set;
            while next != 0 {
                let w = next.trailing_zeros();
                next &= next - 1;
                reach[(set | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    let closing = reach[full as usize] & adj[0];
    if closing == 0 {
        return Ok(None);
    }
    let mut v = closing.trailing_zeros() as usize;
    let mut set = full;
    let mut rev = vec![v];
    while set != 1 {
        set &= !(1 << v);
        let prev = reach[set as usize] & adj[v];
        v = prev.trailing_zeros() as usize;
        rev.push(v);
    }
    rev.reverse();
    Ok(Some(rev))
}

/// True if `cycle` visits every vertex once and consecutive vertices are adjacent.
pub fn is_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}
