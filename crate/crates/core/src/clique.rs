//! Maximum clique search on skeleton graphs.
//!
//! Two passes: a colouring-bounded branch and bound (vertices in degeneracy-like
//! order, greedy colour classes as the upper bound) fixes the clique number; a
//! second, lexicographically ordered search with the same bound then returns
//! the smallest maximum clique as a sorted index list.

use serde::Serialize;

use crate::skeleton::SkeletonGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    pub size: usize,
    /// Lexicographically smallest maximum clique, ascending.
    pub witness: Vec<usize>,
}

pub(crate) type Bits = Vec<u64>;

pub(crate) fn bits_new(n: usize) -> Bits {
    vec![0; n.div_ceil(64)]
}

pub(crate) fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

pub(crate) fn bit_get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn bit_clear(b: &mut Bits, i: usize) {
    b[i / 64] &= !(1 << (i % 64));
}

fn is_empty(b: &Bits) -> bool {
    b.iter().all(|&w| w == 0)
}

fn first(b: &Bits) -> Option<usize> {
    b.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

fn and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn ones(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + t)
        })
    })
}

/// Number of greedy colour classes of the induced subgraph on `set`.
fn colour_bound(g: &SkeletonGraph, set: &Bits) -> usize {
    let mut uncoloured = set.clone();
    let mut colours = 0;
    while !is_empty(&uncoloured) {
        colours += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = first(&q) {
            bit_clear(&mut uncoloured, v);
            bit_clear(&mut q, v);
            for (w, nb) in q.iter_mut().zip(g.neighbor_bits(v)) {
                *w &= !nb;
            }
        }
    }
    colours
}

/// Exact clique number with the lexicographically smallest maximum clique.
pub fn clique_number(g: &SkeletonGraph) -> CliqueResult {
    let n = g.num_vertices();
    if n == 0 {
        return CliqueResult {
            size: 0,
            witness: Vec::new(),
        };
    }
    let omega = max_clique_size(g);
    let mut all = bits_new(n);
    for v in 0..n {
        bit_set(&mut all, v);
    }
    let mut chosen = Vec::with_capacity(omega);
    let found = lex_first(g, omega, &mut chosen, all);
    debug_assert!(found);
    CliqueResult {
        size: omega,
        witness: chosen,
    }
}

fn max_clique_size(g: &SkeletonGraph) -> usize {
    let n = g.num_vertices();
    let degrees = g.degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
    let mut best = 1;
    expand(g, &order, 0, &mut best);
    best
}

// `cand` is kept as an explicit vertex list so the colouring follows the
// degree order, which is what makes the colour bound tight in practice.
fn expand(g: &SkeletonGraph, cand: &[usize], size: usize, best: &mut usize) {
    // greedy colouring of cand: colour[i] for cand[i]
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in cand {
        let slot = classes
            .iter()
            .position(|cls| cls.iter().all(|&u| !g.is_adjacent(u, v)));
        match slot {
            Some(c) => classes[c].push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut ordered: Vec<(usize, usize)> = Vec::with_capacity(cand.len());
    for (c, cls) in classes.iter().enumerate() {
        for &v in cls {
            ordered.push((v, c + 1));
        }
    }
    let mut remaining: Vec<usize> = ordered.iter().map(|&(v, _)| v).collect();
    while let Some((v, colour)) = ordered.pop() {
        if size + colour <= *best {
            return;
        }
        remaining.pop();
        let next: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&u| g.is_adjacent(u, v))
            .collect();
        if next.is_empty() {
            if size + 1 > *best {
                *best = size + 1;
            }
        } else {
            expand(g, &next, size + 1, best);
        }
    }
}

/// Depth-first search in ascending vertex order for a clique of size `target`;
/// the first hit is the lexicographically smallest one.
fn lex_first(g: &SkeletonGraph, target: usize, chosen: &mut Vec<usize>, cand: Bits) -> bool {
    if chosen.len() == target {
        return true;
    }
    if chosen.len() + colour_bound(g, &cand) < target {
        return false;
    }
    let mut rest = cand;
    while let Some(v) = first(&rest) {
        bit_clear(&mut rest, v);
        let next = and(&rest, g.neighbor_bits(v));
        chosen.push(v);
        if lex_first(g, target, chosen, next) {
            return true;
        }
        chosen.pop();
        if chosen.len() + ones(&rest).count() < target {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive oracle: scan every vertex subset.
    fn brute_force(n: usize, adj: &[u32]) -> (usize, Vec<usize>) {
        let mut best: (usize, Vec<usize>) = (0, vec![]);
        for mask in 1u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if members.len() < best.0 {
                continue;
            }
            let is_clique = members.iter().all(|&v| adj[v] & mask & !(1 << v) == mask & !(1 << v));
            if !is_clique {
                continue;
            }
            if members.len() > best.0 || members < best.1 {
                best = (members.len(), members);
            }
        }
        best
    }

    #[test]
    fn edgeless_graph() {
        let g = SkeletonGraph::from_edges(5, &[]);
        assert_eq!(
            clique_number(&g),
            CliqueResult {
                size: 1,
                witness: vec![0]
            }
        );
    }

    #[test]
    fn complete_graph() {
        let edges: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let g = SkeletonGraph::from_edges(4, &edges);
        assert_eq!(clique_number(&g).witness, vec![0, 1, 2, 3]);
    }

    #[test]
    fn lexicographic_witness() {
        // two triangles {1,2,3} and {0,4,5}
        let g = SkeletonGraph::from_edges(6, &[(1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (4, 5)]);
        assert_eq!(clique_number(&g).witness, vec![0, 4, 5]);
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..120 {
            let n = rng.gen_range(1..=18);
            let density: f64 = [0.2, 0.5, 0.8][trial % 3];
            let mut adj = vec![0u32; n];
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(density) {
                        adj[a] |= 1 << b;
                        adj[b] |= 1 << a;
                        edges.push((a, b));
                    }
                }
            }
            let g = SkeletonGraph::from_edges(n, &edges);
            let got = clique_number(&g);
            let (size, witness) = brute_force(n, &adj);
            assert_eq!(got.size, size, "trial {trial}");
            assert_eq!(got.witness, witness, "trial {trial}");
        }
    }
}
