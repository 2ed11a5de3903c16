//! Synthetic graph families used by tests, examples and the `gen` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::NodeId;

fn build(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator edges are in range")
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|v| (v - 1, v)))
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 nodes");
    build(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// Star with centre `0` and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

/// Complete binary tree of the given depth (`2^(depth+1) - 1` nodes), heap
/// ordered: the children of `v` are `2v + 1` and `2v + 2`.
pub fn binary_tree(depth: u32) -> Graph {
    let n = (1usize << (depth + 1)) - 1;
    build(n, (1..n).map(|v| ((v - 1) / 2, v)))
}

/// Binary tree with cross edges that stay inside the root's two subtrees:
/// from depth 2 down, each half of a level gets an edge between its two
/// middle nodes. The root remains the only link between the halves.
pub fn cross_linked_binary_tree(depth: u32) -> Graph {
    let n = (1usize << (depth + 1)) - 1;
    let mut edges: Vec<_> = (1..n).map(|v| ((v - 1) / 2, v)).collect();
    for level in 2..=depth {
        let first = (1usize << level) - 1;
        let half = 1usize << (level - 1);
        for start in [first, first + half] {
            let mid = start + half / 2;
            edges.push((mid - 1, mid));
        }
    }
    build(n, edges)
}

/// `rows x cols` grid, node `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    build(rows * cols, edges)
}

/// Two copies of `K_m` on `0..m` and `m..2m`, joined by the bridge `(m-1, m)`.
pub fn barbell(m: usize) -> Graph {
    assert!(m >= 2, "barbell cliques need at least 2 nodes");
    let mut edges: Vec<_> = Vec::new();
    for offset in [0, m] {
        for u in 0..m {
            for v in u + 1..m {
                edges.push((offset + u, offset + v));
            }
        }
    }
    edges.push((m - 1, m));
    build(2 * m, edges)
}

/// The bridge edge of [`barbell`].
pub fn barbell_bridge(m: usize) -> (NodeId, NodeId) {
    (m - 1, m)
}

/// Erdős–Rényi `G(n, p)`: every pair `u < v` in lexicographic order consumes
/// one uniform draw from a `ChaCha8Rng` seeded with `seed`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    build(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(complete(6).edge_count(), 15);
        assert_eq!(path(5).edge_count(), 4);
        assert_eq!(cycle(7).edge_count(), 7);
        assert_eq!(star(6).edge_count(), 6);
        assert_eq!(binary_tree(3).node_count(), 15);
        assert_eq!(binary_tree(3).edge_count(), 14);
        assert_eq!(grid(3, 4).edge_count(), 17);
        assert_eq!(barbell(5).edge_count(), 21);
        assert!(barbell(5).has_edge(4, 5));
        let t = cross_linked_binary_tree(3);
        assert_eq!(t.edge_count(), 18);
        assert!(t.has_edge(3, 4) && t.has_edge(5, 6) && t.has_edge(8, 9) && t.has_edge(12, 13));
        let mut cut = t.clone();
        cut.remove_edge(0, 1);
        assert!(!cut.connected(1, 2));
    }

    #[test]
    fn erdos_renyi_is_seeded() {
        assert_eq!(erdos_renyi(40, 0.3, 9), erdos_renyi(40, 0.3, 9));
        assert_ne!(erdos_renyi(40, 0.3, 9), erdos_renyi(40, 0.3, 10));
        erdos_renyi(40, 0.3, 9).validate().unwrap();
    }
}
