//! Balanced Forman curvature.
//!
//! For an edge `(u, v)` a diagonal-free square is a 4-cycle `u - v - l - k - u`
//! with `k ∈ N(u) \ N(v)`, `l ∈ N(v) \ N(u)` and `k ~ l`. Neither `u ~ l` nor
//! `v ~ k` holds, so the cycle has no diagonal. `s(u)` counts the distinct `k`,
//! `s(v)` the distinct `l`, and `γ_max` is the largest number of such squares
//! passing through a single node.

use crate::error::Result;
use crate::graph::{merge_intersect, Graph};
use crate::NodeId;

use super::check_edge;

/// Diagonal-free square statistics of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SquareStats {
    /// Neighbours of `u` that close a diagonal-free square through the edge.
    pub s_u: usize,
    /// Neighbours of `v` that close a diagonal-free square through the edge.
    pub s_v: usize,
    /// Maximum number of squares sharing one non-endpoint node; 0 iff there
    /// are no squares.
    pub gamma_max: usize,
    /// Total number of diagonal-free squares through the edge.
    pub squares: usize,
}

#[inline]
fn contains(sorted: &[NodeId], x: NodeId) -> bool {
    sorted.binary_search(&x).is_ok()
}

pub(crate) fn square_stats_unchecked(g: &Graph, u: NodeId, v: NodeId) -> SquareStats {
    let nu = g.neighbors(u);
    let nv = g.neighbors(v);
    let mut stats = SquareStats::default();
    let mut far_ends: Vec<NodeId> = Vec::new();

    for &k in nu {
        if k == v || contains(nv, k) {
            continue;
        }
        let mut through_k = 0;
        merge_intersect(g.neighbors(k), nv, |l| {
            if l != u && !contains(nu, l) {
                through_k += 1;
                far_ends.push(l);
            }
        });
        if through_k > 0 {
            stats.s_u += 1;
            stats.squares += through_k;
            stats.gamma_max = stats.gamma_max.max(through_k);
        }
    }

    far_ends.sort_unstable();
    let mut i = 0;
    while i < far_ends.len() {
        let mut j = i + 1;
        while j < far_ends.len() && far_ends[j] == far_ends[i] {
            j += 1;
        }
        stats.s_v += 1;
        stats.gamma_max = stats.gamma_max.max(j - i);
        i = j;
    }
    stats
}

/// Square statistics for edge `(u, v)`.
pub fn square_stats(g: &Graph, u: NodeId, v: NodeId) -> Result<SquareStats> {
    check_edge(g, u, v)?;
    Ok(square_stats_unchecked(g, u, v))
}

pub(crate) fn balanced_forman_unchecked(g: &Graph, u: NodeId, v: NodeId) -> f64 {
    let du = g.neighbors(u).len();
    let dv = g.neighbors(v).len();
    let (dmin, dmax) = if du <= dv { (du, dv) } else { (dv, du) };
    if dmin <= 1 {
        return 0.0;
    }
    let t = g.common_neighbor_count(u, v) as f64;
    let (d1, d2, dmin, dmax) = (du as f64, dv as f64, dmin as f64, dmax as f64);
    let mut value = 2.0 / d1 + 2.0 / d2 - 2.0 + 2.0 * t / dmax + t / dmin;
    let sq = square_stats_unchecked(g, u, v);
    if sq.s_u + sq.s_v > 0 {
        value += (sq.s_u + sq.s_v) as f64 / (sq.gamma_max as f64 * dmax);
    }
    value
}

/// Balanced Forman curvature of edge `(u, v)`; zero when either endpoint is
/// a leaf.
pub fn balanced_forman(g: &Graph, u: NodeId, v: NodeId) -> Result<f64> {
    check_edge(g, u, v)?;
    Ok(balanced_forman_unchecked(g, u, v))
}
