//! Brute-force reference implementations on a dense adjacency matrix.
//!
//! These share no code with the kernels in the parent module: degrees and
//! triangles come from full row scans, squares from exhaustive enumeration of
//! every 4-node set containing the edge. Intended for tests on small graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::NodeId;

use super::SquareStats;

/// Largest graph the oracle accepts.
pub const ORACLE_MAX_NODES: usize = 64;

struct Dense {
    n: usize,
    adj: Vec<bool>,
}

impl Dense {
    fn new(g: &Graph) -> Result<Self> {
        let n = g.node_count();
        if n > ORACLE_MAX_NODES {
            return Err(Error::OracleScale {
                node_count: n,
                max: ORACLE_MAX_NODES,
            });
        }
        let mut adj = vec![false; n * n];
        for (u, v) in g.edges() {
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        Ok(Dense { n, adj })
    }

    fn a(&self, i: NodeId, j: NodeId) -> bool {
        self.adj[i * self.n + j]
    }

    fn degree(&self, v: NodeId) -> usize {
        (0..self.n).filter(|&w| self.a(v, w)).count()
    }

    fn triangles(&self, u: NodeId, v: NodeId) -> usize {
        (0..self.n).filter(|&w| self.a(u, w) && self.a(v, w)).count()
    }

    fn checked(g: &Graph, u: NodeId, v: NodeId) -> Result<Self> {
        let d = Dense::new(g)?;
        if u >= d.n || v >= d.n || !d.a(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        Ok(d)
    }

    /// Squares `u - v - b - a - u` with no chord `u ~ b` or `v ~ a`.
    fn squares(&self, u: NodeId, v: NodeId) -> SquareStats {
        let n = self.n;
        let mut per_node = vec![0usize; n];
        let mut a_side = vec![false; n];
        let mut b_side = vec![false; n];
        let mut total = 0;
        for x in 0..n {
            for y in x + 1..n {
                if x == u || x == v || y == u || y == v {
                    continue;
                }
                // the set {u, v, x, y} supports two orientations of a square through (u, v)
                for (a, b) in [(x, y), (y, x)] {
                    let cycle = self.a(u, a) && self.a(a, b) && self.a(b, v);
                    let chordless = !self.a(u, b) && !self.a(v, a);
                    if cycle && chordless {
                        total += 1;
                        per_node[a] += 1;
                        per_node[b] += 1;
                        a_side[a] = true;
                        b_side[b] = true;
                    }
                }
            }
        }
        SquareStats {
            s_u: a_side.iter().filter(|&&x| x).count(),
            s_v: b_side.iter().filter(|&&x| x).count(),
            gamma_max: per_node.into_iter().max().unwrap_or(0),
            squares: total,
        }
    }
}

pub fn oracle_degree(g: &Graph, v: NodeId) -> Result<usize> {
    let d = Dense::new(g)?;
    g.check_node(v)?;
    Ok(d.degree(v))
}

pub fn oracle_triangles(g: &Graph, u: NodeId, v: NodeId) -> Result<usize> {
    Ok(Dense::checked(g, u, v)?.triangles(u, v))
}

pub fn oracle_forman_1d(g: &Graph, u: NodeId, v: NodeId) -> Result<i64> {
    let d = Dense::checked(g, u, v)?;
    Ok(4 - d.degree(u) as i64 - d.degree(v) as i64)
}

pub fn oracle_forman_augmented(g: &Graph, u: NodeId, v: NodeId) -> Result<i64> {
    let d = Dense::checked(g, u, v)?;
    Ok(4 - d.degree(u) as i64 - d.degree(v) as i64 + 3 * d.triangles(u, v) as i64)
}

pub fn oracle_haantjes(g: &Graph, u: NodeId, v: NodeId) -> Result<usize> {
    oracle_triangles(g, u, v)
}

pub fn oracle_square_stats(g: &Graph, u: NodeId, v: NodeId) -> Result<SquareStats> {
    Ok(Dense::checked(g, u, v)?.squares(u, v))
}

/// Balanced Forman curvature by exhaustive enumeration.
pub fn oracle_bfc(g: &Graph, u: NodeId, v: NodeId) -> Result<f64> {
    let d = Dense::checked(g, u, v)?;
    let d1 = d.degree(u);
    let d2 = d.degree(v);
    if d1.min(d2) == 1 {
        return Ok(0.0);
    }
    let t = d.triangles(u, v) as f64;
    let sq = d.squares(u, v);
    let (lo, hi) = (d1.min(d2) as f64, d1.max(d2) as f64);
    let mut value = 2.0 / d1 as f64 + 2.0 / d2 as f64 - 2.0 + 2.0 * (t / hi) + t / lo;
    if sq.s_u + sq.s_v > 0 {
        value += (1.0 / sq.gamma_max as f64) / hi * (sq.s_u + sq.s_v) as f64;
    }
    Ok(value)
}
