//! Combinatorial edge curvatures.
//!
//! All kernels take the graph and an edge `(u, v)` and depend only on the
//! two-hop neighbourhood of that edge. The integer-valued kinds are computed
//! exactly and widened to `f64` only when mixed with balanced Forman values.

mod bfc;
pub mod oracle;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::NodeId;

pub(crate) use bfc::balanced_forman_unchecked;
pub use bfc::{balanced_forman, square_stats, SquareStats};

/// Below this many edges the batch driver stays on the calling thread.
const PARALLEL_EDGE_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurvatureKind {
    #[serde(rename = "1d")]
    Forman1D,
    #[serde(rename = "augmented")]
    AugmentedForman,
    #[serde(rename = "haantjes")]
    Haantjes,
    #[serde(rename = "bfc")]
    BalancedForman,
}

impl CurvatureKind {
    pub const ALL: [CurvatureKind; 4] = [
        CurvatureKind::Forman1D,
        CurvatureKind::AugmentedForman,
        CurvatureKind::Haantjes,
        CurvatureKind::BalancedForman,
    ];

    /// Short name used on the command line and in file names.
    pub fn as_str(self) -> &'static str {
        match self {
            CurvatureKind::Forman1D => "1d",
            CurvatureKind::AugmentedForman => "augmented",
            CurvatureKind::Haantjes => "haantjes",
            CurvatureKind::BalancedForman => "bfc",
        }
    }

    pub fn is_integer_valued(self) -> bool {
        !matches!(self, CurvatureKind::BalancedForman)
    }
}

impl fmt::Display for CurvatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CurvatureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1d" | "forman" | "forman1d" => Ok(CurvatureKind::Forman1D),
            "augmented" | "2d" | "augmented-forman" => Ok(CurvatureKind::AugmentedForman),
            "haantjes" => Ok(CurvatureKind::Haantjes),
            "bfc" | "balanced" | "balanced-forman" => Ok(CurvatureKind::BalancedForman),
            other => Err(Error::InvalidConfig(format!("unknown curvature kind `{other}`"))),
        }
    }
}

/// Curvature of one canonical edge (`u < v`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeCurvature {
    pub u: NodeId,
    pub v: NodeId,
    pub kind: CurvatureKind,
    pub value: f64,
}

pub(crate) fn check_edge(g: &Graph, u: NodeId, v: NodeId) -> Result<()> {
    g.check_node(u)?;
    g.check_node(v)?;
    if g.has_edge(u, v) {
        Ok(())
    } else {
        Err(Error::NotAnEdge { u, v })
    }
}

#[inline]
pub(crate) fn forman_1d_unchecked(g: &Graph, u: NodeId, v: NodeId) -> i64 {
    4 - (g.neighbors(u).len() + g.neighbors(v).len()) as i64
}

#[inline]
pub(crate) fn haantjes_unchecked(g: &Graph, u: NodeId, v: NodeId) -> usize {
    g.common_neighbor_count(u, v)
}

/// `4 - (deg(u) + deg(v))`.
pub fn forman_1d(g: &Graph, u: NodeId, v: NodeId) -> Result<i64> {
    check_edge(g, u, v)?;
    Ok(forman_1d_unchecked(g, u, v))
}

/// 1D Forman curvature plus three per triangle on the edge.
pub fn forman_augmented(g: &Graph, u: NodeId, v: NodeId) -> Result<i64> {
    check_edge(g, u, v)?;
    Ok(forman_1d_unchecked(g, u, v) + 3 * haantjes_unchecked(g, u, v) as i64)
}

/// Number of triangles containing the edge.
pub fn haantjes(g: &Graph, u: NodeId, v: NodeId) -> Result<usize> {
    check_edge(g, u, v)?;
    Ok(haantjes_unchecked(g, u, v))
}

#[inline]
pub(crate) fn curvature_unchecked(g: &Graph, kind: CurvatureKind, u: NodeId, v: NodeId) -> f64 {
    match kind {
        CurvatureKind::Forman1D => forman_1d_unchecked(g, u, v) as f64,
        CurvatureKind::AugmentedForman => {
            (forman_1d_unchecked(g, u, v) + 3 * haantjes_unchecked(g, u, v) as i64) as f64
        }
        CurvatureKind::Haantjes => haantjes_unchecked(g, u, v) as f64,
        CurvatureKind::BalancedForman => balanced_forman_unchecked(g, u, v),
    }
}

/// Curvature of edge `(u, v)` under `kind`.
pub fn curvature(g: &Graph, kind: CurvatureKind, u: NodeId, v: NodeId) -> Result<f64> {
    check_edge(g, u, v)?;
    Ok(curvature_unchecked(g, kind, u, v))
}

/// Curvature values in canonical edge order, evaluated in parallel on large
/// graphs. Output does not depend on the number of workers.
pub fn edge_curvature_values(g: &Graph, kind: CurvatureKind) -> Vec<f64> {
    if g.edge_count() < PARALLEL_EDGE_THRESHOLD {
        g.edges().map(|(u, v)| curvature_unchecked(g, kind, u, v)).collect()
    } else {
        let edges = g.edge_list();
        edges
            .par_iter()
            .map(|&(u, v)| curvature_unchecked(g, kind, u, v))
            .collect()
    }
}

pub fn all_edge_curvatures(g: &Graph, kind: CurvatureKind) -> Vec<EdgeCurvature> {
    g.edges()
        .zip(edge_curvature_values(g, kind))
        .map(|((u, v), value)| EdgeCurvature { u, v, kind, value })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn forman_1d_examples() {
        assert_eq!(forman_1d(&generators::path(2), 0, 1).unwrap(), 2);
        assert_eq!(forman_1d(&generators::complete(3), 0, 1).unwrap(), 0);
        assert_eq!(forman_1d(&generators::complete(5), 1, 3).unwrap(), -4);
    }

    #[test]
    fn augmented_examples() {
        assert_eq!(forman_augmented(&generators::path(2), 0, 1).unwrap(), 2);
        assert_eq!(forman_augmented(&generators::complete(3), 0, 2).unwrap(), 3);
        assert_eq!(forman_augmented(&generators::complete(5), 0, 4).unwrap(), 5);
    }

    #[test]
    fn haantjes_examples() {
        let tree = generators::binary_tree(3);
        for (u, v) in tree.edges() {
            assert_eq!(haantjes(&tree, u, v).unwrap(), 0);
        }
        assert_eq!(haantjes(&generators::complete(6), 2, 5).unwrap(), 4);
        // two triangles sharing edge (0,1)
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        assert_eq!(haantjes(&g, 0, 1).unwrap(), 2);
    }

    #[test]
    fn non_edges_are_rejected() {
        let p = generators::path(3);
        assert!(matches!(forman_1d(&p, 0, 2), Err(Error::NotAnEdge { u: 0, v: 2 })));
        assert!(matches!(forman_augmented(&p, 0, 2), Err(Error::NotAnEdge { .. })));
        assert!(matches!(haantjes(&p, 0, 2), Err(Error::NotAnEdge { .. })));
        assert!(matches!(balanced_forman(&p, 0, 2), Err(Error::NotAnEdge { .. })));
        assert!(matches!(
            curvature(&p, CurvatureKind::Haantjes, 1, 1),
            Err(Error::NotAnEdge { .. })
        ));
        assert!(matches!(haantjes(&p, 0, 9), Err(Error::NodeOutOfRange { .. })));
    }

    #[test]
    fn batch_driver_matches_kernels() {
        let tri = generators::complete(3);
        let h: Vec<f64> = all_edge_curvatures(&tri, CurvatureKind::Haantjes)
            .iter()
            .map(|e| e.value)
            .collect();
        assert_eq!(h, vec![1.0, 1.0, 1.0]);
        let p = generators::path(3);
        let f: Vec<f64> = all_edge_curvatures(&p, CurvatureKind::Forman1D)
            .iter()
            .map(|e| e.value)
            .collect();
        assert_eq!(f, vec![1.0, 1.0]);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let g = generators::erdos_renyi(400, 0.06, 3);
        assert!(g.edge_count() >= PARALLEL_EDGE_THRESHOLD);
        for kind in CurvatureKind::ALL {
            let par = edge_curvature_values(&g, kind);
            let seq: Vec<f64> = g.edges().map(|(u, v)| curvature_unchecked(&g, kind, u, v)).collect();
            assert_eq!(par, seq);
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in CurvatureKind::ALL {
            assert_eq!(kind.as_str().parse::<CurvatureKind>().unwrap(), kind);
            let json = serde_json::to_string(&kind).unwrap();
            assert_eq!(json, format!("\"{}\"", kind.as_str()));
        }
        assert!("ollivier".parse::<CurvatureKind>().is_err());
    }
}
