//! The bridge of a barbell is the most negatively curved edge.
//!
//! cargo run --example bottleneck_barbell [clique size]

use curvflow::curvature::all_edge_curvatures;
use curvflow::{generators, CurvatureKind};

fn main() {
    let m: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("clique size"))
        .unwrap_or(5);
    let g = generators::barbell(m);
    let bridge = generators::barbell_bridge(m);
    println!("barbell of two K{m}, bridge {bridge:?}");
    for kind in CurvatureKind::ALL {
        let curv = all_edge_curvatures(&g, kind);
        let min = curv.iter().min_by(|a, b| a.value.total_cmp(&b.value)).unwrap();
        let next = curv
            .iter()
            .filter(|e| (e.u, e.v) != bridge)
            .map(|e| e.value)
            .fold(f64::INFINITY, f64::min);
        println!(
            "{kind:>10}: min at ({}, {}) = {:.4}, next lowest {:.4}",
            min.u, min.v, min.value, next
        );
    }
}
