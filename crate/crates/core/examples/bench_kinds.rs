//! Time one SDRF run per curvature kind on a random graph.
//!
//! cargo run --release --example bench_kinds [nodes] [p]

use curvflow::cli::bench_graphs;
use curvflow::{generators, CurvatureKind, SdrfConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse().unwrap()).unwrap_or(500);
    let p: f64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(0.02);
    let g = generators::erdos_renyi(n, p, 1);
    println!("G({n}, {p}): {} edges", g.edge_count());

    let base = SdrfConfig::new(CurvatureKind::Haantjes).with_max_iterations(50);
    let report = bench_graphs([(format!("er-{n}"), Ok(g), base)], &CurvatureKind::ALL, "");
    print!("{}", report.to_csv());
}
