//! Per-edge curvature of a small graph under every kind.
//!
//! cargo run --example curvature_report

use curvflow::curvature::{all_edge_curvatures, square_stats};
use curvflow::{generators, CurvatureKind};

fn main() {
    // a 3x3 grid with one diagonal, so both squares and triangles appear
    let mut edges = generators::grid(3, 3).edge_list();
    edges.push((0, 4));
    let g = curvflow::Graph::from_edges(9, edges).unwrap();

    print!("{:>7}", "edge");
    for kind in CurvatureKind::ALL {
        print!("{:>11}", kind.as_str());
    }
    println!("{:>12}", "s_u/s_v/γ");
    let tables: Vec<_> = CurvatureKind::ALL.iter().map(|&k| all_edge_curvatures(&g, k)).collect();
    for (row, (u, v)) in g.edges().enumerate() {
        print!("{:>7}", format!("{u}-{v}"));
        for t in &tables {
            print!("{:>11.4}", t[row].value);
        }
        let st = square_stats(&g, u, v).unwrap();
        println!("{:>12}", format!("{}/{}/{}", st.s_u, st.s_v, st.gamma_max));
    }
}
