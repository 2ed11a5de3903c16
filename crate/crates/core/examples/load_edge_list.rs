//! Load a labelled edge list, keep its largest component and write it back.
//!
//! cargo run --example load_edge_list [path]

use std::io::Cursor;

use curvflow::graph::{edge_list_string, load_edge_list, parse_edge_list};
use curvflow::DirectedPolicy;

const SAMPLE: &str = "\
# a triangle with a one-way arc and a separate pair
alice bob
bob carol
carol alice
bob alice
dave erin
";

fn main() {
    let loaded = match std::env::args().nth(1) {
        Some(path) => load_edge_list(path, DirectedPolicy::Symmetrize),
        None => parse_edge_list(Cursor::new(SAMPLE), DirectedPolicy::Symmetrize),
    }
    .unwrap();
    println!("{:?}", loaded.report);
    println!(
        "{} nodes, {} components",
        loaded.graph.node_count(),
        loaded.graph.connected_components().len()
    );

    let lcc = loaded.into_largest_component();
    print!("{}", edge_list_string(&lcc.graph, &lcc.labels));
}
