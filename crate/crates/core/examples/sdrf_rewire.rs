//! Rewire a barbell with SDRF and replay the trace.
//!
//! cargo run --example sdrf_rewire [kind] [seed]

use curvflow::sdrf::RewireAction;
use curvflow::{generators, run_sdrf, CurvatureKind, SdrfConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let kind: CurvatureKind = args
        .next()
        .map(|s| s.parse().unwrap())
        .unwrap_or(CurvatureKind::BalancedForman);
    let seed: u64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(0);

    let g = generators::barbell(5);
    let config = SdrfConfig::new(kind)
        .with_tau(163.0)
        .with_max_iterations(10)
        .with_removal_bound(Some(2.0))
        .with_seed(seed);
    let (rewired, trace) = run_sdrf(&g, &config).unwrap();

    for ev in &trace.events {
        let verb = match ev.action {
            RewireAction::Added => "add",
            RewireAction::Removed => "drop",
        };
        print!(
            "step {:>2} {verb:>4} {:?} (curvature {:.3}",
            ev.iteration, ev.edge, ev.curvature_before
        );
        if let Some(x) = ev.improvement {
            print!(", gain {x:.3}");
        }
        println!(")");
    }
    println!(
        "{:?}: {} -> {} edges ({} added, {} removed)",
        trace.termination,
        g.edge_count(),
        rewired.edge_count(),
        trace.edges_added(),
        trace.edges_removed()
    );
    assert_eq!(trace.replay(&g).unwrap(), rewired);
    println!("trace replays to the same graph");
}
