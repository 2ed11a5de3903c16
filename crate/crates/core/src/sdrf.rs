//! Stochastic discrete Ricci flow rewiring.
//!
//! Each step supports the most negatively curved edge `(i, j)` by adding one
//! edge `k ~ l` with `k ∈ N(i) ∪ {i}` and `l ∈ N(j) ∪ {j}`, sampled with
//! probability `softmax(τ x)` where `x_kl` is the change in `Curv(i, j)` the
//! addition would cause. If a removal bound is configured, the most
//! positively curved edge is then deleted when its curvature exceeds it.
//!
//! Randomness comes from a [`ChaCha8Rng`] seeded with
//! [`SeedableRng::seed_from_u64`]; [`softmax_sample`] draws exactly one `u64`
//! per call, so a run is reproducible from `(graph, config)` alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curvature::{check_edge, curvature_unchecked, edge_curvature_values, CurvatureKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::NodeId;

/// Name of the generator recorded in every trace.
pub const RNG_ALGORITHM: &str = "rand_chacha::ChaCha8Rng/seed_from_u64";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdrfConfig {
    pub kind: CurvatureKind,
    /// Softmax temperature; larger is greedier.
    pub tau: f64,
    pub max_iterations: usize,
    /// Remove the maximum-curvature edge when its curvature exceeds this.
    pub removal_bound: Option<f64>,
    pub seed: u64,
}

impl SdrfConfig {
    pub fn new(kind: CurvatureKind) -> Self {
        SdrfConfig {
            kind,
            tau: 163.0,
            max_iterations: 100,
            removal_bound: None,
            seed: 0,
        }
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_max_iterations(mut self, n: usize) -> Self {
        self.max_iterations = n;
        self
    }

    pub fn with_removal_bound(mut self, bound: Option<f64>) -> Self {
        self.removal_bound = bound;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tau must be positive and finite, got {}",
                self.tau
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if let Some(b) = self.removal_bound {
            if b.is_nan() {
                return Err(Error::InvalidConfig("removal bound is NaN".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RewireAction {
    Added,
    Removed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RewireEvent {
    pub iteration: usize,
    pub action: RewireAction,
    /// Canonical `(u, v)`, `u < v`.
    pub edge: (NodeId, NodeId),
    /// The minimum-curvature edge an addition supports.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub driving_edge: Option<(NodeId, NodeId)>,
    /// Curvature of the driving edge (additions) or of the removed edge.
    pub curvature_before: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub improvement: Option<f64>,
    /// Set on removals that split a connected component.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub disconnects: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    MaxIterations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RewireCounts {
    pub steps: usize,
    pub edges_added: usize,
    pub edges_removed: usize,
}

/// Complete log of one rewiring run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RewireTrace {
    pub config: SdrfConfig,
    pub rng: String,
    pub events: Vec<RewireEvent>,
    pub termination: Termination,
    pub counts: RewireCounts,
}

impl RewireTrace {
    pub fn edges_added(&self) -> usize {
        self.counts.edges_added
    }

    pub fn edges_removed(&self) -> usize {
        self.counts.edges_removed
    }

    /// Applies the events in order to `input`, checking that each addition
    /// targets an absent edge and each removal a present one.
    pub fn replay(&self, input: &Graph) -> Result<Graph> {
        let mut g = input.clone();
        for (index, ev) in self.events.iter().enumerate() {
            let (u, v) = ev.edge;
            if u >= g.node_count() || v >= g.node_count() || u == v {
                return Err(Error::Replay {
                    index,
                    message: format!("invalid edge ({u}, {v})"),
                });
            }
            let ok = match ev.action {
                RewireAction::Added => g.add_edge(u, v),
                RewireAction::Removed => g.remove_edge(u, v),
            };
            if !ok {
                return Err(Error::Replay {
                    index,
                    message: format!("{:?} of ({u}, {v}) does not apply", ev.action),
                });
            }
        }
        Ok(g)
    }
}

/// A candidate support edge and the change it makes to the driving edge's
/// curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub k: NodeId,
    pub l: NodeId,
    pub improvement: f64,
}

fn closed_neighborhood(g: &Graph, v: NodeId) -> Vec<NodeId> {
    let nbrs = g.neighbors(v);
    let mut out = Vec::with_capacity(nbrs.len() + 1);
    let pos = nbrs.partition_point(|&w| w < v);
    out.extend_from_slice(&nbrs[..pos]);
    out.push(v);
    out.extend_from_slice(&nbrs[pos..]);
    out
}

/// Evaluates candidates by temporarily inserting each one into `g`; `g` is
/// restored before returning.
fn candidates_in(g: &mut Graph, kind: CurvatureKind, i: NodeId, j: NodeId, base: f64) -> Vec<Candidate> {
    let ks = closed_neighborhood(g, i);
    let ls = closed_neighborhood(g, j);
    let mut out = Vec::new();
    for &k in &ks {
        for &l in &ls {
            if k == l || g.has_edge(k, l) {
                continue;
            }
            g.add_edge(k, l);
            let after = curvature_unchecked(g, kind, i, j);
            g.remove_edge(k, l);
            out.push(Candidate {
                k,
                l,
                improvement: after - base,
            });
        }
    }
    out
}

/// All legal support edges for `(i, j)` in `(k, l)` lexicographic order.
pub fn candidate_improvements(g: &Graph, kind: CurvatureKind, i: NodeId, j: NodeId) -> Result<Vec<Candidate>> {
    check_edge(g, i, j)?;
    let base = curvature_unchecked(g, kind, i, j);
    let mut scratch = g.clone();
    Ok(candidates_in(&mut scratch, kind, i, j, base))
}

/// Samples an index with probability `exp(τ x_m - M) / Σ exp(τ x_n - M)`,
/// `M = max τ x`. Consumes exactly one `u64` from `rng`.
pub fn softmax_sample<R: Rng + ?Sized>(x: &[f64], tau: f64, rng: &mut R) -> Result<usize> {
    if x.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "tau must be positive and finite, got {tau}"
        )));
    }
    let mut logits = Vec::with_capacity(x.len());
    for (index, &xi) in x.iter().enumerate() {
        let z = tau * xi;
        if !z.is_finite() {
            return Err(Error::NonFinite { index, value: z });
        }
        logits.push(z);
    }
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = logits.iter().map(|z| (z - max).exp()).collect();
    let total: f64 = weights.iter().sum();
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (m, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            last_positive = m;
        }
        acc += w;
        if target < acc {
            return Ok(m);
        }
    }
    Ok(last_positive)
}

fn first_extremum(values: &[f64], better: impl Fn(f64, f64) -> bool) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (idx, &value) in values.iter().enumerate() {
        match best {
            Some(b) if !better(value, values[b]) => {}
            _ => best = Some(idx),
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub events: Vec<RewireEvent>,
    pub progressed: bool,
}

/// One iteration: support the minimum-curvature edge, then apply the removal
/// rule to the updated graph. Ties between edges go to canonical order.
pub fn sdrf_step<R: Rng + ?Sized>(
    g: &mut Graph,
    config: &SdrfConfig,
    rng: &mut R,
    iteration: usize,
) -> Result<StepOutcome> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let kind = config.kind;
    let mut edges = g.edge_list();
    let mut values = edge_curvature_values(g, kind);
    let mut events = Vec::new();

    let min_idx = first_extremum(&values, |a, b| a < b).expect("graph has edges");
    let (i, j) = edges[min_idx];
    let base = values[min_idx];
    let candidates = candidates_in(g, kind, i, j, base);
    if !candidates.is_empty() {
        let x: Vec<f64> = candidates.iter().map(|c| c.improvement).collect();
        let pick = candidates[softmax_sample(&x, config.tau, rng)?];
        g.add_edge(pick.k, pick.l);
        events.push(RewireEvent {
            iteration,
            action: RewireAction::Added,
            edge: (pick.k.min(pick.l), pick.k.max(pick.l)),
            driving_edge: Some((i, j)),
            curvature_before: base,
            improvement: Some(pick.improvement),
            disconnects: false,
        });
        edges = g.edge_list();
        values = edge_curvature_values(g, kind);
    }

    if let Some(bound) = config.removal_bound {
        let max_idx = first_extremum(&values, |a, b| a > b).expect("graph has edges");
        if values[max_idx] > bound {
            let (u, v) = edges[max_idx];
            g.remove_edge(u, v);
            events.push(RewireEvent {
                iteration,
                action: RewireAction::Removed,
                edge: (u, v),
                driving_edge: None,
                curvature_before: values[max_idx],
                improvement: None,
                disconnects: !g.connected(u, v),
            });
        }
    }

    Ok(StepOutcome {
        progressed: !events.is_empty(),
        events,
    })
}

/// Runs steps until one makes no change or `max_iterations` steps have run.
pub fn run_sdrf(g: &Graph, config: &SdrfConfig) -> Result<(Graph, RewireTrace)> {
    config.validate()?;
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut work = g.clone();
    let mut events = Vec::new();
    let mut counts = RewireCounts::default();
    let mut termination = Termination::MaxIterations;

    for iteration in 0..config.max_iterations {
        if work.edge_count() == 0 {
            termination = Termination::Converged;
            break;
        }
        let outcome = sdrf_step(&mut work, config, &mut rng, iteration)?;
        counts.steps += 1;
        for ev in &outcome.events {
            match ev.action {
                RewireAction::Added => counts.edges_added += 1,
                RewireAction::Removed => counts.edges_removed += 1,
            }
        }
        events.extend(outcome.events);
        if !outcome.progressed {
            termination = Termination::Converged;
            break;
        }
    }

    let trace = RewireTrace {
        config: config.clone(),
        rng: RNG_ALGORITHM.to_owned(),
        events,
        termination,
        counts,
    };
    Ok((work, trace))
}
