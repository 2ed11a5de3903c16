//! Undirected simple graphs on dense node indices, edge-list ingestion and
//! component extraction.
//!
//! Adjacency lists are kept sorted so that neighbourhood intersection (the
//! triangle count every curvature needs) is a linear merge.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::NodeId;

/// Undirected, unweighted graph without self-loops or multi-edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `node_count` isolated nodes.
    pub fn empty(node_count: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); node_count],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge iterator. Self-loops and repeated edges are
    /// dropped; out-of-range endpoints are an error.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = Graph::empty(node_count);
        for (u, v) in edges {
            g.check_node(u)?;
            g.check_node(v)?;
            if u != v {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbours of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.adjacency[v].len())
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        if u >= self.node_count() || v >= self.node_count() || u == v {
            return false;
        }
        let (a, b) = if self.adjacency[u].len() <= self.adjacency[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// `N(u) ∩ N(v)` in increasing order.
    pub fn common_neighbors(&self, u: NodeId, v: NodeId) -> Result<Vec<NodeId>> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::InvalidPair { node: u });
        }
        let mut out = Vec::new();
        merge_intersect(&self.adjacency[u], &self.adjacency[v], |w| out.push(w));
        Ok(out)
    }

    /// `|N(u) ∩ N(v)|` without allocating. Both indices must be valid.
    #[inline]
    pub(crate) fn common_neighbor_count(&self, u: NodeId, v: NodeId) -> usize {
        let mut count = 0;
        merge_intersect(&self.adjacency[u], &self.adjacency[v], |_| count += 1);
        count
    }

    /// Canonical edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let start = nbrs.partition_point(|&w| w <= u);
            nbrs[start..].iter().map(move |&v| (u, v))
        })
    }

    pub fn edge_list(&self) -> Vec<(NodeId, NodeId)> {
        self.edges().collect()
    }

    /// Checks the simple-graph invariants: symmetry, no self-loops, strictly
    /// sorted adjacency and a consistent edge count.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let mut degree_sum = 0;
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            degree_sum += nbrs.len();
            for w in nbrs.windows(2) {
                if w[0] >= w[1] {
                    return Err(format!("adjacency of {u} not strictly sorted"));
                }
            }
            for &v in nbrs {
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if v >= self.node_count() {
                    return Err(format!("neighbour {v} of {u} out of range"));
                }
                if self.adjacency[v].binary_search(&u).is_err() {
                    return Err(format!("edge ({u}, {v}) not symmetric"));
                }
            }
        }
        if degree_sum != 2 * self.edge_count {
            return Err(format!(
                "edge count {} does not match degree sum {degree_sum}",
                self.edge_count
            ));
        }
        Ok(())
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                node_count: self.node_count(),
            })
        }
    }

    /// Inserts `{u, v}`; returns false if it was already present. Callers
    /// guarantee `u != v` and both in range.
    pub(crate) fn add_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        debug_assert!(u != v);
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                self.edge_count += 1;
                true
            }
        }
    }

    pub(crate) fn remove_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        match self.adjacency[u].binary_search(&v) {
            Err(_) => false,
            Ok(pos) => {
                self.adjacency[u].remove(pos);
                let pos = self.adjacency[v].binary_search(&u).unwrap();
                self.adjacency[v].remove(pos);
                self.edge_count -= 1;
                true
            }
        }
    }

    /// Whether `target` is reachable from `source`.
    pub fn connected(&self, source: NodeId, target: NodeId) -> bool {
        if source == target {
            return true;
        }
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adjacency[x] {
                if y == target {
                    return true;
                }
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    /// Connected components, each sorted, ordered by their smallest node.
    pub fn connected_components(&self) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut component = vec![root];
            let mut head = 0;
            while head < component.len() {
                let x = component[head];
                head += 1;
                for &y in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        component.push(y);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// Subgraph induced on `nodes` (sorted, distinct), reindexed by position.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Graph {
        let mut new_index = HashMap::with_capacity(nodes.len());
        for (i, &v) in nodes.iter().enumerate() {
            new_index.insert(v, i);
        }
        let mut adjacency = Vec::with_capacity(nodes.len());
        let mut degree_sum = 0;
        for &v in nodes {
            let nbrs: Vec<NodeId> = self.adjacency[v]
                .iter()
                .filter_map(|w| new_index.get(w).copied())
                .collect();
            degree_sum += nbrs.len();
            adjacency.push(nbrs);
        }
        Graph {
            adjacency,
            edge_count: degree_sum / 2,
        }
    }

    /// Original indices of the nodes of the largest component. Ties go to the
    /// component holding the smallest node index.
    pub fn largest_component_nodes(&self) -> Vec<NodeId> {
        let mut best: Vec<NodeId> = Vec::new();
        for component in self.connected_components() {
            // components arrive ordered by minimum index, so strict > keeps the first
            if component.len() > best.len() {
                best = component;
            }
        }
        best
    }

    /// Induced subgraph on the largest connected component.
    pub fn largest_connected_component(&self) -> Graph {
        self.induced_subgraph(&self.largest_component_nodes())
    }
}

/// Calls `f` for every element common to two sorted slices.
#[inline]
pub(crate) fn merge_intersect(a: &[NodeId], b: &[NodeId], mut f: impl FnMut(NodeId)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Bijection between external string labels and dense node indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeLabelMap {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl NodeLabelMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Labels `"0"`, `"1"`, ... for a graph without external labels.
    pub fn identity(node_count: usize) -> Self {
        let mut map = Self::new();
        for i in 0..node_count {
            map.intern(&i.to_string());
        }
        map
    }

    pub fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn label(&self, id: NodeId) -> Option<&str> {
        self.labels.get(id).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Map for a subgraph whose node `i` was node `nodes[i]` here.
    pub fn restrict(&self, nodes: &[NodeId]) -> NodeLabelMap {
        let mut map = NodeLabelMap::new();
        for &v in nodes {
            map.intern(&self.labels[v]);
        }
        map
    }
}

/// How `load_edge_list` treats arcs given in one orientation only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DirectedPolicy {
    /// Every arc `(u, v)` becomes the undirected edge `{u, v}`.
    #[default]
    Symmetrize,
    /// Fail if the file mixes reciprocated and one-way arcs.
    RejectDirected,
}

/// Counts of input lines that did not become new edges.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub lines_read: usize,
    pub duplicates_dropped: usize,
    pub self_loops_dropped: usize,
    /// Arcs whose reverse arc also appears in the input.
    pub reciprocal_arcs: usize,
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: NodeLabelMap,
    pub report: LoadReport,
}

impl LoadedGraph {
    /// Restricts graph and labels to the largest connected component.
    pub fn into_largest_component(self) -> LoadedGraph {
        let nodes = self.graph.largest_component_nodes();
        LoadedGraph {
            graph: self.graph.induced_subgraph(&nodes),
            labels: self.labels.restrict(&nodes),
            report: self.report,
        }
    }
}

pub fn load_edge_list(path: impl AsRef<Path>, policy: DirectedPolicy) -> Result<LoadedGraph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(BufReader::new(file), policy).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

/// Parses the edge-list text format: `#` comments, blank lines ignored, one
/// whitespace-separated label pair per data line.
pub fn parse_edge_list(reader: impl BufRead, policy: DirectedPolicy) -> Result<LoadedGraph> {
    let mut labels = NodeLabelMap::new();
    let mut report = LoadReport::default();
    let mut arcs: Vec<(NodeId, NodeId, usize)> = Vec::new();

    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<input>", e))?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: lineno,
                message: format!(
                    "expected two node labels, found {} token(s)",
                    trimmed.split_whitespace().count()
                ),
            });
        };
        report.lines_read += 1;
        let u = labels.intern(a);
        let v = labels.intern(b);
        arcs.push((u, v, lineno));
    }

    let oriented: HashSet<(NodeId, NodeId)> = arcs
        .iter()
        .filter(|(u, v, _)| u != v)
        .map(|&(u, v, _)| (u, v))
        .collect();
    report.reciprocal_arcs = oriented.iter().filter(|&&(u, v)| oriented.contains(&(v, u))).count();

    if policy == DirectedPolicy::RejectDirected && report.reciprocal_arcs > 0 {
        if let Some(&(u, v, line)) = arcs.iter().find(|&&(u, v, _)| u != v && !oriented.contains(&(v, u))) {
            return Err(Error::DirectedInput {
                line,
                from: labels.labels[u].clone(),
                to: labels.labels[v].clone(),
            });
        }
    }

    let mut graph = Graph::empty(labels.len());
    for &(u, v, _) in &arcs {
        if u == v {
            report.self_loops_dropped += 1;
        } else if !graph.add_edge(u, v) {
            report.duplicates_dropped += 1;
        }
    }
    if graph.edge_count() == 0 {
        return Err(Error::EmptyInput);
    }
    Ok(LoadedGraph { graph, labels, report })
}

/// Writes one canonical edge per line as `<u-label> <v-label>`.
pub fn write_edge_list(mut out: impl Write, graph: &Graph, labels: &NodeLabelMap) -> std::io::Result<()> {
    for (u, v) in graph.edges() {
        let lu = labels.label(u).map(str::to_owned).unwrap_or_else(|| u.to_string());
        let lv = labels.label(v).map(str::to_owned).unwrap_or_else(|| v.to_string());
        writeln!(out, "{lu} {lv}")?;
    }
    Ok(())
}

pub fn edge_list_string(graph: &Graph, labels: &NodeLabelMap) -> String {
    let mut buf = Vec::new();
    write_edge_list(&mut buf, graph, labels).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("labels are UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn parse(text: &str) -> Result<LoadedGraph> {
        parse_edge_list(text.as_bytes(), DirectedPolicy::Symmetrize)
    }

    #[test]
    fn duplicates_and_self_loops_are_counted() {
        let loaded = parse("a b\nb a\na a\n").unwrap();
        assert_eq!(loaded.graph.node_count(), 2);
        assert_eq!(loaded.graph.edge_list(), vec![(0, 1)]);
        assert_eq!(loaded.report.duplicates_dropped, 1);
        assert_eq!(loaded.report.self_loops_dropped, 1);
    }

    #[test]
    fn triangle_with_comments_and_blank_lines() {
        let loaded = parse("# triangle\n0 1\n\n1 2\n  2 0  \n").unwrap();
        assert_eq!(loaded.graph.node_count(), 3);
        assert_eq!(loaded.graph.edge_count(), 3);
        assert_eq!(loaded.report.lines_read, 3);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match parse("0 1\n1 2 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("0\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn no_edges_is_empty_input() {
        assert!(matches!(parse("# nothing\n"), Err(Error::EmptyInput)));
        assert!(matches!(parse("a a\n"), Err(Error::EmptyInput)));
    }

    #[test]
    fn reject_directed_policy() {
        let directed = "a b\nb a\nb c\n";
        let err = parse_edge_list(directed.as_bytes(), DirectedPolicy::RejectDirected).unwrap_err();
        assert!(matches!(err, Error::DirectedInput { line: 3, .. }));
        // one orientation per edge and fully reciprocated lists are both fine
        parse_edge_list("a b\nb c\n".as_bytes(), DirectedPolicy::RejectDirected).unwrap();
        parse_edge_list("a b\nb a\n".as_bytes(), DirectedPolicy::RejectDirected).unwrap();
        let sym = parse(directed).unwrap();
        assert_eq!(sym.graph.edge_count(), 2);
    }

    #[test]
    fn degree_and_errors() {
        let k4 = generators::complete(4);
        for v in 0..4 {
            assert_eq!(k4.degree(v).unwrap(), 3);
        }
        assert!(matches!(k4.degree(4), Err(Error::NodeOutOfRange { .. })));
        assert_eq!(generators::path(2).degree(1).unwrap(), 1);
        assert_eq!(generators::star(6).degree(0).unwrap(), 6);
    }

    #[test]
    fn common_neighbors_cases() {
        let tri = generators::complete(3);
        assert_eq!(tri.common_neighbors(0, 1).unwrap(), vec![2]);
        let p = generators::path(3);
        assert_eq!(p.common_neighbors(0, 2).unwrap(), vec![1]);
        assert!(matches!(p.common_neighbors(1, 1), Err(Error::InvalidPair { node: 1 })));
        let k5 = generators::complete(5);
        // brute-force triple loop
        for (u, v) in k5.edges() {
            let expected: Vec<_> = (0..5)
                .filter(|&w| w != u && w != v && k5.has_edge(u, w) && k5.has_edge(v, w))
                .collect();
            assert_eq!(k5.common_neighbors(u, v).unwrap(), expected);
            assert_eq!(expected.len(), 3);
        }
    }

    #[test]
    fn largest_component_ties_and_isolates() {
        let two = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(two.largest_component_nodes(), vec![0, 1, 2]);
        assert_eq!(two.largest_connected_component(), generators::complete(3));

        let p4 = generators::path(4);
        assert_eq!(p4.largest_connected_component(), p4);

        // K5 on 2..7 plus an isolated edge {0,1} and an isolated node 7
        let mut edges = vec![(0, 1)];
        for u in 2..7 {
            for v in u + 1..7 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(8, edges).unwrap();
        assert_eq!(g.largest_component_nodes(), vec![2, 3, 4, 5, 6]);
        assert_eq!(g.largest_connected_component(), generators::complete(5));
    }

    #[test]
    fn labels_follow_component_restriction() {
        let loaded = parse("x y\np q\nq r\n").unwrap().into_largest_component();
        assert_eq!(loaded.labels.labels(), &["p", "q", "r"]);
        assert_eq!(edge_list_string(&loaded.graph, &loaded.labels), "p q\nq r\n");
    }

    #[test]
    fn add_remove_keep_invariants() {
        let mut g = generators::path(4);
        assert!(g.add_edge(3, 0));
        assert!(!g.add_edge(0, 3));
        g.validate().unwrap();
        assert!(g.remove_edge(1, 2));
        assert!(!g.remove_edge(1, 2));
        g.validate().unwrap();
        assert_eq!(g.edge_list(), vec![(0, 1), (0, 3), (2, 3)]);
        assert!(g.connected(1, 2));
        assert!(g.remove_edge(0, 3));
        assert!(!g.connected(1, 2));
    }
}
