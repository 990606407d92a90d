//! The lineage graph: data-flow structure extracted from a document, with
//! reachability (impact), elementary-cycle enumeration, and determinism
//! boundary crossings.
//!
//! Nodes are diagram elements plus pipeline stages (stages are always
//! non-deterministic: they transform data under drift). Edges are the
//! declared lineage edges plus the stage wiring: `reads_from` sources feed
//! the stage, the stage feeds its `writes_to` sinks.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::ident::Identifier;
use crate::model::Document;

/// Cap on the number of cycles enumerated before giving up. Dense graphs
/// have exponentially many elementary cycles; past this point the report is
/// marked truncated instead of running forever.
pub const MAX_CYCLES: usize = 10_000;

/// A directed graph over entity identifiers, with a determinism flag per
/// node. Construction from a document is deterministic; all iteration is in
/// identifier order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LineageGraph {
    deterministic: BTreeMap<Identifier, bool>,
    successors: BTreeMap<Identifier, BTreeSet<Identifier>>,
    edges: BTreeSet<(Identifier, Identifier)>,
}

/// Result of cycle enumeration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleReport {
    /// Each elementary cycle exactly once, rotated so its lexicographically
    /// smallest node comes first; the list itself is sorted.
    pub cycles: Vec<Vec<Identifier>>,
    /// True when enumeration stopped at [`MAX_CYCLES`].
    pub truncated: bool,
}

impl LineageGraph {
    /// Builds the graph from a resolved document. Edges whose endpoints were
    /// never declared are skipped, so construction is total even on raw
    /// documents (resolution reports those endpoints as errors separately).
    pub fn from_document(doc: &Document) -> LineageGraph {
        let mut graph = LineageGraph::default();
        for e in &doc.elements {
            graph.add_node(e.element_id.clone(), e.deterministic);
        }
        for s in &doc.stages {
            graph.add_node(s.stage_id.clone(), false);
        }
        for e in &doc.lineage_edges {
            graph.add_edge(&e.from, &e.to);
        }
        for s in &doc.stages {
            for src in &s.reads_from {
                graph.add_edge(src, &s.stage_id);
            }
            for dst in &s.writes_to {
                graph.add_edge(&s.stage_id, dst);
            }
        }
        graph
    }

    fn add_node(&mut self, id: Identifier, deterministic: bool) {
        self.deterministic.entry(id).or_insert(deterministic);
    }

    fn add_edge(&mut self, from: &Identifier, to: &Identifier) {
        if !self.deterministic.contains_key(from) || !self.deterministic.contains_key(to) {
            return;
        }
        if self.edges.insert((from.clone(), to.clone())) {
            self.successors
                .entry(from.clone())
                .or_default()
                .insert(to.clone());
        }
    }

    pub fn contains(&self, id: &Identifier) -> bool {
        self.deterministic.contains_key(id)
    }

    /// The determinism flag of a node, or `None` for unknown nodes.
    pub fn is_deterministic(&self, id: &Identifier) -> Option<bool> {
        self.deterministic.get(id).copied()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Identifier> {
        self.deterministic.keys()
    }

    pub fn node_count(&self) -> usize {
        self.deterministic.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Identifier, &Identifier)> {
        self.edges.iter().map(|(a, b)| (a, b))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, from: &Identifier, to: &Identifier) -> bool {
        self.successors.get(from).is_some_and(|s| s.contains(to))
    }

    pub fn successors(&self, id: &Identifier) -> impl Iterator<Item = &Identifier> {
        self.successors.get(id).into_iter().flatten()
    }

    /// Everything transitively downstream of `start`: the set of nodes
    /// reachable over one or more edges. `start` itself appears only when it
    /// lies on a cycle (reachable from itself). `None` if `start` is not a
    /// node of the graph.
    pub fn impact(&self, start: &Identifier) -> Option<BTreeSet<Identifier>> {
        if !self.contains(start) {
            return None;
        }
        let mut reached = BTreeSet::new();
        let mut queue: VecDeque<&Identifier> = self.successors(start).collect();
        while let Some(node) = queue.pop_front() {
            if reached.insert(node.clone()) {
                queue.extend(self.successors(node));
            }
        }
        Some(reached)
    }

    /// Enumerates every elementary cycle exactly once.
    ///
    /// For each node in ascending order, a depth-first search explores paths
    /// through strictly larger nodes only; closing back to the start node
    /// records one cycle. Each cycle is therefore produced rooted at its
    /// smallest node, which makes the representation canonical.
    pub fn cycles(&self) -> CycleReport {
        let mut report = CycleReport::default();
        let mut path: Vec<Identifier> = Vec::new();
        let mut on_path: BTreeSet<Identifier> = BTreeSet::new();

        for start in self.deterministic.keys() {
            if report.truncated {
                break;
            }
            path.push(start.clone());
            on_path.insert(start.clone());
            self.cycle_dfs(start, start, &mut path, &mut on_path, &mut report);
            path.pop();
            on_path.remove(start);
        }
        report.cycles.sort();
        report
    }

    fn cycle_dfs(
        &self,
        start: &Identifier,
        node: &Identifier,
        path: &mut Vec<Identifier>,
        on_path: &mut BTreeSet<Identifier>,
        report: &mut CycleReport,
    ) {
        for next in self.successors(node) {
            if report.truncated {
                return;
            }
            if next == start {
                if report.cycles.len() == MAX_CYCLES {
                    report.truncated = true;
                    return;
                }
                report.cycles.push(path.clone());
            } else if next > start && !on_path.contains(next) {
                path.push(next.clone());
                on_path.insert(next.clone());
                self.cycle_dfs(start, next, path, on_path, report);
                path.pop();
                on_path.remove(next);
            }
        }
    }

    /// Edges whose endpoints differ in determinism flag, in (from, to)
    /// order. These are the places that need boundary contracts.
    pub fn boundary_crossings(&self) -> Vec<(Identifier, Identifier)> {
        self.edges
            .iter()
            .filter(|(a, b)| self.deterministic[a] != self.deterministic[b])
            .cloned()
            .collect()
    }
}
