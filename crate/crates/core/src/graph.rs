//! Immutable simple weighted graphs with optional planar rotation system,
//! root and BFS layer labels.
//!
//! Adjacency is stored in CSR form with each neighbor list sorted by node id.
//! Edges are kept canonically as `(u, v)` with `u < v`, sorted, and the
//! position of an edge in that list is its edge id.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Canonical undirected edge, `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub length: f64,
}

/// Raw material for building a [`Graph`]. Everything is validated by
/// [`Graph::from_parts`].
#[derive(Clone, Debug, Default)]
pub struct GraphParts {
    pub n: usize,
    pub edges: Vec<(NodeId, NodeId, f64)>,
    pub rotation: Option<Vec<Vec<NodeId>>>,
    pub root: Option<NodeId>,
    pub family: String,
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    half_lengths: Vec<f64>,
    half_edge_ids: Vec<usize>,
    rotation: Option<Vec<Vec<NodeId>>>,
    layer: Option<Vec<u32>>,
    root: Option<NodeId>,
    family: String,
}

impl Graph {
    pub fn from_parts(parts: GraphParts) -> Result<Self> {
        let GraphParts {
            n,
            edges,
            rotation,
            root,
            family,
        } = parts;
        if n == 0 {
            return Err(Error::InvalidGraph(
                "graph must have at least one node".into(),
            ));
        }

        let mut canon = Vec::with_capacity(edges.len());
        for (u, v, length) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidNode { node: x, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            if !(length.is_finite() && length > 0.0) {
                return Err(Error::NonPositiveLength { u, v, length });
            }
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            canon.push(Edge { u, v, length });
        }
        canon.sort_by_key(|e| (e.u, e.v));
        if let Some(w) = canon
            .windows(2)
            .find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].u, w[0].v
            )));
        }

        let mut half: Vec<(NodeId, NodeId, usize)> = Vec::with_capacity(2 * canon.len());
        for (id, e) in canon.iter().enumerate() {
            half.push((e.u, e.v, id));
            half.push((e.v, e.u, id));
        }
        half.sort_unstable();
        let mut offsets = vec![0usize; n + 1];
        for &(a, _, _) in &half {
            offsets[a + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let targets = half.iter().map(|h| h.1).collect();
        let half_lengths = half.iter().map(|h| canon[h.2].length).collect();
        let half_edge_ids = half.iter().map(|h| h.2).collect();

        let mut graph = Graph {
            n,
            edges: canon,
            offsets,
            targets,
            half_lengths,
            half_edge_ids,
            rotation: None,
            layer: None,
            root: None,
            family,
        };

        if let Some(rot) = rotation {
            graph.check_rotation(&rot)?;
            graph.rotation = Some(rot);
        }
        if let Some(r) = root {
            if r >= n {
                return Err(Error::InvalidNode { node: r, n });
            }
            let hops = graph.hop_distances(r);
            if hops.contains(&u32::MAX) {
                return Err(Error::InvalidGraph("root does not reach every node".into()));
            }
            graph.root = Some(r);
            graph.layer = Some(hops);
        }
        Ok(graph)
    }

    /// Unit-length graph from an edge list.
    pub fn unit(n: usize, edges: &[(NodeId, NodeId)], family: &str) -> Result<Self> {
        Self::from_parts(GraphParts {
            n,
            edges: edges.iter().map(|&(u, v)| (u, v, 1.0)).collect(),
            family: family.to_string(),
            ..Default::default()
        })
    }

    fn check_rotation(&self, rot: &[Vec<NodeId>]) -> Result<()> {
        if rot.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "rotation has {} entries for {} nodes",
                rot.len(),
                self.n
            )));
        }
        for (v, order) in rot.iter().enumerate() {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted.as_slice() != self.neighbors(v) {
                return Err(Error::InvalidGraph(format!(
                    "rotation at node {v} is not a permutation of its neighbors"
                )));
            }
        }
        Ok(())
    }

    /// A copy of this graph with new per-edge lengths, indexed by edge id.
    pub fn with_lengths(&self, lengths: &[f64]) -> Result<Self> {
        if lengths.len() != self.edges.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} edge lengths, got {}",
                self.edges.len(),
                lengths.len()
            )));
        }
        let mut g = self.clone();
        for (e, &len) in g.edges.iter_mut().zip(lengths) {
            if !(len.is_finite() && len > 0.0) {
                return Err(Error::NonPositiveLength {
                    u: e.u,
                    v: e.v,
                    length: len,
                });
            }
            e.length = len;
        }
        for (slot, id) in g.half_edge_ids.iter().enumerate() {
            g.half_lengths[slot] = lengths[*id];
        }
        Ok(g)
    }

    pub fn with_family(mut self, family: &str) -> Self {
        self.family = family.to_string();
        self
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    pub fn layers(&self) -> Option<&[u32]> {
        self.layer.as_deref()
    }

    pub fn rotation(&self) -> Option<&[Vec<NodeId>]> {
        self.rotation.as_deref()
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Neighbors of `v`, sorted by id.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Neighbors of `v` paired with the connecting edge length.
    pub fn weighted_neighbors(&self, v: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.half_lengths[range].iter().copied())
    }

    /// Neighbor order used for deterministic traversals: the rotation when
    /// present, otherwise ascending ids.
    pub fn ordered_neighbors(&self, v: NodeId) -> &[NodeId] {
        match &self.rotation {
            Some(rot) => &rot[v],
            None => self.neighbors(v),
        }
    }

    pub fn edge_length(&self, u: NodeId, v: NodeId) -> Option<f64> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let range = self.offsets[u]..self.offsets[u + 1];
        self.targets[range.clone()]
            .binary_search(&v)
            .ok()
            .map(|i| self.half_lengths[range.start + i])
    }

    pub fn has_unit_lengths(&self) -> bool {
        self.edges.iter().all(|e| e.length == 1.0)
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidNode { node: v, n: self.n })
        }
    }

    /// Unweighted hop distances from `source`; `u32::MAX` marks unreachable.
    pub fn hop_distances(&self, source: NodeId) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.hop_distances(0).iter().all(|&d| d != u32::MAX)
    }

    pub(crate) fn csr(&self) -> (&[usize], &[NodeId], &[f64]) {
        (&self.offsets, &self.targets, &self.half_lengths)
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            n: self.n,
            root: self.root,
            family: self.family.clone(),
            edges: self.edges.iter().map(|e| (e.u, e.v, e.length)).collect(),
            rotation: self.rotation.clone(),
            layer: self.layer.clone(),
        };
        let mut text = serde_json::to_string(&doc).expect("graph json is always serializable");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphJson = serde_json::from_str(text)?;
        if doc.layer.is_some() && doc.root.is_none() {
            return Err(Error::InvalidGraph(
                "layer labels given without a root".into(),
            ));
        }
        let graph = Graph::from_parts(GraphParts {
            n: doc.n,
            edges: doc.edges,
            rotation: doc.rotation,
            root: doc.root,
            family: doc.family,
        })?;
        if let Some(layer) = doc.layer {
            if Some(layer.as_slice()) != graph.layers() {
                return Err(Error::InvalidGraph(
                    "layer labels disagree with hop distances from root".into(),
                ));
            }
        }
        Ok(graph)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    root: Option<NodeId>,
    family: String,
    edges: Vec<(NodeId, NodeId, f64)>,
    rotation: Option<Vec<Vec<NodeId>>>,
    layer: Option<Vec<u32>>,
}
