//! Single-source shortest paths with geodesic counting, plus the derived
//! metric queries (diameter, balls, spheres, degree statistics).

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphParts, NodeId};

/// Relative tolerance under which two weighted path lengths count as equal.
pub const TIE_RTOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SsspResult {
    pub source: NodeId,
    /// `f64::INFINITY` for unreachable nodes.
    pub dist: Vec<f64>,
    /// Number of distinct shortest paths from the source.
    pub sigma: Vec<f64>,
    /// Shortest-path DAG predecessors.
    pub preds: Vec<Vec<NodeId>>,
}

/// Reusable shortest-path DAG buffers. Predecessors are not stored; they are
/// the neighbors that settled earlier and are tight, which is recomputed on
/// demand with the same predicate used while counting.
pub(crate) struct PathDag {
    pub dist: Vec<f64>,
    pub sigma: Vec<f64>,
    /// Settled nodes in non-decreasing distance order.
    pub order: Vec<NodeId>,
    rank: Vec<u32>,
    weighted: bool,
    heap: BinaryHeap<HeapItem>,
    queue: VecDeque<NodeId>,
}

#[derive(Clone, Copy)]
struct HeapItem {
    dist: f64,
    node: NodeId,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    // min-heap on (dist, node)
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

#[inline]
pub(crate) fn is_tight(via: f64, target: f64) -> bool {
    (via - target).abs() <= TIE_RTOL * target.abs()
}

impl PathDag {
    pub fn new(n: usize, weighted: bool) -> Self {
        PathDag {
            dist: vec![f64::INFINITY; n],
            sigma: vec![0.0; n],
            order: Vec::with_capacity(n),
            rank: vec![u32::MAX; n],
            weighted,
            heap: BinaryHeap::new(),
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.order {
            self.dist[v] = f64::INFINITY;
            self.sigma[v] = 0.0;
            self.rank[v] = u32::MAX;
        }
        self.order.clear();
    }

    pub fn run(&mut self, graph: &Graph, source: NodeId) {
        self.reset();
        if self.weighted {
            self.dijkstra(graph, source);
        } else {
            self.bfs(graph, source);
        }
    }

    fn bfs(&mut self, graph: &Graph, source: NodeId) {
        let (offsets, targets, _) = graph.csr();
        self.dist[source] = 0.0;
        self.sigma[source] = 1.0;
        self.queue.push_back(source);
        while let Some(u) = self.queue.pop_front() {
            self.rank[u] = self.order.len() as u32;
            self.order.push(u);
            let next = self.dist[u] + 1.0;
            for &w in &targets[offsets[u]..offsets[u + 1]] {
                if self.dist[w] == f64::INFINITY {
                    self.dist[w] = next;
                    self.queue.push_back(w);
                }
                if self.dist[w] == next {
                    self.sigma[w] += self.sigma[u];
                }
            }
        }
    }

    fn dijkstra(&mut self, graph: &Graph, source: NodeId) {
        let (offsets, targets, lengths) = graph.csr();
        self.dist[source] = 0.0;
        self.heap.push(HeapItem {
            dist: 0.0,
            node: source,
        });
        while let Some(HeapItem { dist, node: u }) = self.heap.pop() {
            if self.rank[u] != u32::MAX || dist > self.dist[u] {
                continue;
            }
            self.rank[u] = self.order.len() as u32;
            self.order.push(u);
            let range = offsets[u]..offsets[u + 1];
            if u == source {
                self.sigma[u] = 1.0;
            } else {
                let mut sigma = 0.0;
                for (&w, &len) in targets[range.clone()].iter().zip(&lengths[range.clone()]) {
                    if self.rank[w] < self.rank[u] && is_tight(self.dist[w] + len, dist) {
                        sigma += self.sigma[w];
                    }
                }
                self.sigma[u] = sigma;
            }
            for (&w, &len) in targets[range.clone()].iter().zip(&lengths[range]) {
                let nd = dist + len;
                if self.rank[w] == u32::MAX && nd < self.dist[w] {
                    self.dist[w] = nd;
                    self.heap.push(HeapItem { dist: nd, node: w });
                }
            }
        }
    }

    /// Calls `f(pred)` for each shortest-path predecessor of `v`.
    #[inline]
    pub fn for_each_pred(&self, graph: &Graph, v: NodeId, mut f: impl FnMut(NodeId)) {
        let (offsets, targets, lengths) = graph.csr();
        let range = offsets[v]..offsets[v + 1];
        let dv = self.dist[v];
        if self.weighted {
            let rv = self.rank[v];
            for (&u, &len) in targets[range.clone()].iter().zip(&lengths[range]) {
                if self.rank[u] < rv && is_tight(self.dist[u] + len, dv) {
                    f(u);
                }
            }
        } else {
            for &u in &targets[range] {
                if self.dist[u] + 1.0 == dv {
                    f(u);
                }
            }
        }
    }

    fn to_result(&self, graph: &Graph, source: NodeId) -> SsspResult {
        let n = graph.node_count();
        let mut preds = vec![Vec::new(); n];
        for &v in &self.order {
            if v != source {
                self.for_each_pred(graph, v, |u| preds[v].push(u));
            }
        }
        SsspResult {
            source,
            dist: self.dist.clone(),
            sigma: self.sigma.clone(),
            preds,
        }
    }
}

/// Hop-count shortest paths; edge lengths are ignored.
pub fn bfs_sssp(graph: &Graph, source: NodeId) -> Result<SsspResult> {
    graph.check_node(source)?;
    let mut dag = PathDag::new(graph.node_count(), false);
    dag.run(graph, source);
    Ok(dag.to_result(graph, source))
}

/// Length-weighted shortest paths. Path lengths within a relative
/// [`TIE_RTOL`] of each other are treated as equal.
pub fn dijkstra_sssp(graph: &Graph, source: NodeId) -> Result<SsspResult> {
    graph.check_node(source)?;
    // lengths are validated positive at construction
    let mut dag = PathDag::new(graph.node_count(), true);
    dag.run(graph, source);
    Ok(dag.to_result(graph, source))
}

pub fn sssp(graph: &Graph, source: NodeId, weighted: bool) -> Result<SsspResult> {
    if weighted {
        dijkstra_sssp(graph, source)
    } else {
        bfs_sssp(graph, source)
    }
}

/// Exact diameter by sweeping every source. Errors on disconnected input.
pub fn diameter(graph: &Graph, weighted: bool) -> Result<f64> {
    let n = graph.node_count();
    let ecc = (0..n)
        .into_par_iter()
        .map_init(
            || PathDag::new(n, weighted),
            |dag, s| {
                dag.run(graph, s);
                if dag.order.len() < n {
                    f64::INFINITY
                } else {
                    dag.dist[*dag.order.last().unwrap()]
                }
            },
        )
        .reduce(|| 0.0, f64::max);
    if ecc.is_infinite() {
        Err(Error::Disconnected)
    } else {
        Ok(ecc)
    }
}

/// All-pairs distance matrix, row-major.
pub fn distance_matrix(graph: &Graph, weighted: bool) -> Result<Vec<Vec<f64>>> {
    let n = graph.node_count();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map_init(
            || PathDag::new(n, weighted),
            |dag, s| {
                dag.run(graph, s);
                dag.dist.clone()
            },
        )
        .collect();
    if rows.iter().any(|r| r.iter().any(|d| d.is_infinite())) {
        return Err(Error::Disconnected);
    }
    Ok(rows)
}

/// Induced subgraph on the nodes within `radius` hops of `center`.
///
/// Nodes are renumbered in BFS discovery order from the center, visiting
/// neighbors in rotation order when a rotation exists. The center becomes
/// node 0 and the root of the result.
pub fn ball(graph: &Graph, center: NodeId, radius: u32) -> Result<Graph> {
    graph.check_node(center)?;
    let n = graph.node_count();
    let mut new_id = vec![usize::MAX; n];
    let mut hops = vec![0u32; n];
    let mut kept = vec![center];
    new_id[center] = 0;
    let mut head = 0;
    while head < kept.len() {
        let u = kept[head];
        head += 1;
        if hops[u] == radius {
            continue;
        }
        for &w in graph.ordered_neighbors(u) {
            if new_id[w] == usize::MAX {
                new_id[w] = kept.len();
                hops[w] = hops[u] + 1;
                kept.push(w);
            }
        }
    }

    let mut edges = Vec::new();
    for e in graph.edges() {
        if new_id[e.u] != usize::MAX && new_id[e.v] != usize::MAX {
            edges.push((new_id[e.u], new_id[e.v], e.length));
        }
    }
    let rotation = graph.rotation().map(|rot| {
        kept.iter()
            .map(|&v| {
                rot[v]
                    .iter()
                    .filter(|&&w| new_id[w] != usize::MAX)
                    .map(|&w| new_id[w])
                    .collect()
            })
            .collect()
    });
    Graph::from_parts(GraphParts {
        n: kept.len(),
        edges,
        rotation,
        root: Some(0),
        family: graph.family().to_string(),
    })
}

/// Nodes at exactly `radius` hops from `center`, ascending.
pub fn sphere(graph: &Graph, center: NodeId, radius: u32) -> Result<Vec<NodeId>> {
    graph.check_node(center)?;
    Ok(graph
        .hop_distances(center)
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == radius)
        .map(|(v, _)| v)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

pub fn degree_stats(graph: &Graph) -> DegreeStats {
    let n = graph.node_count();
    let degrees = (0..n).map(|v| graph.degree(v));
    DegreeStats {
        min: degrees.clone().min().unwrap_or(0),
        max: degrees.max().unwrap_or(0),
        mean: 2.0 * graph.edge_count() as f64 / n as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::unit(n, &edges, "cycle").unwrap()
    }

    fn weighted(n: usize, edges: &[(usize, usize, f64)]) -> Graph {
        Graph::from_parts(GraphParts {
            n,
            edges: edges.to_vec(),
            ..Default::default()
        })
        .unwrap()
    }

    #[test]
    fn bfs_on_path() {
        let g = Graph::unit(3, &[(0, 1), (1, 2)], "path").unwrap();
        let r = bfs_sssp(&g, 0).unwrap();
        assert_eq!(r.dist, vec![0.0, 1.0, 2.0]);
        assert_eq!(r.sigma, vec![1.0, 1.0, 1.0]);
        assert_eq!(r.preds, vec![vec![], vec![0], vec![1]]);
    }

    #[test]
    fn bfs_on_c4_counts_both_geodesics() {
        let r = bfs_sssp(&cycle(4), 0).unwrap();
        assert_eq!(r.dist, vec![0.0, 1.0, 2.0, 1.0]);
        assert_eq!(r.sigma, vec![1.0, 1.0, 2.0, 1.0]);
        assert_eq!(r.preds[2], vec![1, 3]);
    }

    #[test]
    fn unreachable_is_infinite() {
        let g = Graph::unit(3, &[(0, 1)], "x").unwrap();
        let r = bfs_sssp(&g, 0).unwrap();
        assert!(r.dist[2].is_infinite());
        assert_eq!(r.sigma[2], 0.0);
        assert!(r.preds[2].is_empty());
        let r = dijkstra_sssp(&g, 2).unwrap();
        assert!(r.dist[0].is_infinite());
    }

    #[test]
    fn invalid_source() {
        let g = cycle(4);
        assert!(matches!(bfs_sssp(&g, 4), Err(Error::InvalidNode { .. })));
        assert!(matches!(
            dijkstra_sssp(&g, 9),
            Err(Error::InvalidNode { .. })
        ));
    }

    #[test]
    fn dijkstra_detects_tie() {
        let g = weighted(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 2.0)]);
        let r = dijkstra_sssp(&g, 0).unwrap();
        assert_eq!(r.dist[2], 2.0);
        assert_eq!(r.sigma[2], 2.0);
        let g = weighted(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 2.5)]);
        let r = dijkstra_sssp(&g, 0).unwrap();
        assert_eq!(r.dist[2], 2.0);
        assert_eq!(r.sigma[2], 1.0);
        assert_eq!(r.preds[2], vec![1]);
    }

    #[test]
    fn dijkstra_tie_within_rounding() {
        // 0.1 + 0.2 != 0.3 in binary, but the routes must still tie
        let g = weighted(3, &[(0, 1, 0.1), (1, 2, 0.2), (0, 2, 0.3)]);
        let r = dijkstra_sssp(&g, 0).unwrap();
        assert_eq!(r.sigma[2], 2.0);
    }

    #[test]
    fn diameter_examples() {
        let p3 = Graph::unit(3, &[(0, 1), (1, 2)], "p").unwrap();
        assert_eq!(diameter(&p3, false).unwrap(), 2.0);
        assert_eq!(diameter(&cycle(5), false).unwrap(), 2.0);
        let g = Graph::unit(3, &[(0, 1)], "x").unwrap();
        assert!(matches!(diameter(&g, false), Err(Error::Disconnected)));
        let w = weighted(3, &[(0, 1, 0.5), (1, 2, 0.25)]);
        assert_eq!(diameter(&w, true).unwrap(), 0.75);
    }

    #[test]
    fn ball_radius_zero_and_full() {
        let g = cycle(6);
        let b0 = ball(&g, 3, 0).unwrap();
        assert_eq!(b0.node_count(), 1);
        assert_eq!(b0.edge_count(), 0);
        let b = ball(&g, 0, 3).unwrap();
        assert_eq!(b.node_count(), 6);
        assert_eq!(b.edge_count(), 6);
        assert_eq!(b.root(), Some(0));
        let b1 = ball(&g, 0, 1).unwrap();
        assert_eq!(b1.node_count(), 3);
        assert_eq!(b1.edge_count(), 2);
        assert_eq!(b1.layers(), Some(&[0, 1, 1][..]));
    }

    #[test]
    fn sphere_examples() {
        let g = cycle(6);
        assert_eq!(sphere(&g, 0, 0).unwrap(), vec![0]);
        assert_eq!(sphere(&g, 0, 3).unwrap(), vec![3]);
        assert_eq!(sphere(&g, 1, 2).unwrap(), vec![3, 5]);
        assert!(sphere(&g, 6, 1).is_err());
    }

    #[test]
    fn degree_stats_examples() {
        assert_eq!(
            degree_stats(&cycle(4)),
            DegreeStats {
                min: 2,
                max: 2,
                mean: 2.0
            }
        );
        let star = Graph::unit(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], "star").unwrap();
        let s = degree_stats(&star);
        assert_eq!((s.min, s.max), (1, 4));
        assert!((s.mean - 8.0 / 5.0).abs() < 1e-15);
    }
}
