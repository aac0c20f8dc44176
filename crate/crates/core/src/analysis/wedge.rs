//! Wedge-cut lower-bound certificate for planar balls.
//!
//! A geodesic spanning tree from the root is read off the rotation system,
//! its root-to-leaf rays are listed in rotation order, and the prefix
//! unions `W_i` of those rays are grown until they cover half the nodes.
//! Every route between `W_i0` and its complement must cross the two
//! boundary rays, so some node on them carries at least the cross traffic
//! divided by the number of boundary nodes.

use serde::{Deserialize, Serialize};

use crate::analysis::bounds::theorem1_bound;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicTree {
    pub root: NodeId,
    pub parent: Vec<Option<NodeId>>,
    /// Children of each node in rotation order, starting after the parent.
    pub children: Vec<Vec<NodeId>>,
    /// Root-to-leaf paths in rotation order.
    pub rays: Vec<Vec<NodeId>>,
}

/// Breadth-first geodesic tree: the parent of `v` is its first neighbor in
/// rotation order one hop closer to the root.
pub fn geodesic_spanning_tree(graph: &Graph, root: NodeId) -> Result<GeodesicTree> {
    graph.check_node(root)?;
    let rot = graph.rotation().ok_or(Error::MissingRotation)?;
    let layer = graph.hop_distances(root);
    if layer.contains(&u32::MAX) {
        return Err(Error::Disconnected);
    }
    let n = graph.node_count();
    let mut parent = vec![None; n];
    for v in 0..n {
        if v != root {
            parent[v] = rot[v].iter().copied().find(|&u| layer[u] + 1 == layer[v]);
        }
    }
    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        let order = &rot[v];
        let start = match parent[v] {
            Some(p) => order.iter().position(|&u| u == p).unwrap() + 1,
            None => 0,
        };
        for i in 0..order.len() {
            let w = order[(start + i) % order.len()];
            if parent[w] == Some(v) {
                children[v].push(w);
            }
        }
    }

    let mut rays = Vec::new();
    let mut path = vec![root];
    let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if children[v].is_empty() {
            rays.push(path.clone());
        }
        if *next < children[v].len() {
            let w = children[v][*next];
            *next += 1;
            stack.push((w, 0));
            path.push(w);
        } else {
            stack.pop();
            path.pop();
        }
    }
    Ok(GeodesicTree {
        root,
        parent,
        children,
        rays,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutCertificate {
    pub root: NodeId,
    /// Ball radius: eccentricity of the root.
    pub radius: u32,
    pub rays: Vec<Vec<NodeId>>,
    /// Number of rays in the wedge, so the wedge is `rays[..split_index]`.
    pub split_index: usize,
    pub wedge_size: usize,
    pub complement_size: usize,
    /// Nodes of the first ray and the last wedge ray, ascending.
    pub cut_path: Vec<NodeId>,
    /// Cross traffic (wedge * complement / 2) spread over the cut path.
    pub bound: f64,
    /// `N^2 / (16 n) - N / 8`.
    pub theorem_bound: f64,
    /// Largest growth `|W_{i+1}| - |W_i|` for `i >= 1`.
    pub max_step: usize,
}

impl CutCertificate {
    pub fn node_count(&self) -> usize {
        self.wedge_size + self.complement_size
    }

    /// Returns a description of the first certificate invariant that fails.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let n = self.node_count();
        let r = self.radius as usize;
        if !(2 * self.wedge_size >= n && 2 * self.wedge_size <= n + 2 * r) {
            return Err(format!(
                "wedge size {} outside [N/2, N/2 + n] for N = {n}, n = {r}",
                self.wedge_size
            ));
        }
        if self.cut_path.len() > 2 * r + 1 {
            return Err(format!(
                "cut path has {} > 2n + 1 nodes",
                self.cut_path.len()
            ));
        }
        if self.cut_path.len() <= 2 * r && self.bound < self.theorem_bound {
            return Err(format!(
                "bound {} below theorem bound {}",
                self.bound, self.theorem_bound
            ));
        }
        if self.max_step > r {
            return Err(format!(
                "wedge grew by {} > n nodes in one ray",
                self.max_step
            ));
        }
        Ok(())
    }
}

pub fn wedge_cut(graph: &Graph, root: NodeId) -> Result<CutCertificate> {
    let tree = geodesic_spanning_tree(graph, root)?;
    let n = graph.node_count();
    let radius = graph.hop_distances(root).into_iter().max().unwrap_or(0);

    let mut in_wedge = vec![false; n];
    let mut size = 0;
    let mut max_step = 0;
    let mut split = None;
    for (i, ray) in tree.rays.iter().enumerate() {
        let before = size;
        for &v in ray {
            if !in_wedge[v] {
                in_wedge[v] = true;
                size += 1;
            }
        }
        if i > 0 {
            max_step = max_step.max(size - before);
        }
        if split.is_none() && 2 * size >= n {
            split = Some((i + 1, size));
        }
    }
    let (split_index, wedge_size) = split.expect("rays cover every node");
    debug_assert_eq!(size, n);

    let mut cut_path: Vec<NodeId> = tree.rays[0]
        .iter()
        .chain(&tree.rays[split_index - 1])
        .copied()
        .collect();
    cut_path.sort_unstable();
    cut_path.dedup();

    let complement_size = n - wedge_size;
    let bound = (wedge_size as f64 * complement_size as f64 / 2.0) / cut_path.len() as f64;
    let theorem_bound = if radius == 0 {
        0.0
    } else {
        theorem1_bound(n as u64, radius)?
    };
    Ok(CutCertificate {
        root,
        radius,
        rays: tree.rays,
        split_index,
        wedge_size,
        complement_size,
        cut_path,
        bound,
        theorem_bound,
        max_step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_hpq, gen_regular_tree};
    use crate::graph::GraphParts;

    fn star(m: usize) -> Graph {
        let mut rotation = vec![(1..=m).collect::<Vec<_>>()];
        rotation.extend((1..=m).map(|_| vec![0]));
        Graph::from_parts(GraphParts {
            n: m + 1,
            edges: (1..=m).map(|v| (0, v, 1.0)).collect(),
            rotation: Some(rotation),
            root: Some(0),
            family: "star".into(),
        })
        .unwrap()
    }

    #[test]
    fn star_rays_follow_rotation() {
        let t = geodesic_spanning_tree(&star(4), 0).unwrap();
        assert_eq!(t.rays, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 4]]);
    }

    #[test]
    fn tree_is_its_own_geodesic_tree() {
        let g = gen_regular_tree(3, 3).unwrap();
        let t = geodesic_spanning_tree(&g, 0).unwrap();
        let leaves = (0..g.node_count()).filter(|&v| g.degree(v) == 1).count();
        assert_eq!(t.rays.len(), leaves);
        for e in g.edges() {
            assert_eq!(t.parent[e.v], Some(e.u));
        }
    }

    #[test]
    fn h37_rays_cover_the_ball() {
        let g = gen_hpq(3, 7, 3).unwrap();
        let t = geodesic_spanning_tree(&g, 0).unwrap();
        let mut seen = vec![false; g.node_count()];
        for ray in &t.rays {
            assert!(ray.len() - 1 <= 3);
            for w in ray.windows(2) {
                assert!(g.edge_length(w[0], w[1]).is_some());
            }
            for &v in ray {
                seen[v] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn path_rooted_in_the_middle() {
        let g = Graph::from_parts(GraphParts {
            n: 3,
            edges: vec![(0, 1, 1.0), (1, 2, 1.0)],
            rotation: Some(vec![vec![1], vec![0, 2], vec![1]]),
            root: Some(1),
            family: "path".into(),
        })
        .unwrap();
        let c = wedge_cut(&g, 1).unwrap();
        assert_eq!(c.split_index, 1);
        assert_eq!(c.wedge_size, 2);
        assert_eq!(c.cut_path, vec![0, 1]);
        assert_eq!(c.bound, 0.5);
        assert_eq!(c.theorem_bound, 9.0 / 16.0 - 3.0 / 8.0);
        c.audit().unwrap();
    }

    #[test]
    fn h37_certificate_window() {
        let g = gen_hpq(3, 7, 5).unwrap();
        let c = wedge_cut(&g, 0).unwrap();
        let n = g.node_count();
        assert!(2 * c.wedge_size >= n && c.wedge_size * 2 <= n + 10);
        c.audit().unwrap();
    }

    #[test]
    fn needs_rotation() {
        let g = Graph::unit(2, &[(0, 1)], "x").unwrap();
        assert!(matches!(wedge_cut(&g, 0), Err(Error::MissingRotation)));
    }
}
