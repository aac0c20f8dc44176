use crate::error::{Error, Result};
use crate::graph::{Graph, GraphParts, NodeId};

/// Ball of radius `n` in the infinite `k`-regular tree, grown breadth first.
/// Node 0 is the root; every sphere occupies a contiguous id range and the
/// rotation lists parent first, then children in creation order.
pub fn gen_regular_tree(k: u32, n: u32) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "regular tree needs k >= 3, got {k}"
        )));
    }
    let (edges, rotation, count) = tree_parts(k as usize, n);
    Graph::from_parts(GraphParts {
        n: count,
        edges: edges.into_iter().map(|(u, v)| (u, v, 1.0)).collect(),
        rotation: Some(rotation),
        root: Some(0),
        family: "regular_tree".into(),
    })
}

/// Edge list, rotation and node count of the radius-`n` ball.
pub(crate) fn tree_parts(k: usize, n: u32) -> (Vec<(NodeId, NodeId)>, Vec<Vec<NodeId>>, usize) {
    let mut edges = Vec::new();
    let mut rotation: Vec<Vec<NodeId>> = vec![Vec::new()];
    let mut frontier = vec![0usize];
    for _ in 0..n {
        let mut next = Vec::with_capacity(frontier.len() * (k - 1));
        for &parent in &frontier {
            let children = if parent == 0 { k } else { k - 1 };
            for _ in 0..children {
                let child = rotation.len();
                rotation.push(vec![parent]);
                rotation[parent].push(child);
                edges.push((parent, child));
                next.push(child);
            }
        }
        frontier = next;
    }
    let count = rotation.len();
    (edges, rotation, count)
}

/// Size of the ball of radius `n` in the `k`-regular tree.
pub fn regular_tree_size(k: u64, n: u32) -> u64 {
    1 + (1..=n as u64)
        .map(|p| k * (k - 1).pow(p as u32 - 1))
        .sum::<u64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::sphere;

    #[test]
    fn sphere_sizes_follow_branching() {
        let g = gen_regular_tree(3, 2).unwrap();
        assert_eq!(g.node_count(), 10);
        assert_eq!(sphere(&g, 0, 1).unwrap().len(), 3);
        assert_eq!(sphere(&g, 0, 2).unwrap().len(), 6);
        assert_eq!(gen_regular_tree(4, 3).unwrap().node_count(), 53);
        assert_eq!(regular_tree_size(4, 3), 53);
        assert_eq!(gen_regular_tree(5, 0).unwrap().node_count(), 1);
    }

    #[test]
    fn degrees_and_layers() {
        let g = gen_regular_tree(4, 3).unwrap();
        let layers = g.layers().unwrap();
        for v in 0..g.node_count() {
            let expected = match layers[v] {
                3 => 1,
                _ => 4,
            };
            assert_eq!(g.degree(v), expected);
        }
        assert_eq!(g.edge_count(), g.node_count() - 1);
    }

    #[test]
    fn rejects_small_k() {
        assert!(gen_regular_tree(2, 3).is_err());
    }
}
