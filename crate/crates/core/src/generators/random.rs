//! Random regular graphs and the sphere-wired tree.

use rand::Rng;

use crate::error::{Error, Result};
use crate::generators::tree::tree_parts;
use crate::graph::{Graph, GraphParts, NodeId};
use crate::seed::{rng, sub_seed};

/// Restarts allowed before a sampler gives up.
pub const MAX_ATTEMPTS: usize = 10_000;

/// Consecutive rejected stub pairs after which an attempt is restarted.
const STALL_LIMIT: usize = 1_000;

/// Simple graph with the given degree sequence from the pairing model.
///
/// Stubs are paired one uniformly chosen pair at a time; a pair that would
/// create a loop or a parallel edge is redrawn, and the attempt restarts if
/// the remaining stubs stall.
pub fn sample_degree_sequence(degrees: &[usize], seed: u64) -> Result<Vec<(NodeId, NodeId)>> {
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        return Err(Error::InvalidParameter("degree sum must be even".into()));
    }
    if degrees.iter().any(|&d| d >= degrees.len().max(1)) {
        return Err(Error::InvalidParameter(
            "every degree must be below the node count".into(),
        ));
    }
    let mut rng = rng(seed);
    let mut stubs = Vec::with_capacity(total);
    'attempt: for _ in 0..MAX_ATTEMPTS {
        stubs.clear();
        for (v, &d) in degrees.iter().enumerate() {
            stubs.extend(std::iter::repeat_n(v, d));
        }
        let mut adj: Vec<Vec<NodeId>> = degrees.iter().map(|&d| Vec::with_capacity(d)).collect();
        let mut edges = Vec::with_capacity(total / 2);
        while !stubs.is_empty() {
            let mut misses = 0;
            loop {
                let i = rng.gen_range(0..stubs.len());
                let j = rng.gen_range(0..stubs.len());
                let (u, v) = (stubs[i], stubs[j]);
                if i != j && u != v && !adj[u].contains(&v) {
                    adj[u].push(v);
                    adj[v].push(u);
                    edges.push((u.min(v), u.max(v)));
                    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                    stubs.swap_remove(hi);
                    stubs.swap_remove(lo);
                    break;
                }
                misses += 1;
                if misses > STALL_LIMIT {
                    continue 'attempt;
                }
            }
        }
        return Ok(edges);
    }
    Err(Error::RetryLimit(MAX_ATTEMPTS))
}

/// Random simple `r`-regular graph on `size` nodes.
pub fn gen_random_regular(r: u32, size: u32, seed: u64) -> Result<Graph> {
    let (r, size) = (r as usize, size as usize);
    if r < 3 {
        return Err(Error::InvalidParameter(format!(
            "degree r must be >= 3, got {r}"
        )));
    }
    if size <= r {
        return Err(Error::InvalidParameter(format!(
            "need more than r = {r} nodes, got {size}"
        )));
    }
    if (r * size) % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "r * N must be even, got {r} * {size}"
        )));
    }
    let edges = sample_degree_sequence(&vec![r; size], seed)?;
    Graph::from_parts(GraphParts {
        n: size,
        edges: edges.into_iter().map(|(u, v)| (u, v, 1.0)).collect(),
        family: "random_regular".into(),
        ..Default::default()
    })
}

/// Edges wiring one sphere of `m` nodes (local ids) for target degree `k`.
fn wire_sphere(m: usize, k: usize, seed: u64) -> Result<Vec<(NodeId, NodeId)>> {
    if m <= k {
        let mut edges = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                edges.push((a, b));
            }
        }
        return Ok(edges);
    }
    let mut degrees = vec![k; m];
    if (k * m) % 2 == 1 {
        degrees[m - 1] = k - 1;
    }
    sample_degree_sequence(&degrees, seed)
}

/// Ball of the `k`-regular tree with every sphere `S_p`, `1 <= p <= n`,
/// additionally wired by a random `k`-regular graph. Sphere `p` draws from
/// its own stream `sub_seed(seed, p)`.
pub fn gen_sphere_wired(k: u32, n: u32, seed: u64) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k must be >= 3, got {k}")));
    }
    if n < 1 {
        return Err(Error::InvalidParameter("radius must be >= 1".into()));
    }
    let k = k as usize;
    let (tree_edges, _, count) = tree_parts(k, n);
    let mut edges: Vec<(NodeId, NodeId, f64)> =
        tree_edges.into_iter().map(|(u, v)| (u, v, 1.0)).collect();
    // spheres are contiguous id ranges in creation order
    let mut start = 1;
    for p in 1..=n {
        let m = k * (k - 1).pow(p - 1);
        for (a, b) in wire_sphere(m, k, sub_seed(seed, p as u64))? {
            edges.push((start + a, start + b, 1.0));
        }
        start += m;
    }
    debug_assert_eq!(start, count);
    Graph::from_parts(GraphParts {
        n: count,
        edges,
        rotation: None,
        root: Some(0),
        family: "sphere_wired".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::tree::gen_regular_tree;
    use crate::paths::degree_stats;

    #[test]
    fn random_regular_degrees() {
        let g = gen_random_regular(3, 10, 1).unwrap();
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn random_regular_parity_and_range() {
        assert!(matches!(
            gen_random_regular(3, 5, 1),
            Err(Error::InvalidParameter(_))
        ));
        assert!(gen_random_regular(2, 10, 1).is_err());
        assert!(gen_random_regular(4, 4, 1).is_err());
    }

    #[test]
    fn random_regular_is_seeded() {
        let a = gen_random_regular(4, 50, 9).unwrap().to_json();
        assert_eq!(a, gen_random_regular(4, 50, 9).unwrap().to_json());
        assert_ne!(a, gen_random_regular(4, 50, 10).unwrap().to_json());
    }

    #[test]
    fn random_4_regular_usually_connected() {
        let connected = (0..100)
            .filter(|&s| gen_random_regular(4, 100, s).unwrap().is_connected())
            .count();
        assert!(connected >= 95, "{connected}/100 connected");
    }

    #[test]
    fn sphere_wired_degrees() {
        let g = gen_sphere_wired(4, 3, 5).unwrap();
        let layers = g.layers().unwrap();
        for v in 0..g.node_count() {
            let expected = match layers[v] {
                0 => 4,
                1 => 4 + 3, // S_1 has 4 nodes, wired as K_4
                2 => 8,
                _ => 5,
            };
            assert_eq!(g.degree(v), expected, "node {v} layer {}", layers[v]);
        }
        assert_eq!(degree_stats(&g).max, 8);
    }

    #[test]
    fn sphere_wired_small_spheres_are_complete() {
        let g = gen_sphere_wired(3, 1, 0).unwrap();
        assert_eq!(g.edge_count(), 3 + 3);
        let g = gen_sphere_wired(3, 2, 0).unwrap();
        // 9 tree edges, K_3 on S_1, 9 edges wiring S_2
        assert_eq!(g.edge_count(), 9 + 3 + 9);
    }

    #[test]
    fn odd_sphere_gets_one_short_vertex() {
        let edges = wire_sphere(7, 3, 1).unwrap();
        let mut deg = [0; 7];
        for (a, b) in edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        assert_eq!(deg.iter().filter(|&&d| d == 2).count(), 1);
        assert_eq!(deg.iter().filter(|&&d| d == 3).count(), 6);
    }

    #[test]
    fn removing_sphere_edges_recovers_tree() {
        let g = gen_sphere_wired(4, 3, 11).unwrap();
        let layers = g.layers().unwrap();
        let radial: Vec<_> = g
            .edges()
            .iter()
            .filter(|e| layers[e.u] != layers[e.v])
            .map(|e| (e.u, e.v))
            .collect();
        let tree = gen_regular_tree(4, 3).unwrap();
        let tree_edges: Vec<_> = tree.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(radial, tree_edges);
    }
}
