//! Polynomial-growth and product families: integer grids, two grids joined
//! by a bridge, and balls in the product of the 3-regular tree with Z.

use crate::error::{Error, Result};
use crate::generators::tree::tree_parts;
use crate::graph::{Graph, GraphParts, NodeId};
use crate::paths::ball;

fn box_edges(dim: usize, side: usize, offset: NodeId, edges: &mut Vec<(NodeId, NodeId, f64)>) {
    let count = side.pow(dim as u32);
    for v in 0..count {
        let mut stride = 1;
        for _ in 0..dim {
            if (v / stride) % side + 1 < side {
                edges.push((offset + v, offset + v + stride, 1.0));
            }
            stride *= side;
        }
    }
}

fn center_cell(dim: usize, side: usize) -> NodeId {
    let c = (side - 1) / 2;
    (0..dim).map(|d| c * side.pow(d as u32)).sum()
}

/// Box `{0..side-1}^dim` with nearest-neighbour unit edges, rooted at the
/// center cell (rounded down on even sides).
pub fn gen_grid(dim: u32, side: u32) -> Result<Graph> {
    if dim < 1 || side < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid needs dim >= 1 and side >= 2, got dim {dim}, side {side}"
        )));
    }
    let (dim, side) = (dim as usize, side as usize);
    let count = side
        .checked_pow(dim as u32)
        .ok_or_else(|| Error::InvalidParameter("grid too large".into()))?;
    let mut edges = Vec::new();
    box_edges(dim, side, 0, &mut edges);
    Graph::from_parts(GraphParts {
        n: count,
        edges,
        rotation: None,
        root: Some(center_cell(dim, side)),
        family: "grid".into(),
    })
}

/// The two endpoints of the bridge in [`gen_bridged_grids`].
pub fn bridge_endpoints(side: u32) -> (NodeId, NodeId) {
    let side = side as usize;
    let c = center_cell(2, side);
    (c, side * side + c)
}

/// Two disjoint `side x side` grids whose center cells are joined by a
/// single edge. Rooted at the first bridge endpoint.
pub fn gen_bridged_grids(side: u32) -> Result<Graph> {
    if side < 2 {
        return Err(Error::InvalidParameter(format!(
            "bridged grids need side >= 2, got {side}"
        )));
    }
    let l = side as usize;
    let mut edges = Vec::new();
    box_edges(2, l, 0, &mut edges);
    box_edges(2, l, l * l, &mut edges);
    let (a, b) = bridge_endpoints(side);
    edges.push((a, b, 1.0));
    Graph::from_parts(GraphParts {
        n: 2 * l * l,
        edges,
        rotation: None,
        root: Some(a),
        family: "bridged_grids".into(),
    })
}

/// Ball of radius `n` around `(x0, 0)` in the Cartesian product of the
/// 3-regular tree and the integer line.
pub fn gen_tree_cross_z(n: u32) -> Result<Graph> {
    let (tree_edges, _, tree_count) = tree_parts(3, n);
    let mut depth = vec![0u32; tree_count];
    for &(parent, child) in &tree_edges {
        depth[child] = depth[parent] + 1;
    }
    let ni = n as i64;
    // (t, z) for |z| <= n - depth[t] occupies base[t] + z + reach
    let mut base = vec![0; tree_count];
    let mut count = 0;
    for t in 0..tree_count {
        base[t] = count;
        count += 2 * (n - depth[t]) as usize + 1;
    }
    let id = |t: usize, z: i64| -> Option<NodeId> {
        let reach = ni - depth[t] as i64;
        (z.abs() <= reach).then(|| base[t] + (z + reach) as usize)
    };
    let mut edges = Vec::new();
    for t in 0..tree_count {
        let reach = ni - depth[t] as i64;
        for z in -reach..reach {
            edges.push((id(t, z).unwrap(), id(t, z + 1).unwrap(), 1.0));
        }
    }
    for &(parent, child) in &tree_edges {
        let reach = ni - depth[child] as i64;
        for z in -reach..=reach {
            edges.push((id(parent, z).unwrap(), id(child, z).unwrap(), 1.0));
        }
    }
    let root = id(0, 0).unwrap();
    let raw = Graph::from_parts(GraphParts {
        n: count,
        edges,
        rotation: None,
        root: None,
        family: "tree_cross_z".into(),
    })?;
    ball(&raw, root, n)
}
