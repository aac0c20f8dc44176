//! Face tracing on a rotation system.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Traces every face of the embedding given by the rotation system. Each face
/// is returned as its cyclic vertex sequence. The successor of dart `u -> v`
/// is `v -> w` where `w` follows `u` in the rotation at `v`.
pub fn trace_faces(graph: &Graph) -> Result<Vec<Vec<NodeId>>> {
    let rot = graph.rotation().ok_or(Error::MissingRotation)?;
    let mut position: HashMap<(NodeId, NodeId), usize> = HashMap::new();
    for (v, order) in rot.iter().enumerate() {
        for (i, &u) in order.iter().enumerate() {
            position.insert((v, u), i);
        }
    }
    let mut used: HashMap<(NodeId, NodeId), bool> = HashMap::new();
    let mut faces = Vec::new();
    for (u, order) in rot.iter().enumerate() {
        for &v in order {
            if used.contains_key(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            while used.insert((a, b), true).is_none() {
                face.push(a);
                let at_b = &rot[b];
                let next = at_b[(position[&(b, a)] + 1) % at_b.len()];
                a = b;
                b = next;
            }
            faces.push(face);
        }
    }
    Ok(faces)
}

/// `V - E + F` for the traced embedding; 2 exactly when the rotation system
/// describes a planar embedding of a connected graph. An edgeless graph
/// counts its single surrounding face.
pub fn euler_characteristic(graph: &Graph) -> Result<i64> {
    let faces = (trace_faces(graph)?.len() as i64).max(1);
    Ok(graph.node_count() as i64 - graph.edge_count() as i64 + faces)
}
