//! Combinatorial balls of the regular hyperbolic tessellation {p, q}.
//!
//! The disk is grown one ring of faces at a time. The boundary is kept as a
//! counterclockwise cycle; every boundary vertex `b` still needs
//! `q - deg(b)` outward edges, and one new face fills each gap between
//! consecutive outward edges. A face whose boundary side already spans `s`
//! old vertices needs `p - s` new ones; when that is exactly one, the two
//! outward edges meet at a shared vertex.
//!
//! Rotations are counterclockwise. A boundary vertex keeps its rotation in
//! the form `[next, inward.., prev]`, so outward edges are appended.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphParts, NodeId};
use crate::paths::ball;

pub fn check_hpq(p: u32, q: u32) -> Result<()> {
    // 1/p + 1/q < 1/2  <=>  (p - 2)(q - 2) > 4
    if p < 3 || q < 3 || (p - 2) * (q - 2) <= 4 {
        return Err(Error::InvalidParameter(format!(
            "{{{p},{q}}} is not a hyperbolic tessellation (need 1/p + 1/q < 1/2)"
        )));
    }
    Ok(())
}

/// Radius-`n` hop ball around a vertex of the {p, q} tessellation, with a
/// planar rotation system and BFS layers.
pub fn gen_hpq(p: u32, q: u32, n: u32) -> Result<Graph> {
    check_hpq(p, q)?;
    // face ring L only touches rings L - 1 and L + 1, so a vertex at hop
    // distance d sits in ring <= d and rings 0..=n+1 hold the whole ball
    // with every edge
    let mut disk = Disk::new(p as usize, q as usize);
    for _ in 0..=n {
        disk.grow()?;
    }
    let raw = Graph::from_parts(GraphParts {
        n: disk.rotation.len(),
        edges: disk.edges.iter().map(|&(u, v)| (u, v, 1.0)).collect(),
        rotation: Some(disk.rotation),
        root: None,
        family: "hpq".into(),
    })?;
    ball(&raw, 0, n)
}

struct Disk {
    p: usize,
    q: usize,
    rotation: Vec<Vec<NodeId>>,
    faces: Vec<usize>,
    edges: Vec<(NodeId, NodeId)>,
    boundary: Vec<NodeId>,
}

impl Disk {
    fn new(p: usize, q: usize) -> Self {
        Disk {
            p,
            q,
            rotation: vec![Vec::new()],
            faces: vec![0],
            edges: Vec::new(),
            boundary: vec![0],
        }
    }

    fn add_vertex(&mut self) -> NodeId {
        self.rotation.push(Vec::new());
        self.faces.push(0);
        self.rotation.len() - 1
    }

    fn grow(&mut self) -> Result<()> {
        let m = self.boundary.len();
        let closes = |msg: &str| Error::InvalidParameter(format!("tessellation closes up: {msg}"));

        // boundary position of every outward edge, in cyclic order
        let mut outward = Vec::new();
        for (i, &b) in self.boundary.iter().enumerate() {
            let deg = self.rotation[b].len();
            if deg > self.q {
                return Err(closes("vertex over-saturated"));
            }
            outward.extend(std::iter::repeat_n(i, self.q - deg));
        }
        let t_count = outward.len();
        if t_count < 2 {
            return Err(closes("fewer than two outward edges"));
        }

        // face t lies between outward edges t and t+1
        let mut span = Vec::with_capacity(t_count);
        let mut merge = Vec::with_capacity(t_count);
        let mut extra = Vec::with_capacity(t_count);
        for t in 0..t_count {
            let (a, b) = (outward[t], outward[(t + 1) % t_count]);
            let mut steps = (b + m - a) % m;
            if steps == 0 && t == t_count - 1 && m > 1 {
                steps = m;
            }
            let old = steps + 1;
            if old >= self.p {
                return Err(closes("face fully bounded by old vertices"));
            }
            let fresh = self.p - old;
            span.push(steps);
            merge.push(fresh == 1);
            extra.push(fresh.saturating_sub(2));
        }

        let start = (0..t_count)
            .find(|&t| !merge[(t + t_count - 1) % t_count])
            .ok_or_else(|| closes("every outward edge meets at one vertex"))?;

        // endpoints and the new boundary, walked counterclockwise from `start`
        let mut end = vec![usize::MAX; t_count];
        let mut extras: Vec<Vec<NodeId>> = vec![Vec::new(); t_count];
        let mut next_boundary = Vec::new();
        for s in 0..t_count {
            let t = (start + s) % t_count;
            let prev = (t + t_count - 1) % t_count;
            end[t] = if s > 0 && merge[prev] {
                end[prev]
            } else {
                let v = self.add_vertex();
                next_boundary.push(v);
                v
            };
            if !merge[t] {
                for _ in 0..extra[t] {
                    let v = self.add_vertex();
                    extras[t].push(v);
                    next_boundary.push(v);
                }
            }
        }

        // inward neighbors of each new vertex, in walk order
        let mut inward: Vec<(NodeId, Vec<NodeId>)> = Vec::new();
        for s in 0..t_count {
            let t = (start + s) % t_count;
            let b = self.boundary[outward[t]];
            match inward.last_mut() {
                Some((v, list)) if *v == end[t] => list.push(b),
                _ => inward.push((end[t], vec![b])),
            }
        }

        for t in 0..t_count {
            let b = self.boundary[outward[t]];
            self.rotation[b].push(end[t]);
            self.edges.push((b, end[t]));
            if !merge[t] {
                let mut walk = vec![end[t]];
                walk.extend(&extras[t]);
                walk.push(end[(t + 1) % t_count]);
                for w in walk.windows(2) {
                    self.edges.push((w[0], w[1]));
                }
            }
            // face membership
            let mut members: Vec<NodeId> = (0..=span[t])
                .map(|j| self.boundary[(outward[t] + j) % m])
                .collect();
            members.push(end[t]);
            if !merge[t] {
                members.extend(&extras[t]);
                members.push(end[(t + 1) % t_count]);
            }
            for v in members {
                self.faces[v] += 1;
            }
        }

        let len = next_boundary.len();
        if len < 3 {
            return Err(closes("degenerate boundary"));
        }
        let mut inward_of = std::collections::HashMap::new();
        for (v, list) in inward {
            inward_of.insert(v, list);
        }
        for (j, &v) in next_boundary.iter().enumerate() {
            let next = next_boundary[(j + 1) % len];
            let prev = next_boundary[(j + len - 1) % len];
            let mut rot = vec![next];
            if let Some(list) = inward_of.get(&v) {
                rot.extend(list.iter().rev());
            }
            rot.push(prev);
            self.rotation[v] = rot;
        }

        for &b in &self.boundary {
            if self.rotation[b].len() != self.q || self.faces[b] != self.q {
                return Err(closes("interior vertex left incomplete"));
            }
        }
        self.boundary = next_boundary;
        Ok(())
    }
}
