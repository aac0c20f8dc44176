//! Edge-length rescaling: every edge length `d_e` becomes `w_e * d_e`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::paths::PathDag;
use crate::seed::{rng, sub_seed};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightScheme {
    Uniform {
        c: f64,
    },
    /// i.i.d. uniform multipliers on `[lo, hi]`, one stream per edge id.
    BoundedRandom {
        lo: f64,
        hi: f64,
        seed: u64,
    },
    /// Ring edges in sphere `k` get `beta^k`.
    SphereGeometric {
        beta: f64,
    },
    /// Ring edges in sphere `k` get `c (k + 1) / |S_k|`, so every ring has
    /// total length close to `c` times its radius.
    SphereCalibrated {
        c: f64,
    },
}

impl WeightScheme {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            WeightScheme::Uniform { c } | WeightScheme::SphereCalibrated { c } => {
                c.is_finite() && c > 0.0
            }
            WeightScheme::BoundedRandom { lo, hi, .. } => {
                lo.is_finite() && hi.is_finite() && lo > 0.0 && hi >= lo
            }
            WeightScheme::SphereGeometric { beta } => beta > 0.0 && beta < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "invalid weight scheme {self:?}"
            )))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightScheme::Uniform { .. } => "uniform",
            WeightScheme::BoundedRandom { .. } => "bounded_random",
            WeightScheme::SphereGeometric { .. } => "sphere_geometric",
            WeightScheme::SphereCalibrated { .. } => "sphere_calibrated",
        }
    }
}

/// Per-edge multipliers `w_e`, indexed by edge id.
pub fn multipliers(graph: &Graph, scheme: &WeightScheme) -> Result<Vec<f64>> {
    scheme.validate()?;
    let m = graph.edge_count();
    let w = match *scheme {
        WeightScheme::Uniform { c } => vec![c; m],
        WeightScheme::BoundedRandom { lo, hi, seed } => (0..m)
            .map(|id| rng(sub_seed(seed, id as u64)).gen_range(lo..=hi))
            .collect(),
        WeightScheme::SphereGeometric { beta } => {
            let layer = graph.layers().ok_or(Error::MissingLayers)?;
            ring_multipliers(graph, layer, |k| beta.powi(k as i32))
        }
        WeightScheme::SphereCalibrated { c } => {
            let layer = graph.layers().ok_or(Error::MissingLayers)?;
            let mut sizes: Vec<usize> = Vec::new();
            for &k in layer {
                let k = k as usize;
                if sizes.len() <= k {
                    sizes.resize(k + 1, 0);
                }
                sizes[k] += 1;
            }
            ring_multipliers(graph, layer, |k| {
                c * (k + 1) as f64 / sizes[k as usize] as f64
            })
        }
    };
    Ok(w)
}

fn ring_multipliers(graph: &Graph, layer: &[u32], w: impl Fn(u32) -> f64) -> Vec<f64> {
    graph
        .edges()
        .iter()
        .map(|e| {
            if layer[e.u] == layer[e.v] {
                w(layer[e.u])
            } else {
                1.0
            }
        })
        .collect()
}

/// Same topology, rotation and layers; lengths multiplied by the scheme.
pub fn apply_weights(graph: &Graph, scheme: &WeightScheme) -> Result<Graph> {
    let w = multipliers(graph, scheme)?;
    let lengths: Vec<f64> = graph
        .edges()
        .iter()
        .zip(&w)
        .map(|(e, w)| w * e.length)
        .collect();
    graph.with_lengths(&lengths)
}

/// Triangles `[a, b, c]` (ascending) in which one edge is longer than the
/// other two together.
pub fn check_triangle(graph: &Graph) -> Vec<[NodeId; 3]> {
    let mut out = Vec::new();
    for a in 0..graph.node_count() {
        let na = graph.neighbors(a);
        for (i, &b) in na.iter().enumerate().filter(|(_, &b)| b > a) {
            for &c in &na[i + 1..] {
                let Some(bc) = graph.edge_length(b, c) else {
                    continue;
                };
                let ab = graph.edge_length(a, b).unwrap();
                let ac = graph.edge_length(a, c).unwrap();
                if ab > ac + bc || ac > ab + bc || bc > ab + ac {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Min and max of `d'(u, v) / d(u, v)` over `sample_pairs` random pairs of
/// distinct nodes, using each graph's own lengths.
pub fn distance_distortion(
    original: &Graph,
    remetrized: &Graph,
    sample_pairs: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let n = original.node_count();
    if remetrized.node_count() != n || remetrized.edge_count() != original.edge_count() {
        return Err(Error::InvalidParameter(
            "graphs must share their topology".into(),
        ));
    }
    if n < 2 || sample_pairs == 0 {
        return Err(Error::InvalidParameter(
            "need at least one pair of distinct nodes".into(),
        ));
    }
    let mut r = rng(seed);
    let mut by_source: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    for _ in 0..sample_pairs {
        let u = r.gen_range(0..n);
        let mut v = r.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        by_source.entry(u).or_default().push(v);
    }

    let mut before = PathDag::new(n, true);
    let mut after = PathDag::new(n, true);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (u, targets) in by_source {
        before.run(original, u);
        after.run(remetrized, u);
        for v in targets {
            let (d0, d1) = (before.dist[v], after.dist[v]);
            if !d0.is_finite() || !d1.is_finite() {
                return Err(Error::Disconnected);
            }
            let ratio = d1 / d0;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    Ok((lo, hi))
}
