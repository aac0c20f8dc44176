//! Geodesic node load under one unit of demand per unordered node pair.
//!
//! Each pair's unit is split equally over all of its shortest paths, and a
//! node is charged for the share of paths that pass through it as an
//! interior point. Endpoints are never charged for their own demand.

mod brute;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::paths::PathDag;

pub use brute::{brute_force_load, BRUTE_FORCE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Routing {
    EqualSplitGeodesic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoadProfile {
    pub load: Vec<f64>,
    pub total_demand: f64,
    pub max_load: f64,
    pub argmax: NodeId,
    pub routing: Routing,
}

impl LoadProfile {
    pub(crate) fn from_loads(load: Vec<f64>) -> Self {
        let n = load.len();
        let (argmax, max_load) =
            load.iter()
                .copied()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (v, x)| {
                    if x > best.1 {
                        (v, x)
                    } else {
                        best
                    }
                });
        LoadProfile {
            load,
            total_demand: (n as f64) * (n as f64 - 1.0) / 2.0,
            max_load,
            argmax,
            routing: Routing::EqualSplitGeodesic,
        }
    }

    pub fn node_count(&self) -> usize {
        self.load.len()
    }

    /// Compact report: `{"load":[...],"max":x,"argmax":v,"total_demand":d}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Report<'a> {
            load: &'a [f64],
            max: f64,
            argmax: NodeId,
            total_demand: f64,
        }
        let mut text = serde_json::to_string(&Report {
            load: &self.load,
            max: self.max_load,
            argmax: self.argmax,
            total_demand: self.total_demand,
        })
        .expect("profile json is always serializable");
        text.push('\n');
        text
    }
}

/// Sources handled per partial sum. Depends only on the node count so the
/// reduction order, and therefore every bit of the result, is the same for
/// any number of worker threads.
fn chunk_size(n: usize) -> usize {
    (n / 256).max(32)
}

/// Equal-split geodesic load via dependency accumulation over each
/// source's shortest-path DAG.
pub fn geodesic_load(graph: &Graph, weighted: bool) -> Result<LoadProfile> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = graph.node_count();
    let sources: Vec<NodeId> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(chunk_size(n))
        .map(|chunk| {
            let mut dag = PathDag::new(n, weighted);
            let mut delta = vec![0.0; n];
            let mut acc = vec![0.0; n];
            for &s in chunk {
                dag.run(graph, s);
                for &w in dag.order.iter().rev() {
                    let coeff = (1.0 + delta[w]) / dag.sigma[w];
                    if w != s {
                        dag.for_each_pred(graph, w, |v| delta[v] += dag.sigma[v] * coeff);
                        acc[w] += delta[w];
                    }
                }
                for &w in &dag.order {
                    delta[w] = 0.0;
                }
            }
            acc
        })
        .collect();
    let mut load = vec![0.0; n];
    for part in &partials {
        for (l, p) in load.iter_mut().zip(part) {
            *l += p;
        }
    }
    // every unordered pair was visited from both ends
    for l in &mut load {
        *l *= 0.5;
    }
    Ok(LoadProfile::from_loads(load))
}

pub fn load_at(profile: &LoadProfile, node: NodeId) -> Result<f64> {
    profile.load.get(node).copied().ok_or(Error::InvalidNode {
        node,
        n: profile.node_count(),
    })
}

pub fn max_load(profile: &LoadProfile) -> (NodeId, f64) {
    (profile.argmax, profile.max_load)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `bins + 1` bin edges spanning `[min, max]`.
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

/// Equal-width histogram of node loads; the last bin is closed.
pub fn load_histogram(profile: &LoadProfile, bins: usize) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::InvalidParameter(
            "histogram needs at least one bin".into(),
        ));
    }
    let lo = profile.load.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = profile.max_load;
    let width = (hi - lo) / bins as f64;
    let edges = (0..=bins)
        .map(|i| if i == bins { hi } else { lo + width * i as f64 })
        .collect();
    let mut counts = vec![0; bins];
    for &x in &profile.load {
        let bin = if width > 0.0 {
            (((x - lo) / width) as usize).min(bins - 1)
        } else {
            0
        };
        counts[bin] += 1;
    }
    Ok(Histogram { edges, counts })
}
