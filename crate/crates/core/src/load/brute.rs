use std::collections::VecDeque;

use num::{BigInt, BigRational, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::load::LoadProfile;

/// Largest graph the enumeration oracle accepts.
pub const BRUTE_FORCE_CAP: usize = 14;

fn hops(adj: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Enumerates every hop-shortest path of every unordered pair explicitly and
/// splits each pair's unit of demand in exact rational arithmetic. Shares no
/// code with [`crate::load::geodesic_load`].
pub fn brute_force_load(graph: &Graph) -> Result<LoadProfile> {
    let n = graph.node_count();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::SizeCap {
            what: "brute-force load",
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| graph.neighbors(v).to_vec()).collect();
    let dist: Vec<Vec<usize>> = (0..n)
        .map(|s| {
            hops(&adj, s)
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or(Error::Disconnected)
        })
        .collect::<Result<_>>()?;

    let mut load = vec![BigRational::zero(); n];
    for s in 0..n {
        for t in s + 1..n {
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![vec![s]];
            while let Some(path) = stack.pop() {
                let u = *path.last().unwrap();
                if u == t {
                    paths.push(path);
                    continue;
                }
                for &w in &adj[u] {
                    if dist[s][w] == dist[s][u] + 1 && dist[w][t] + 1 == dist[u][t] {
                        let mut next = path.clone();
                        next.push(w);
                        stack.push(next);
                    }
                }
            }
            let total = BigInt::from(paths.len());
            let mut through = vec![0usize; n];
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    through[v] += 1;
                }
            }
            for (v, &c) in through.iter().enumerate() {
                if c > 0 {
                    load[v] += BigRational::new(BigInt::from(c), total.clone());
                }
            }
        }
    }
    let load = load
        .iter()
        .map(|x| x.to_f64().expect("finite rational"))
        .collect();
    Ok(LoadProfile::from_loads(load))
}
