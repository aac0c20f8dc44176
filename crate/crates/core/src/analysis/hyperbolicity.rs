//! Four-point Gromov hyperbolicity by exhaustive quadruple scan.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::paths::distance_matrix;

/// Default node cap for the quartic scan.
pub const DELTA_CAP: usize = 400;

pub fn delta_hyperbolicity(graph: &Graph, weighted: bool) -> Result<f64> {
    delta_hyperbolicity_capped(graph, weighted, DELTA_CAP)
}

/// `delta = max over quadruples of (S1 - S2) / 2`, where `S1 >= S2` are the
/// two largest of the three pairwise distance sums.
pub fn delta_hyperbolicity_capped(graph: &Graph, weighted: bool, cap: usize) -> Result<f64> {
    let n = graph.node_count();
    if n > cap {
        return Err(Error::SizeCap {
            what: "delta hyperbolicity",
            n,
            cap,
        });
    }
    let d = distance_matrix(graph, weighted)?;
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            let di = &d[i];
            let mut best = 0.0f64;
            for j in i + 1..n {
                let dj = &d[j];
                let dij = di[j];
                for k in j + 1..n {
                    let dk = &d[k];
                    let (dik, djk) = (di[k], dj[k]);
                    for l in k + 1..n {
                        let s1 = dij + dk[l];
                        let s2 = dik + dj[l];
                        let s3 = djk + di[l];
                        let (hi, lo) = if s1 > s2 { (s1, s2) } else { (s2, s1) };
                        let gap = if s3 >= hi {
                            s3 - hi
                        } else if s3 > lo {
                            hi - s3
                        } else {
                            hi - lo
                        };
                        best = if gap > best { gap } else { best };
                    }
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max);
    Ok(best / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_grid, gen_regular_tree};
    use crate::graph::GraphParts;

    /// Straight from the definition: sort the three sums.
    fn naive_delta(d: &[Vec<f64>]) -> f64 {
        let n = d.len();
        let mut best = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = [d[i][j] + d[k][l], d[i][k] + d[j][l], d[i][l] + d[j][k]];
                        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
                        best = best.max(s[0] - s[1]);
                    }
                }
            }
        }
        best / 2.0
    }

    #[test]
    fn trees_are_zero_hyperbolic() {
        let g = gen_regular_tree(3, 3).unwrap();
        assert_eq!(delta_hyperbolicity(&g, false).unwrap(), 0.0);
    }

    #[test]
    fn four_cycle() {
        let g = Graph::unit(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], "c").unwrap();
        assert_eq!(delta_hyperbolicity(&g, false).unwrap(), 1.0);
    }

    #[test]
    fn matches_naive_scan() {
        for side in 2..5 {
            let g = gen_grid(2, side).unwrap();
            let d = distance_matrix(&g, false).unwrap();
            assert_eq!(delta_hyperbolicity(&g, false).unwrap(), naive_delta(&d));
        }
        let g = Graph::from_parts(GraphParts {
            n: 5,
            edges: vec![
                (0, 1, 0.7),
                (1, 2, 1.3),
                (2, 3, 0.4),
                (3, 4, 2.0),
                (4, 0, 1.1),
                (1, 3, 0.9),
            ],
            ..Default::default()
        })
        .unwrap();
        let d = distance_matrix(&g, true).unwrap();
        assert_eq!(delta_hyperbolicity(&g, true).unwrap(), naive_delta(&d));
    }

    #[test]
    fn cap_and_connectivity() {
        let g = gen_grid(2, 21).unwrap();
        assert!(matches!(
            delta_hyperbolicity(&g, false),
            Err(Error::SizeCap { .. })
        ));
        let g = Graph::unit(4, &[(0, 1), (2, 3)], "x").unwrap();
        assert!(matches!(
            delta_hyperbolicity(&g, false),
            Err(Error::Disconnected)
        ));
    }
}
