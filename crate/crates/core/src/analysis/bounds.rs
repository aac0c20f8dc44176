//! Closed-form load and diameter bounds.

use crate::error::{Error, Result};

/// Routing-independent lower bound on the busiest node of a planar ball with
/// `nodes` nodes and radius `radius`: `N^2 / (16 n) - N / 8`. May be
/// negative for tiny balls.
pub fn theorem1_bound(nodes: u64, radius: u32) -> Result<f64> {
    if radius == 0 {
        return Err(Error::InvalidParameter("radius must be positive".into()));
    }
    let n = nodes as f64;
    Ok(n * n / (16.0 * radius as f64) - n / 8.0)
}

/// Degree-diameter upper bound on any node's geodesic load:
/// `D^2 * delta^2 * (delta - 1)^max(D - 2, 0)`, with `D` rounded up to a
/// whole hop count.
pub fn lemma_upper_bound(delta_max: u32, diameter: f64) -> f64 {
    let d = diameter.ceil();
    let delta = delta_max as f64;
    let exponent = (d - 2.0).max(0.0);
    delta * delta * (delta - 1.0).powf(exponent) * d * d
}

/// Diameter bound for random `r`-regular graphs on `nodes` nodes:
/// `log_{r-1} N + log_{r-1} log_{r-1} N + c`.
pub fn bollobas_bound(r: u32, nodes: u64, c: f64) -> Result<f64> {
    if r <= 2 {
        return Err(Error::InvalidParameter(format!("need r >= 3, got {r}")));
    }
    if nodes < 2 {
        return Err(Error::InvalidParameter(format!("need N >= 2, got {nodes}")));
    }
    let base = (r - 1) as f64;
    let l = (nodes as f64).ln() / base.ln();
    Ok(l + l.ln() / base.ln() + c)
}

/// Limiting exponent `log(2k - 1) / log(k - 1)` of the sphere-wired tree.
pub fn construction_exponent(k: u32) -> Result<f64> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("need k >= 3, got {k}")));
    }
    let k = k as f64;
    Ok((2.0 * k - 1.0).ln() / (k - 1.0).ln())
}
