//! Congestion-scaling toolkit: graph families, geodesic node load under
//! unit all-pairs demand, lower-bound certificates for planar balls,
//! closed-form load bounds, four-point hyperbolicity and log-log fits.

pub mod analysis;
pub mod error;
pub mod generators;
pub mod graph;
pub mod load;
pub mod paths;
pub mod planar;
pub mod remetrize;
pub mod seed;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, GraphParts, NodeId};
pub use load::{geodesic_load, LoadProfile};
pub use paths::{ball, bfs_sssp, diameter, dijkstra_sssp, sphere, SsspResult};
