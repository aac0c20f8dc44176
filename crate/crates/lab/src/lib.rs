//! Experiment plumbing: config files, the sweep runner, CSV fits and plots.

pub mod config;
pub mod fit;
pub mod plot;
pub mod runner;

pub use config::ExperimentConfig;
pub use fit::fit_from_csv;
pub use plot::emit_plot;
pub use runner::{run_experiment, ResultRow, Status};
