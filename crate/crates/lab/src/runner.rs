use std::collections::BTreeMap;
use std::fs::File;
use std::io::Write;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use congestion_core::analysis::{delta_hyperbolicity, lemma_upper_bound, wedge_cut, DELTA_CAP};
use congestion_core::generators::Params;
use congestion_core::paths::degree_stats;
use congestion_core::remetrize::apply_weights;
use congestion_core::seed::sub_seed;
use congestion_core::{diameter, geodesic_load};
use serde::Serialize;

use crate::config::ExperimentConfig;

/// Overrides the worker count of [`run_experiment`].
pub const THREADS_ENV: &str = "CONGESTION_LAB_THREADS";

pub const CSV_HEADER: [&str; 18] = [
    "family",
    "params",
    "sweep",
    "replicate",
    "status",
    "N",
    "edges",
    "diameter",
    "max_load",
    "argmax_layer",
    "root_load",
    "theorem1_bound",
    "lemma_bound",
    "wedge_bound",
    "cut_load",
    "delta",
    "violations",
    "note",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// Over the `N * E` budget.
    Skipped,
    Disconnected,
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Skipped => "skipped",
            Status::Disconnected => "disconnected",
            Status::Failed => "failed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Replicate {
    Index(u32),
    Median,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub family: String,
    pub params: String,
    pub sweep: u32,
    pub replicate: Replicate,
    pub status: Status,
    pub nodes: Option<f64>,
    pub edges: Option<f64>,
    /// Hop diameter.
    pub diameter: Option<f64>,
    pub max_load: Option<f64>,
    pub argmax_layer: Option<u32>,
    pub root_load: Option<f64>,
    pub theorem1_bound: Option<f64>,
    pub lemma_bound: Option<f64>,
    pub wedge_bound: Option<f64>,
    /// Largest load on the wedge certificate's cut path.
    pub cut_load: Option<f64>,
    pub delta: Option<f64>,
    pub violations: Option<u32>,
    pub note: String,
    /// Seconds; kept out of the CSV so reruns stay byte-identical.
    pub wall_time: f64,
}

impl ResultRow {
    fn empty(family: &str, params: &str, sweep: u32, replicate: Replicate, status: Status) -> Self {
        ResultRow {
            family: family.to_string(),
            params: params.to_string(),
            sweep,
            replicate,
            status,
            nodes: None,
            edges: None,
            diameter: None,
            max_load: None,
            argmax_layer: None,
            root_load: None,
            theorem1_bound: None,
            lemma_bound: None,
            wedge_bound: None,
            cut_load: None,
            delta: None,
            violations: None,
            note: String::new(),
            wall_time: 0.0,
        }
    }

    pub fn csv_record(&self) -> Vec<String> {
        let real = |x: Option<f64>| x.map(|v| format!("{v:.8e}")).unwrap_or_default();
        let int = |x: Option<f64>| x.map(|v| format!("{v}")).unwrap_or_default();
        vec![
            self.family.clone(),
            self.params.clone(),
            self.sweep.to_string(),
            match self.replicate {
                Replicate::Index(i) => i.to_string(),
                Replicate::Median => "median".to_string(),
            },
            self.status.as_str().to_string(),
            int(self.nodes),
            int(self.edges),
            real(self.diameter),
            real(self.max_load),
            self.argmax_layer.map(|v| v.to_string()).unwrap_or_default(),
            real(self.root_load),
            real(self.theorem1_bound),
            real(self.lemma_bound),
            real(self.wedge_bound),
            real(self.cut_load),
            real(self.delta),
            self.violations.map(|v| v.to_string()).unwrap_or_default(),
            self.note.clone(),
        ]
    }
}

/// The fixed parameters as `key=value` pairs, e.g. `p=3 q=7`.
fn describe(params: &Params) -> String {
    let fields = [
        ("k", params.k),
        ("p", params.p),
        ("q", params.q),
        ("dim", params.dim),
        ("r", params.r),
        ("radius", params.n),
        ("side", params.side),
        ("size", params.size),
    ];
    fields
        .iter()
        .filter_map(|(name, v)| v.map(|v| format!("{name}={v}")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_row(config: &ExperimentConfig, sweep: u32, replicate: u32) -> ResultRow {
    let start = Instant::now();
    let family = config.spec.family;
    let mut spec = config.spec;
    let params = describe(&spec.params);
    spec.params.set_sweep(family.sweep_param(), sweep);
    spec.seed = if family.is_randomized() {
        sub_seed(config.seed, replicate as u64)
    } else {
        config.seed
    };
    let mut row = ResultRow::empty(
        family.name(),
        &params,
        sweep,
        Replicate::Index(replicate),
        Status::Ok,
    );
    if let Err(e) = fill_row(config, &spec, &mut row) {
        row.status = Status::Failed;
        row.note = e.to_string();
    }
    row.wall_time = start.elapsed().as_secs_f64();
    row
}

fn fill_row(
    config: &ExperimentConfig,
    spec: &congestion_core::generators::GeneratorSpec,
    row: &mut ResultRow,
) -> Result<()> {
    let graph = spec.generate()?;
    let (n, m) = (graph.node_count(), graph.edge_count());
    row.nodes = Some(n as f64);
    row.edges = Some(m as f64);
    let work = n as f64 * m as f64;
    if work > config.budget {
        row.status = Status::Skipped;
        row.note = format!("N*E = {work:e} over budget {:e}", config.budget);
        return Ok(());
    }
    if !graph.is_connected() {
        row.status = Status::Disconnected;
        return Ok(());
    }
    let graph = match &config.scheme {
        Some(s) => apply_weights(&graph, s)?,
        None => graph,
    };

    let profile = geodesic_load(&graph, config.weighted)?;
    let hops = diameter(&graph, false)?;
    row.diameter = Some(hops);
    row.max_load = Some(profile.max_load);
    row.argmax_layer = graph.layers().map(|l| l[profile.argmax]);
    row.root_load = graph.root().map(|r| profile.load[r]);

    let mut violations = 0;
    if !config.weighted {
        let lemma = lemma_upper_bound(degree_stats(&graph).max as u32, hops);
        row.lemma_bound = Some(lemma);
        if profile.max_load > lemma {
            violations += 1;
        }
    }
    if let (Some(root), Some(_)) = (graph.root(), graph.rotation()) {
        let cert = wedge_cut(&graph, root)?;
        let cut_load = cert
            .cut_path
            .iter()
            .map(|&v| profile.load[v])
            .fold(0.0, f64::max);
        row.theorem1_bound = Some(cert.theorem_bound);
        row.wedge_bound = Some(cert.bound);
        row.cut_load = Some(cut_load);
        if let Err(e) = cert.audit() {
            violations += 1;
            row.note = e;
        }
        if cut_load < cert.theorem_bound {
            violations += 1;
        }
    }
    if config.delta && n <= DELTA_CAP {
        row.delta = Some(delta_hyperbolicity(&graph, config.weighted)?);
    }
    row.violations = Some(violations);
    Ok(())
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len();
    if m % 2 == 1 {
        xs[m / 2]
    } else {
        (xs[m / 2 - 1] + xs[m / 2]) / 2.0
    }
}

/// Median over the `ok` replicates of one sweep value.
fn median_row(rows: &[ResultRow]) -> ResultRow {
    let first = &rows[0];
    let ok: Vec<&ResultRow> = rows.iter().filter(|r| r.status == Status::Ok).collect();
    let status = if ok.is_empty() {
        first.status
    } else {
        Status::Ok
    };
    let mut out = ResultRow::empty(
        &first.family,
        &first.params,
        first.sweep,
        Replicate::Median,
        status,
    );
    let col = |f: fn(&ResultRow) -> Option<f64>| -> Option<f64> {
        let xs: Option<Vec<f64>> = ok.iter().map(|r| f(r)).collect();
        xs.filter(|xs| !xs.is_empty()).map(median)
    };
    out.nodes = col(|r| r.nodes);
    out.edges = col(|r| r.edges);
    out.diameter = col(|r| r.diameter);
    out.max_load = col(|r| r.max_load);
    out.root_load = col(|r| r.root_load);
    out.delta = col(|r| r.delta);
    out.violations = if ok.is_empty() {
        None
    } else {
        Some(ok.iter().filter_map(|r| r.violations).sum())
    };
    out.note = format!("{} of {} replicates ok", ok.len(), rows.len());
    out.wall_time = rows.iter().map(|r| r.wall_time).sum();
    out
}

pub fn worker_count(config: &ExperimentConfig) -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(config.threads)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

/// Runs every (sweep value, replicate) pair and returns the rows in sweep
/// order, each sweep value followed by its median row when there are
/// several replicates. CSV rows are appended and flushed as soon as all
/// earlier rows are done.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    config.validate()?;
    if config.svg.is_some() && config.csv.is_none() {
        bail!("plotting reads the CSV output; set 'csv' as well");
    }
    let reps = config.replicates as usize;
    let jobs: Vec<(u32, u32)> = config
        .sweep
        .iter()
        .flat_map(|&s| (0..config.replicates).map(move |r| (s, r)))
        .collect();

    let mut csv = match &config.csv {
        Some(path) => {
            if let Some(dir) = path.parent() {
                std::fs::create_dir_all(dir)?;
            }
            let mut w = csv::Writer::from_path(path)
                .with_context(|| format!("creating {}", path.display()))?;
            w.write_record(CSV_HEADER)?;
            w.flush()?;
            Some(w)
        }
        None => None,
    };

    let workers = worker_count(config).min(jobs.len());
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    let mut rows = Vec::with_capacity(jobs.len() + config.sweep.len());
    std::thread::scope(|scope| -> Result<()> {
        for _ in 0..workers {
            let tx = tx.clone();
            let (next, jobs) = (&next, &jobs);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(s, r)) = jobs.get(i) else { break };
                if tx.send((i, run_row(config, s, r))).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut group = Vec::new();
        let mut written = 0;
        for (i, row) in rx {
            pending.insert(i, row);
            while let Some(row) = pending.remove(&written) {
                let mut out = vec![row.clone()];
                group.push(row);
                if group.len() == reps {
                    if reps > 1 {
                        out.push(median_row(&group));
                    }
                    group.clear();
                }
                for r in out {
                    if let Some(w) = csv.as_mut() {
                        w.write_record(r.csv_record())?;
                        w.flush()?;
                    }
                    rows.push(r);
                }
                written += 1;
            }
        }
        Ok(())
    })?;

    if let Some(path) = &config.json {
        write_json(path, config, &rows)?;
    }
    if let (Some(svg), Some(csv)) = (&config.svg, &config.csv) {
        crate::plot::emit_plot(csv, svg, &config.overlays)?;
    }
    Ok(rows)
}

fn write_json(path: &Path, config: &ExperimentConfig, rows: &[ResultRow]) -> Result<()> {
    #[derive(Serialize)]
    struct Report<'a> {
        name: &'a str,
        family: &'a str,
        weighted: bool,
        scheme: Option<&'a congestion_core::remetrize::WeightScheme>,
        seed: u64,
        rows: &'a [ResultRow],
    }
    let report = Report {
        name: &config.name,
        family: config.spec.family.name(),
        weighted: config.weighted,
        scheme: config.scheme.as_ref(),
        seed: config.seed,
        rows,
    };
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    serde_json::to_writer_pretty(&mut f, &report)?;
    writeln!(f)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_replicates() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
        let mut a = ResultRow::empty("f", "", 1, Replicate::Index(0), Status::Ok);
        a.max_load = Some(1.0);
        a.violations = Some(0);
        let mut b = a.clone();
        b.max_load = Some(5.0);
        let mut c = a.clone();
        c.status = Status::Disconnected;
        c.max_load = None;
        let m = median_row(&[a, b, c]);
        assert_eq!(m.max_load, Some(3.0));
        assert_eq!(m.note, "2 of 3 replicates ok");
        assert_eq!(m.replicate, Replicate::Median);
    }

    #[test]
    fn record_formatting() {
        let mut r = ResultRow::empty("grid", "dim=2", 10, Replicate::Index(0), Status::Ok);
        r.nodes = Some(100.0);
        r.max_load = Some(8662.5);
        let rec = r.csv_record();
        assert_eq!(rec.len(), CSV_HEADER.len());
        assert_eq!(rec[5], "100");
        assert_eq!(rec[8], "8.66250000e3");
        assert_eq!(rec[7], "");
    }
}
