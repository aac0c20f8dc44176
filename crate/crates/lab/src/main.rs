use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use congestion_core::analysis::{
    bollobas_bound, delta_hyperbolicity, lemma_upper_bound, theorem1_bound, wedge_cut,
    CutCertificate,
};
use congestion_core::generators::{Family, GeneratorSpec, Params};
use congestion_core::paths::degree_stats;
use congestion_core::remetrize::{apply_weights, WeightScheme};
use congestion_core::{diameter, geodesic_load, Graph};
use congestion_lab::{emit_plot, fit_from_csv, run_experiment, ExperimentConfig};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "congestion-lab",
    version,
    about = "Geodesic congestion scaling experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from one of the generator families.
    Generate(GenerateArgs),
    /// Equal-split geodesic load of every node.
    Load {
        #[arg(long)]
        graph: PathBuf,
        /// Use edge lengths instead of hop counts.
        #[arg(long)]
        weighted: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Wedge certificate, delta and closed-form bounds.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cert: bool,
        #[arg(long)]
        delta: bool,
        #[arg(long)]
        bounds: bool,
        #[arg(long)]
        weighted: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rescale edge lengths.
    Remetrize(RemetrizeArgs),
    /// Run a sweep described by a config file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
    /// Log-log least squares on two CSV columns.
    Fit {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value = "N")]
        x: String,
        #[arg(long, default_value = "max_load")]
        y: String,
    },
    /// Log-log plot of max load against N.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        /// Reference slope; repeatable.
        #[arg(long)]
        overlay: Vec<f64>,
    },
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long)]
    side: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    size: Option<u32>,
    #[arg(long)]
    radius: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RemetrizeArgs {
    #[arg(long)]
    graph: PathBuf,
    /// uniform | bounded_random | sphere_geometric | sphere_calibrated
    #[arg(long)]
    scheme: String,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    lo: Option<f64>,
    #[arg(long)]
    hi: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Graph::from_json(&text)?)
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn scheme(a: &RemetrizeArgs) -> Result<WeightScheme> {
    let need = |v: Option<f64>, name: &str| {
        v.with_context(|| format!("scheme {} needs --{name}", a.scheme))
    };
    Ok(match a.scheme.as_str() {
        "uniform" => WeightScheme::Uniform { c: need(a.c, "c")? },
        "bounded_random" => WeightScheme::BoundedRandom {
            lo: need(a.lo, "lo")?,
            hi: need(a.hi, "hi")?,
            seed: a.seed,
        },
        "sphere_geometric" => WeightScheme::SphereGeometric {
            beta: need(a.beta, "beta")?,
        },
        "sphere_calibrated" => WeightScheme::SphereCalibrated {
            c: a.c.unwrap_or(std::f64::consts::TAU),
        },
        other => bail!("unknown scheme '{other}'"),
    })
}

#[derive(Serialize)]
struct Bounds {
    nodes: usize,
    max_degree: usize,
    diameter: f64,
    lemma_upper_bound: f64,
    /// Planar balls only.
    theorem1_bound: Option<f64>,
    /// Regular graphs only, with `C = 0`.
    bollobas_bound: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CutCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<Bounds>,
}

fn bounds(g: &Graph) -> Result<Bounds> {
    let n = g.node_count();
    let stats = degree_stats(g);
    let hops = diameter(g, false)?;
    let theorem1 = match (g.root(), g.rotation()) {
        (Some(root), Some(_)) => {
            let radius = g.hop_distances(root).into_iter().max().unwrap_or(0);
            if radius > 0 {
                Some(theorem1_bound(n as u64, radius)?)
            } else {
                None
            }
        }
        _ => None,
    };
    let bollobas = if stats.min == stats.max && stats.max >= 3 && n >= 2 {
        Some(bollobas_bound(stats.max as u32, n as u64, 0.0)?)
    } else {
        None
    };
    Ok(Bounds {
        nodes: n,
        max_degree: stats.max,
        diameter: hops,
        lemma_upper_bound: lemma_upper_bound(stats.max as u32, hops),
        theorem1_bound: theorem1,
        bollobas_bound: bollobas,
    })
}

fn main() -> Result<()> {
    run(Cli::parse())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(a) => {
            let params = Params {
                k: a.k,
                n: a.radius,
                p: a.p,
                q: a.q,
                dim: a.dim,
                side: a.side,
                r: a.r,
                size: a.size,
            };
            let g = GeneratorSpec::new(a.family, params, a.seed).generate()?;
            write(&a.out, &g.to_json())?;
        }
        Command::Load {
            graph,
            weighted,
            out,
        } => {
            let profile = geodesic_load(&read_graph(&graph)?, weighted)?;
            write(&out, &profile.to_json())?;
        }
        Command::Analyze {
            graph,
            cert,
            delta,
            bounds: want_bounds,
            weighted,
            out,
        } => {
            if !(cert || delta || want_bounds) {
                bail!("pick at least one of --cert, --delta, --bounds");
            }
            let g = read_graph(&graph)?;
            let report = Report {
                certificate: if cert {
                    let root = g.root().context("graph has no root")?;
                    Some(wedge_cut(&g, root)?)
                } else {
                    None
                },
                delta: if delta {
                    Some(delta_hyperbolicity(&g, weighted)?)
                } else {
                    None
                },
                bounds: if want_bounds { Some(bounds(&g)?) } else { None },
            };
            write(&out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
        }
        Command::Remetrize(a) => {
            let g = apply_weights(&read_graph(&a.graph)?, &scheme(&a)?)?;
            write(&a.out, &g.to_json())?;
        }
        Command::Experiment { config } => {
            let config = ExperimentConfig::load(&config)?;
            let rows = run_experiment(&config)?;
            let failed = rows
                .iter()
                .filter(|r| r.status != congestion_lab::Status::Ok)
                .count();
            eprintln!("{}: {} rows, {failed} not ok", config.name, rows.len());
        }
        Command::Fit { csv, x, y } => {
            let fit = fit_from_csv(&csv, &x, &y)?;
            println!("{}", serde_json::to_string(&fit)?);
        }
        Command::Plot { csv, svg, overlay } => {
            if let Some(fit) = emit_plot(&csv, &svg, &overlay)? {
                println!("slope = {:.3}", fit.slope);
            }
        }
    }
    Ok(())
}
