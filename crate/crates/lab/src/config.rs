//! Flat `key = value` experiment files.
//!
//! One assignment per line; `#` starts a comment. Sweeps are written either
//! as a list (`4, 5, 6`) or an inclusive range with an optional stride
//! (`10..50 step 10`). Output paths are resolved against the directory that
//! holds the config file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use congestion_core::generators::{Family, GeneratorSpec, Params};
use congestion_core::remetrize::WeightScheme;

/// Default guardrail on `N * E` for a single instance.
pub const DEFAULT_BUDGET: f64 = 1e10;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    /// Fixed parameters; the swept one is filled in per row.
    pub spec: GeneratorSpec,
    pub sweep: Vec<u32>,
    pub weighted: bool,
    pub scheme: Option<WeightScheme>,
    pub seed: u64,
    pub replicates: u32,
    /// Compute four-point delta for instances under the size cap.
    pub delta: bool,
    pub budget: f64,
    pub threads: Option<usize>,
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    /// Reference slopes drawn on the plot.
    pub overlays: Vec<f64>,
}

impl ExperimentConfig {
    pub fn new(name: &str, spec: GeneratorSpec, sweep: Vec<u32>) -> Self {
        ExperimentConfig {
            name: name.to_string(),
            seed: spec.seed,
            spec,
            sweep,
            weighted: false,
            scheme: None,
            replicates: 1,
            delta: false,
            budget: DEFAULT_BUDGET,
            threads: None,
            csv: None,
            json: None,
            svg: None,
            overlays: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sweep.is_empty() {
            bail!("sweep is empty");
        }
        if self.sweep.windows(2).any(|w| w[0] >= w[1]) {
            bail!("sweep values must be strictly increasing");
        }
        if self.replicates == 0 {
            bail!("replicates must be at least 1");
        }
        if self.replicates > 1 && !self.spec.family.is_randomized() {
            bail!(
                "{} is deterministic; replicates must be 1",
                self.spec.family
            );
        }
        if !(self.budget > 0.0) {
            bail!("budget must be positive");
        }
        if let Some(s) = &self.scheme {
            s.validate()?;
        }
        let mut probe = self.spec;
        probe
            .params
            .set_sweep(probe.family.sweep_param(), self.sweep[0]);
        probe.validate()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        parse(&text, base).with_context(|| format!("in {}", path.display()))
    }
}

fn parse_sweep(value: &str) -> Result<Vec<u32>> {
    if let Some((lo, rest)) = value.split_once("..") {
        let (hi, step) = match rest.split_once("step") {
            Some((hi, step)) => (hi, step.trim().parse::<u32>()?),
            None => (rest, 1),
        };
        let lo: u32 = lo.trim().parse()?;
        let hi: u32 = hi.trim().parse()?;
        if step == 0 || hi < lo {
            bail!("bad range '{value}'");
        }
        return Ok((lo..=hi).step_by(step as usize).collect());
    }
    value
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<u32>()
                .map_err(|e| anyhow!("sweep value '{v}': {e}"))
        })
        .collect()
}

fn parse_bool(value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => bail!("expected true/false, got '{value}'"),
    }
}

pub fn parse(text: &str, base: &Path) -> Result<ExperimentConfig> {
    let mut kv: BTreeMap<String, String> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected key = value", i + 1))?;
        let key = key.trim().to_string();
        if kv.insert(key.clone(), value.trim().to_string()).is_some() {
            bail!("line {}: duplicate key '{key}'", i + 1);
        }
    }

    let mut take = |key: &str| kv.remove(key);
    let num = |v: Option<String>, key: &str| -> Result<Option<u32>> {
        v.map(|s| s.parse().with_context(|| format!("key '{key}'")))
            .transpose()
    };
    let real = |v: Option<String>, key: &str| -> Result<Option<f64>> {
        v.map(|s| s.parse().with_context(|| format!("key '{key}'")))
            .transpose()
    };

    let family: Family = take("family")
        .ok_or_else(|| anyhow!("missing key 'family'"))?
        .parse()?;
    let params = Params {
        k: num(take("k"), "k")?,
        n: num(take("radius"), "radius")?,
        p: num(take("p"), "p")?,
        q: num(take("q"), "q")?,
        dim: num(take("dim"), "dim")?,
        side: num(take("side"), "side")?,
        r: num(take("r"), "r")?,
        size: num(take("size"), "size")?,
    };
    let seed: u64 = take("seed").map(|s| s.parse()).transpose()?.unwrap_or(0);
    let sweep = parse_sweep(&take("sweep").ok_or_else(|| anyhow!("missing key 'sweep'"))?)?;
    let name = take("name").unwrap_or_else(|| family.name().to_string());

    let beta = real(take("beta"), "beta")?;
    let c = real(take("c"), "c")?;
    let lo = real(take("lo"), "lo")?;
    let hi = real(take("hi"), "hi")?;
    let missing = |what: &str, scheme: &str| anyhow!("scheme {scheme} needs '{what}'");
    let scheme = match take("scheme").as_deref() {
        None | Some("none") => None,
        Some("uniform") => Some(WeightScheme::Uniform {
            c: c.ok_or_else(|| missing("c", "uniform"))?,
        }),
        Some("bounded_random") => Some(WeightScheme::BoundedRandom {
            lo: lo.ok_or_else(|| missing("lo", "bounded_random"))?,
            hi: hi.ok_or_else(|| missing("hi", "bounded_random"))?,
            seed,
        }),
        Some("sphere_geometric") => Some(WeightScheme::SphereGeometric {
            beta: beta.ok_or_else(|| missing("beta", "sphere_geometric"))?,
        }),
        Some("sphere_calibrated") => Some(WeightScheme::SphereCalibrated {
            c: c.unwrap_or(std::f64::consts::TAU),
        }),
        Some(other) => bail!("unknown scheme '{other}'"),
    };

    let mut config = ExperimentConfig::new(&name, GeneratorSpec::new(family, params, seed), sweep);
    config.weighted = match take("weighted") {
        Some(v) => parse_bool(&v)?,
        None => scheme.is_some(),
    };
    config.scheme = scheme;
    config.replicates = num(take("replicates"), "replicates")?.unwrap_or(1);
    config.delta = take("delta")
        .map(|v| parse_bool(&v))
        .transpose()?
        .unwrap_or(false);
    config.budget = real(take("budget"), "budget")?.unwrap_or(DEFAULT_BUDGET);
    config.threads = take("threads").map(|v| v.parse()).transpose()?;
    config.csv = take("csv").map(|p| base.join(p));
    config.json = take("json").map(|p| base.join(p));
    config.svg = take("svg").map(|p| base.join(p));
    config.overlays = match take("overlay") {
        Some(v) => v
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .with_context(|| format!("overlay '{s}'"))
            })
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    if let Some(key) = kv.keys().next() {
        bail!("unknown key '{key}'");
    }
    config.validate()?;
    Ok(config)
}
