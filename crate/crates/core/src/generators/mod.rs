//! Deterministic, seeded constructors for every graph family.

mod lattice;
mod random;
mod tessellation;
mod tree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use lattice::{bridge_endpoints, gen_bridged_grids, gen_grid, gen_tree_cross_z};
pub use random::{gen_random_regular, gen_sphere_wired, sample_degree_sequence, MAX_ATTEMPTS};
pub use tessellation::{check_hpq, gen_hpq};
pub use tree::{gen_regular_tree, regular_tree_size};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    RegularTree,
    Hpq,
    SphereWired,
    Grid,
    TreeCrossZ,
    BridgedGrids,
    RandomRegular,
}

/// Which parameter a sweep varies for a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    Radius,
    Side,
    Size,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::RegularTree,
        Family::Hpq,
        Family::SphereWired,
        Family::Grid,
        Family::TreeCrossZ,
        Family::BridgedGrids,
        Family::RandomRegular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RegularTree => "regular_tree",
            Family::Hpq => "hpq",
            Family::SphereWired => "sphere_wired",
            Family::Grid => "grid",
            Family::TreeCrossZ => "tree_cross_z",
            Family::BridgedGrids => "bridged_grids",
            Family::RandomRegular => "random_regular",
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, Family::SphereWired | Family::RandomRegular)
    }

    /// Families generated with a planar rotation system.
    pub fn is_planar(self) -> bool {
        matches!(self, Family::RegularTree | Family::Hpq)
    }

    pub fn sweep_param(self) -> SweepParam {
        match self {
            Family::Grid | Family::BridgedGrids => SweepParam::Side,
            Family::RandomRegular => SweepParam::Size,
            _ => SweepParam::Radius,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family '{s}'")))
    }
}

/// Integer parameters; each family reads the subset it needs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    /// Tree degree.
    pub k: Option<u32>,
    /// Ball radius.
    pub n: Option<u32>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    /// Grid dimension.
    pub dim: Option<u32>,
    /// Grid side length.
    pub side: Option<u32>,
    /// Regular degree.
    pub r: Option<u32>,
    /// Node count.
    pub size: Option<u32>,
}

impl Params {
    pub fn set_sweep(&mut self, param: SweepParam, value: u32) {
        match param {
            SweepParam::Radius => self.n = Some(value),
            SweepParam::Side => self.side = Some(value),
            SweepParam::Size => self.size = Some(value),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub params: Params,
    /// Used by randomized families only.
    pub seed: u64,
}

fn need(value: Option<u32>, name: &str, family: Family) -> Result<u32> {
    value.ok_or_else(|| Error::InvalidParameter(format!("{family} needs parameter '{name}'")))
}

impl GeneratorSpec {
    pub fn new(family: Family, params: Params, seed: u64) -> Self {
        GeneratorSpec {
            family,
            params,
            seed,
        }
    }

    /// Checks parameter presence and ranges without building anything.
    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        let f = self.family;
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match f {
            Family::RegularTree | Family::SphereWired => {
                let k = need(p.k, "k", f)?;
                let n = need(p.n, "n", f)?;
                if k < 3 {
                    return bad(format!("{f} needs k >= 3"));
                }
                if f == Family::SphereWired && n < 1 {
                    return bad(format!("{f} needs radius >= 1"));
                }
            }
            Family::Hpq => {
                need(p.n, "n", f)?;
                check_hpq(need(p.p, "p", f)?, need(p.q, "q", f)?)?;
            }
            Family::Grid => {
                if need(p.dim, "dim", f)? < 1 || need(p.side, "side", f)? < 2 {
                    return bad("grid needs dim >= 1 and side >= 2".into());
                }
            }
            Family::TreeCrossZ => {
                need(p.n, "n", f)?;
            }
            Family::BridgedGrids => {
                if need(p.side, "side", f)? < 2 {
                    return bad("bridged grids need side >= 2".into());
                }
            }
            Family::RandomRegular => {
                let r = need(p.r, "r", f)?;
                let size = need(p.size, "size", f)?;
                if r < 3 || size <= r || (r as u64 * size as u64) % 2 == 1 {
                    return bad(format!(
                        "random_regular needs r >= 3, N > r and r*N even (r={r}, N={size})"
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let p = &self.params;
        let get = |v: Option<u32>| v.unwrap_or_default();
        match self.family {
            Family::RegularTree => gen_regular_tree(get(p.k), get(p.n)),
            Family::Hpq => gen_hpq(get(p.p), get(p.q), get(p.n)),
            Family::SphereWired => gen_sphere_wired(get(p.k), get(p.n), self.seed),
            Family::Grid => gen_grid(get(p.dim), get(p.side)),
            Family::TreeCrossZ => gen_tree_cross_z(get(p.n)),
            Family::BridgedGrids => gen_bridged_grids(get(p.side)),
            Family::RandomRegular => gen_random_regular(get(p.r), get(p.size), self.seed),
        }
    }
}

/// Small instances of every family, a few seeds each for the randomized
/// ones. Every member is connected and cheap enough for all-pairs work.
pub fn standard_corpus() -> Vec<GeneratorSpec> {
    let mut out = Vec::new();
    let mut push =
        |family, params: Params, seed| out.push(GeneratorSpec::new(family, params, seed));
    let p = Params::default;
    for (k, max_n) in [(3, 5), (4, 4), (5, 3)] {
        for n in 0..=max_n {
            push(
                Family::RegularTree,
                Params {
                    k: Some(k),
                    n: Some(n),
                    ..p()
                },
                0,
            );
        }
    }
    for (pp, q, max_n) in [
        (3, 7, 5),
        (4, 5, 4),
        (5, 4, 4),
        (7, 3, 5),
        (3, 8, 4),
        (6, 4, 3),
    ] {
        for n in 0..=max_n {
            push(
                Family::Hpq,
                Params {
                    p: Some(pp),
                    q: Some(q),
                    n: Some(n),
                    ..p()
                },
                0,
            );
        }
    }
    for (k, max_n) in [(3, 4), (4, 3), (6, 2)] {
        for n in 1..=max_n {
            for seed in 0..3 {
                push(
                    Family::SphereWired,
                    Params {
                        k: Some(k),
                        n: Some(n),
                        ..p()
                    },
                    seed,
                );
            }
        }
    }
    for side in 2..=12 {
        push(
            Family::Grid,
            Params {
                dim: Some(2),
                side: Some(side),
                ..p()
            },
            0,
        );
    }
    for side in 2..=6 {
        push(
            Family::Grid,
            Params {
                dim: Some(3),
                side: Some(side),
                ..p()
            },
            0,
        );
    }
    push(
        Family::Grid,
        Params {
            dim: Some(1),
            side: Some(9),
            ..p()
        },
        0,
    );
    for n in 0..=4 {
        push(Family::TreeCrossZ, Params { n: Some(n), ..p() }, 0);
    }
    for side in 2..=8 {
        push(
            Family::BridgedGrids,
            Params {
                side: Some(side),
                ..p()
            },
            0,
        );
    }
    for (r, sizes) in [
        (3, &[10u32, 20, 50, 100][..]),
        (4, &[9, 30, 80][..]),
        (5, &[12, 40][..]),
    ] {
        for &size in sizes {
            for seed in 0..3 {
                push(
                    Family::RandomRegular,
                    Params {
                        r: Some(r),
                        size: Some(size),
                        ..p()
                    },
                    seed,
                );
            }
        }
    }
    out
}
