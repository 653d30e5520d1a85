//! Seeded generators for profiles, graphs and networks. Every generator
//! uses ChaCha8 seeded from a `u64`, so a seed fixes the output.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::axis::{enumerate_sp_rankings, Axis};
use crate::diffusion::{Mode, PreferenceNetwork};
use crate::error::{Error, Result};
use crate::profile::Profile;

/// `n` rankings drawn uniformly (with replacement) from the single-peaked
/// domain of the canonical axis over `m` candidates.
pub fn generate_sp_profile(m: usize, n: usize, seed: u64) -> Result<(Axis, Profile)> {
    if m == 0 {
        return Err(Error::domain("need at least one candidate"));
    }
    let axis = Axis::canonical(m);
    let domain = enumerate_sp_rankings(&axis)?.rankings;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let voters = (0..n)
        .map(|_| domain[rng.gen_range(0..domain.len())].clone())
        .collect();
    let p = Profile::new(m, voters)?;
    Ok((axis, p))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "family")]
pub enum GraphFamily {
    Path,
    Cycle,
    Star,
    Complete,
    /// Erdős–Rényi: each pair is an edge with probability `p`.
    Gnp { p: f64 },
}

impl GraphFamily {
    pub const DETERMINISTIC: [GraphFamily; 4] =
        [GraphFamily::Path, GraphFamily::Cycle, GraphFamily::Star, GraphFamily::Complete];

    pub fn label(&self) -> &'static str {
        match self {
            GraphFamily::Path => "path",
            GraphFamily::Cycle => "cycle",
            GraphFamily::Star => "star",
            GraphFamily::Complete => "complete",
            GraphFamily::Gnp { .. } => "gnp",
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphFamily::Gnp { p } => write!(f, "gnp:{p}"),
            other => f.write_str(other.label()),
        }
    }
}

/// `path | cycle | star | complete | gnp:P`.
impl FromStr for GraphFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(GraphFamily::Path),
            "cycle" => Ok(GraphFamily::Cycle),
            "star" => Ok(GraphFamily::Star),
            "complete" => Ok(GraphFamily::Complete),
            _ => {
                let p = s
                    .strip_prefix("gnp:")
                    .and_then(|p| p.parse::<f64>().ok())
                    .filter(|p| (0.0..=1.0).contains(p))
                    .ok_or_else(|| {
                        Error::domain(format!(
                            "unknown graph family {s:?}, expected path|cycle|star|complete|gnp:P with 0 <= P <= 1"
                        ))
                    })?;
                Ok(GraphFamily::Gnp { p })
            }
        }
    }
}

/// Edges of a graph on vertices `0..n`. A cycle needs three vertices; for
/// fewer it degenerates to a path.
pub fn generate_graph(family: GraphFamily, n: usize, seed: u64) -> Vec<(usize, usize)> {
    match family {
        GraphFamily::Path => (1..n).map(|i| (i - 1, i)).collect(),
        GraphFamily::Cycle => {
            let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            if n >= 3 {
                e.push((n - 1, 0));
            }
            e
        }
        GraphFamily::Star => (1..n).map(|i| (0, i)).collect(),
        GraphFamily::Complete => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect(),
        GraphFamily::Gnp { p } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut e = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(p) {
                        e.push((i, j));
                    }
                }
            }
            e
        }
    }
}

/// A single-peaked network with voters `v1..vn`. The profile uses `seed`;
/// a random graph uses `seed + 1`.
pub fn generate_network(m: usize, n: usize, family: GraphFamily, seed: u64) -> Result<PreferenceNetwork> {
    let (axis, p) = generate_sp_profile(m, n, seed)?;
    let edges = generate_graph(family, n, seed.wrapping_add(1));
    let names = (1..=n).map(|i| format!("v{i}")).collect();
    PreferenceNetwork::new(axis, Mode::SinglePeaked, names, p.voters().to_vec(), edges)
}
