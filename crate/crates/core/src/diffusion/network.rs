use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::axis::Axis;
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::{kendall_tau_unchecked, Ranking};

/// Whether opinions must stay single-peaked on the network's axis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    SinglePeaked,
    /// Any ranking is allowed; convergence laws are not audited.
    Free,
}

/// Values of both potential functions for one opinion assignment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Potentials {
    /// `Σ_{uv ∈ E} kt(≻_u, ≻_v)`.
    pub edge_kt: u64,
    /// `Σ_{uv ∈ E} |pos(top(u)) − pos(top(v))|` along the axis.
    pub peak_distance: u64,
}

/// An undirected simple graph whose vertices are voters holding rankings.
/// Voters are indexed `0..n` in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceNetwork {
    axis: Axis,
    mode: Mode,
    names: Vec<String>,
    index: HashMap<String, usize>,
    opinions: Vec<Ranking>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl PreferenceNetwork {
    /// Edges are unordered pairs of voter indices; self-loops and repeated
    /// edges are rejected, as are non-single-peaked opinions in SP mode.
    pub fn new(
        axis: Axis,
        mode: Mode,
        names: Vec<String>,
        opinions: Vec<Ranking>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = names.len();
        if opinions.len() != n {
            return Err(Error::domain(format!(
                "{n} voter names but {} opinions",
                opinions.len()
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains(char::is_whitespace) || name.contains(':') || name.starts_with('-') {
                return Err(Error::domain(format!("invalid voter id {name:?}")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::domain(format!("duplicate voter id {name:?}")));
            }
        }
        for (i, r) in opinions.iter().enumerate() {
            if r.len() != axis.len() {
                return Err(Error::domain(format!(
                    "opinion of {} ranks {} candidates, axis has {}",
                    names[i],
                    r.len(),
                    axis.len()
                )));
            }
            if mode == Mode::SinglePeaked && !axis.admits(r) {
                return Err(Error::domain(format!(
                    "opinion of {} is not single-peaked: {}",
                    names[i],
                    axis.format_ranking(r)
                )));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::domain(format!("self-loop at {}", names[u])));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::domain(format!(
                    "repeated edge {} -- {}",
                    names[u], names[v]
                )));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        Ok(PreferenceNetwork {
            axis,
            mode,
            names,
            index,
            opinions,
            edges,
            adjacency,
        })
    }

    pub fn axis(&self) -> &Axis {
        &self.axis
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn num_voters(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    /// Index of a voter id.
    pub fn voter(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVoter(name.to_string()))
    }

    pub(crate) fn check_voter(&self, v: usize) -> Result<()> {
        if v < self.num_voters() {
            Ok(())
        } else {
            Err(Error::UnknownVoter(format!("#{v}")))
        }
    }

    pub fn opinion(&self, v: usize) -> &Ranking {
        &self.opinions[v]
    }

    pub fn opinions(&self) -> &[Ranking] {
        &self.opinions
    }

    /// Edges in declaration order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Open neighbourhood, ascending.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// `P[N(v)]`: the neighbours' opinions in ascending voter order.
    pub fn neighbourhood_profile(&self, v: usize) -> Profile {
        let voters = self.adjacency[v]
            .iter()
            .map(|&u| self.opinions[u].clone())
            .collect();
        Profile::new(self.axis.len(), voters).expect("opinions match the axis")
    }

    /// All opinions as one profile.
    pub fn profile(&self) -> Profile {
        Profile::new(self.axis.len(), self.opinions.clone()).expect("opinions match the axis")
    }

    pub(crate) fn set_opinion(&mut self, v: usize, r: Ranking) {
        self.opinions[v] = r;
    }

    /// Replaces every opinion at once (same validation as construction).
    pub fn with_opinions(&self, opinions: Vec<Ranking>) -> Result<Self> {
        PreferenceNetwork::new(
            self.axis.clone(),
            self.mode,
            self.names.clone(),
            opinions,
            self.edges.clone(),
        )
    }

    pub fn edge_kt(&self) -> u64 {
        self.edges
            .iter()
            .map(|&(u, v)| kendall_tau_unchecked(&self.opinions[u], &self.opinions[v]) as u64)
            .sum()
    }

    pub fn peak_distance(&self) -> u64 {
        self.edges
            .iter()
            .map(|&(u, v)| {
                self.axis
                    .spdist(self.opinions[u].peak(), self.opinions[v].peak()) as u64
            })
            .sum()
    }

    pub fn potentials(&self) -> Potentials {
        Potentials {
            edge_kt: self.edge_kt(),
            peak_distance: self.peak_distance(),
        }
    }

    /// Number of voters at each axis position as their peak.
    pub fn peak_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.axis.len()];
        for r in &self.opinions {
            h[self.axis.position(r.peak())] += 1;
        }
        h
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_voters();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}
