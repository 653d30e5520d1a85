//! Single-peaked axes and the canonical enumeration of the single-peaked domain.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ranking::{Candidate, Ranking, MAX_CANDIDATES};

/// Largest axis for which the full single-peaked domain is materialized.
pub const MAX_ENUMERATION_CANDIDATES: usize = 20;

/// A linear order `c1 ▷ c2 ▷ … ▷ cm` of the candidates, carrying their names.
///
/// Candidate `i` is named `names[i]`; `order` lists candidates from the left
/// end of the axis to the right end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Axis {
    names: Arc<[String]>,
    order: Vec<Candidate>,
    position: Vec<usize>,
}

impl Axis {
    /// Axis over `names`, in the given order. Candidate `i` sits at position `i`.
    pub fn from_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let m = names.len();
        Self::with_order(names.into(), (0..m).map(Candidate::from_index).collect())
    }

    /// Axis `a ▷ b ▷ c ▷ …` (or `c1 ▷ c2 ▷ …` beyond 26 candidates).
    pub fn canonical(m: usize) -> Self {
        let names: Vec<String> = if m <= 26 {
            (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (1..=m).map(|i| format!("c{i}")).collect()
        };
        Self::from_names(names).expect("canonical names are distinct")
    }

    pub fn with_order(names: Arc<[String]>, order: Vec<Candidate>) -> Result<Self> {
        let m = names.len();
        if m == 0 {
            return Err(Error::domain("an axis needs at least one candidate"));
        }
        if m > MAX_CANDIDATES {
            return Err(Error::capacity(format!("{m} candidates exceed {MAX_CANDIDATES}")));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || a.contains(char::is_whitespace) || a.contains('>') {
                return Err(Error::domain(format!("invalid candidate name {a:?}")));
            }
            if names[..i].contains(a) {
                return Err(Error::domain(format!("duplicate candidate {a:?}")));
            }
        }
        if order.len() != m {
            return Err(Error::domain("axis order must list every candidate once"));
        }
        // validates the permutation
        Ranking::new(order.clone())?;
        let mut position = vec![0; m];
        for (i, c) in order.iter().enumerate() {
            position[c.index()] = i;
        }
        Ok(Axis {
            names,
            order,
            position,
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, c: Candidate) -> &str {
        &self.names[c.index()]
    }

    pub fn candidate(&self, name: &str) -> Option<Candidate> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(Candidate::from_index)
    }

    /// Candidates from the left end to the right end.
    pub fn order(&self) -> &[Candidate] {
        &self.order
    }

    pub fn position(&self, c: Candidate) -> usize {
        self.position[c.index()]
    }

    pub fn at(&self, i: usize) -> Candidate {
        self.order[i]
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Self::with_order(self.names.clone(), order).expect("reversal of a valid axis")
    }

    /// Distance of two candidates along the axis.
    pub fn spdist(&self, a: Candidate, b: Candidate) -> usize {
        self.position(a).abs_diff(self.position(b))
    }

    /// The extreme opinion `c1 ≻ … ≻ cm`.
    pub fn extreme_up(&self) -> Ranking {
        Ranking::from_vec_unchecked(self.order.clone())
    }

    /// The extreme opinion `cm ≻ … ≻ c1`.
    pub fn extreme_down(&self) -> Ranking {
        self.extreme_up().reversed()
    }

    pub fn extreme(&self, e: Extreme) -> Ranking {
        match e {
            Extreme::Up => self.extreme_up(),
            Extreme::Down => self.extreme_down(),
        }
    }

    /// Whether `r` is single-peaked w.r.t. this axis.
    pub fn is_single_peaked(&self, r: &Ranking) -> Result<bool> {
        if r.len() != self.len() {
            return Err(Error::domain(format!(
                "ranking over {} candidates, axis over {}",
                r.len(),
                self.len()
            )));
        }
        Ok(self.admits(r))
    }

    /// Single-peakedness without the size check: every top-k prefix of `r`
    /// must occupy a contiguous stretch of the axis.
    pub(crate) fn admits(&self, r: &Ranking) -> bool {
        let cs = r.candidates();
        let mut lo = self.position(cs[0]);
        let mut hi = lo;
        for &c in &cs[1..] {
            let p = self.position(c);
            if lo > 0 && p == lo - 1 {
                lo = p;
            } else if p == hi + 1 {
                hi = p;
            } else {
                return false;
            }
        }
        true
    }

    pub fn format_ranking(&self, r: &Ranking) -> String {
        let parts: Vec<&str> = r.candidates().iter().map(|&c| self.name(c)).collect();
        parts.join(" > ")
    }

    /// Parses `a > b > c` against this axis' candidate names.
    pub fn parse_ranking(&self, s: &str) -> Result<Ranking> {
        let mut order = Vec::with_capacity(self.len());
        for tok in s.split('>') {
            let tok = tok.trim();
            let c = self
                .candidate(tok)
                .ok_or_else(|| Error::domain(format!("unknown candidate {tok:?}")))?;
            order.push(c);
        }
        if order.len() != self.len() {
            return Err(Error::domain(format!(
                "ranking lists {} candidates, expected {}",
                order.len(),
                self.len()
            )));
        }
        Ranking::new(order)
    }
}

/// One of the two extreme opinions of an axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extreme {
    Up,
    Down,
}

impl std::str::FromStr for Extreme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "up" => Ok(Extreme::Up),
            "down" => Ok(Extreme::Down),
            _ => Err(Error::domain(format!("unknown extreme {s:?}, expected up|down"))),
        }
    }
}

impl std::fmt::Display for Extreme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Extreme::Up => "up",
            Extreme::Down => "down",
        })
    }
}

/// All `2^(m-1)` single-peaked rankings of an axis, ordered so that for each
/// adjacent axis pair `(c_i, c_{i+1})` the rankings preferring `c_i` form a
/// prefix of length `thresholds[i]`.
#[derive(Clone, Debug)]
pub struct SpRankingSequence {
    pub axis: Axis,
    pub rankings: Vec<Ranking>,
    /// `thresholds[i]` = number of leading rankings with `c_i ≻ c_{i+1}`.
    pub thresholds: Vec<usize>,
}

/// Builds the ordered single-peaked domain by inserting axis candidates one
/// at a time at the right end.
///
/// Each ranking over `c1..c_{k-1}` is replaced by copies with `c_k` inserted
/// at every slot below `c_{k-1}`, lowest slot first; the sequence then ends
/// with the full reversal `c_k ≻ … ≻ c1`.
pub fn enumerate_sp_rankings(axis: &Axis) -> Result<SpRankingSequence> {
    let m = axis.len();
    if m > MAX_ENUMERATION_CANDIDATES {
        return Err(Error::capacity(format!(
            "enumerating 2^{} rankings exceeds the m <= {MAX_ENUMERATION_CANDIDATES} guard",
            m - 1
        )));
    }
    // Work on axis positions, map back to candidates at the end.
    let mut seq: Vec<Vec<u8>> = vec![vec![0]];
    for k in 1..m as u8 {
        let mut next = Vec::with_capacity(seq.len() * 2);
        for r in &seq {
            let top_prev = r.iter().position(|&x| x == k - 1).expect("previous end present");
            for slot in (top_prev + 1..=r.len()).rev() {
                let mut ext = Vec::with_capacity(r.len() + 1);
                ext.extend_from_slice(&r[..slot]);
                ext.push(k);
                ext.extend_from_slice(&r[slot..]);
                next.push(ext);
            }
        }
        next.push((0..=k).rev().collect());
        seq = next;
    }
    let rankings: Vec<Ranking> = seq
        .into_iter()
        .map(|r| Ranking::from_vec_unchecked(r.into_iter().map(|p| axis.at(p as usize)).collect()))
        .collect();
    let thresholds = (0..m.saturating_sub(1))
        .map(|i| {
            let (a, b) = (axis.at(i), axis.at(i + 1));
            rankings.iter().take_while(|r| r.prefers(a, b)).count()
        })
        .collect();
    Ok(SpRankingSequence {
        axis: axis.clone(),
        rankings,
        thresholds,
    })
}
