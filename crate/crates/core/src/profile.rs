//! Preference profiles and pairwise-majority statistics.

use std::collections::BTreeMap;

use crate::axis::Axis;
use crate::error::{Error, Result};
use crate::ranking::{Candidate, Ranking};

/// A multiset of rankings over the shared candidate set `0..m`.
/// Voter `i` holds `voters()[i]`; multiplicity is repetition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    m: usize,
    voters: Vec<Ranking>,
}

impl Profile {
    pub fn new(m: usize, voters: Vec<Ranking>) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("a profile needs at least one candidate"));
        }
        if let Some(r) = voters.iter().find(|r| r.len() != m) {
            return Err(Error::domain(format!(
                "ranking over {} candidates in a profile over {m}",
                r.len()
            )));
        }
        Ok(Profile { m, voters })
    }

    pub fn empty(m: usize) -> Self {
        Profile { m, voters: Vec::new() }
    }

    /// Profile from `(count, ranking)` groups, expanded in order.
    pub fn from_counts(m: usize, groups: &[(usize, Ranking)]) -> Result<Self> {
        let voters = groups
            .iter()
            .flat_map(|(k, r)| std::iter::repeat_n(r.clone(), *k))
            .collect();
        Self::new(m, voters)
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn num_voters(&self) -> usize {
        self.voters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.voters.is_empty()
    }

    pub fn voters(&self) -> &[Ranking] {
        &self.voters
    }

    pub fn candidates(&self) -> impl Iterator<Item = Candidate> {
        (0..self.m).map(Candidate::from_index)
    }

    /// Number of voters holding exactly `r`.
    pub fn count(&self, r: &Ranking) -> usize {
        self.voters.iter().filter(|v| *v == r).count()
    }

    /// Distinct rankings with their multiplicities, in first-seen order.
    pub fn grouped(&self) -> Vec<(usize, Ranking)> {
        let mut out: Vec<(usize, Ranking)> = Vec::new();
        for r in &self.voters {
            match out.iter_mut().find(|(_, x)| x == r) {
                Some((k, _)) => *k += 1,
                None => out.push((1, r.clone())),
            }
        }
        out
    }

    /// Multiplicity map, ordered by ranking.
    pub fn histogram(&self) -> BTreeMap<Ranking, usize> {
        let mut h = BTreeMap::new();
        for r in &self.voters {
            *h.entry(r.clone()).or_insert(0) += 1;
        }
        h
    }

    pub fn is_single_peaked(&self, axis: &Axis) -> Result<bool> {
        if axis.len() != self.m {
            return Err(Error::domain(format!(
                "axis over {} candidates, profile over {}",
                axis.len(),
                self.m
            )));
        }
        Ok(self.voters.iter().all(|r| axis.admits(r)))
    }

    pub(crate) fn require_single_peaked(&self, axis: &Axis) -> Result<()> {
        if self.is_single_peaked(axis)? {
            Ok(())
        } else {
            Err(Error::domain("profile is not single-peaked w.r.t. the axis"))
        }
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.voters.is_empty() {
            Err(Error::domain("rule applied to an empty profile"))
        } else {
            Ok(())
        }
    }

    pub fn push(&mut self, r: Ranking) -> Result<()> {
        if r.len() != self.m {
            return Err(Error::domain("ranking size does not match profile"));
        }
        self.voters.push(r);
        Ok(())
    }

    pub fn relabel(&self, perm: &[Candidate]) -> Self {
        Profile {
            m: self.m,
            voters: self.voters.iter().map(|r| r.relabel(perm)).collect(),
        }
    }

    pub fn majority_table(&self) -> MajorityTable {
        MajorityTable::new(self)
    }
}

/// Popularity margins `pop(a, b) = #{a ≻ b} − #{b ≻ a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorityTable {
    m: usize,
    n: usize,
    pop: Vec<i64>,
}

impl MajorityTable {
    fn new(p: &Profile) -> Self {
        let m = p.m;
        let mut pop = vec![0i64; m * m];
        for r in &p.voters {
            let cs = r.candidates();
            for i in 0..m {
                for j in i + 1..m {
                    let (a, b) = (cs[i].index(), cs[j].index());
                    pop[a * m + b] += 1;
                    pop[b * m + a] -= 1;
                }
            }
        }
        MajorityTable {
            m,
            n: p.voters.len(),
            pop,
        }
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn num_voters(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn pop(&self, a: Candidate, b: Candidate) -> i64 {
        self.pop[a.index() * self.m + b.index()]
    }

    /// `#{v : a ≻_v b}`.
    pub fn supporters(&self, a: Candidate, b: Candidate) -> u64 {
        ((self.n as i64 + self.pop(a, b)) / 2) as u64
    }

    /// `max_{c'} pop(c', c)`, the worst defeat of `c` (0 for `m = 1`).
    pub fn worst_defeat(&self, c: Candidate) -> i64 {
        (0..self.m)
            .filter(|&o| o != c.index())
            .map(|o| self.pop(Candidate::from_index(o), c))
            .max()
            .unwrap_or(0)
    }

    fn candidates(&self) -> impl Iterator<Item = Candidate> {
        (0..self.m).map(Candidate::from_index)
    }

    pub fn is_weak_winner(&self, c: Candidate) -> bool {
        self.candidates().all(|o| o == c || self.pop(o, c) <= 0)
    }

    pub fn is_strict_winner(&self, c: Candidate) -> bool {
        self.candidates().all(|o| o == c || self.pop(o, c) < 0)
    }

    pub fn is_weak_loser(&self, c: Candidate) -> bool {
        self.candidates().all(|o| o == c || self.pop(o, c) >= 0)
    }

    pub fn is_strict_loser(&self, c: Candidate) -> bool {
        self.candidates().all(|o| o == c || self.pop(o, c) > 0)
    }

    pub fn condorcet_winners(&self) -> CondorcetSet {
        CondorcetSet {
            weak: self.candidates().filter(|&c| self.is_weak_winner(c)).collect(),
            strict: self.candidates().find(|&c| self.is_strict_winner(c)),
        }
    }

    pub fn condorcet_losers(&self) -> CondorcetSet {
        CondorcetSet {
            weak: self.candidates().filter(|&c| self.is_weak_loser(c)).collect(),
            strict: self.candidates().find(|&c| self.is_strict_loser(c)),
        }
    }
}

/// Weak Condorcet winners (or losers) plus the strict one, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondorcetSet {
    pub weak: Vec<Candidate>,
    pub strict: Option<Candidate>,
}

impl CondorcetSet {
    pub fn contains(&self, c: Candidate) -> bool {
        self.weak.contains(&c)
    }
}

pub fn majority_table(p: &Profile) -> MajorityTable {
    p.majority_table()
}

pub fn condorcet_winners(p: &Profile) -> CondorcetSet {
    p.majority_table().condorcet_winners()
}

pub fn condorcet_losers(p: &Profile) -> CondorcetSet {
    p.majority_table().condorcet_losers()
}

/// Weak Condorcet winners of a single-peaked profile read off the peaks: every
/// candidate between the lower and upper median peak (inclusive, in axis
/// order). An empty profile has every candidate as a weak winner.
pub fn median_peak_winners(p: &Profile, axis: &Axis) -> Result<Vec<Candidate>> {
    p.require_single_peaked(axis)?;
    let n = p.num_voters();
    let (lo, hi) = if n == 0 {
        (0, axis.len() - 1)
    } else {
        let mut peaks: Vec<usize> = p.voters().iter().map(|r| axis.position(r.peak())).collect();
        peaks.sort_unstable();
        if n % 2 == 1 {
            (peaks[n / 2], peaks[n / 2])
        } else {
            (peaks[n / 2 - 1], peaks[n / 2])
        }
    };
    let mut out: Vec<Candidate> = (lo..=hi).map(|i| axis.at(i)).collect();
    out.sort();
    Ok(out)
}
