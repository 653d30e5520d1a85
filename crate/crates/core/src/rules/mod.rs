//! Set-valued ranking rules and the tie-breaking resolver used for updates.

mod dodgson;
mod kemeny;
mod scores;
mod stv;
mod tiebreak;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::axis::{enumerate_sp_rankings, Axis};
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::{Candidate, Ranking};

pub use dodgson::{dodgson, dodgson_scores, weak_dodgson, weak_dodgson_scores, DODGSON_MAX_CANDIDATES, DODGSON_MAX_VOTERS};
pub use kemeny::{kemeny, kemeny_score, kemeny_sp, KEMENY_BRUTE_FORCE_MAX};
pub use scores::{borda, borda_scores, copeland, copeland_doubled_scores, mmc, mmc_scores};
pub use stv::stv_ranking;
pub use tiebreak::{tie_break, TieBreakContext};

/// Materialization cap for refinement sets of score weak orders.
pub const REFINEMENT_CAP: u128 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    #[serde(rename = "kemeny")]
    Kemeny,
    #[serde(rename = "kemeny-sp")]
    KemenySp,
    #[serde(rename = "mmc")]
    Mmc,
    #[serde(rename = "borda")]
    Borda,
    #[serde(rename = "copeland")]
    Copeland,
    #[serde(rename = "dodgson")]
    Dodgson,
    #[serde(rename = "weak-dodgson")]
    WeakDodgson,
    #[serde(rename = "stv")]
    Stv,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::Kemeny,
        Rule::KemenySp,
        Rule::Mmc,
        Rule::Borda,
        Rule::Copeland,
        Rule::Dodgson,
        Rule::WeakDodgson,
        Rule::Stv,
    ];

    pub fn selector(self) -> &'static str {
        match self {
            Rule::Kemeny => "kemeny",
            Rule::KemenySp => "kemeny-sp",
            Rule::Mmc => "mmc",
            Rule::Borda => "borda",
            Rule::Copeland => "copeland",
            Rule::Dodgson => "dodgson",
            Rule::WeakDodgson => "weak-dodgson",
            Rule::Stv => "stv",
        }
    }

    /// Evaluates the rule. `axis` is required by `kemeny-sp`; for `kemeny`
    /// beyond the brute-force limit a single-peaked profile falls back to the
    /// axis recursion, which yields the single-peaked part of the winner set.
    pub fn apply(self, p: &Profile, axis: Option<&Axis>) -> Result<RuleOutcome> {
        match self {
            Rule::Kemeny => match axis {
                Some(ax)
                    if p.num_candidates() > KEMENY_BRUTE_FORCE_MAX
                        && p.is_single_peaked(ax)? =>
                {
                    kemeny_sp(p, ax)
                }
                _ => kemeny(p),
            },
            Rule::KemenySp => {
                let ax = axis.ok_or_else(|| Error::domain("kemeny-sp needs an axis"))?;
                kemeny_sp(p, ax)
            }
            Rule::Mmc => mmc(p),
            Rule::Borda => borda(p),
            Rule::Copeland => copeland(p),
            Rule::Dodgson => dodgson(p),
            Rule::WeakDodgson => weak_dodgson(p),
            Rule::Stv => stv_ranking(p),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.selector())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.selector() == s)
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown rule {s:?}, expected kemeny|kemeny-sp|mmc|borda|copeland|dodgson|weak-dodgson|stv"
                ))
            })
    }
}

/// A weak order over candidates, best tier first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakOrder {
    tiers: Vec<Vec<Candidate>>,
}

impl WeakOrder {
    /// Groups candidates by score; `lower_is_better` picks the direction.
    pub fn from_scores(scores: &[i64], lower_is_better: bool) -> Self {
        let mut idx: Vec<usize> = (0..scores.len()).collect();
        idx.sort_by_key(|&i| (if lower_is_better { scores[i] } else { -scores[i] }, i));
        let mut tiers: Vec<Vec<Candidate>> = Vec::new();
        let mut last: Option<i64> = None;
        for i in idx {
            if last == Some(scores[i]) {
                tiers.last_mut().expect("tier open").push(Candidate::from_index(i));
            } else {
                tiers.push(vec![Candidate::from_index(i)]);
                last = Some(scores[i]);
            }
        }
        WeakOrder { tiers }
    }

    pub fn tiers(&self) -> &[Vec<Candidate>] {
        &self.tiers
    }

    fn tier_index(&self) -> Vec<usize> {
        let m: usize = self.tiers.iter().map(Vec::len).sum();
        let mut t = vec![0; m];
        for (k, tier) in self.tiers.iter().enumerate() {
            for c in tier {
                t[c.index()] = k;
            }
        }
        t
    }

    /// Whether `r` is a linear refinement of this weak order.
    pub fn is_refined_by(&self, r: &Ranking) -> bool {
        let t = self.tier_index();
        r.len() == t.len() && r.candidates().windows(2).all(|w| t[w[0].index()] <= t[w[1].index()])
    }

    /// Number of linear refinements, `∏ |tier|!`.
    pub fn refinement_count(&self) -> u128 {
        self.tiers
            .iter()
            .map(|t| (1..=t.len() as u128).product::<u128>())
            .product()
    }

    /// All refinements in lexicographic order of candidate indices.
    pub fn refinements(&self) -> Vec<Ranking> {
        let mut out = vec![Vec::new()];
        for tier in &self.tiers {
            let perms = permutations(tier);
            let mut next = Vec::with_capacity(out.len() * perms.len());
            for prefix in &out {
                for p in &perms {
                    let mut v: Vec<Candidate> = prefix.clone();
                    v.extend_from_slice(p);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Ranking::from_vec_unchecked).collect()
    }

    /// The unique refinement closest to `current` in Kendall tau: each tier
    /// is ordered as `current` orders it.
    pub fn closest_refinement(&self, current: &Ranking) -> Ranking {
        let pos = current.positions();
        let mut v = Vec::with_capacity(pos.len());
        for tier in &self.tiers {
            let mut t = tier.clone();
            t.sort_by_key(|c| pos[c.index()]);
            v.extend(t);
        }
        Ranking::from_vec_unchecked(v)
    }
}

fn permutations(items: &[Candidate]) -> Vec<Vec<Candidate>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// The winning rankings of a rule: either listed explicitly or all
/// refinements of a score weak order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Winners {
    Listed(Vec<Ranking>),
    Refinements(WeakOrder),
}

impl Winners {
    pub fn count(&self) -> u128 {
        match self {
            Winners::Listed(v) => v.len() as u128,
            Winners::Refinements(w) => w.refinement_count(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn contains(&self, r: &Ranking) -> bool {
        match self {
            Winners::Listed(v) => v.contains(r),
            Winners::Refinements(w) => w.is_refined_by(r),
        }
    }

    /// All winning rankings, up to `cap`.
    pub fn materialize(&self, cap: u128) -> Result<Vec<Ranking>> {
        let n = self.count();
        if n > cap {
            return Err(Error::capacity(format!("{n} winning rankings exceed cap {cap}")));
        }
        Ok(match self {
            Winners::Listed(v) => v.clone(),
            Winners::Refinements(w) => w.refinements(),
        })
    }

    /// Winning rankings that are single-peaked w.r.t. `axis`, in the
    /// enumeration order of the single-peaked domain for refinement sets.
    pub fn single_peaked_members(&self, axis: &Axis) -> Result<Vec<Ranking>> {
        match self {
            Winners::Listed(v) => Ok(v.iter().filter(|r| axis.admits(r)).cloned().collect()),
            Winners::Refinements(w) => {
                let seq = enumerate_sp_rankings(axis)?;
                Ok(seq.rankings.into_iter().filter(|r| w.is_refined_by(r)).collect())
            }
        }
    }

    pub fn has_single_peaked(&self, axis: &Axis) -> Result<bool> {
        Ok(!self.single_peaked_members(axis)?.is_empty())
    }

    /// Candidates ranked first by some winner.
    pub fn possible_tops(&self) -> Vec<Candidate> {
        let mut out: Vec<Candidate> = match self {
            Winners::Listed(v) => v.iter().map(Ranking::peak).collect(),
            Winners::Refinements(w) => w.tiers.first().cloned().unwrap_or_default(),
        };
        out.sort();
        out.dedup();
        out
    }

    /// Candidates ranked last by some winner.
    pub fn possible_bottoms(&self) -> Vec<Candidate> {
        let mut out: Vec<Candidate> = match self {
            Winners::Listed(v) => v.iter().map(Ranking::last).collect(),
            Winners::Refinements(w) => w.tiers.last().cloned().unwrap_or_default(),
        };
        out.sort();
        out.dedup();
        out
    }

    /// A winner ranking `c` first (or last when `bottom`), if any.
    pub fn member_with(&self, c: Candidate, bottom: bool) -> Option<Ranking> {
        match self {
            Winners::Listed(v) => v
                .iter()
                .find(|r| if bottom { r.last() == c } else { r.peak() == c })
                .cloned(),
            Winners::Refinements(w) => {
                let tier = if bottom { w.tiers.last()? } else { w.tiers.first()? };
                if !tier.contains(&c) {
                    return None;
                }
                // Any refinement works: put c at the requested end of its tier.
                let mut tiers = w.tiers.clone();
                let k = if bottom { tiers.len() - 1 } else { 0 };
                tiers[k].retain(|&x| x != c);
                if bottom {
                    tiers[k].push(c);
                } else {
                    tiers[k].insert(0, c);
                }
                Some(Ranking::from_vec_unchecked(tiers.concat()))
            }
        }
    }
}

/// Scores a rule computed on the way to its winners.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "values", rename_all = "snake_case")]
pub enum ScoreTrace {
    /// Minimal total Kendall tau distance to the profile.
    KemenyScore(u64),
    /// One integer score per candidate index.
    PerCandidate(Vec<i64>),
    /// Per-candidate scores stored doubled, so half points stay integral.
    PerCandidateDoubled(Vec<i64>),
    /// Candidates in the order of their elimination (one branch).
    Elimination(Vec<Candidate>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleOutcome {
    pub rule: Rule,
    pub winners: Winners,
    pub trace: ScoreTrace,
}

impl RuleOutcome {
    pub fn per_candidate_scores(&self) -> Option<&[i64]> {
        match &self.trace {
            ScoreTrace::PerCandidate(v) | ScoreTrace::PerCandidateDoubled(v) => Some(v),
            _ => None,
        }
    }
}
