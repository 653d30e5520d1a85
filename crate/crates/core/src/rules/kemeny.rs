use std::collections::HashMap;

use crate::axis::Axis;
use crate::error::{Error, Result};
use crate::profile::{MajorityTable, Profile};
use crate::ranking::{kendall_tau_unchecked, Candidate, Ranking};

use super::{Rule, RuleOutcome, ScoreTrace, Winners};

/// Largest candidate count for the exhaustive `m!` search.
pub const KEMENY_BRUTE_FORCE_MAX: usize = 8;

/// Total Kendall tau distance from `r` to every voter.
pub fn kemeny_score(r: &Ranking, p: &Profile) -> u64 {
    p.voters().iter().map(|v| kendall_tau_unchecked(r, v) as u64).sum()
}

/// Kemeny's rule by exhaustive search over all `m!` rankings.
///
/// Rankings are built prefix by prefix; appending `x` while `rest` is still
/// unplaced costs `Σ_{y ∈ rest} #{y ≻ x}`, so partial costs only grow and
/// prefixes already above the best complete score are cut.
pub fn kemeny(p: &Profile) -> Result<RuleOutcome> {
    p.require_nonempty()?;
    let m = p.num_candidates();
    if m > KEMENY_BRUTE_FORCE_MAX {
        return Err(Error::capacity(format!(
            "exhaustive Kemeny limited to m <= {KEMENY_BRUTE_FORCE_MAX}, got {m}; supply a single-peaked axis"
        )));
    }
    let t = p.majority_table();
    let mut search = Search {
        t: &t,
        m,
        best: u64::MAX,
        winners: Vec::new(),
        prefix: Vec::with_capacity(m),
    };
    let all: Vec<Candidate> = p.candidates().collect();
    search.descend(&all, 0);
    let Search { best, winners, .. } = search;
    Ok(RuleOutcome {
        rule: Rule::Kemeny,
        winners: Winners::Listed(winners.into_iter().map(Ranking::from_vec_unchecked).collect()),
        trace: ScoreTrace::KemenyScore(best),
    })
}

struct Search<'a> {
    t: &'a MajorityTable,
    m: usize,
    best: u64,
    winners: Vec<Vec<Candidate>>,
    prefix: Vec<Candidate>,
}

impl Search<'_> {
    fn descend(&mut self, rest: &[Candidate], cost: u64) {
        if cost > self.best {
            return;
        }
        if rest.is_empty() {
            if cost < self.best {
                self.best = cost;
                self.winners.clear();
            }
            self.winners.push(self.prefix.clone());
            return;
        }
        for (i, &x) in rest.iter().enumerate() {
            let add: u64 = rest
                .iter()
                .filter(|&&y| y != x)
                .map(|&y| self.t.supporters(y, x))
                .sum();
            let mut next = Vec::with_capacity(rest.len() - 1);
            next.extend_from_slice(&rest[..i]);
            next.extend_from_slice(&rest[i + 1..]);
            self.prefix.push(x);
            self.descend(&next, cost + add);
            self.prefix.pop();
        }
        debug_assert!(self.prefix.len() < self.m);
    }
}

/// Single-peaked Kemeny rankings of a single-peaked profile.
///
/// The remaining candidates always form a stretch of the axis. Any end of
/// the stretch that is a weak Condorcet loser of the remaining candidates
/// can go to the bottom; every such branch is followed, so the result is
/// every single-peaked ranking reachable this way.
pub fn kemeny_sp(p: &Profile, axis: &Axis) -> Result<RuleOutcome> {
    p.require_nonempty()?;
    p.require_single_peaked(axis)?;
    let t = p.majority_table();
    let m = axis.len();
    let mut memo: HashMap<(usize, usize), Vec<Vec<Candidate>>> = HashMap::new();
    let orders = peel(&t, axis, 0, m - 1, &mut memo)?;
    let mut winners: Vec<Ranking> = orders.into_iter().map(Ranking::from_vec_unchecked).collect();
    winners.sort();
    winners.dedup();
    let score = kemeny_score(&winners[0], p);
    Ok(RuleOutcome {
        rule: Rule::KemenySp,
        winners: Winners::Listed(winners),
        trace: ScoreTrace::KemenyScore(score),
    })
}

/// Top-first orders of axis positions `lo..=hi` reachable by peeling weak
/// Condorcet losers off the ends.
fn peel(
    t: &MajorityTable,
    axis: &Axis,
    lo: usize,
    hi: usize,
    memo: &mut HashMap<(usize, usize), Vec<Vec<Candidate>>>,
) -> Result<Vec<Vec<Candidate>>> {
    if lo == hi {
        return Ok(vec![vec![axis.at(lo)]]);
    }
    if let Some(v) = memo.get(&(lo, hi)) {
        return Ok(v.clone());
    }
    let is_loser = |e: usize| {
        let c = axis.at(e);
        (lo..=hi).all(|o| o == e || t.pop(axis.at(o), c) >= 0)
    };
    let mut out = Vec::new();
    for (end, rest) in [(lo, (lo + 1, hi)), (hi, (lo, hi - 1))] {
        if is_loser(end) {
            for mut o in peel(t, axis, rest.0, rest.1, memo)? {
                o.push(axis.at(end));
                out.push(o);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::LawViolation(
            "no axis end is a weak Condorcet loser of a single-peaked profile".into(),
        ));
    }
    memo.insert((lo, hi), out.clone());
    Ok(out)
}
