use crate::error::{Error, Result};
use crate::profile::{MajorityTable, Profile};
use crate::ranking::Candidate;

use super::{Rule, RuleOutcome, ScoreTrace, WeakOrder, Winners};

pub const DODGSON_MAX_CANDIDATES: usize = 6;
pub const DODGSON_MAX_VOTERS: usize = 10;

fn check_capacity(p: &Profile) -> Result<()> {
    let (m, n) = (p.num_candidates(), p.num_voters());
    if m > DODGSON_MAX_CANDIDATES || n > DODGSON_MAX_VOTERS {
        return Err(Error::capacity(format!(
            "exact Dodgson scores limited to m <= {DODGSON_MAX_CANDIDATES}, n <= {DODGSON_MAX_VOTERS}; got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

/// Minimal number of adjacent swaps making each candidate the strict
/// Condorcet winner.
pub fn dodgson_scores(p: &Profile) -> Result<Vec<i64>> {
    p.require_nonempty()?;
    check_capacity(p)?;
    let t = p.majority_table();
    Ok(p.candidates().map(|c| lift_score(p, &t, c, true) as i64).collect())
}

/// Minimal number of adjacent swaps making each candidate a weak Condorcet
/// winner.
pub fn weak_dodgson_scores(p: &Profile) -> Result<Vec<i64>> {
    p.require_nonempty()?;
    check_capacity(p)?;
    let t = p.majority_table();
    Ok(p.candidates().map(|c| lift_score(p, &t, c, false) as i64).collect())
}

pub fn dodgson(p: &Profile) -> Result<RuleOutcome> {
    let s = dodgson_scores(p)?;
    Ok(RuleOutcome {
        rule: Rule::Dodgson,
        winners: Winners::Refinements(WeakOrder::from_scores(&s, true)),
        trace: ScoreTrace::PerCandidate(s),
    })
}

pub fn weak_dodgson(p: &Profile) -> Result<RuleOutcome> {
    let s = weak_dodgson_scores(p)?;
    Ok(RuleOutcome {
        rule: Rule::WeakDodgson,
        winners: Winners::Refinements(WeakOrder::from_scores(&s, true)),
        trace: ScoreTrace::PerCandidate(s),
    })
}

/// Swaps not involving `c` never help `c`, so an optimal swap sequence only
/// lifts `c` in some rankings. Lifting `c` by `k` in a ranking costs `k` and
/// moves it past the `k` candidates directly above it, each such pass adding
/// 2 to `pop(c, d)`. The search picks one lift per voter, minimising total
/// cost subject to covering every pairwise deficit of `c`.
fn lift_score(p: &Profile, t: &MajorityTable, c: Candidate, strict: bool) -> u64 {
    let m = p.num_candidates();
    let mut deficit = vec![0i64; m];
    for d in p.candidates().filter(|&d| d != c) {
        let margin = t.pop(c, d);
        deficit[d.index()] = if strict {
            if margin > 0 { 0 } else { -margin / 2 + 1 }
        } else if margin >= 0 {
            0
        } else {
            (-margin + 1) / 2
        };
    }
    if deficit.iter().all(|&x| x == 0) {
        return 0;
    }
    // Candidates above c, nearest first, one list per voter that has any.
    let mut above: Vec<Vec<usize>> = p
        .voters()
        .iter()
        .map(|r| {
            let pos = r.position_of(c);
            r.candidates()[..pos].iter().rev().map(|x| x.index()).collect()
        })
        .filter(|v: &Vec<usize>| !v.is_empty())
        .collect();
    above.sort();
    let nv = above.len();
    // depth[j][d] = lift needed in voter j to pass d (0 = d below c)
    let depth: Vec<Vec<usize>> = above
        .iter()
        .map(|a| {
            let mut dep = vec![0; m];
            for (k, &d) in a.iter().enumerate() {
                dep[d] = k + 1;
            }
            dep
        })
        .collect();
    let best = above.iter().map(|a| a.len() as u64).sum();
    let mut s = LiftSearch {
        above: &above,
        depth: &depth,
        nv,
        best,
        lifts: vec![0; nv],
    };
    s.descend(0, 0, &mut deficit);
    s.best
}

struct LiftSearch<'a> {
    above: &'a [Vec<usize>],
    depth: &'a [Vec<usize>],
    nv: usize,
    best: u64,
    lifts: Vec<usize>,
}

impl LiftSearch<'_> {
    /// Cheapest conceivable completion from voter `i` on: for each open
    /// deficit, the sum of its smallest per-voter pass costs. Returns `None`
    /// if some deficit cannot be covered at all.
    fn lower_bound(&self, i: usize, deficit: &[i64]) -> Option<u64> {
        let mut lb = 0u64;
        for (d, &need) in deficit.iter().enumerate() {
            if need <= 0 {
                continue;
            }
            let mut costs: Vec<usize> = (i..self.nv)
                .map(|j| self.depth[j][d])
                .filter(|&k| k > 0)
                .collect();
            if (costs.len() as i64) < need {
                return None;
            }
            costs.sort_unstable();
            lb = lb.max(costs[..need as usize].iter().sum::<usize>() as u64);
        }
        Some(lb)
    }

    fn descend(&mut self, i: usize, cost: u64, deficit: &mut [i64]) {
        if deficit.iter().all(|&x| x <= 0) {
            self.best = self.best.min(cost);
            return;
        }
        if i == self.nv {
            return;
        }
        match self.lower_bound(i, deficit) {
            Some(lb) if cost + lb < self.best => {}
            _ => return,
        }
        // identical rankings: lifts non-increasing along the group
        let max_k = if i > 0 && self.above[i] == self.above[i - 1] {
            self.lifts[i - 1]
        } else {
            self.above[i].len()
        };
        for k in (0..=max_k).rev() {
            if cost + k as u64 >= self.best {
                continue;
            }
            for &d in &self.above[i][..k] {
                deficit[d] -= 1;
            }
            self.lifts[i] = k;
            self.descend(i + 1, cost + k as u64, deficit);
            for &d in &self.above[i][..k] {
                deficit[d] += 1;
            }
        }
        self.lifts[i] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axis::Axis;

    fn profile(ax: &Axis, groups: &[(usize, &str)]) -> Profile {
        let g: Vec<_> = groups
            .iter()
            .map(|(k, s)| (*k, ax.parse_ranking(s).unwrap()))
            .collect();
        Profile::from_counts(ax.len(), &g).unwrap()
    }

    #[test]
    fn five_candidate_example() {
        let ax = Axis::canonical(5);
        let p = profile(
            &ax,
            &[
                (1, "a > b > c > d > e"),
                (2, "b > a > c > d > e"),
                (2, "d > e > c > b > a"),
                (1, "e > d > c > b > a"),
            ],
        );
        assert_eq!(dodgson_scores(&p).unwrap(), vec![6, 3, 4, 3, 6]);
    }

    #[test]
    fn loser_example_strict_and_weak() {
        let ax = Axis::canonical(4);
        let p = profile(&ax, &[(1, "a > b > c > d"), (2, "b > c > d > a")]);
        assert_eq!(dodgson_scores(&p).unwrap(), vec![3, 0, 2, 4]);
        assert_eq!(weak_dodgson_scores(&p).unwrap(), vec![3, 0, 2, 4]);
    }

    #[test]
    fn condorcet_winner_scores_zero() {
        let ax = Axis::canonical(4);
        let p = profile(&ax, &[(2, "b > a > c > d"), (1, "c > b > d > a")]);
        let b = ax.candidate("b").unwrap().index();
        assert_eq!(dodgson_scores(&p).unwrap()[b], 0);
        assert_eq!(weak_dodgson_scores(&p).unwrap()[b], 0);
    }

    #[test]
    fn capacity_guard() {
        let p = Profile::new(7, vec![crate::ranking::Ranking::identity(7)]).unwrap();
        assert!(matches!(dodgson(&p), Err(Error::Capacity(_))));
        let p = Profile::new(3, vec![crate::ranking::Ranking::identity(3); 11]).unwrap();
        assert!(matches!(weak_dodgson(&p), Err(Error::Capacity(_))));
    }
}
