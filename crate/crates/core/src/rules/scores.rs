use crate::error::Result;
use crate::profile::Profile;
use crate::ranking::Candidate;

use super::{Rule, RuleOutcome, ScoreTrace, WeakOrder, Winners};

fn outcome(rule: Rule, scores: Vec<i64>, lower_is_better: bool, doubled: bool) -> RuleOutcome {
    let winners = Winners::Refinements(WeakOrder::from_scores(&scores, lower_is_better));
    let trace = if doubled {
        ScoreTrace::PerCandidateDoubled(scores)
    } else {
        ScoreTrace::PerCandidate(scores)
    };
    RuleOutcome { rule, winners, trace }
}

/// `mmc(c) = max_{c'} pop(c', c)`.
pub fn mmc_scores(p: &Profile) -> Vec<i64> {
    let t = p.majority_table();
    p.candidates().map(|c| t.worst_defeat(c)).collect()
}

/// Minimax Condorcet: candidates by non-decreasing worst defeat.
pub fn mmc(p: &Profile) -> Result<RuleOutcome> {
    p.require_nonempty()?;
    Ok(outcome(Rule::Mmc, mmc_scores(p), true, false))
}

/// `B(c) = Σ_v #{c' : c ≻_v c'}`.
pub fn borda_scores(p: &Profile) -> Vec<i64> {
    let m = p.num_candidates();
    let mut s = vec![0i64; m];
    for r in p.voters() {
        for (i, c) in r.candidates().iter().enumerate() {
            s[c.index()] += (m - 1 - i) as i64;
        }
    }
    s
}

pub fn borda(p: &Profile) -> Result<RuleOutcome> {
    p.require_nonempty()?;
    Ok(outcome(Rule::Borda, borda_scores(p), false, false))
}

/// Twice the Copeland score: 2 per pairwise win, 1 per pairwise tie.
pub fn copeland_doubled_scores(p: &Profile) -> Vec<i64> {
    let t = p.majority_table();
    p.candidates()
        .map(|c| {
            p.candidates()
                .filter(|&o| o != c)
                .map(|o: Candidate| match t.pop(c, o) {
                    x if x > 0 => 2,
                    0 => 1,
                    _ => 0,
                })
                .sum()
        })
        .collect()
}

pub fn copeland(p: &Profile) -> Result<RuleOutcome> {
    p.require_nonempty()?;
    Ok(outcome(Rule::Copeland, copeland_doubled_scores(p), false, true))
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
    fn mmc_obs1_scores() {
        let ax = Axis::canonical(4);
        let p = profile(&ax, &[(1, "a > b > c > d"), (2, "b > c > d > a")]);
        assert_eq!(mmc_scores(&p), vec![1, -1, 3, 3]);
    }

    #[test]
    fn borda_examples() {
        let ax = Axis::canonical(4);
        let p = profile(&ax, &[(3, "a > b > c > d"), (2, "c > d > b > a")]);
        assert_eq!(borda_scores(&p), vec![9, 8, 9, 4]);
        let ax = Axis::canonical(3);
        let p = profile(&ax, &[(4, "a > b > c"), (1, "b > a > c"), (2, "b > c > a")]);
        assert_eq!(borda_scores(&p), vec![9, 10, 2]);
        let w = borda(&p).unwrap().winners;
        assert_eq!(w.materialize(10).unwrap(), vec![ax.parse_ranking("b > a > c").unwrap()]);
    }

    #[test]
    fn copeland_example() {
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
        // halves: 1.5, 2.5, 2, 2.5, 1.5
        assert_eq!(copeland_doubled_scores(&p), vec![3, 5, 4, 5, 3]);
    }

    #[test]
    fn unanimous_score_rules_return_the_opinion() {
        let ax = Axis::canonical(4);
        let p = profile(&ax, &[(3, "c > b > d > a")]);
        let r = ax.parse_ranking("c > b > d > a").unwrap();
        for f in [borda, copeland] {
            assert_eq!(f(&p).unwrap().winners.materialize(10).unwrap(), vec![r.clone()]);
        }
    }

    #[test]
    fn unanimous_mmc_only_separates_the_peak() {
        // every non-peak candidate loses to the peak by n
        let ax = Axis::canonical(4);
        let p = profile(&ax, &[(3, "c > b > d > a")]);
        assert_eq!(mmc_scores(&p), vec![3, 3, -3, 3]);
        let w = mmc(&p).unwrap().winners;
        assert!(w.contains(&ax.parse_ranking("c > b > d > a").unwrap()));
        assert_eq!(w.possible_tops(), vec![ax.candidate("c").unwrap()]);
        assert_eq!(w.count(), 6);
    }

    #[test]
    fn empty_profile_is_rejected() {
        let p = Profile::empty(3);
        assert!(mmc(&p).is_err());
        assert!(borda(&p).is_err());
        assert!(copeland(&p).is_err());
    }
}
