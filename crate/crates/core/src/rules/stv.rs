use std::collections::HashMap;

use crate::error::Result;
use crate::profile::Profile;
use crate::ranking::{Candidate, Ranking};

use super::{Rule, RuleOutcome, ScoreTrace, Winners};

/// STV as a ranking rule: repeatedly eliminate a plurality loser among the
/// remaining candidates and output the reverse elimination order. Ties
/// among plurality losers branch, so the winner set holds every reachable
/// order.
pub fn stv_ranking(p: &Profile) -> Result<RuleOutcome> {
    p.require_nonempty()?;
    let m = p.num_candidates();
    let full: u32 = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    let mut memo = HashMap::new();
    let orders = eliminations(p, full, &mut memo);
    let first = orders[0].clone();
    let mut winners: Vec<Ranking> = orders
        .into_iter()
        .map(|mut o| {
            o.reverse();
            Ranking::from_vec_unchecked(o)
        })
        .collect();
    winners.sort();
    Ok(RuleOutcome {
        rule: Rule::Stv,
        winners: Winners::Listed(winners),
        trace: ScoreTrace::Elimination(first),
    })
}

/// All elimination orders (first eliminated first) of the candidates in
/// `remaining`.
fn eliminations(p: &Profile, remaining: u32, memo: &mut HashMap<u32, Vec<Vec<Candidate>>>) -> Vec<Vec<Candidate>> {
    if remaining.count_ones() == 1 {
        return vec![vec![Candidate::from_index(remaining.trailing_zeros() as usize)]];
    }
    if let Some(v) = memo.get(&remaining) {
        return v.clone();
    }
    let m = p.num_candidates();
    let mut plurality = vec![0usize; m];
    for r in p.voters() {
        let top = r
            .candidates()
            .iter()
            .find(|c| remaining & (1 << c.index()) != 0)
            .expect("strict orders never exhaust");
        plurality[top.index()] += 1;
    }
    let live = (0..m).filter(|&i| remaining & (1 << i) != 0);
    let low = live.clone().map(|i| plurality[i]).min().expect("non-empty");
    let mut out = Vec::new();
    for loser in live.filter(|&i| plurality[i] == low) {
        for tail in eliminations(p, remaining & !(1 << loser), memo) {
            let mut o = Vec::with_capacity(tail.len() + 1);
            o.push(Candidate::from_index(loser));
            o.extend(tail);
            out.push(o);
        }
    }
    memo.insert(remaining, out.clone());
    out
}
