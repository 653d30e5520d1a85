//! Maximal stable spread of an extreme opinion.
//!
//! The greedy schedule runs three phases:
//! 1. passes in activation order updating every voter whose update is the
//!    target, until a pass changes nothing;
//! 2. passes updating every non-stable voter that holds the target, until a
//!    pass changes nothing;
//! 3. a round-robin run to a stable state.
//!
//! [`brute_force_spread`] explores every reachable opinion assignment and
//! serves as the optimality oracle on small networks.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::axis::{Axis, Extreme};
use crate::diffusion::{activate, proposed_update, run, PreferenceNetwork, Scheduler, UpdateEvent};
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::Ranking;
use crate::rules::{tie_break, Rule, TieBreakContext};

/// Whether `target` wins, checked against the weak-majority count. A
/// disagreement is an extremist-majority-consistency breach and is
/// returned as [`Error::LawViolation`].
pub fn emc_witness(rule: Rule, p: &Profile, axis: &Axis, target: Extreme) -> Result<bool> {
    let r = axis.extreme(target);
    let wins = rule.apply(p, Some(axis))?.winners.contains(&r);
    let majority = 2 * p.count(&r) >= p.num_voters();
    if wins != majority {
        return Err(Error::LawViolation(format!(
            "{rule}: extreme {} held by {} of {} voters but {}in the outcome",
            axis.format_ranking(&r),
            p.count(&r),
            p.num_voters(),
            if wins { "" } else { "not " }
        )));
    }
    Ok(wins)
}

fn emc_rule(rule: Rule) -> bool {
    matches!(rule, Rule::Kemeny | Rule::KemenySp | Rule::Mmc | Rule::WeakDodgson)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpreadStep {
    pub phase: u8,
    pub event: UpdateEvent,
}

#[derive(Clone, Debug)]
pub struct SpreadOptions {
    /// Activation order within phases 1 and 2; ascending ids if `None`.
    pub order: Option<Vec<usize>>,
    /// Step cap for phase 3.
    pub max_phase3_steps: usize,
}

impl Default for SpreadOptions {
    fn default() -> Self {
        SpreadOptions {
            order: None,
            max_phase3_steps: 100_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpreadResult {
    pub target: Extreme,
    pub target_ranking: Ranking,
    pub sequence: Vec<SpreadStep>,
    /// Stable voters holding the target at the end, ascending.
    pub v_star: Vec<usize>,
    /// Target holders after phase 2.
    pub after_phase2: Vec<usize>,
    pub final_net: PreferenceNetwork,
    /// Phase 3 reached a stable state within its cap.
    pub converged: bool,
    /// Rule evaluations spent in phases 1 and 2.
    pub phase12_evaluations: u64,
}

impl SpreadResult {
    pub fn phase12_changes(&self) -> usize {
        self.sequence.iter().filter(|s| s.phase < 3).count()
    }

    /// Opinion changes per voter within phases 1 and 2.
    pub fn phase12_changes_per_voter(&self) -> Vec<usize> {
        let mut c = vec![0; self.final_net.num_voters()];
        for s in self.sequence.iter().filter(|s| s.phase < 3) {
            c[s.event.voter] += 1;
        }
        c
    }

    pub fn v_star_preserved(&self) -> bool {
        holders(&self.final_net, &self.target_ranking) == self.after_phase2
    }
}

fn holders(net: &PreferenceNetwork, r: &Ranking) -> Vec<usize> {
    (0..net.num_voters()).filter(|&v| net.opinion(v) == r).collect()
}

pub fn greedy_spread(net: &PreferenceNetwork, rule: Rule, target: Extreme) -> Result<SpreadResult> {
    greedy_spread_with(net, rule, target, &SpreadOptions::default())
}

/// The greedy schedule. For Kemeny and MMC a change of the target holders
/// during phase 3 is reported as [`Error::LawViolation`]; for other rules it
/// shows up in [`SpreadResult::v_star_preserved`].
pub fn greedy_spread_with(
    net: &PreferenceNetwork,
    rule: Rule,
    target: Extreme,
    opts: &SpreadOptions,
) -> Result<SpreadResult> {
    if !emc_rule(rule) {
        return Err(Error::domain(format!(
            "{rule} is not extremist majority consistent; use kemeny, mmc or weak-dodgson"
        )));
    }
    let n = net.num_voters();
    let order: Vec<usize> = match &opts.order {
        Some(o) => {
            let mut sorted = o.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(Error::domain("activation order must list every voter once"));
            }
            o.clone()
        }
        None => (0..n).collect(),
    };
    let t = net.axis().extreme(target);
    let mut cur = net.clone();
    let mut totals = cur.potentials();
    let mut sequence = Vec::new();
    let mut evaluations = 0u64;

    loop {
        let mut changed = false;
        for &v in &order {
            if cur.opinion(v) == &t {
                continue;
            }
            evaluations += 1;
            if proposed_update(&cur, v, rule)? != t {
                continue;
            }
            emc_witness(rule, &cur.neighbourhood_profile(v), cur.axis(), target)?;
            let event = activate(&mut cur, v, rule, sequence.len(), &mut totals)?;
            sequence.push(SpreadStep { phase: 1, event });
            changed = true;
        }
        if !changed {
            break;
        }
    }
    loop {
        let mut changed = false;
        for &v in &order {
            if cur.opinion(v) != &t {
                continue;
            }
            evaluations += 1;
            if proposed_update(&cur, v, rule)? == t {
                continue;
            }
            let event = activate(&mut cur, v, rule, sequence.len(), &mut totals)?;
            sequence.push(SpreadStep { phase: 2, event });
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let after_phase2 = holders(&cur, &t);

    let report = run(&cur, rule, &Scheduler::RoundRobin, opts.max_phase3_steps)?;
    let offset = sequence.len();
    sequence.extend(report.trace.into_iter().map(|mut event| {
        event.step += offset;
        SpreadStep { phase: 3, event }
    }));
    let converged = report.status == crate::diffusion::RunStatus::Converged;
    let final_net = report.final_net;
    let mut v_star = Vec::new();
    for v in holders(&final_net, &t) {
        if proposed_update(&final_net, v, rule)? == t {
            v_star.push(v);
        }
    }
    let result = SpreadResult {
        target,
        target_ranking: t,
        sequence,
        v_star,
        after_phase2,
        final_net,
        converged,
        phase12_evaluations: evaluations,
    };
    if matches!(rule, Rule::Kemeny | Rule::KemenySp | Rule::Mmc) && !result.v_star_preserved() {
        return Err(Error::LawViolation(
            "target holders changed during the stabilising phase".into(),
        ));
    }
    Ok(result)
}

/// Ceiling on rule evaluations in phases 1 and 2: at most `|V| + 1` passes
/// of `|V|` evaluations each per phase.
pub fn phase12_evaluation_ceiling(voters: usize) -> u64 {
    (voters * (2 * voters + 2)) as u64
}

pub const ORACLE_MAX_VOTERS: usize = 6;
pub const ORACLE_MAX_CANDIDATES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleOutcome {
    /// Largest number of target holders over reachable assignments in which
    /// every target holder is stable.
    pub best_target_stable: usize,
    /// Largest number of target holders over reachable stable states.
    pub best_stable_state: Option<usize>,
    pub states: usize,
    pub rule_evaluations: u64,
}

/// Breadth-first search over all assignments reachable by updating
/// non-stable voters. Fails with a capacity error beyond
/// [`ORACLE_MAX_VOTERS`] voters, [`ORACLE_MAX_CANDIDATES`] candidates, or
/// `max_states` visited assignments.
pub fn brute_force_spread(
    net: &PreferenceNetwork,
    rule: Rule,
    target: Extreme,
    max_states: usize,
) -> Result<OracleOutcome> {
    let n = net.num_voters();
    let m = net.axis().len();
    if n > ORACLE_MAX_VOTERS || m > ORACLE_MAX_CANDIDATES {
        return Err(Error::capacity(format!(
            "spread oracle limited to {ORACLE_MAX_VOTERS} voters and {ORACLE_MAX_CANDIDATES} candidates, got {n} and {m}"
        )));
    }
    let axis = net.axis();
    let t = axis.extreme(target);
    let mut memo: HashMap<(Vec<Ranking>, Ranking), Ranking> = HashMap::new();
    let mut evaluations = 0u64;
    let mut propose = |state: &[Ranking], v: usize| -> Result<Ranking> {
        let nb = net.neighbours(v);
        if nb.is_empty() {
            return Ok(state[v].clone());
        }
        let mut key: Vec<Ranking> = nb.iter().map(|&u| state[u].clone()).collect();
        key.sort();
        let k = (key, state[v].clone());
        if let Some(r) = memo.get(&k) {
            return Ok(r.clone());
        }
        evaluations += 1;
        let p = Profile::new(m, k.0.clone())?;
        let out = rule.apply(&p, Some(axis))?;
        let r = tie_break(&out, &TieBreakContext { axis, current: &k.1 })?;
        memo.insert(k, r.clone());
        Ok(r)
    };

    let start = net.opinions().to_vec();
    let mut seen: HashSet<Vec<Ranking>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut best_target_stable = 0;
    let mut best_stable_state: Option<usize> = None;
    while let Some(state) = queue.pop_front() {
        let mut proposals = Vec::with_capacity(n);
        for v in 0..n {
            proposals.push(propose(&state, v)?);
        }
        let stable: Vec<bool> = (0..n).map(|v| proposals[v] == state[v]).collect();
        let held: Vec<usize> = (0..n).filter(|&v| state[v] == t).collect();
        if held.iter().all(|&v| stable[v]) {
            best_target_stable = best_target_stable.max(held.len());
        }
        if stable.iter().all(|&s| s) {
            best_stable_state = Some(best_stable_state.map_or(held.len(), |b| b.max(held.len())));
        }
        for v in (0..n).filter(|&v| !stable[v]) {
            let mut next = state.clone();
            next[v] = proposals[v].clone();
            if seen.insert(next.clone()) {
                if seen.len() > max_states {
                    return Err(Error::capacity(format!(
                        "spread oracle visited more than {max_states} assignments"
                    )));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(OracleOutcome {
        best_target_stable,
        best_stable_state,
        states: seen.len(),
        rule_evaluations: evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffusion::Mode;

    fn build(m: usize, opinions: &[&str], edges: &[(usize, usize)]) -> PreferenceNetwork {
        let ax = Axis::canonical(m);
        let ops = opinions.iter().map(|s| ax.parse_ranking(s).unwrap()).collect();
        let names = (1..=opinions.len()).map(|i| format!("v{i}")).collect();
        PreferenceNetwork::new(ax, Mode::SinglePeaked, names, ops, edges.to_vec()).unwrap()
    }

    #[test]
    fn all_target_is_a_fixed_point() {
        let net = build(3, &["a > b > c"; 3], &[(0, 1), (1, 2)]);
        let r = greedy_spread(&net, Rule::Kemeny, Extreme::Up).unwrap();
        assert!(r.sequence.is_empty());
        assert_eq!(r.v_star, vec![0, 1, 2]);
        let o = brute_force_spread(&net, Rule::Kemeny, Extreme::Up, 1000).unwrap();
        assert_eq!(o.best_target_stable, 3);
        assert_eq!(o.best_stable_state, Some(3));
    }

    #[test]
    fn path_middle_joins_the_extreme() {
        let net = build(3, &["a > b > c", "c > b > a", "a > b > c"], &[(0, 1), (1, 2)]);
        let r = greedy_spread(&net, Rule::Kemeny, Extreme::Up).unwrap();
        assert_eq!(r.sequence.len(), 1);
        assert_eq!(r.sequence[0].phase, 1);
        assert_eq!(r.sequence[0].event.voter, 1);
        assert_eq!(r.v_star, vec![0, 1, 2]);
        assert!(r.converged);
    }

    #[test]
    fn emc_witness_counts() {
        let ax = Axis::canonical(3);
        let up = ax.extreme_up();
        let other = ax.parse_ranking("b > c > a").unwrap();
        let p = Profile::new(3, vec![up.clone(), up.clone(), other.clone()]).unwrap();
        assert!(emc_witness(Rule::Kemeny, &p, &ax, Extreme::Up).unwrap());
        let p = Profile::new(3, vec![up.clone(), other.clone()]).unwrap();
        assert!(emc_witness(Rule::Kemeny, &p, &ax, Extreme::Up).unwrap());
        let p = Profile::new(3, vec![up, other.clone(), other]).unwrap();
        assert!(!emc_witness(Rule::Mmc, &p, &ax, Extreme::Up).unwrap());
    }

    #[test]
    fn oracle_capacity() {
        let net = build(3, &["a > b > c"; 7], &[]);
        assert!(matches!(
            brute_force_spread(&net, Rule::Kemeny, Extreme::Up, 10),
            Err(Error::Capacity(_))
        ));
        assert!(greedy_spread(&net, Rule::Borda, Extreme::Up).is_err());
    }
}
