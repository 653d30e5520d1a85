use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ranking::{kendall_tau_unchecked, Ranking};
use crate::rules::{tie_break, Rule, TieBreakContext};

use super::network::{Mode, Potentials, PreferenceNetwork};

/// One activation of a voter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpdateEvent {
    pub step: usize,
    pub voter: usize,
    pub old: Ranking,
    pub new: Ranking,
    pub before: Potentials,
    pub after: Potentials,
}

impl UpdateEvent {
    pub fn changed(&self) -> bool {
        self.old != self.new
    }
}

/// The opinion `v` would adopt: the tie-broken outcome of the rule on its
/// open neighbourhood. Isolated voters keep their opinion.
pub fn proposed_update(net: &PreferenceNetwork, v: usize, rule: Rule) -> Result<Ranking> {
    net.check_voter(v)?;
    let current = net.opinion(v);
    if net.neighbours(v).is_empty() {
        return Ok(current.clone());
    }
    let p = net.neighbourhood_profile(v);
    let out = rule.apply(&p, Some(net.axis()))?;
    tie_break(
        &out,
        &TieBreakContext {
            axis: net.axis(),
            current,
        },
    )
}

pub fn is_stable(net: &PreferenceNetwork, v: usize, rule: Rule) -> Result<bool> {
    Ok(&proposed_update(net, v, rule)? == net.opinion(v))
}

pub fn stable_state(net: &PreferenceNetwork, rule: Rule) -> Result<bool> {
    for v in 0..net.num_voters() {
        if !is_stable(net, v, rule)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Potentials restricted to the edges at `v`.
fn local_potentials(net: &PreferenceNetwork, v: usize, r: &Ranking) -> Potentials {
    let mut p = Potentials::default();
    for &u in net.neighbours(v) {
        let o = net.opinion(u);
        p.edge_kt += kendall_tau_unchecked(r, o) as u64;
        p.peak_distance += net.axis().spdist(r.peak(), o.peak()) as u64;
    }
    p
}

fn check_laws(net: &PreferenceNetwork, rule: Rule, ev: &UpdateEvent) -> Result<()> {
    if net.mode() != Mode::SinglePeaked {
        return Ok(());
    }
    let name = net.name(ev.voter);
    let governed = matches!(rule, Rule::Kemeny | Rule::KemenySp | Rule::Mmc);
    if !net.axis().admits(&ev.new) {
        let msg = format!(
            "{rule} update of {name} left the single-peaked domain: {}",
            net.axis().format_ranking(&ev.new)
        );
        return Err(if governed {
            Error::LawViolation(msg)
        } else {
            Error::domain(format!("{msg}; use free mode"))
        });
    }
    match rule {
        Rule::Kemeny | Rule::KemenySp => {
            if ev.changed() && ev.after.edge_kt >= ev.before.edge_kt {
                return Err(Error::LawViolation(format!(
                    "step {}: edge Kendall tau did not decrease ({} -> {}) when {name} changed",
                    ev.step, ev.before.edge_kt, ev.after.edge_kt
                )));
            }
        }
        Rule::Mmc => {
            if ev.after.peak_distance > ev.before.peak_distance {
                return Err(Error::LawViolation(format!(
                    "step {}: peak distance increased ({} -> {}) when {name} updated",
                    ev.step, ev.before.peak_distance, ev.after.peak_distance
                )));
            }
            let t = net.neighbourhood_profile(ev.voter).majority_table();
            if !net.neighbours(ev.voter).is_empty() && !t.is_weak_winner(ev.new.peak()) {
                return Err(Error::LawViolation(format!(
                    "step {}: new peak of {name} is not a weak Condorcet winner of its neighbourhood",
                    ev.step
                )));
            }
        }
        _ => {}
    }
    Ok(())
}

/// Updates `v` in place. `totals` are the potentials before the step and
/// are advanced to the values after it.
pub(crate) fn activate(
    net: &mut PreferenceNetwork,
    v: usize,
    rule: Rule,
    step: usize,
    totals: &mut Potentials,
) -> Result<UpdateEvent> {
    let new = proposed_update(net, v, rule)?;
    let old = net.opinion(v).clone();
    let before = *totals;
    let lost = local_potentials(net, v, &old);
    let gained = local_potentials(net, v, &new);
    let after = Potentials {
        edge_kt: before.edge_kt - lost.edge_kt + gained.edge_kt,
        peak_distance: before.peak_distance - lost.peak_distance + gained.peak_distance,
    };
    let ev = UpdateEvent {
        step,
        voter: v,
        old,
        new,
        before,
        after,
    };
    check_laws(net, rule, &ev)?;
    net.set_opinion(v, ev.new.clone());
    *totals = after;
    Ok(ev)
}

/// One update of `v`, returning the new network and the event. In
/// single-peaked mode the convergence laws of Kemeny and MMC updates are
/// checked and a breach is reported as [`Error::LawViolation`].
pub fn update_step(net: &PreferenceNetwork, v: usize, rule: Rule) -> Result<(PreferenceNetwork, UpdateEvent)> {
    net.check_voter(v)?;
    let mut next = net.clone();
    let mut totals = net.potentials();
    let ev = activate(&mut next, v, rule, 0, &mut totals)?;
    Ok((next, ev))
}

/// Order in which non-stable voters are activated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scheduler {
    /// Cycles through voter indices, activating the next non-stable one.
    RoundRobin,
    /// Picks uniformly among the non-stable voters.
    Random { seed: u64 },
    /// Activates the listed voters in order, skipping stable ones.
    Explicit(Vec<usize>),
}

impl Scheduler {
    pub fn label(&self) -> &'static str {
        match self {
            Scheduler::RoundRobin => "round-robin",
            Scheduler::Random { .. } => "random",
            Scheduler::Explicit(_) => "explicit",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Scheduler::Random { seed } => Some(*seed),
            _ => None,
        }
    }
}

impl fmt::Display for Scheduler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Scheduler kind without parameters, for selectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchedulerKind {
    RoundRobin,
    Random,
    Explicit,
}

impl FromStr for SchedulerKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "round-robin" => Ok(SchedulerKind::RoundRobin),
            "random" => Ok(SchedulerKind::Random),
            "explicit" => Ok(SchedulerKind::Explicit),
            _ => Err(Error::domain(format!(
                "unknown scheduler {s:?}, expected round-robin|random|explicit"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Converged,
    StepCapReached,
    /// An explicit sequence ran out before the network became stable.
    SequenceExhausted,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub initial: PreferenceNetwork,
    pub final_net: PreferenceNetwork,
    pub trace: Vec<UpdateEvent>,
    pub status: RunStatus,
    /// Rule evaluations spent, including stability checks.
    pub rule_evaluations: u64,
}

impl RunReport {
    pub fn changes(&self) -> usize {
        self.trace.iter().filter(|e| e.changed()).count()
    }

    pub fn converged(&self) -> bool {
        self.status == RunStatus::Converged
    }
}

/// Stability flags that survive updates: only the neighbours of an updated
/// voter can change status, and the updated voter itself is stable.
pub(crate) struct StabilityCache {
    rule: Rule,
    stable: Vec<Option<bool>>,
    pub(crate) evaluations: u64,
}

impl StabilityCache {
    pub(crate) fn new(net: &PreferenceNetwork, rule: Rule) -> Self {
        StabilityCache {
            rule,
            stable: vec![None; net.num_voters()],
            evaluations: 0,
        }
    }

    pub(crate) fn is_stable(&mut self, net: &PreferenceNetwork, v: usize) -> Result<bool> {
        if let Some(s) = self.stable[v] {
            return Ok(s);
        }
        self.evaluations += 1;
        let s = is_stable(net, v, self.rule)?;
        self.stable[v] = Some(s);
        Ok(s)
    }

    pub(crate) fn updated(&mut self, net: &PreferenceNetwork, v: usize) {
        for &u in net.neighbours(v) {
            self.stable[u] = None;
        }
        self.stable[v] = Some(true);
    }
}

/// Drives `net` with `rule` until it is stable, the scheduler is exhausted
/// or `max_steps` activations have happened. Only non-stable voters are
/// activated, so every event changes an opinion.
///
/// In single-peaked mode the per-step laws are checked as in
/// [`update_step`], and for Kemeny updates the number of changes is checked
/// against `|E|·C(m, 2)`.
pub fn run(net: &PreferenceNetwork, rule: Rule, scheduler: &Scheduler, max_steps: usize) -> Result<RunReport> {
    let initial = net.clone();
    let mut net = net.clone();
    let n = net.num_voters();
    let mut cache = StabilityCache::new(&net, rule);
    let mut totals = net.potentials();
    let mut trace = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(scheduler.seed().unwrap_or(0));
    let mut cursor = 0usize;
    let mut explicit = match scheduler {
        Scheduler::Explicit(seq) => {
            for &v in seq {
                net.check_voter(v)?;
            }
            Some(seq.iter())
        }
        _ => None,
    };
    let m = net.axis().len() as u64;
    let kemeny_bound = net.num_edges() as u64 * m * m.saturating_sub(1) / 2;
    let status = loop {
        let next = match scheduler {
            Scheduler::RoundRobin => {
                let mut found = None;
                for i in 0..n {
                    let v = (cursor + i) % n;
                    if !cache.is_stable(&net, v)? {
                        found = Some(v);
                        break;
                    }
                }
                found
            }
            Scheduler::Random { .. } => {
                let mut open = Vec::new();
                for v in 0..n {
                    if !cache.is_stable(&net, v)? {
                        open.push(v);
                    }
                }
                (!open.is_empty()).then(|| open[rng.gen_range(0..open.len())])
            }
            Scheduler::Explicit(_) => {
                let it = explicit.as_mut().expect("explicit iterator");
                let mut found = None;
                for &v in it.by_ref() {
                    if !cache.is_stable(&net, v)? {
                        found = Some(v);
                        break;
                    }
                }
                match found {
                    Some(v) => Some(v),
                    None => {
                        let mut all = true;
                        for v in 0..n {
                            all &= cache.is_stable(&net, v)?;
                        }
                        break if all {
                            RunStatus::Converged
                        } else {
                            RunStatus::SequenceExhausted
                        };
                    }
                }
            }
        };
        let Some(v) = next else {
            break RunStatus::Converged;
        };
        if trace.len() >= max_steps {
            break RunStatus::StepCapReached;
        }
        let ev = activate(&mut net, v, rule, trace.len(), &mut totals)?;
        cache.updated(&net, v);
        cursor = v + 1;
        trace.push(ev);
        if matches!(rule, Rule::Kemeny | Rule::KemenySp)
            && net.mode() == Mode::SinglePeaked
            && trace.len() as u64 > kemeny_bound
        {
            return Err(Error::LawViolation(format!(
                "Kemeny run exceeded |E|·C(m,2) = {kemeny_bound} opinion changes"
            )));
        }
    };
    Ok(RunReport {
        initial,
        final_net: net,
        trace,
        status,
        rule_evaluations: cache.evaluations,
    })
}

/// Re-applies the voters of a trace, in order, to `initial`.
pub fn replay(initial: &PreferenceNetwork, voters: &[usize], rule: Rule) -> Result<PreferenceNetwork> {
    let mut net = initial.clone();
    let mut totals = net.potentials();
    for (i, &v) in voters.iter().enumerate() {
        net.check_voter(v)?;
        activate(&mut net, v, rule, i, &mut totals)?;
    }
    Ok(net)
}

/// A return to an earlier opinion assignment after at least one change.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpdateCycle {
    /// Number of events applied when the assignment was first seen.
    pub first_seen_after: usize,
    /// Number of events applied when it recurred.
    pub recurred_after: usize,
}

/// Scans a trace that starts from `initial` for a revisited assignment.
pub fn detect_update_cycle(initial: &[Ranking], trace: &[UpdateEvent]) -> Option<UpdateCycle> {
    let mut state = initial.to_vec();
    let mut seen: HashMap<Vec<Ranking>, usize> = HashMap::new();
    seen.insert(state.clone(), 0);
    for (i, ev) in trace.iter().enumerate() {
        if !ev.changed() {
            continue;
        }
        state[ev.voter] = ev.new.clone();
        if let Some(&j) = seen.get(&state) {
            return Some(UpdateCycle {
                first_seen_after: j,
                recurred_after: i + 1,
            });
        }
        seen.insert(state.clone(), i + 1);
    }
    None
}
