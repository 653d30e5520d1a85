use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};

use spdiff_core::diffusion::{detect_update_cycle, run, RunStatus, SchedulerKind, UpdateEvent};
use spdiff_core::generate::{generate_network, generate_sp_profile, GraphFamily};
use spdiff_core::io::{parse_network, parse_profile, write_network, write_profile};
use spdiff_core::properties::{
    check as search, check_profile, paper_witnesses, table1_report, verify_witness, Property, PropertyVerdict,
    SearchSpace, Witness,
};
use spdiff_core::spread::{
    brute_force_spread, greedy_spread_with, phase12_evaluation_ceiling, SpreadOptions, SpreadResult,
    ORACLE_MAX_CANDIDATES, ORACLE_MAX_VOTERS,
};
use spdiff_core::{
    enumerate_sp_rankings, tie_break, Axis, Error, Extreme, Mode, PreferenceNetwork, Rule, RuleOutcome, Scheduler,
    ScoreTrace, TieBreakContext,
};

use crate::config::{parse, positive, require, FileConfig};
use crate::report::Artifact;
use crate::{
    CheckArgs, DiffuseArgs, EnumerateArgs, Failure, GenerateArgs, NetSource, Outcome, RulesArgs, SpreadArgs,
    Table1Args,
};

const DEFAULT_MAX_STEPS: usize = 100_000;
const DEFAULT_ORACLE_STATES: usize = 1_000_000;
const DEFAULT_GRAPH: &str = "gnp:0.5";

fn names_of(axis: &Axis) -> Vec<String> {
    axis.names().to_vec()
}

fn parse_axis(s: &str) -> Result<Axis, Failure> {
    Axis::from_names(s.split('>').map(str::trim)).map_err(|e| Failure::Usage(format!("invalid axis {s:?}: {e}")))
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn outcome(config: Value, body: Value, summary: String, exit_code: u8) -> Outcome {
    Outcome {
        config,
        body,
        summary,
        exit_code,
        artifacts: Vec::new(),
    }
}

pub fn enumerate(a: EnumerateArgs, f: &FileConfig) -> Result<Outcome, Failure> {
    let axis = match a.axis.or(f.axis.clone()) {
        Some(s) => parse_axis(&s)?,
        None => Axis::canonical(positive("m", require("m", a.m.or(f.m))?)?),
    };
    let seq = enumerate_sp_rankings(&axis)?;
    let rankings: Vec<String> = seq.rankings.iter().map(|r| axis.format_ranking(r)).collect();
    let mut summary = String::new();
    for (i, r) in rankings.iter().enumerate() {
        writeln!(summary, "{:>6}  {r}", i + 1).unwrap();
    }
    for (i, t) in seq.thresholds.iter().enumerate() {
        writeln!(summary, "{} above {}: rankings 1..={t}", axis.name(axis.at(i)), axis.name(axis.at(i + 1))).unwrap();
    }
    let config = json!({ "axis": names_of(&axis) });
    let body = json!({
        "axis": names_of(&axis),
        "count": rankings.len(),
        "rankings": rankings,
        "thresholds": seq.thresholds,
    });
    Ok(outcome(config, body, summary, 0))
}

fn trace_json(axis: &Axis, out: &RuleOutcome) -> Value {
    let per = |v: &[i64], halve: bool| -> Value {
        v.iter()
            .enumerate()
            .map(|(i, &s)| {
                let name = axis.names()[i].clone();
                if halve {
                    json!({ "candidate": name, "score": s as f64 / 2.0 })
                } else {
                    json!({ "candidate": name, "score": s })
                }
            })
            .collect()
    };
    match &out.trace {
        ScoreTrace::KemenyScore(s) => json!({ "kemeny_score": s }),
        ScoreTrace::PerCandidate(v) => json!({ "scores": per(v, false) }),
        ScoreTrace::PerCandidateDoubled(v) => json!({ "scores": per(v, true) }),
        ScoreTrace::Elimination(order) => {
            json!({ "elimination": order.iter().map(|&c| axis.name(c).to_string()).collect::<Vec<_>>() })
        }
    }
}

pub fn rules(a: RulesArgs, f: &FileConfig) -> Result<Outcome, Failure> {
    let path = require("profile", a.profile.or(f.profile.clone()))?;
    let (axis, p) = parse_profile(&read(&path)?)?;
    let selector = a.rule.or(f.rule.clone()).unwrap_or_else(|| "all".into());
    let chosen: Vec<Rule> = if selector == "all" {
        Rule::ALL.to_vec()
    } else {
        vec![parse("rule", &selector)?]
    };
    let current = a
        .current
        .or(f.current.clone())
        .map(|s| axis.parse_ranking(&s).map_err(|e| Failure::Usage(format!("invalid current {s:?}: {e}"))))
        .transpose()?;
    let max_winners = a.max_winners.or(f.max_winners).unwrap_or(10);
    let mut entries = Vec::new();
    let mut summary = String::new();
    writeln!(
        summary,
        "{} voters, {} candidates, single-peaked: {}",
        p.num_voters(),
        axis.len(),
        p.is_single_peaked(&axis)?
    )
    .unwrap();
    for rule in chosen.iter().copied() {
        let out = match rule.apply(&p, Some(&axis)) {
            Ok(o) => o,
            Err(e) if chosen.len() > 1 => {
                writeln!(summary, "{rule}: {e}").unwrap();
                entries.push(json!({ "rule": rule.selector(), "error": e.to_string() }));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let count = out.winners.count();
        let listed: Vec<String> = if count <= max_winners as u128 {
            out.winners.materialize(count)?.iter().map(|r| axis.format_ranking(r)).collect()
        } else {
            Vec::new()
        };
        let chosen_one = current
            .as_ref()
            .map(|c| tie_break(&out, &TieBreakContext { axis: &axis, current: c }))
            .transpose()?
            .map(|r| axis.format_ranking(&r));
        write!(summary, "{rule}: {count} winning ranking(s)").unwrap();
        if let Some(r) = &chosen_one {
            write!(summary, ", tie-broken {r}").unwrap();
        }
        summary.push('\n');
        for r in &listed {
            writeln!(summary, "  {r}").unwrap();
        }
        entries.push(json!({
            "rule": rule.selector(),
            "winner_count": u64::try_from(count).unwrap_or(u64::MAX),
            "winners": listed,
            "trace": trace_json(&axis, &out),
            "tie_broken": chosen_one,
        }));
    }
    let config = json!({
        "profile": path,
        "rule": selector,
        "current": current.as_ref().map(|r| axis.format_ranking(r)),
        "max_winners": max_winners,
    });
    let body = json!({ "axis": names_of(&axis), "voters": p.num_voters(), "rules": entries });
    Ok(outcome(config, body, summary, 0))
}

fn witness_json(rule: Rule, property: Property, w: &Witness) -> Result<Value, Failure> {
    Ok(json!({
        "axis": names_of(&w.axis),
        "profile": w.profile_lines(),
        "violation": w.violation.describe(&w.axis),
        "reverified": verify_witness(rule, property, w)?,
    }))
}

fn verdict_json(v: &PropertyVerdict) -> Result<Value, Failure> {
    Ok(json!({
        "verdict": if v.verdict.is_refuted() { "refuted" } else { "holds-on-searched-space" },
        "profiles_checked": v.profiles_checked,
        "witness": v.verdict.witness().map(|w| witness_json(v.rule, v.property, w)).transpose()?,
    }))
}

fn witness_text(w: &Witness) -> String {
    let mut s = format!("  {}\n", w.violation.describe(&w.axis));
    for l in w.profile_lines() {
        writeln!(s, "    {l}").unwrap();
    }
    s
}

pub fn check(a: CheckArgs, f: &FileConfig) -> Result<Outcome, Failure> {
    let rule: Rule = parse("rule", &require("rule", a.rule.or(f.rule.clone()))?)?;
    let property: Property = parse("property", &require("property", a.property.or(f.property.clone()))?)?;
    let m = positive("m", require("m", a.m.or(f.m))?)?;
    let n = positive("n", require("n", a.n.or(f.n))?)?;
    let fixed = a.paper_witnesses || f.paper_witnesses.unwrap_or(false);
    let space = SearchSpace::new(m, n);
    let v = search(rule, property, space)?;
    let mut refuted = v.verdict.is_refuted();
    let mut summary = format!(
        "{rule} {property} on m <= {m}, n <= {n} ({} profiles): {}\n",
        v.profiles_checked,
        if refuted { "refuted" } else { "holds on the searched space (not a proof)" }
    );
    if let Some(w) = v.verdict.witness() {
        summary.push_str(&witness_text(w));
    }
    let mut fixed_out = Vec::new();
    if fixed {
        for w in paper_witnesses().iter().filter(|w| w.refutes.contains(&(rule, property))) {
            let fv = check_profile(rule, property, &w.axis, &w.profile)?;
            refuted |= fv.verdict.is_refuted();
            writeln!(
                summary,
                "fixed profile \"{}\": {}",
                w.label,
                if fv.verdict.is_refuted() { "refuted" } else { "not refuted" }
            )
            .unwrap();
            let mut j = verdict_json(&fv)?;
            j["label"] = json!(w.label);
            fixed_out.push(j);
        }
    }
    let config = json!({
        "rule": rule.selector(),
        "property": property.label(),
        "m": m,
        "n": n,
        "paper_witnesses": fixed,
    });
    let mut body = verdict_json(&v)?;
    body["rule"] = json!(rule.selector());
    body["property"] = json!(property.label());
    body["fixed"] = json!(fixed_out);
    Ok(outcome(config, body, summary, u8::from(refuted)))
}

pub fn table1(a: Table1Args, f: &FileConfig) -> Result<Outcome, Failure> {
    let m = positive("m", a.m.or(f.m).unwrap_or(4))?;
    let n = positive("n", a.n.or(f.n).unwrap_or(4))?;
    let fixed = a.paper_witnesses || f.paper_witnesses.unwrap_or(false);
    let rep = table1_report(Some(SearchSpace::new(m, n)), fixed)?;
    let mut cells = Vec::new();
    for c in &rep.cells {
        let refutation = c.refutation();
        cells.push(json!({
            "rule": c.rule.selector(),
            "property": c.property.label(),
            "expected": if c.expected_holds { "holds" } else { "fails" },
            "observed": if c.refuted() { "refuted" } else { "holds-on-searched-space" },
            "agrees": c.agrees(),
            "asserted_without_argument": c.paper_asserted,
            "witness": refutation
                .and_then(|v| v.verdict.witness().map(|w| witness_json(v.rule, v.property, w)))
                .transpose()?,
        }));
    }
    let config = json!({ "m": m, "n": n, "paper_witnesses": fixed });
    let body = json!({
        "space": { "max_m": m, "max_n": n, "profiles": u64::try_from(SearchSpace::new(m, n).profile_count()).unwrap_or(u64::MAX) },
        "all_agree": rep.all_agree(),
        "cells": cells,
    });
    Ok(outcome(config, body, rep.render(), u8::from(!rep.all_agree())))
}

/// Loads or generates the network and describes where it came from.
fn load_net(s: &NetSource, f: &FileConfig) -> Result<(PreferenceNetwork, Value), Failure> {
    if let Some(path) = s.net.clone().or(f.net.clone()) {
        let net = parse_network(&read(&path)?)?;
        return Ok((net, json!({ "net": path })));
    }
    let m = positive("m", require("m (or net)", s.m.or(f.m))?)?;
    let n = require("n (or net)", s.n.or(f.n))?;
    let graph_s = s.graph.clone().or(f.graph.clone()).unwrap_or_else(|| DEFAULT_GRAPH.into());
    let graph: GraphFamily = parse("graph", &graph_s)?;
    let seed = s.seed.or(f.seed).unwrap_or(0);
    let net = generate_network(m, n, graph, seed)?;
    Ok((net, json!({ "m": m, "n": n, "graph": graph.to_string(), "seed": seed })))
}

fn opinions_json(net: &PreferenceNetwork) -> Value {
    (0..net.num_voters())
        .map(|v| json!({ "voter": net.name(v), "opinion": net.axis().format_ranking(net.opinion(v)) }))
        .collect()
}

#[derive(Serialize)]
struct TraceRecord<'a> {
    record: &'static str,
    step: usize,
    voter: &'a str,
    old: String,
    new: String,
    edge_kt: u64,
    peak_distance: u64,
}

#[derive(Serialize)]
struct PotentialRow {
    step: usize,
    voter: String,
    edge_kt: u64,
    peak_distance: u64,
}

fn potential_rows(net: &PreferenceNetwork, events: &[&UpdateEvent]) -> Vec<PotentialRow> {
    let start = net.potentials();
    let mut rows = vec![PotentialRow {
        step: 0,
        voter: String::new(),
        edge_kt: start.edge_kt,
        peak_distance: start.peak_distance,
    }];
    for (i, e) in events.iter().enumerate() {
        rows.push(PotentialRow {
            step: i + 1,
            voter: net.name(e.voter).to_string(),
            edge_kt: e.after.edge_kt,
            peak_distance: e.after.peak_distance,
        });
    }
    rows
}

fn law_audited(net: &PreferenceNetwork, rule: Rule) -> bool {
    net.mode() == Mode::SinglePeaked && matches!(rule, Rule::Kemeny | Rule::KemenySp | Rule::Mmc)
}

pub fn diffuse(a: DiffuseArgs, f: &FileConfig) -> Result<Outcome, Failure> {
    let (net, source) = load_net(&a.source, f)?;
    let rule: Rule = parse("rule", &require("rule", a.rule.or(f.rule.clone()))?)?;
    let kind: SchedulerKind = parse(
        "scheduler",
        &a.scheduler.or(f.scheduler.clone()).unwrap_or_else(|| "round-robin".into()),
    )?;
    let seed = a.source.seed.or(f.seed).unwrap_or(0);
    let max_steps = positive("max_steps", a.max_steps.or(f.max_steps).unwrap_or(DEFAULT_MAX_STEPS))?;
    let order = a.order.or(f.order.clone());
    let scheduler = match kind {
        SchedulerKind::RoundRobin => Scheduler::RoundRobin,
        SchedulerKind::Random => Scheduler::Random { seed },
        SchedulerKind::Explicit => {
            let ids = require("order (for the explicit scheduler)", order.clone())?;
            let seq = ids
                .split(',')
                .map(|id| net.voter(id.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            Scheduler::Explicit(seq)
        }
    };
    let mut config = json!({
        "source": source,
        "rule": rule.selector(),
        "scheduler": scheduler.label(),
        "seed": seed,
        "max_steps": max_steps,
        "order": order,
    });
    config["mode"] = json!(net.mode());
    let header = json!({
        "record": "header",
        "rule": rule.selector(),
        "scheduler": scheduler.label(),
        "seed": seed,
        "max_steps": max_steps,
        "voters": net.names(),
    });
    let rep = match run(&net, rule, &scheduler, max_steps) {
        Ok(r) => r,
        Err(Error::LawViolation(msg)) => {
            let body = json!({ "violation": msg });
            return Ok(outcome(config, body, format!("law violated: {msg}\n"), 1));
        }
        Err(e) => return Err(e.into()),
    };
    let cycle = detect_update_cycle(net.opinions(), &rep.trace);
    let fin = rep.final_net.potentials();
    let start = net.potentials();
    let status = match rep.status {
        RunStatus::Converged => "converged",
        RunStatus::StepCapReached => "step-cap-reached",
        RunStatus::SequenceExhausted => "sequence-exhausted",
    };
    let exit_code = if cycle.is_some() && law_audited(&net, rule) {
        1
    } else if rep.status == RunStatus::StepCapReached {
        2
    } else {
        0
    };
    let body = json!({
        "voters": net.num_voters(),
        "edges": net.num_edges(),
        "status": status,
        "steps": rep.trace.len(),
        "changes": rep.changes(),
        "rule_evaluations": rep.rule_evaluations,
        "initial_potentials": start,
        "final_potentials": fin,
        "cycle": cycle.as_ref().map(|c| json!({ "first_seen_after": c.first_seen_after, "recurred_after": c.recurred_after })),
        "final_opinions": opinions_json(&rep.final_net),
    });
    let mut summary = format!(
        "{rule} with {} scheduler on {} voters / {} edges: {status} after {} changes\n",
        scheduler.label(),
        net.num_voters(),
        net.num_edges(),
        rep.changes()
    );
    writeln!(
        summary,
        "edge distance {} -> {}, peak distance {} -> {}",
        start.edge_kt, fin.edge_kt, start.peak_distance, fin.peak_distance
    )
    .unwrap();
    if let Some(c) = cycle {
        writeln!(summary, "opinion cycle: state after step {} recurs after step {}", c.first_seen_after, c.recurred_after).unwrap();
    }
    if rep.status == RunStatus::StepCapReached {
        writeln!(summary, "step cap {max_steps} reached before a stable state").unwrap();
    }
    let axis = net.axis();
    let records = std::iter::once(header).chain(rep.trace.iter().enumerate().map(|(i, e)| {
        serde_json::to_value(TraceRecord {
            record: "event",
            step: i + 1,
            voter: net.name(e.voter),
            old: axis.format_ranking(&e.old),
            new: axis.format_ranking(&e.new),
            edge_kt: e.after.edge_kt,
            peak_distance: e.after.peak_distance,
        })
        .expect("trace records serialize")
    }));
    let events: Vec<&UpdateEvent> = rep.trace.iter().collect();
    let artifacts = vec![
        Artifact::json_lines("trace.jsonl", records)?,
        Artifact::csv("potentials.csv", &potential_rows(&net, &events))?,
    ];
    Ok(Outcome {
        config,
        body,
        summary,
        exit_code,
        artifacts,
    })
}

#[derive(Serialize)]
struct SweepRow {
    size: usize,
    seed: u64,
    edges: usize,
    v_star: usize,
    after_phase2: usize,
    phase12_changes: usize,
    converged: bool,
    oracle: Option<usize>,
}

/// Greedy spread plus the optional oracle comparison. `Ok(None)` reports a
/// law violation through the message slot.
fn spread_one(
    net: &PreferenceNetwork,
    rule: Rule,
    target: Extreme,
    max_steps: usize,
    oracle: Option<usize>,
) -> Result<Result<(SpreadResult, Option<usize>), String>, Failure> {
    let opts = SpreadOptions {
        order: None,
        max_phase3_steps: max_steps,
    };
    let res = match greedy_spread_with(net, rule, target, &opts) {
        Ok(r) => r,
        Err(Error::LawViolation(msg)) => return Ok(Err(msg)),
        Err(e) => return Err(e.into()),
    };
    let best = match oracle {
        Some(cap) => Some(brute_force_spread(net, rule, target, cap)?.best_target_stable),
        None => None,
    };
    Ok(Ok((res, best)))
}

fn oracle_fits(net: &PreferenceNetwork) -> bool {
    net.num_voters() <= ORACLE_MAX_VOTERS && net.axis().len() <= ORACLE_MAX_CANDIDATES
}

pub fn spread(a: SpreadArgs, f: &FileConfig) -> Result<Outcome, Failure> {
    let rule: Rule = parse("rule", &require("rule", a.rule.or(f.rule.clone()))?)?;
    let target: Extreme = parse("target", &require("target", a.target.or(f.target.clone()))?)?;
    let oracle = a.oracle || f.oracle.unwrap_or(false);
    let cap = positive(
        "oracle_max_states",
        a.oracle_max_states.or(f.oracle_max_states).unwrap_or(DEFAULT_ORACLE_STATES),
    )?;
    let max_steps = positive("max_steps", a.max_steps.or(f.max_steps).unwrap_or(DEFAULT_MAX_STEPS))?;
    if let Some(sizes) = a.sweep.or(f.sweep.clone()) {
        return sweep(&a.source, f, rule, target, oracle, cap, max_steps, sizes, a.seeds.or(f.seeds).unwrap_or(5));
    }
    let (net, source) = load_net(&a.source, f)?;
    let config = json!({
        "source": source,
        "rule": rule.selector(),
        "target": target.to_string(),
        "oracle": oracle,
        "oracle_max_states": cap,
        "max_steps": max_steps,
    });
    if oracle && !oracle_fits(&net) {
        return Err(Failure::Core(Error::Capacity(format!(
            "oracle limited to {ORACLE_MAX_VOTERS} voters and {ORACLE_MAX_CANDIDATES} candidates"
        ))));
    }
    let (res, best) = match spread_one(&net, rule, target, max_steps, oracle.then_some(cap))? {
        Ok(x) => x,
        Err(msg) => return Ok(outcome(config, json!({ "violation": msg }), format!("law violated: {msg}\n"), 1)),
    };
    let axis = net.axis();
    let ids = |vs: &[usize]| vs.iter().map(|&v| net.name(v).to_string()).collect::<Vec<_>>();
    let mismatch = best.is_some_and(|b| b != res.v_star.len());
    let exit_code = if mismatch || !res.v_star_preserved() {
        1
    } else if !res.converged {
        2
    } else {
        0
    };
    let body = json!({
        "target": target.to_string(),
        "target_ranking": axis.format_ranking(&res.target_ranking),
        "sequence": res.sequence.iter().map(|s| json!({
            "phase": s.phase,
            "voter": net.name(s.event.voter),
            "old": axis.format_ranking(&s.event.old),
            "new": axis.format_ranking(&s.event.new),
        })).collect::<Vec<_>>(),
        "v_star": ids(&res.v_star),
        "after_phase2": ids(&res.after_phase2),
        "v_star_preserved": res.v_star_preserved(),
        "converged": res.converged,
        "phase12_changes": res.phase12_changes(),
        "phase12_evaluations": res.phase12_evaluations,
        "phase12_evaluation_ceiling": phase12_evaluation_ceiling(net.num_voters()),
        "final_potentials": res.final_net.potentials(),
        "oracle_best": best,
        "final_opinions": opinions_json(&res.final_net),
    });
    let mut summary = format!(
        "{rule}, target {} = {}: {} of {} voters hold it stably ({} steps)\n",
        target,
        axis.format_ranking(&res.target_ranking),
        res.v_star.len(),
        net.num_voters(),
        res.sequence.len()
    );
    if let Some(b) = best {
        writeln!(summary, "exhaustive search best: {b}{}", if mismatch { " (MISMATCH)" } else { "" }).unwrap();
    }
    if !res.converged {
        writeln!(summary, "final phase hit the step cap {max_steps}").unwrap();
    }
    let events: Vec<&UpdateEvent> = res.sequence.iter().map(|s| &s.event).collect();
    let artifacts = vec![Artifact::csv("potentials.csv", &potential_rows(&net, &events))?];
    Ok(Outcome {
        config,
        body,
        summary,
        exit_code,
        artifacts,
    })
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    s: &NetSource,
    f: &FileConfig,
    rule: Rule,
    target: Extreme,
    oracle: bool,
    cap: usize,
    max_steps: usize,
    sizes: Vec<usize>,
    seeds: u64,
) -> Result<Outcome, Failure> {
    let m = positive("m", s.m.or(f.m).unwrap_or(3))?;
    let graph_s = s.graph.clone().or(f.graph.clone()).unwrap_or_else(|| DEFAULT_GRAPH.into());
    let graph: GraphFamily = parse("graph", &graph_s)?;
    let base = s.seed.or(f.seed).unwrap_or(0);
    let seeds = positive("seeds", seeds as usize)? as u64;
    let mut rows = Vec::new();
    let mut exit_code = 0;
    let mut summary = format!("{rule}, target {target}, {graph} graphs, m = {m}\n  size  mean |V*|/|V|\n");
    for &size in &sizes {
        let mut total = 0usize;
        for k in 0..seeds {
            let seed = base.wrapping_add(k);
            let net = generate_network(m, size, graph, seed)?;
            let use_oracle = (oracle && oracle_fits(&net)).then_some(cap);
            let (res, best) = match spread_one(&net, rule, target, max_steps, use_oracle)? {
                Ok(x) => x,
                Err(msg) => {
                    let config = json!({ "rule": rule.selector(), "size": size, "seed": seed });
                    return Ok(outcome(config, json!({ "violation": msg }), format!("law violated: {msg}\n"), 1));
                }
            };
            if best.is_some_and(|b| b != res.v_star.len()) || !res.v_star_preserved() {
                exit_code = 1;
            } else if !res.converged && exit_code == 0 {
                exit_code = 2;
            }
            total += res.v_star.len();
            rows.push(SweepRow {
                size,
                seed,
                edges: net.num_edges(),
                v_star: res.v_star.len(),
                after_phase2: res.after_phase2.len(),
                phase12_changes: res.phase12_changes(),
                converged: res.converged,
                oracle: best,
            });
        }
        let mean = if size == 0 { 0.0 } else { total as f64 / (seeds as f64 * size as f64) };
        writeln!(summary, "  {size:>4}  {mean:.3}").unwrap();
    }
    let config = json!({
        "rule": rule.selector(),
        "target": target.to_string(),
        "m": m,
        "graph": graph.to_string(),
        "seed": base,
        "seeds": seeds,
        "sweep": sizes,
        "oracle": oracle,
        "oracle_max_states": cap,
        "max_steps": max_steps,
    });
    let body = json!({ "runs": serde_json::to_value(&rows).expect("rows serialize") });
    Ok(Outcome {
        config,
        body,
        summary,
        exit_code,
        artifacts: vec![Artifact::csv("vstar_by_size.csv", &rows)?],
    })
}

pub fn generate(a: GenerateArgs, f: &FileConfig) -> Result<Outcome, Failure> {
    let kind = a.kind.or(f.kind.clone()).unwrap_or_else(|| "network".into());
    let m = positive("m", require("m", a.m.or(f.m))?)?;
    let n = require("n", a.n.or(f.n))?;
    let seed = a.seed.or(f.seed).unwrap_or(0);
    let (text, config) = match kind.as_str() {
        "profile" => {
            let (axis, p) = generate_sp_profile(m, n, seed)?;
            (write_profile(&axis, &p), json!({ "kind": kind, "m": m, "n": n, "seed": seed }))
        }
        "network" => {
            let graph_s = a.graph.or(f.graph.clone()).unwrap_or_else(|| DEFAULT_GRAPH.into());
            let graph: GraphFamily = parse("graph", &graph_s)?;
            let net = generate_network(m, n, graph, seed)?;
            (
                write_network(&net),
                json!({ "kind": kind, "m": m, "n": n, "graph": graph.to_string(), "seed": seed }),
            )
        }
        other => return Err(Failure::Usage(format!("invalid kind {other:?}: expected profile|network"))),
    };
    let summary = match &a.output {
        Some(path) => {
            use std::io::Write;
            std::fs::File::create_new(path)
                .and_then(|mut file| file.write_all(text.as_bytes()))
                .map_err(|e| Failure::Usage(format!("output {}: {e}", path.display())))?;
            format!("wrote {}\n", path.display())
        }
        None => text.clone(),
    };
    let body = json!({ "kind": kind, "text": text });
    Ok(outcome(config, body, summary, 0))
}
