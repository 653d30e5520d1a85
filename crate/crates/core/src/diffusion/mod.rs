//! The sequential diffusion process.
//!
//! An active voter applies the rule to its *open* neighbourhood (itself
//! excluded) and adopts the tie-broken result. A voter is stable when that
//! result is its current opinion; voters without neighbours are stable.

mod network;
mod process;
mod swap;

pub use network::{Mode, Potentials, PreferenceNetwork};
pub use process::{
    detect_update_cycle, is_stable, proposed_update, replay, run, stable_state, update_step,
    RunReport, RunStatus, Scheduler, SchedulerKind, UpdateCycle, UpdateEvent,
};
pub(crate) use process::activate;
pub use swap::swap_update_closure;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axis::Axis;
    use crate::error::Error;
    use crate::rules::Rule;

    fn build(mode: Mode, m: usize, opinions: &[&str], edges: &[(usize, usize)]) -> PreferenceNetwork {
        let ax = Axis::canonical(m);
        let ops = opinions.iter().map(|s| ax.parse_ranking(s).unwrap()).collect();
        let names = (1..=opinions.len()).map(|i| format!("v{i}")).collect();
        PreferenceNetwork::new(ax, mode, names, ops, edges.to_vec()).unwrap()
    }

    fn star(mode: Mode, centre: &str, leaves: &[&str]) -> PreferenceNetwork {
        let mut ops = vec![centre];
        ops.extend_from_slice(leaves);
        let edges: Vec<_> = (1..=leaves.len()).map(|i| (0, i)).collect();
        build(mode, 3, &ops, &edges)
    }

    #[test]
    fn swap_stall_versus_kemeny_update() {
        let net = star(Mode::Free, "a > c > b", &["a > b > c", "b > a > c", "b > a > c", "a > c > b"]);
        let ax = net.axis().clone();
        let stall = swap_update_closure(&net, 0).unwrap();
        assert_eq!(ax.format_ranking(&stall), "a > b > c");
        let kem = Rule::Kemeny.apply(&net.neighbourhood_profile(0), Some(&ax)).unwrap();
        assert!(kem.winners.contains(&ax.parse_ranking("b > a > c").unwrap()));
        // a > b > c ties b > a > c at score 3 and is closer to a > c > b
        let (next, ev) = update_step(&net, 0, Rule::Kemeny).unwrap();
        assert_eq!(ax.format_ranking(&ev.new), "a > b > c");
        assert_eq!(next.opinion(0), &ev.new);
        assert!(ev.changed());
    }

    #[test]
    fn opposite_extremes_are_not_stable() {
        let net = build(Mode::SinglePeaked, 3, &["a > b > c", "c > b > a"], &[(0, 1)]);
        assert!(!is_stable(&net, 0, Rule::Kemeny).unwrap());
        assert!(!is_stable(&net, 1, Rule::Kemeny).unwrap());
        let (next, ev) = update_step(&net, 0, Rule::Kemeny).unwrap();
        assert_eq!(next.opinion(0), next.opinion(1));
        assert_eq!(ev.before.edge_kt, 3);
        assert_eq!(ev.after.edge_kt, 0);
    }

    #[test]
    fn isolated_and_stable_voters_keep_their_opinion() {
        let net = build(Mode::SinglePeaked, 3, &["b > a > c", "c > b > a", "c > b > a"], &[(1, 2)]);
        let (next, ev) = update_step(&net, 0, Rule::Mmc).unwrap();
        assert!(!ev.changed());
        assert_eq!(next, net);
        assert!(stable_state(&net, Rule::Kemeny).unwrap());
        let r = run(&net, Rule::Kemeny, &Scheduler::RoundRobin, 10).unwrap();
        assert!(r.trace.is_empty());
        assert_eq!(r.status, RunStatus::Converged);
        assert!(matches!(update_step(&net, 7, Rule::Kemeny), Err(Error::UnknownVoter(_))));
    }

    #[test]
    fn schedulers_reach_stable_states() {
        let net = build(
            Mode::SinglePeaked,
            3,
            &["a > b > c", "c > b > a", "b > c > a", "b > a > c"],
            &[(0, 1), (1, 2), (2, 3), (3, 0)],
        );
        for s in [Scheduler::RoundRobin, Scheduler::Random { seed: 3 }] {
            for rule in [Rule::Kemeny, Rule::Mmc] {
                let r = run(&net, rule, &s, 100).unwrap();
                assert!(r.converged());
                assert!(stable_state(&r.final_net, rule).unwrap());
                let voters: Vec<_> = r.trace.iter().map(|e| e.voter).collect();
                assert_eq!(replay(&net, &voters, rule).unwrap(), r.final_net);
                assert!(detect_update_cycle(net.opinions(), &r.trace).is_none());
            }
        }
        let r = run(&net, Rule::Kemeny, &Scheduler::Explicit(vec![0]), 100).unwrap();
        assert!(r.trace.len() <= 1);
    }

    #[test]
    fn step_cap_is_reported() {
        let net = build(Mode::SinglePeaked, 3, &["a > b > c", "c > b > a"], &[(0, 1)]);
        let r = run(&net, Rule::Kemeny, &Scheduler::RoundRobin, 0).unwrap();
        assert_eq!(r.status, RunStatus::StepCapReached);
    }

    #[test]
    fn cycle_detector_fires_on_a_revisit() {
        let ax = Axis::canonical(3);
        let up = ax.extreme_up();
        let down = ax.extreme_down();
        let ev = |step, old: &crate::Ranking, new: &crate::Ranking| UpdateEvent {
            step,
            voter: 0,
            old: old.clone(),
            new: new.clone(),
            before: Potentials::default(),
            after: Potentials::default(),
        };
        let trace = vec![ev(0, &up, &down), ev(1, &down, &up)];
        let c = detect_update_cycle(std::slice::from_ref(&up), &trace).unwrap();
        assert_eq!((c.first_seen_after, c.recurred_after), (0, 2));
        assert!(detect_update_cycle(std::slice::from_ref(&up), &trace[..1]).is_none());
    }
}
