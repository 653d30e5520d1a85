mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use spdiff_core::{
    condorcet_losers, condorcet_winners, enumerate_sp_rankings, kendall_tau, median_peak_winners, Axis, Candidate,
    Profile, Ranking,
};

use common::*;

fn ranking(m: usize) -> impl Strategy<Value = Ranking> {
    Just((0..m).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Ranking::from_indices(&v).unwrap())
}

fn shuffled_axis(m: usize) -> impl Strategy<Value = Axis> {
    Just((0..m).map(Candidate::from_index).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |order| {
            let base = Axis::canonical(m);
            Axis::with_order(base.names().to_vec().into(), order).unwrap()
        })
}

fn profile_of(m: usize, max_n: usize) -> impl Strategy<Value = Profile> {
    proptest::collection::vec(ranking(m), 1..=max_n).prop_map(move |v| Profile::new(m, v).unwrap())
}

#[test]
fn single_peakedness_matches_the_triple_definition() {
    for m in 1..=6 {
        let axis = Axis::canonical(m);
        for r in permutations(m) {
            assert_eq!(axis.is_single_peaked(&r).unwrap(), sp_by_triples(&axis, &r));
        }
    }
}

#[test]
fn enumeration_equals_the_filtered_permutations() {
    for m in 1..=7 {
        let axis = Axis::canonical(m);
        let seq = enumerate_sp_rankings(&axis).unwrap();
        let got: HashSet<Ranking> = seq.rankings.iter().cloned().collect();
        let want: HashSet<Ranking> = sp_domain(&axis).into_iter().collect();
        assert_eq!(seq.rankings.len(), 1 << (m - 1));
        assert_eq!(got, want);
    }
}

#[test]
fn median_peaks_are_the_weak_condorcet_winners() {
    for m in 1..=4 {
        let axis = Axis::canonical(m);
        let dom = sp_domain(&axis);
        for n in 1..=4 {
            for p in multisets(&dom, m, n) {
                let mut med: Vec<usize> = median_peak_winners(&p, &axis).unwrap().iter().map(|c| c.index()).collect();
                med.sort_unstable();
                assert_eq!(med, weak_condorcet_winners(p.voters(), m));
                let lib: Vec<usize> = condorcet_winners(&p).weak.iter().map(|c| c.index()).collect();
                assert_eq!(lib, weak_condorcet_winners(p.voters(), m));
            }
        }
    }
}

#[test]
fn worst_defeat_comes_from_an_axis_neighbour() {
    for m in 2..=5 {
        let axis = Axis::canonical(m);
        let dom = sp_domain(&axis);
        for n in 1..=3 {
            for p in multisets(&dom, m, n) {
                let t = p.majority_table();
                for i in 0..m {
                    let c = axis.at(i);
                    let near = [i.checked_sub(1), (i + 1 < m).then_some(i + 1)]
                        .into_iter()
                        .flatten()
                        .map(|j| t.pop(axis.at(j), c))
                        .max()
                        .unwrap();
                    assert_eq!(t.worst_defeat(c), near);
                }
            }
        }
    }
}

#[test]
fn some_weak_condorcet_loser_sits_at_an_axis_end() {
    for m in 2..=5 {
        let axis = Axis::canonical(m);
        let dom = sp_domain(&axis);
        for n in 1..=3 {
            for p in multisets(&dom, m, n) {
                let losers = weak_condorcet_losers(p.voters(), m);
                let ends = [axis.at(0).index(), axis.at(m - 1).index()];
                assert!(losers.iter().any(|c| ends.contains(c)));
                let lib: Vec<usize> = condorcet_losers(&p).weak.iter().map(|c| c.index()).collect();
                assert_eq!(lib, losers);
            }
        }
    }
}

proptest! {
    #[test]
    fn kendall_tau_is_a_metric((a, b, c) in (1usize..=8).prop_flat_map(|m| (ranking(m), ranking(m), ranking(m)))) {
        let d = |x, y| kendall_tau(x, y).unwrap();
        prop_assert_eq!(d(&a, &b), kt(&a, &b));
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert_eq!(d(&a, &b) == 0, a == b);
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
    }

    #[test]
    fn kendall_tau_of_the_reversal_is_maximal(r in (1usize..=9).prop_flat_map(ranking)) {
        let m = r.len();
        prop_assert_eq!(kendall_tau(&r, &r.reversed()).unwrap(), m * (m - 1) / 2);
    }

    #[test]
    fn single_peakedness_on_any_axis(axis in (1usize..=7).prop_flat_map(shuffled_axis), seed in 0u64..5040) {
        let perms = permutations(axis.len());
        let r = &perms[seed as usize % perms.len()];
        prop_assert_eq!(axis.is_single_peaked(r).unwrap(), sp_by_triples(&axis, r));
        prop_assert!(axis.is_single_peaked(&axis.extreme_up()).unwrap());
        prop_assert!(axis.is_single_peaked(&axis.extreme_down()).unwrap());
    }

    #[test]
    fn majority_table_is_antisymmetric_with_parity(p in (1usize..=6).prop_flat_map(|m| profile_of(m, 9))) {
        let t = p.majority_table();
        let (m, n) = (p.num_candidates(), p.num_voters() as i64);
        for a in 0..m {
            for b in 0..m {
                let (ca, cb) = (Candidate::from_index(a), Candidate::from_index(b));
                if a == b {
                    continue;
                }
                prop_assert_eq!(t.pop(ca, cb), -t.pop(cb, ca));
                prop_assert_eq!(t.pop(ca, cb).rem_euclid(2), n.rem_euclid(2));
                prop_assert_eq!(t.pop(ca, cb), margin(p.voters(), a, b));
            }
        }
    }
}
