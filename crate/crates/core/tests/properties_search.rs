mod common;

use spdiff_core::properties::{
    check, check_clc, check_emc, check_kemeny_majority, check_profile, check_spp, kemeny_unsupported_winner,
    multiset_count, paper_witnesses, sp_profiles, table1_report, verify_witness, Property, SearchSpace, Verdict,
    Violation,
};
use spdiff_core::{Axis, Extreme, Rule};

use common::*;

fn holds(v: &spdiff_core::properties::PropertyVerdict) -> bool {
    v.verdict == Verdict::HoldsOnSearchedSpace
}

#[test]
fn enumerated_profiles_are_the_sp_multisets() {
    for m in 1..=4 {
        let axis = Axis::canonical(m);
        let dom = sp_domain(&axis);
        for n in 1..=4 {
            let got = sp_profiles(&axis, n).unwrap();
            assert_eq!(got.len() as u128, multiset_count(1 << (m - 1), n as u128));
            let mut a: Vec<_> = got.iter().map(|p| p.histogram()).collect();
            let mut b: Vec<_> = multisets(&dom, m, n).iter().map(|p| p.histogram()).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn fixed_counterexamples_refute_what_they_claim() {
    for w in paper_witnesses() {
        for &(rule, property) in &w.refutes {
            let v = check_profile(rule, property, &w.axis, &w.profile).unwrap();
            let wit = v.verdict.witness().unwrap_or_else(|| panic!("{} {rule:?} {property:?}", w.label));
            assert!(verify_witness(rule, property, wit).unwrap());
        }
    }
}

#[test]
fn dip_profile_gives_dodgson_scores_with_a_dip() {
    let axis = Axis::canonical(4);
    let p = profile(&axis, &[(1, "a > b > c > d"), (2, "b > c > d > a")]);
    let (s, w) = dodgson_by_targets(&p);
    assert_eq!(s, vec![3, 0, 2, 4]);
    assert_eq!(w, vec![3, 0, 2, 4]);
    let v = check_profile(Rule::WeakDodgson, Property::Clc, &axis, &p).unwrap();
    assert!(matches!(
        v.verdict.witness().unwrap().violation,
        Violation::BottomNotCondorcetLoser { .. }
    ));
}

#[test]
fn borda_emc_counterexample_prefers_the_other_ranking() {
    let axis = Axis::canonical(3);
    let p = profile(&axis, &[(4, "a > b > c"), (1, "b > a > c"), (2, "b > c > a")]);
    let out = Rule::Borda.apply(&p, Some(&axis)).unwrap();
    assert_eq!(out.winners.materialize(10).unwrap(), vec![axis.parse_ranking("b > a > c").unwrap()]);
    let v = check_profile(Rule::Borda, Property::Emc, &axis, &p).unwrap();
    assert_eq!(
        v.verdict.witness().unwrap().violation,
        Violation::ExtremistMismatch {
            target: Extreme::Up,
            in_outcome: false,
            supporters: 4,
            voters: 7
        }
    );
}

#[test]
fn preserving_rules_hold_on_small_spaces() {
    assert!(holds(&check_spp(Rule::Mmc, 4, 4).unwrap()));
    assert!(holds(&check_spp(Rule::Kemeny, 4, 4).unwrap()));
    assert!(holds(&check_clc(Rule::Kemeny, 4, 3).unwrap()));
    assert!(holds(&check_spp(Rule::WeakDodgson, 4, 4).unwrap()));
    assert!(holds(&check_emc(Rule::WeakDodgson, 4, 4).unwrap()));
    assert!(holds(&check_emc(Rule::Kemeny, 4, 5).unwrap()));
    assert!(holds(&check_emc(Rule::Mmc, 4, 5).unwrap()));
}

#[test]
fn borda_preserves_single_peakedness_on_three_candidates() {
    let v = check_spp(Rule::Borda, 3, 6).unwrap();
    assert!(holds(&v));
    assert_eq!(v.profiles_checked as u128, (1..=3u32)
            .flat_map(|m| (1..=6).map(move |n| multiset_count(1 << (m - 1), n)))
            .sum::<u128>());
    assert!(check_spp(Rule::Borda, 4, 5).unwrap().verdict.is_refuted());
}

#[test]
fn stv_fails_every_property_on_small_spaces() {
    for property in Property::TABLE {
        let v = check(Rule::Stv, property, SearchSpace::new(4, 4)).unwrap();
        let w = v.verdict.witness().unwrap_or_else(|| panic!("{property:?}"));
        assert!(verify_witness(Rule::Stv, property, w).unwrap());
    }
}

#[test]
fn kemeny_keeps_a_majority_opinion() {
    assert!(holds(&check_kemeny_majority(4, 5).unwrap()));
    let (axis, p, r) = kemeny_unsupported_winner(SearchSpace::new(3, 4)).unwrap().unwrap();
    assert_eq!(p.count(&r), 0);
    let (_, winners) = brute_kemeny(&p);
    assert!(winners.contains(&r));
    assert!(axis.is_single_peaked(&r).unwrap());

    let axis = Axis::canonical(3);
    let p = profile(&axis, &[(2, "a > b > c"), (1, "b > c > a"), (1, "c > b > a")]);
    let bac = axis.parse_ranking("b > a > c").unwrap();
    let (_, winners) = brute_kemeny(&p);
    assert!(winners.contains(&bac));
    assert_eq!(p.count(&bac), 0);
}

#[test]
fn searches_are_deterministic() {
    for (rule, property) in [(Rule::Copeland, Property::Spp), (Rule::Borda, Property::Cwc), (Rule::Mmc, Property::Clc)] {
        let a = check(rule, property, SearchSpace::new(5, 3)).unwrap();
        let b = check(rule, property, SearchSpace::new(5, 3)).unwrap();
        assert_eq!(a, b);
        if let Some(w) = a.verdict.witness() {
            assert!(verify_witness(rule, property, w).unwrap());
            // nothing earlier in the same order refutes
            let (m, n) = (w.axis.len(), w.profile.num_voters());
            for mm in 1..m {
                for nn in 1..=3 {
                    let v = check(rule, property, SearchSpace::new(mm, nn)).unwrap();
                    assert!(!v.verdict.is_refuted());
                }
            }
            for nn in 1..n {
                let axis = Axis::canonical(m);
                for p in sp_profiles(&axis, nn).unwrap() {
                    assert!(!check_profile(rule, property, &axis, &p).unwrap().verdict.is_refuted());
                }
            }
        }
    }
}

#[test]
fn overview_table_matches_on_four_by_four() {
    let rep = table1_report(Some(SearchSpace::new(4, 4)), true).unwrap();
    assert!(rep.all_agree(), "{}", rep.render());
    for property in Property::TABLE {
        assert!(rep.cell(Rule::Stv, property).unwrap().refuted());
        assert!(!rep.cell(Rule::Kemeny, property).unwrap().refuted());
    }
    let fixed_only = table1_report(None, true).unwrap();
    assert!(fixed_only.cell(Rule::Copeland, Property::Spp).unwrap().refuted());
    let text = rep.render();
    assert!(text.contains("not a proof"));
}
