//! Exhaustive certifiers for Condorcet winner/loser consistency, preservation
//! of single-peakedness and extremist majority consistency.
//!
//! Every search runs over all single-peaked profiles on the canonical axis
//! `a ▷ b ▷ …` with `1..=max_m` candidates and `1..=max_n` voters, enumerated
//! as multisets of the single-peaked domain. A verdict that finds nothing is
//! reported as *holds on the searched space*; nothing here proves anything
//! beyond that space.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::axis::{enumerate_sp_rankings, Axis, Extreme};
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::Ranking;
use crate::rules::Rule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Property {
    /// Every winner ranks a weak Condorcet winner first.
    #[serde(rename = "CWC")]
    Cwc,
    /// Every winner ranks a weak Condorcet loser last.
    #[serde(rename = "CLC")]
    Clc,
    /// Some winner is single-peaked.
    #[serde(rename = "SPP")]
    Spp,
    /// An extreme opinion wins iff a weak majority holds it.
    #[serde(rename = "EMC")]
    Emc,
    /// Any opinion held by a strict majority is among the winners.
    #[serde(rename = "MAJ")]
    MajorityOpinion,
}

impl Property {
    pub const TABLE: [Property; 4] = [Property::Cwc, Property::Clc, Property::Spp, Property::Emc];

    pub fn label(self) -> &'static str {
        match self {
            Property::Cwc => "CWC",
            Property::Clc => "CLC",
            Property::Spp => "SPP",
            Property::Emc => "EMC",
            Property::MajorityOpinion => "MAJ",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cwc" => Ok(Property::Cwc),
            "clc" => Ok(Property::Clc),
            "spp" => Ok(Property::Spp),
            "emc" => Ok(Property::Emc),
            "maj" | "majority" => Ok(Property::MajorityOpinion),
            _ => Err(Error::domain(format!(
                "unknown property {s:?}, expected cwc|clc|spp|emc|maj"
            ))),
        }
    }
}

/// All profiles with `1..=max_m` candidates and `1..=max_n` voters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSpace {
    pub max_m: usize,
    pub max_n: usize,
}

impl SearchSpace {
    pub fn new(max_m: usize, max_n: usize) -> Self {
        SearchSpace { max_m, max_n }
    }

    /// `Σ_{m, n} C(2^(m-1) + n - 1, n)`.
    pub fn profile_count(&self) -> u128 {
        let mut total = 0;
        for m in 1..=self.max_m {
            for n in 1..=self.max_n {
                total = multiset_count(1u128 << (m - 1), n as u128).saturating_add(total);
            }
        }
        total
    }
}

impl fmt::Display for SearchSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m <= {}, n <= {}", self.max_m, self.max_n)
    }
}

/// Number of size-`n` multisets over `k` items, saturating at `u128::MAX`.
pub fn multiset_count(k: u128, n: u128) -> u128 {
    // C(k + n - 1, n); each partial product is itself a binomial coefficient
    let mut c: u128 = 1;
    for i in 0..n {
        match c.checked_mul(k + i) {
            Some(x) => c = x / (i + 1),
            None => return u128::MAX,
        }
    }
    c
}

/// Every size-`n` multiset of single-peaked rankings over `axis`, as
/// profiles, in lexicographic order of their (non-decreasing) index tuples
/// into the enumeration order of the domain.
pub fn sp_profiles(axis: &Axis, n: usize) -> Result<Vec<Profile>> {
    let domain = enumerate_sp_rankings(axis)?.rankings;
    let k = domain.len();
    let mut out = Vec::new();
    if n == 0 {
        out.push(Profile::empty(axis.len()));
        return Ok(out);
    }
    let mut idx = vec![0usize; n];
    loop {
        let voters = idx.iter().map(|&i| domain[i].clone()).collect();
        out.push(Profile::new(axis.len(), voters)?);
        // next non-decreasing tuple
        let Some(pos) = (0..n).rev().find(|&i| idx[i] + 1 < k) else {
            break;
        };
        let v = idx[pos] + 1;
        for x in &mut idx[pos..] {
            *x = v;
        }
    }
    Ok(out)
}

/// What a refuting profile shows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoSinglePeakedWinner,
    TopNotCondorcetWinner { ranking: Ranking },
    BottomNotCondorcetLoser { ranking: Ranking },
    ExtremistMismatch {
        target: Extreme,
        in_outcome: bool,
        supporters: usize,
        voters: usize,
    },
    MajorityOpinionMissing { ranking: Ranking },
}

impl Violation {
    pub fn describe(&self, axis: &Axis) -> String {
        match self {
            Violation::NoSinglePeakedWinner => "no winning ranking is single-peaked".into(),
            Violation::TopNotCondorcetWinner { ranking } => format!(
                "winner {} does not rank a weak Condorcet winner first",
                axis.format_ranking(ranking)
            ),
            Violation::BottomNotCondorcetLoser { ranking } => format!(
                "winner {} does not rank a weak Condorcet loser last",
                axis.format_ranking(ranking)
            ),
            Violation::ExtremistMismatch {
                target,
                in_outcome,
                supporters,
                voters,
            } => format!(
                "extreme {} = {} is {}a winner while held by {supporters} of {voters} voters",
                target,
                axis.format_ranking(&axis.extreme(*target)),
                if *in_outcome { "" } else { "not " }
            ),
            Violation::MajorityOpinionMissing { ranking } => format!(
                "majority opinion {} is not a winner",
                axis.format_ranking(ranking)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub axis: Axis,
    pub profile: Profile,
    pub violation: Violation,
}

impl Witness {
    /// The profile in `COUNT x a > b > …` lines (grouped by ranking).
    pub fn profile_lines(&self) -> Vec<String> {
        self.profile
            .grouped()
            .iter()
            .map(|(k, r)| format!("{k} x {}", self.axis.format_ranking(r)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No counterexample in the searched space.
    HoldsOnSearchedSpace,
    Refuted(Box<Witness>),
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Refuted(w) => Some(w),
            Verdict::HoldsOnSearchedSpace => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub rule: Rule,
    pub property: Property,
    pub verdict: Verdict,
    /// `None` for verdicts on a single fixed profile.
    pub space: Option<SearchSpace>,
    pub profiles_checked: u64,
}

/// Checks one profile. `Ok(None)` means the property holds on it.
pub fn violation(rule: Rule, property: Property, axis: &Axis, p: &Profile) -> Result<Option<Violation>> {
    let out = rule.apply(p, Some(axis))?;
    let w = &out.winners;
    Ok(match property {
        Property::Spp => (!w.has_single_peaked(axis)?).then_some(Violation::NoSinglePeakedWinner),
        Property::Cwc => {
            let cw = p.majority_table().condorcet_winners();
            if cw.weak.is_empty() {
                None
            } else {
                w.possible_tops()
                    .into_iter()
                    .find(|c| !cw.contains(*c))
                    .and_then(|c| w.member_with(c, false))
                    .map(|ranking| Violation::TopNotCondorcetWinner { ranking })
            }
        }
        Property::Clc => {
            let cl = p.majority_table().condorcet_losers();
            if cl.weak.is_empty() {
                None
            } else {
                w.possible_bottoms()
                    .into_iter()
                    .find(|c| !cl.contains(*c))
                    .and_then(|c| w.member_with(c, true))
                    .map(|ranking| Violation::BottomNotCondorcetLoser { ranking })
            }
        }
        Property::Emc => [Extreme::Up, Extreme::Down].into_iter().find_map(|target| {
            let r = axis.extreme(target);
            let supporters = p.count(&r);
            let in_outcome = w.contains(&r);
            let weak_majority = 2 * supporters >= p.num_voters();
            (in_outcome != weak_majority).then_some(Violation::ExtremistMismatch {
                target,
                in_outcome,
                supporters,
                voters: p.num_voters(),
            })
        }),
        Property::MajorityOpinion => p
            .histogram()
            .into_iter()
            .find(|(r, k)| 2 * k > p.num_voters() && !w.contains(r))
            .map(|(ranking, _)| Violation::MajorityOpinionMissing { ranking }),
    })
}

/// Largest search space [`check`] accepts, in profiles.
pub const MAX_SEARCH_PROFILES: u128 = 50_000_000;

/// Exhaustive search; on refutation the witness is the first violating
/// profile in (m, n, enumeration) order.
pub fn check(rule: Rule, property: Property, space: SearchSpace) -> Result<PropertyVerdict> {
    if space.max_m == 0 || space.max_n == 0 {
        return Err(Error::domain("search space needs m >= 1 and n >= 1"));
    }
    if space.max_m > 20 || space.profile_count() > MAX_SEARCH_PROFILES {
        return Err(Error::capacity(format!(
            "search space {space} exceeds {MAX_SEARCH_PROFILES} profiles"
        )));
    }
    let mut checked = 0u64;
    for m in 1..=space.max_m {
        let axis = Axis::canonical(m);
        for n in 1..=space.max_n {
            let profiles = sp_profiles(&axis, n)?;
            let found = profiles
                .par_iter()
                .map(|p| violation(rule, property, &axis, p).map(|v| v.map(|v| (p, v))))
                .find_map_first(|res| match res {
                    Ok(None) => None,
                    other => Some(other),
                });
            match found {
                Some(Err(e)) => return Err(e),
                Some(Ok(Some((p, v)))) => {
                    let pos = profiles.iter().position(|q| q == p).expect("profile from list");
                    checked += pos as u64 + 1;
                    return Ok(PropertyVerdict {
                        rule,
                        property,
                        verdict: Verdict::Refuted(Box::new(Witness {
                            axis,
                            profile: p.clone(),
                            violation: v,
                        })),
                        space: Some(space),
                        profiles_checked: checked,
                    });
                }
                _ => checked += profiles.len() as u64,
            }
        }
    }
    Ok(PropertyVerdict {
        rule,
        property,
        verdict: Verdict::HoldsOnSearchedSpace,
        space: Some(space),
        profiles_checked: checked,
    })
}

pub fn check_spp(rule: Rule, m: usize, n: usize) -> Result<PropertyVerdict> {
    check(rule, Property::Spp, SearchSpace::new(m, n))
}

pub fn check_cwc(rule: Rule, m: usize, n: usize) -> Result<PropertyVerdict> {
    check(rule, Property::Cwc, SearchSpace::new(m, n))
}

pub fn check_clc(rule: Rule, m: usize, n: usize) -> Result<PropertyVerdict> {
    check(rule, Property::Clc, SearchSpace::new(m, n))
}

pub fn check_emc(rule: Rule, m: usize, n: usize) -> Result<PropertyVerdict> {
    check(rule, Property::Emc, SearchSpace::new(m, n))
}

/// Strict-majority opinions are Kemeny rankings, over the searched space.
pub fn check_kemeny_majority(m: usize, n: usize) -> Result<PropertyVerdict> {
    check(Rule::Kemeny, Property::MajorityOpinion, SearchSpace::new(m, n))
}

/// The converse fails: finds the first searched profile with a Kemeny
/// ranking that no voter holds.
pub fn kemeny_unsupported_winner(space: SearchSpace) -> Result<Option<(Axis, Profile, Ranking)>> {
    for m in 1..=space.max_m {
        let axis = Axis::canonical(m);
        for n in 1..=space.max_n {
            for p in sp_profiles(&axis, n)? {
                let out = crate::rules::kemeny(&p)?;
                let winners = out.winners.materialize(u128::MAX)?;
                if let Some(r) = winners.into_iter().find(|r| p.count(r) == 0) {
                    return Ok(Some((axis, p, r)));
                }
            }
        }
    }
    Ok(None)
}

/// Checks a single fixed profile.
pub fn check_profile(rule: Rule, property: Property, axis: &Axis, p: &Profile) -> Result<PropertyVerdict> {
    let verdict = match violation(rule, property, axis, p)? {
        Some(v) => Verdict::Refuted(Box::new(Witness {
            axis: axis.clone(),
            profile: p.clone(),
            violation: v,
        })),
        None => Verdict::HoldsOnSearchedSpace,
    };
    Ok(PropertyVerdict {
        rule,
        property,
        verdict,
        space: None,
        profiles_checked: 1,
    })
}

/// Re-runs the rule on a stored witness and confirms the violation recurs.
pub fn verify_witness(rule: Rule, property: Property, w: &Witness) -> Result<bool> {
    Ok(violation(rule, property, &w.axis, &w.profile)?.as_ref() == Some(&w.violation))
}

/// A fixed counterexample profile from the literature, with the rules and
/// properties it refutes.
#[derive(Clone, Debug)]
pub struct PaperWitness {
    pub label: &'static str,
    pub axis: Axis,
    pub profile: Profile,
    pub refutes: Vec<(Rule, Property)>,
}

fn fixed(m: usize, groups: &[(usize, &str)]) -> (Axis, Profile) {
    let axis = Axis::canonical(m);
    let g: Vec<(usize, Ranking)> = groups
        .iter()
        .map(|(k, s)| (*k, axis.parse_ranking(s).expect("fixed profile parses")))
        .collect();
    let p = Profile::from_counts(m, &g).expect("fixed profile is valid");
    (axis, p)
}

pub fn paper_witnesses() -> Vec<PaperWitness> {
    let mut out = Vec::new();
    let mut push = |label, m, groups: &[(usize, &str)], refutes: Vec<(Rule, Property)>| {
        let (axis, profile) = fixed(m, groups);
        out.push(PaperWitness {
            label,
            axis,
            profile,
            refutes,
        });
    };
    push(
        "MMC Condorcet-loser counterexample",
        4,
        &[(1, "a > b > c > d"), (2, "b > c > d > a")],
        vec![
            (Rule::Mmc, Property::Clc),
            (Rule::Dodgson, Property::Clc),
            (Rule::WeakDodgson, Property::Clc),
        ],
    );
    push(
        "Dodgson/Copeland dip at c",
        5,
        &[
            (1, "a > b > c > d > e"),
            (2, "b > a > c > d > e"),
            (2, "d > e > c > b > a"),
            (1, "e > d > c > b > a"),
        ],
        vec![(Rule::Dodgson, Property::Spp), (Rule::Copeland, Property::Spp)],
    );
    push(
        "STV dip at b",
        3,
        &[(1, "a > b > c"), (2, "c > b > a")],
        vec![(Rule::Stv, Property::Spp)],
    );
    push(
        "Borda non-single-peaked output",
        4,
        &[(3, "a > b > c > d"), (2, "c > d > b > a")],
        vec![(Rule::Borda, Property::Spp)],
    );
    push(
        "Borda ignores an extremist majority",
        3,
        &[(4, "a > b > c"), (1, "b > a > c"), (2, "b > c > a")],
        vec![(Rule::Borda, Property::Emc)],
    );
    out
}

/// Rows of the overview table, in its order.
pub const TABLE1_RULES: [Rule; 7] = [
    Rule::Kemeny,
    Rule::Mmc,
    Rule::WeakDodgson,
    Rule::Dodgson,
    Rule::Copeland,
    Rule::Stv,
    Rule::Borda,
];

/// Published status of a cell: `true` = ✓, `false` = ✗.
pub fn table1_expected(rule: Rule, property: Property) -> bool {
    use Property::*;
    use Rule::*;
    match (rule, property) {
        (_, MajorityOpinion) => matches!(rule, Kemeny | KemenySp),
        (Kemeny | KemenySp, _) => true,
        (Mmc | WeakDodgson, Clc) => false,
        (Mmc | WeakDodgson, _) => true,
        (Dodgson, Cwc) => true,
        (Dodgson, _) => false,
        (Copeland, Cwc | Clc) => true,
        (Copeland, _) => false,
        (Stv | Borda, _) => false,
    }
}

/// ✓ cells that the literature asserts without an in-text argument.
pub fn table1_paper_asserted(rule: Rule, property: Property) -> bool {
    matches!((rule, property), (Rule::Dodgson, Property::Cwc))
}

#[derive(Clone, Debug)]
pub struct Table1Cell {
    pub rule: Rule,
    pub property: Property,
    pub expected_holds: bool,
    pub search: Option<PropertyVerdict>,
    pub fixed: Vec<(&'static str, PropertyVerdict)>,
    pub paper_asserted: bool,
}

impl Table1Cell {
    pub fn refuted(&self) -> bool {
        self.search.as_ref().is_some_and(|v| v.verdict.is_refuted())
            || self.fixed.iter().any(|(_, v)| v.verdict.is_refuted())
    }

    pub fn agrees(&self) -> bool {
        self.refuted() != self.expected_holds
    }

    /// First refuting verdict: the search's, else a fixed witness'.
    pub fn refutation(&self) -> Option<&PropertyVerdict> {
        self.search
            .iter()
            .chain(self.fixed.iter().map(|(_, v)| v))
            .find(|v| v.verdict.is_refuted())
    }
}

#[derive(Clone, Debug)]
pub struct Table1Report {
    pub space: Option<SearchSpace>,
    pub paper_witnesses: bool,
    pub cells: Vec<Table1Cell>,
}

impl Table1Report {
    pub fn all_agree(&self) -> bool {
        self.cells.iter().all(Table1Cell::agrees)
    }

    pub fn cell(&self, rule: Rule, property: Property) -> Option<&Table1Cell> {
        self.cells
            .iter()
            .find(|c| c.rule == rule && c.property == property)
    }

    /// Human-readable matrix. `✗` = refuted (with witness), `✓` = holds on
    /// the searched space; `!` marks disagreement with the reference table.
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("{:<14}", "rule"));
        for p in Property::TABLE {
            s.push_str(&format!(" {:>6}", p.label()));
        }
        s.push('\n');
        for rule in TABLE1_RULES {
            s.push_str(&format!("{:<14}", rule.selector()));
            for p in Property::TABLE {
                let mark = match self.cell(rule, p) {
                    Some(c) => {
                        let base = if c.refuted() { "✗" } else { "✓" };
                        let flag = if !c.agrees() {
                            "!"
                        } else if c.paper_asserted {
                            "*"
                        } else {
                            ""
                        };
                        format!("{base}{flag}")
                    }
                    None => "-".into(),
                };
                s.push_str(&format!(" {mark:>6}"));
            }
            s.push('\n');
        }
        match self.space {
            Some(sp) => s.push_str(&format!(
                "✓ = holds on the searched space ({sp}, {} profiles), not a proof\n",
                sp.profile_count()
            )),
            None => s.push_str("✓ = not refuted by the fixed witnesses, not a proof\n"),
        }
        s.push_str("* = cell asserted by the reference table without an in-text argument\n");
        if !self.all_agree() {
            s.push_str("! = disagrees with the reference table\n");
        }
        s
    }
}

/// Runs every rule × property check on `space` (if any) plus the fixed
/// witnesses (if requested).
pub fn table1_report(space: Option<SearchSpace>, paper: bool) -> Result<Table1Report> {
    let witnesses = if paper { paper_witnesses() } else { Vec::new() };
    let mut cells = Vec::new();
    for rule in TABLE1_RULES {
        for property in Property::TABLE {
            let search = space.map(|sp| check(rule, property, sp)).transpose()?;
            let mut fixed_verdicts = Vec::new();
            for w in &witnesses {
                if w.refutes.contains(&(rule, property)) {
                    fixed_verdicts.push((w.label, check_profile(rule, property, &w.axis, &w.profile)?));
                }
            }
            cells.push(Table1Cell {
                rule,
                property,
                expected_holds: table1_expected(rule, property),
                search,
                fixed: fixed_verdicts,
                paper_asserted: table1_paper_asserted(rule, property),
            });
        }
    }
    Ok(Table1Report {
        space,
        paper_witnesses: paper,
        cells,
    })
}
