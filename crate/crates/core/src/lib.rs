//! Opinion diffusion on undirected networks where every opinion is a
//! single-peaked ranking.
//!
//! The crate covers the preference machinery (rankings, axes, majority
//! margins), seven set-valued ranking rules with the update tie-breaker,
//! exhaustive property certifiers, the sequential diffusion process with its
//! potential functions, and the greedy schedule that maximally spreads an
//! extreme opinion.

pub mod axis;
pub mod diffusion;
pub mod error;
pub mod generate;
pub mod io;
pub mod profile;
pub mod properties;
pub mod ranking;
pub mod rules;
pub mod spread;

pub use diffusion::{Mode, PreferenceNetwork, Scheduler};
pub use axis::{enumerate_sp_rankings, Axis, Extreme, SpRankingSequence};
pub use error::{Error, Result};
pub use profile::{condorcet_losers, condorcet_winners, majority_table, median_peak_winners, CondorcetSet, MajorityTable, Profile};
pub use ranking::{kendall_tau, Candidate, Ranking};
pub use rules::{tie_break, Rule, RuleOutcome, ScoreTrace, TieBreakContext, WeakOrder, Winners};
