use crate::axis::Axis;
use crate::error::{Error, Result};
use crate::ranking::{kendall_tau_unchecked, Ranking};

use super::{RuleOutcome, Winners};

/// What an active voter knows when resolving a tie: the axis and its own
/// current opinion.
#[derive(Clone, Copy, Debug)]
pub struct TieBreakContext<'a> {
    pub axis: &'a Axis,
    pub current: &'a Ranking,
}

fn axis_key(axis: &Axis, r: &Ranking) -> Vec<usize> {
    r.candidates().iter().map(|&c| axis.position(c)).collect()
}

fn closest<'r>(ctx: &TieBreakContext<'_>, rs: impl IntoIterator<Item = &'r Ranking>) -> Option<Ranking> {
    rs.into_iter()
        .min_by_key(|r| (kendall_tau_unchecked(r, ctx.current), axis_key(ctx.axis, r)))
        .cloned()
}

/// Resolves a winner set to one ranking:
/// 1. keep only single-peaked winners, if there are any;
/// 2. minimise Kendall tau distance to the current opinion;
/// 3. take the lexicographically smallest by axis positions.
pub fn tie_break(outcome: &RuleOutcome, ctx: &TieBreakContext<'_>) -> Result<Ranking> {
    if ctx.current.len() != ctx.axis.len() {
        return Err(Error::domain("current opinion and axis differ in size"));
    }
    let sp = outcome.winners.single_peaked_members(ctx.axis)?;
    if let Some(r) = closest(ctx, &sp) {
        return Ok(r);
    }
    match &outcome.winners {
        Winners::Listed(v) => closest(ctx, v).ok_or_else(|| Error::domain("empty winner set")),
        // Within-tier pairs can all follow the current opinion, so the
        // closest refinement is unique and stage 3 never applies.
        Winners::Refinements(w) => Ok(w.closest_refinement(ctx.current)),
    }
}
