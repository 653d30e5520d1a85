use crate::error::Result;
use crate::ranking::Ranking;

use super::network::PreferenceNetwork;

/// Repeatedly swaps the first adjacent pair in `v`'s opinion that a strict
/// majority of its neighbours orders the other way, until none is left.
/// Each swap lowers the Kemeny score by a positive margin, so this stops.
pub fn swap_update_closure(net: &PreferenceNetwork, v: usize) -> Result<Ranking> {
    net.check_voter(v)?;
    let mut r = net.opinion(v).clone();
    let p = net.neighbourhood_profile(v);
    if p.is_empty() {
        return Ok(r);
    }
    let t = p.majority_table();
    loop {
        let c = r.candidates();
        let Some(i) = (0..c.len().saturating_sub(1)).find(|&i| t.pop(c[i + 1], c[i]) > 0) else {
            return Ok(r);
        };
        r.swap_adjacent(i);
    }
}
