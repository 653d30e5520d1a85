//! Plain-text formats for profiles and networks.
//!
//! Profile:
//! ```text
//! axis: a > b > c
//! 2 x a > b > c
//! b > a > c
//! ```
//! Network:
//! ```text
//! axis: a > b > c
//! mode: free
//! v1: a > b > c
//! v2: b > a > c
//! v1 -- v2
//! ```
//! Blank lines and lines starting with `#` are ignored. `mode:` is
//! optional and defaults to single-peaked.

use crate::axis::Axis;
use crate::diffusion::{Mode, PreferenceNetwork};
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::ranking::Ranking;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_axis(line: usize, rest: &str) -> Result<Axis> {
    let names: Vec<&str> = rest.split('>').map(str::trim).collect();
    Axis::from_names(names).map_err(|e| Error::parse(line, e.to_string()))
}

fn parse_ranking(axis: &Axis, line: usize, s: &str) -> Result<Ranking> {
    axis.parse_ranking(s).map_err(|e| Error::parse(line, e.to_string()))
}

pub fn parse_profile(text: &str) -> Result<(Axis, Profile)> {
    let mut lines = content_lines(text);
    let (l0, head) = lines.next().ok_or_else(|| Error::parse(1, "missing axis line"))?;
    let rest = head
        .strip_prefix("axis:")
        .ok_or_else(|| Error::parse(l0, "expected `axis: ...` first"))?;
    let axis = parse_axis(l0, rest)?;
    let mut p = Profile::empty(axis.len());
    for (ln, l) in lines {
        let counted = l
            .split_once(" x ")
            .filter(|(k, _)| !k.is_empty() && k.bytes().all(|b| b.is_ascii_digit()));
        let (count, ranking) = match counted {
            Some((k, r)) => {
                let k: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("bad count {k:?}")))?;
                if k == 0 {
                    return Err(Error::parse(ln, "count must be positive"));
                }
                (k, r)
            }
            None => (1, l),
        };
        let r = parse_ranking(&axis, ln, ranking)?;
        for _ in 0..count {
            p.push(r.clone())?;
        }
    }
    Ok((axis, p))
}

/// Runs of equal consecutive rankings become one line; `N x ` is written
/// only for runs longer than one.
pub fn write_profile(axis: &Axis, p: &Profile) -> String {
    let mut out = format!("axis: {}\n", axis.format_ranking(&Ranking::from_vec_unchecked(axis.order().to_vec())));
    let v = p.voters();
    let mut i = 0;
    while i < v.len() {
        let mut j = i + 1;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        let r = axis.format_ranking(&v[i]);
        if j - i > 1 {
            out.push_str(&format!("{} x {r}\n", j - i));
        } else {
            out.push_str(&format!("{r}\n"));
        }
        i = j;
    }
    out
}

pub fn parse_network(text: &str) -> Result<PreferenceNetwork> {
    let mut axis = None;
    let mut mode = Mode::SinglePeaked;
    let mut voters: Vec<(usize, String, String)> = Vec::new();
    let mut edges: Vec<(usize, String, String)> = Vec::new();
    for (ln, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("axis:") {
            if axis.is_some() {
                return Err(Error::parse(ln, "repeated axis line"));
            }
            axis = Some(parse_axis(ln, rest)?);
        } else if let Some(rest) = l.strip_prefix("mode:") {
            mode = match rest.trim() {
                "free" => Mode::Free,
                "single-peaked" => Mode::SinglePeaked,
                other => return Err(Error::parse(ln, format!("unknown mode {other:?}"))),
            };
        } else if let Some((a, b)) = l.split_once("--") {
            edges.push((ln, a.trim().to_string(), b.trim().to_string()));
        } else if let Some((id, r)) = l.split_once(':') {
            voters.push((ln, id.trim().to_string(), r.to_string()));
        } else {
            return Err(Error::parse(ln, format!("unrecognised line {l:?}")));
        }
    }
    let axis = axis.ok_or_else(|| Error::parse(1, "missing axis line"))?;
    let mut names = Vec::with_capacity(voters.len());
    let mut opinions = Vec::with_capacity(voters.len());
    for (ln, id, r) in &voters {
        if names.contains(id) {
            return Err(Error::parse(*ln, format!("duplicate voter id {id:?}")));
        }
        names.push(id.clone());
        opinions.push(parse_ranking(&axis, *ln, r)?);
    }
    let lookup = |ln: usize, id: &str| {
        names
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| Error::parse(ln, format!("edge names unknown voter {id:?}")))
    };
    let mut pairs = Vec::with_capacity(edges.len());
    for (ln, a, b) in &edges {
        pairs.push((lookup(*ln, a)?, lookup(*ln, b)?));
    }
    PreferenceNetwork::new(axis, mode, names, opinions, pairs)
}

pub fn write_network(net: &PreferenceNetwork) -> String {
    let axis = net.axis();
    let mut out = format!(
        "axis: {}\n",
        axis.format_ranking(&Ranking::from_vec_unchecked(axis.order().to_vec()))
    );
    if net.mode() == Mode::Free {
        out.push_str("mode: free\n");
    }
    for v in 0..net.num_voters() {
        out.push_str(&format!("{}: {}\n", net.name(v), axis.format_ranking(net.opinion(v))));
    }
    for &(u, v) in net.edges() {
        out.push_str(&format!("{} -- {}\n", net.name(u), net.name(v)));
    }
    out
}
