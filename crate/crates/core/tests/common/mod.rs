//! Independent brute-force oracles. Nothing here calls the library's own
//! algorithms beyond constructing values.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use spdiff_core::{Axis, Candidate, Profile, Ranking};

pub fn profile(axis: &Axis, groups: &[(usize, &str)]) -> Profile {
    let g: Vec<(usize, Ranking)> = groups
        .iter()
        .map(|(k, s)| (*k, axis.parse_ranking(s).unwrap()))
        .collect();
    Profile::from_counts(axis.len(), &g).unwrap()
}

/// All `m!` rankings, lexicographic by candidate index.
pub fn permutations(m: usize) -> Vec<Ranking> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Ranking>) {
        if rest.is_empty() {
            out.push(Ranking::from_indices(cur).unwrap());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..m).collect(), &mut Vec::new(), &mut out);
    out
}

fn pos(r: &Ranking) -> Vec<usize> {
    let mut p = vec![0; r.len()];
    for (i, c) in r.candidates().iter().enumerate() {
        p[c.index()] = i;
    }
    p
}

/// Pair-by-pair inversion count.
pub fn kt(a: &Ranking, b: &Ranking) -> usize {
    let (pa, pb) = (pos(a), pos(b));
    let m = a.len();
    let mut d = 0;
    for x in 0..m {
        for y in x + 1..m {
            if (pa[x] < pa[y]) != (pb[x] < pb[y]) {
                d += 1;
            }
        }
    }
    d
}

/// Triple definition: for axis positions `i < j < k`, the middle candidate
/// is never ranked below both outer ones.
pub fn sp_by_triples(axis: &Axis, r: &Ranking) -> bool {
    let p = pos(r);
    let m = axis.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let (a, b, c) = (axis.at(i).index(), axis.at(j).index(), axis.at(k).index());
                if p[b] > p[a] && p[b] > p[c] {
                    return false;
                }
            }
        }
    }
    true
}

/// `#{c ≻ d} − #{d ≻ c}`.
pub fn margin(voters: &[Ranking], c: usize, d: usize) -> i64 {
    voters
        .iter()
        .map(|r| {
            let p = pos(r);
            if p[c] < p[d] {
                1
            } else {
                -1
            }
        })
        .sum()
}

pub fn weak_condorcet_winners(voters: &[Ranking], m: usize) -> Vec<usize> {
    (0..m)
        .filter(|&c| (0..m).all(|d| d == c || margin(voters, c, d) >= 0))
        .collect()
}

pub fn weak_condorcet_losers(voters: &[Ranking], m: usize) -> Vec<usize> {
    (0..m)
        .filter(|&c| (0..m).all(|d| d == c || margin(voters, c, d) <= 0))
        .collect()
}

/// Minimum Kemeny score and every ranking attaining it, by scoring all `m!`
/// rankings.
pub fn brute_kemeny(p: &Profile) -> (u64, Vec<Ranking>) {
    let mut best = u64::MAX;
    let mut win = Vec::new();
    for r in permutations(p.num_candidates()) {
        let s: u64 = p.voters().iter().map(|v| kt(&r, v) as u64).sum();
        if s < best {
            best = s;
            win.clear();
        }
        if s == best {
            win.push(r);
        }
    }
    win.sort();
    (best, win)
}

/// Dodgson and weak Dodgson scores by breadth-first search over profiles
/// reachable by adjacent swaps in any voter. States are sorted voter lists.
pub fn dodgson_bfs(p: &Profile) -> (Vec<u64>, Vec<u64>) {
    let m = p.num_candidates();
    let to_vec = |r: &Ranking| -> Vec<u8> { r.candidates().iter().map(|c| c.0).collect() };
    let mut start: Vec<Vec<u8>> = p.voters().iter().map(to_vec).collect();
    start.sort();
    let mut strict = vec![None; m];
    let mut weak = vec![None; m];
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([(start, 0u64)]);
    while let Some((state, depth)) = queue.pop_front() {
        let voters: Vec<Ranking> = state
            .iter()
            .map(|v| Ranking::new(v.iter().map(|&x| Candidate(x)).collect()).unwrap())
            .collect();
        for c in 0..m {
            let ms: Vec<i64> = (0..m).filter(|&d| d != c).map(|d| margin(&voters, c, d)).collect();
            if strict[c].is_none() && ms.iter().all(|&x| x > 0) {
                strict[c] = Some(depth);
            }
            if weak[c].is_none() && ms.iter().all(|&x| x >= 0) {
                weak[c] = Some(depth);
            }
        }
        if strict.iter().all(Option::is_some) {
            break;
        }
        for i in 0..state.len() {
            for j in 0..m - 1 {
                let mut next = state.clone();
                next[i].swap(j, j + 1);
                next.sort();
                if seen.insert(next.clone()) {
                    queue.push_back((next, depth + 1));
                }
            }
        }
    }
    (
        strict.into_iter().map(Option::unwrap).collect(),
        weak.into_iter().map(Option::unwrap).collect(),
    )
}

/// Every size-`n` multiset over `items`, as profiles.
pub fn multisets(items: &[Ranking], m: usize, n: usize) -> Vec<Profile> {
    fn go(items: &[Ranking], from: usize, left: usize, cur: &mut Vec<Ranking>, m: usize, out: &mut Vec<Profile>) {
        if left == 0 {
            out.push(Profile::new(m, cur.clone()).unwrap());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i].clone());
            go(items, i, left - 1, cur, m, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, n, &mut Vec::new(), m, &mut out);
    out
}

/// Single-peaked rankings of `axis`, found by filtering all permutations.
pub fn sp_domain(axis: &Axis) -> Vec<Ranking> {
    permutations(axis.len())
        .into_iter()
        .filter(|r| sp_by_triples(axis, r))
        .collect()
}

/// All connected simple graphs on vertices `0..n` (labelled).
pub fn connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for &(a, b) in &edges {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra] = rb;
        }
        let root = find(&mut comp, 0);
        if (0..n).all(|x| find(&mut comp, x) == root) {
            out.push(edges);
        }
    }
    out
}

/// Dodgson and weak Dodgson scores as `min Σ_i kt(p_i, q_i)` over all
/// target tuples `q` in which the candidate wins pairwise (reaching `q_i`
/// from `p_i` takes exactly `kt` adjacent swaps). Dynamic programming over
/// the candidate's partial margin vector.
pub fn dodgson_by_targets(p: &Profile) -> (Vec<u64>, Vec<u64>) {
    use std::collections::HashMap;
    let m = p.num_candidates();
    let perms = permutations(m);
    let mut strict = Vec::with_capacity(m);
    let mut weak = Vec::with_capacity(m);
    for c in 0..m {
        let others: Vec<usize> = (0..m).filter(|&d| d != c).collect();
        let mut states: HashMap<Vec<i8>, u64> = HashMap::from([(vec![0; others.len()], 0)]);
        for v in p.voters() {
            // cheapest target per pattern of "c above d"
            let mut best: HashMap<Vec<bool>, u64> = HashMap::new();
            for q in &perms {
                let pq = pos(q);
                let pat: Vec<bool> = others.iter().map(|&d| pq[c] < pq[d]).collect();
                let cost = kt(v, q) as u64;
                let e = best.entry(pat).or_insert(u64::MAX);
                *e = (*e).min(cost);
            }
            let mut next: HashMap<Vec<i8>, u64> = HashMap::new();
            for (s, cost) in &states {
                for (pat, k) in &best {
                    let s2: Vec<i8> = s.iter().zip(pat).map(|(x, &up)| x + if up { 1 } else { -1 }).collect();
                    let e = next.entry(s2).or_insert(u64::MAX);
                    *e = (*e).min(cost + k);
                }
            }
            states = next;
        }
        strict.push(states.iter().filter(|(s, _)| s.iter().all(|&x| x > 0)).map(|(_, &k)| k).min().unwrap());
        weak.push(states.iter().filter(|(s, _)| s.iter().all(|&x| x >= 0)).map(|(_, &k)| k).min().unwrap());
    }
    (strict, weak)
}

/// Dodgson and weak Dodgson scores of every size-`n` profile over `m`
/// candidates, by swap distance in the graph whose vertices are profiles
/// (sorted voter lists) and whose edges are single adjacent swaps. Swaps
/// are reversible, so one breadth-first search per candidate, started from
/// every profile where it wins, labels all profiles at once.
///
/// Keys are sorted indices into [`permutations`]`(m)`.
pub fn dodgson_swap_table(m: usize, n: usize) -> std::collections::HashMap<Vec<usize>, (Vec<u64>, Vec<u64>)> {
    use std::collections::HashMap;
    let perms = permutations(m);
    let index: HashMap<Vec<usize>, usize> = perms
        .iter()
        .enumerate()
        .map(|(i, r)| (r.candidates().iter().map(|c| c.index()).collect(), i))
        .collect();
    let swap: Vec<Vec<usize>> = perms
        .iter()
        .map(|r| {
            let v: Vec<usize> = r.candidates().iter().map(|c| c.index()).collect();
            (0..m.saturating_sub(1))
                .map(|j| {
                    let mut w = v.clone();
                    w.swap(j, j + 1);
                    index[&w]
                })
                .collect()
        })
        .collect();
    let idx: Vec<usize> = (0..perms.len()).collect();
    let mut states: Vec<Vec<usize>> = Vec::new();
    fn go(k: usize, from: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..k {
            cur.push(i);
            go(k, i, left - 1, cur, out);
            cur.pop();
        }
    }
    go(idx.len(), 0, n, &mut Vec::new(), &mut states);
    let id: HashMap<Vec<usize>, usize> = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let adj: Vec<Vec<usize>> = states
        .iter()
        .map(|s| {
            let mut out = Vec::new();
            for i in 0..s.len() {
                for &t in &swap[s[i]] {
                    let mut next = s.clone();
                    next[i] = t;
                    next.sort_unstable();
                    out.push(id[&next]);
                }
            }
            out
        })
        .collect();
    let margins: Vec<Vec<Vec<i64>>> = states
        .iter()
        .map(|s| {
            let voters: Vec<Ranking> = s.iter().map(|&i| perms[i].clone()).collect();
            (0..m).map(|c| (0..m).map(|d| margin(&voters, c, d)).collect()).collect()
        })
        .collect();
    let bfs = |goal: &dyn Fn(usize) -> bool| -> Vec<u64> {
        let mut dist = vec![u64::MAX; states.len()];
        let mut queue = VecDeque::new();
        for (i, d) in dist.iter_mut().enumerate() {
            if goal(i) {
                *d = 0;
                queue.push_back(i);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == u64::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    };
    let mut strict = Vec::new();
    let mut weak = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for c in 0..m {
        strict.push(bfs(&|i| (0..m).all(|d| d == c || margins[i][c][d] > 0)));
        weak.push(bfs(&|i| (0..m).all(|d| d == c || margins[i][c][d] >= 0)));
    }
    states
        .iter()
        .enumerate()
        .map(|(i, s)| {
            (
                s.clone(),
                ((0..m).map(|c| strict[c][i]).collect(), (0..m).map(|c| weak[c][i]).collect()),
            )
        })
        .collect()
}

/// Key of a profile in [`dodgson_swap_table`].
pub fn perm_key(p: &Profile) -> Vec<usize> {
    let perms = permutations(p.num_candidates());
    let mut k: Vec<usize> = p
        .voters()
        .iter()
        .map(|r| perms.iter().position(|q| q == r).unwrap())
        .collect();
    k.sort_unstable();
    k
}
