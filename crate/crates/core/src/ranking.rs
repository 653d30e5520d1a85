use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Candidate handle: an index into the candidate set `0..m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Candidate(pub u8);

impl Candidate {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        debug_assert!(i <= u8::MAX as usize);
        Candidate(i as u8)
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Largest candidate count representable by [`Candidate`].
pub const MAX_CANDIDATES: usize = u8::MAX as usize + 1;

/// A strict total order over the candidates `0..m`, most preferred first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ranking(Vec<Candidate>);

impl Ranking {
    /// Builds a ranking, checking that `order` is a permutation of `0..order.len()`.
    pub fn new(order: Vec<Candidate>) -> Result<Self> {
        let m = order.len();
        if m == 0 {
            return Err(Error::domain("a ranking needs at least one candidate"));
        }
        if m > MAX_CANDIDATES {
            return Err(Error::capacity(format!("{m} candidates exceed {MAX_CANDIDATES}")));
        }
        let mut seen = vec![false; m];
        for c in &order {
            let i = c.index();
            if i >= m {
                return Err(Error::domain(format!("candidate {c} outside 0..{m}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::domain(format!("candidate {c} listed twice")));
            }
        }
        Ok(Ranking(order))
    }

    pub fn from_indices(order: &[usize]) -> Result<Self> {
        if order.iter().any(|&i| i >= MAX_CANDIDATES) {
            return Err(Error::domain("candidate index out of range"));
        }
        Self::new(order.iter().map(|&i| Candidate::from_index(i)).collect())
    }

    /// `0 ≻ 1 ≻ … ≻ m-1`.
    pub fn identity(m: usize) -> Self {
        Ranking((0..m).map(Candidate::from_index).collect())
    }

    pub(crate) fn from_vec_unchecked(order: Vec<Candidate>) -> Self {
        Ranking(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.0
    }

    pub fn peak(&self) -> Candidate {
        self.0[0]
    }

    pub fn last(&self) -> Candidate {
        self.0[self.0.len() - 1]
    }

    /// `positions()[c] = rank of c` (0 = top).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, c) in self.0.iter().enumerate() {
            pos[c.index()] = i;
        }
        pos
    }

    pub fn position_of(&self, c: Candidate) -> usize {
        self.0.iter().position(|&x| x == c).expect("candidate in ranking")
    }

    pub fn prefers(&self, a: Candidate, b: Candidate) -> bool {
        self.position_of(a) < self.position_of(b)
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        Ranking(v)
    }

    pub(crate) fn swap_adjacent(&mut self, i: usize) {
        self.0.swap(i, i + 1);
    }

    /// Applies a relabeling `c ↦ perm[c]` to every entry.
    pub fn relabel(&self, perm: &[Candidate]) -> Self {
        Ranking(self.0.iter().map(|c| perm[c.index()]).collect())
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            write!(f, "{}", c.0)?;
        }
        Ok(())
    }
}

/// Number of candidate pairs ordered oppositely by `a` and `b`.
pub fn kendall_tau(a: &Ranking, b: &Ranking) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::domain(format!(
            "rankings over {} and {} candidates",
            a.len(),
            b.len()
        )));
    }
    Ok(kendall_tau_unchecked(a, b))
}

pub(crate) fn kendall_tau_unchecked(a: &Ranking, b: &Ranking) -> usize {
    let pos_b = b.positions();
    let seq: Vec<usize> = a.0.iter().map(|c| pos_b[c.index()]).collect();
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[usize]) -> Ranking {
        Ranking::from_indices(v).unwrap()
    }

    #[test]
    fn kendall_tau_examples() {
        assert_eq!(kendall_tau(&r(&[0, 1, 2]), &r(&[0, 1, 2])).unwrap(), 0);
        assert_eq!(kendall_tau(&r(&[0, 1, 2]), &r(&[2, 1, 0])).unwrap(), 3);
        assert_eq!(kendall_tau(&r(&[0, 1, 2]), &r(&[0, 2, 1])).unwrap(), 1);
    }

    #[test]
    fn kendall_tau_rejects_mismatched_sets() {
        assert!(matches!(
            kendall_tau(&r(&[0, 1]), &r(&[0, 1, 2])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ranking_validation() {
        assert!(Ranking::from_indices(&[0, 0, 1]).is_err());
        assert!(Ranking::from_indices(&[0, 3, 1]).is_err());
        assert!(Ranking::from_indices(&[]).is_err());
        let x = r(&[2, 0, 1]);
        assert_eq!(x.peak(), Candidate(2));
        assert_eq!(x.positions(), vec![1, 2, 0]);
        assert!(x.prefers(Candidate(0), Candidate(1)));
        assert_eq!(x.reversed(), r(&[1, 0, 2]));
    }
}
