use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ReprError;

/// An integer partition `μ₁ ≥ μ₂ ≥ … > 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, ReprError> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ReprError::BadPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first_row(&self) -> usize {
        self.parts[0]
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Rows whose last box can be removed, top to bottom.
    pub fn corner_rows(&self) -> Vec<usize> {
        (0..self.parts.len()).filter(|&r| r + 1 == self.parts.len() || self.parts[r] > self.parts[r + 1]).collect()
    }

    /// The partition with the last box of row `r` removed.
    pub(crate) fn remove_box(&self, r: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts[r] -= 1;
        if parts[r] == 0 {
            parts.pop();
        }
        Partition { parts }
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn dimension(&self) -> u64 {
        let n = self.size();
        let conj = self.conjugate();
        let mut num: u128 = (1..=n as u128).product();
        let mut den: u128 = 1;
        for (r, &len) in self.parts.iter().enumerate() {
            for (c, &height) in conj.iter().enumerate().take(len) {
                den *= ((len - c - 1) + (height - r - 1) + 1) as u128;
            }
        }
        num /= den;
        num as u64
    }

    pub fn conjugate(&self) -> Vec<usize> {
        (0..self.parts[0]).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = ReprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| ReprError::BadPartition(Vec::new())))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order, starting with `(n)`.
pub fn partitions_of(n: usize) -> Result<Vec<Partition>, ReprError> {
    if n == 0 {
        return Err(ReprError::EmptyDegree);
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    Ok(out)
}

/// All `μ' ⊢ |μ|−1` obtained by removing one corner box.
pub fn remove_corner_squares(mu: &Partition) -> Result<Vec<Partition>, ReprError> {
    if mu.size() < 2 {
        return Err(ReprError::EmptyDegree);
    }
    Ok(mu.corner_rows().into_iter().map(|r| mu.remove_box(r)).collect())
}
