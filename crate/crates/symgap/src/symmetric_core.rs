//! Permutations of `[n]`, vertex sets, and enumeration of `Sym(A)`.
//!
//! Points are 1-based everywhere in the public API.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image sequence is not a bijection of 1..={0}")]
    NotBijection(usize),
    #[error("vertex {vertex} outside 1..={n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

/// A bijection of `{1, …, n}` stored as its image sequence.
///
/// The derived ordering is lexicographic on image sequences.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n < 256, "degree too large");
        Permutation { images: (1..=n as u8).collect() }
    }

    /// Builds a permutation from `π(1), …, π(n)`.
    pub fn from_images(images: &[usize]) -> Result<Self, SymError> {
        let n = images.len();
        if n >= 256 {
            return Err(SymError::NotBijection(n));
        }
        let mut seen = vec![false; n + 1];
        for &v in images {
            if v == 0 || v > n || seen[v] {
                return Err(SymError::NotBijection(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images: images.iter().map(|&v| v as u8).collect() })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u8>) -> Self {
        Permutation { images }
    }

    /// Transposition `(i j)` in `Sym_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, SymError> {
        for v in [i, j] {
            if v == 0 || v > n {
                return Err(SymError::OutOfRange { vertex: v, n });
            }
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        Ok(p)
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, SymError> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(SymError::OutOfRange { vertex: a, n });
                }
                if touched[a] {
                    return Err(SymError::Parse(format!("point {a} repeated")));
                }
                touched[a] = true;
                images[a - 1] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `π(i)` for `1 ≤ i ≤ n`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { images: inv }
    }

    /// `{ i : π(i) ≠ i }`.
    pub fn support(&self) -> VertexSet {
        VertexSet {
            members: self.images.iter().enumerate().filter(|(i, &v)| v as usize != i + 1).map(|(i, _)| i + 1).collect(),
        }
    }

    /// Non-trivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Parses cycle notation such as `"(1 2 4)(3 5)"` or `"id"`.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self, SymError> {
        let s = s.trim();
        if s == "id" || s.is_empty() {
            return Ok(Self::identity(n));
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(SymError::Parse(s.to_string()));
            }
            let close = rest.find(')').ok_or_else(|| SymError::Parse(s.to_string()))?;
            let body = &rest[1..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| SymError::Parse(s.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = &rest[close + 1..];
        }
        Self::from_cycles(n, &cycles)
    }

    /// Adjacent-transposition word `[i₁, …, i_L]` with `π = s_{i₁} ∘ ⋯ ∘ s_{i_L}`,
    /// found by bubble-sorting the image sequence; `L` is the inversion count.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut a = self.images.clone();
        let mut word = Vec::new();
        let n = a.len();
        // a = π ∘ s_{j₁} ∘ ⋯ after each swap of positions (j, j+1).
        loop {
            let mut swapped = false;
            for j in 0..n.saturating_sub(1) {
                if a[j] > a[j + 1] {
                    a.swap(j, j + 1);
                    word.push(j + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        word.reverse();
        word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[S{}]", self, self.degree())
    }
}

/// `(p ∘ q)(i) = p(q(i))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, SymError> {
    if p.degree() != q.degree() {
        return Err(SymError::DegreeMismatch { left: p.degree(), right: q.degree() });
    }
    Ok(compose_unchecked(p, q))
}

#[inline]
pub(crate) fn compose_unchecked(p: &Permutation, q: &Permutation) -> Permutation {
    Permutation { images: q.images.iter().map(|&j| p.images[j as usize - 1]).collect() }
}

/// A sorted, duplicate-free set of positive integers.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet { members: Vec::new() }
    }

    pub fn new<I: IntoIterator<Item = usize>>(items: I) -> Self {
        let mut members: Vec<usize> = items.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    /// `{lo, …, hi}`; empty when `hi < lo`.
    pub fn range(lo: usize, hi: usize) -> Self {
        VertexSet { members: (lo..=hi).collect() }
    }

    pub fn full(n: usize) -> Self {
        Self::range(1, n)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.members.last().copied()
    }

    /// Checks that every member lies in `[n]`.
    pub fn check_within(&self, n: usize) -> Result<(), SymError> {
        match self.members.iter().find(|&&v| v == 0 || v > n) {
            Some(&v) => Err(SymError::OutOfRange { vertex: v, n }),
            None => Ok(()),
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.members.iter().chain(other.members.iter()).copied())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet { members: self.members.iter().copied().filter(|&v| other.contains(v)).collect() }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet { members: self.members.iter().copied().filter(|&v| !other.contains(v)).collect() }
    }

    pub fn with(&self, v: usize) -> VertexSet {
        VertexSet::new(self.members.iter().copied().chain(std::iter::once(v)))
    }

    pub fn without(&self, v: usize) -> VertexSet {
        VertexSet { members: self.members.iter().copied().filter(|&x| x != v).collect() }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| !other.contains(v))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for VertexSet {
    type Err = SymError;

    /// Parses `"2,3,4"`, `"{2,3,4}"` or `"{}"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let items = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| SymError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let set = VertexSet::new(items.iter().copied());
        if set.len() != items.len() {
            return Err(SymError::Parse(format!("repeated vertex in {s}")));
        }
        if set.members.first() == Some(&0) {
            return Err(SymError::Parse(format!("vertex 0 in {s}")));
        }
        Ok(set)
    }
}

/// All permutations of `[n]` supported inside `A`, in lexicographic order of
/// image sequences.
pub fn enumerate_sym(a: &VertexSet, n: usize) -> Result<Vec<Permutation>, SymError> {
    a.check_within(n)?;
    let positions = a.members();
    let mut values: Vec<u8> = positions.iter().map(|&v| v as u8).collect();
    let mut out = Vec::new();
    let base = Permutation::identity(n);
    loop {
        let mut images = base.images.clone();
        for (&pos, &val) in positions.iter().zip(values.iter()) {
            images[pos - 1] = val;
        }
        out.push(Permutation { images });
        if !next_permutation(&mut values) {
            break;
        }
    }
    Ok(out)
}

/// Advances to the next lexicographic arrangement; false once the last is reached.
pub(crate) fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn involution_squares_to_identity() {
        let t = p("(1 2)", 3);
        assert!(compose(&t, &t).unwrap().is_identity());
    }

    #[test]
    fn composition_is_pointwise() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        let c = compose(&a, &b).unwrap();
        for i in 1..=3 {
            assert_eq!(c.apply(i), a.apply(b.apply(i)));
        }
        // 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(c.images(), vec![2, 3, 1]);
        assert_eq!(c.to_string(), "(1 2 3)");
    }

    #[test]
    fn identity_is_neutral() {
        let a = p("(1 3 2)(4 5)", 5);
        let id = Permutation::identity(5);
        assert_eq!(compose(&a, &id).unwrap(), a);
        assert_eq!(compose(&id, &a).unwrap(), a);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let err = compose(&Permutation::identity(3), &Permutation::identity(4)).unwrap_err();
        assert_eq!(err, SymError::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn enumerate_example_set() {
        let a = VertexSet::new([1, 2, 4]);
        let perms = enumerate_sym(&a, 5).unwrap();
        let names: Vec<String> = perms.iter().map(|q| q.to_string()).collect();
        assert_eq!(names.len(), 6);
        for expected in ["id", "(1 2)", "(1 4)", "(2 4)", "(1 2 4)", "(1 4 2)"] {
            assert!(names.contains(&expected.to_string()), "{expected} missing");
        }
        let mut sorted = perms.clone();
        sorted.sort();
        assert_eq!(sorted, perms);
    }

    #[test]
    fn enumerate_trivial_sets() {
        assert_eq!(enumerate_sym(&VertexSet::empty(), 4).unwrap(), vec![Permutation::identity(4)]);
        assert_eq!(enumerate_sym(&VertexSet::new([5]), 5).unwrap(), vec![Permutation::identity(5)]);
        assert!(enumerate_sym(&VertexSet::new([6]), 5).is_err());
    }

    #[test]
    fn cycle_text_round_trip() {
        for s in ["id", "(1 2 4)(3 5)", "(2 5)", "(1 5 4 3 2)"] {
            assert_eq!(p(s, 5).to_string(), s);
        }
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 9)", 3).is_err());
    }

    #[test]
    fn reduced_word_reconstructs() {
        let n = 5;
        for q in enumerate_sym(&VertexSet::full(n), n).unwrap() {
            let mut acc = Permutation::identity(n);
            for &i in &q.reduced_word() {
                acc = compose(&acc, &Permutation::transposition(n, i, i + 1).unwrap()).unwrap();
            }
            assert_eq!(acc, q);
        }
    }

    #[test]
    fn vertex_set_parsing() {
        assert_eq!("{2,3,4}".parse::<VertexSet>().unwrap(), VertexSet::new([2, 3, 4]));
        assert_eq!("{}".parse::<VertexSet>().unwrap(), VertexSet::empty());
        assert!("2,2".parse::<VertexSet>().is_err());
        assert!("0,1".parse::<VertexSet>().is_err());
    }
}
