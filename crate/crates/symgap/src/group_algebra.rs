//! Exact elements of the group algebra ℚ[Sym_n].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::symmetric_core::{compose_unchecked, enumerate_sym, factorial, Permutation, SymError, VertexSet};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p`, `p/q` or a finite decimal such as `0.25`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().ok()?;
        let d: BigInt = b.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" { BigInt::zero() } else { int.parse().ok()? };
        let frac_part: BigInt = frac.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = int_part.abs() * &scale + frac_part;
        let v = Q::new(mag, scale);
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Q::from_integer)
}

/// A finite ℚ-linear combination of permutations of a fixed degree.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    degree: usize,
    terms: BTreeMap<Permutation, Q>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { degree: n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Q::one())
    }

    pub fn scalar(n: usize, c: Q) -> Self {
        let mut e = Self::zero(n);
        e.add_term(Permutation::identity(n), c);
        e
    }

    pub fn from_permutation(p: Permutation) -> Self {
        let mut e = Self::zero(p.degree());
        e.add_term(p, Q::one());
        e
    }

    /// Builds an element from `(π, c)` pairs; repeated permutations accumulate.
    pub fn from_terms<I: IntoIterator<Item = (Permutation, Q)>>(n: usize, terms: I) -> Result<Self, SymError> {
        let mut e = Self::zero(n);
        for (p, c) in terms {
            if p.degree() != n {
                return Err(SymError::DegreeMismatch { left: n, right: p.degree() });
            }
            e.add_term(p, c);
        }
        Ok(e)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Permutation) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    /// Sum of all coefficients (the value on the trivial representation).
    pub fn augmentation(&self) -> Q {
        self.terms.values().fold(Q::zero(), |acc, c| acc + c)
    }

    fn add_term(&mut self, p: Permutation, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_degree(&self, other: &Self) -> Result<(), SymError> {
        if self.degree != other.degree {
            return Err(SymError::DegreeMismatch { left: self.degree, right: other.degree });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SymError> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        AlgebraElement { degree: self.degree, terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        if c.is_zero() {
            return;
        }
        for (p, x) in &other.terms {
            self.add_term(p.clone(), x * c);
        }
    }

    /// Convolution product `Σ a_p b_q (p ∘ q)`.
    pub fn multiply(&self, other: &Self) -> Result<Self, SymError> {
        self.check_degree(other)?;
        let mut acc: HashMap<Permutation, Q> = HashMap::with_capacity(self.len() * other.len());
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                let pr = compose_unchecked(p, r);
                let v = a * b;
                match acc.get_mut(&pr) {
                    Some(x) => *x += v,
                    None => {
                        acc.insert(pr, v);
                    }
                }
            }
        }
        Ok(AlgebraElement { degree: self.degree, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    /// `(ab + ba) / 2`.
    pub fn jordan_product(&self, other: &Self) -> Result<Self, SymError> {
        let ab = self.multiply(other)?;
        let ba = other.multiply(self)?;
        Ok((&ab + &ba).scale(&qf(1, 2)))
    }

    /// The image under `π ↦ π⁻¹`.
    pub fn adjoint(&self) -> Self {
        AlgebraElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(p, c)| (p.inverse(), c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(p, c)| self.terms.get(&p.inverse()) == Some(c))
    }

    /// The least `E` with `supp(π) ⊆ E` for every term.
    pub fn support_set(&self) -> VertexSet {
        let mut moved = vec![false; self.degree + 1];
        for p in self.terms.keys() {
            for (i, &v) in p.raw().iter().enumerate() {
                if v as usize != i + 1 {
                    moved[i + 1] = true;
                }
            }
        }
        VertexSet::new((1..=self.degree).filter(|&i| moved[i]))
    }

    /// Re-tags the element along an injective point map `i ↦ map[i-1]` into `[m]`.
    pub fn relabel(&self, map: &[usize], m: usize) -> Result<Self, SymError> {
        if map.len() != self.degree {
            return Err(SymError::DegreeMismatch { left: self.degree, right: map.len() });
        }
        let mut seen = vec![false; m + 1];
        for &v in map {
            if v == 0 || v > m || seen[v] {
                return Err(SymError::OutOfRange { vertex: v, n: m });
            }
            seen[v] = true;
        }
        let mut out = Self::zero(m);
        for (p, c) in &self.terms {
            let mut images: Vec<u8> = (1..=m as u8).collect();
            for i in 1..=self.degree {
                images[map[i - 1] - 1] = map[p.apply(i) - 1] as u8;
            }
            out.add_term(Permutation::from_images_unchecked(images), c.clone());
        }
        Ok(out)
    }

    /// Embeds `Sym_{n-1}` into `Sym_n` as the stabiliser of the point 1 (`i ↦ i+1`).
    pub fn embed_fixing_one(&self) -> Self {
        let map: Vec<usize> = (2..=self.degree + 1).collect();
        self.relabel(&map, self.degree + 1).expect("shift map is injective")
    }

    /// Restricts to `Sym(E)` relabelled order-preservingly as `Sym_{|E|}`.
    pub fn restrict_to(&self, e: &VertexSet) -> Result<Self, SymError> {
        e.check_within(self.degree)?;
        let support = self.support_set();
        if let Some(v) = support.iter().find(|&v| !e.contains(v)) {
            return Err(SymError::OutOfRange { vertex: v, n: self.degree });
        }
        let m = e.len();
        let mut pos = vec![0usize; self.degree + 1];
        for (idx, v) in e.iter().enumerate() {
            pos[v] = idx + 1;
        }
        let mut out = Self::zero(m);
        for (p, c) in &self.terms {
            let images: Vec<u8> = e.iter().map(|v| pos[p.apply(v)] as u8).collect();
            out.add_term(Permutation::from_images_unchecked(images), c.clone());
        }
        Ok(out)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("degree mismatch")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(&-rhs).expect("degree mismatch")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Q::one())
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.multiply(rhs).expect("degree mismatch")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", fmt_q(c), p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[S{}] {}", self.degree, self)
    }
}

/// `J_A = Σ_{supp(σ) ⊆ A} σ`.
pub fn j_element(a: &VertexSet, n: usize) -> Result<AlgebraElement, SymError> {
    let perms = enumerate_sym(a, n)?;
    Ok(AlgebraElement { degree: n, terms: perms.into_iter().map(|p| (p, Q::one())).collect() })
}

/// `α_A = |A|·id − J_A/(|A|−1)!`, and `0` when `|A| ≤ 1`.
pub fn alpha(a: &VertexSet, n: usize) -> Result<AlgebraElement, SymError> {
    a.check_within(n)?;
    if a.len() <= 1 {
        return Ok(AlgebraElement::zero(n));
    }
    let inv = Q::new(BigInt::one(), BigInt::from(factorial(a.len() - 1)));
    let mut e = j_element(a, n)?.scale(&-inv);
    e.add_term(Permutation::identity(n), q(a.len() as i64));
    Ok(e)
}

/// A formal combination `Σ c_B α_B`, keyed by vertex set.
///
/// Sets of size at most one are dropped since their `α` vanishes.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AlphaCombination {
    terms: BTreeMap<VertexSet, Q>,
}

impl AlphaCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, set: VertexSet, c: Q) {
        if set.len() <= 1 || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(set.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&set);
        }
    }

    pub fn add_combination(&mut self, other: &AlphaCombination, c: &Q) {
        for (s, x) in &other.terms {
            self.add(s.clone(), x * c);
        }
    }

    pub fn coefficient(&self, set: &VertexSet) -> Q {
        self.terms.get(set).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VertexSet, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::new();
        out.add_combination(self, c);
        out
    }

    pub fn support(&self) -> VertexSet {
        self.terms.keys().fold(VertexSet::empty(), |acc, s| acc.union(s))
    }

    pub fn to_element(&self, n: usize) -> Result<AlgebraElement, SymError> {
        let mut e = AlgebraElement::zero(n);
        for (s, c) in &self.terms {
            e.add_scaled(&alpha(s, n)?, c);
        }
        Ok(e)
    }
}

impl fmt::Display for AlphaCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*a{}", fmt_q(c), s)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlphaCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
