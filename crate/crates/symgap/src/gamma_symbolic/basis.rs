use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{IntPolynomial, PolyMatrix};
use super::GammaError;
use crate::group_algebra::{q, Q};
use crate::repr_engine::RationalMatrix;

/// Symbol `0` is the star, `1` is the vertex 1, `p + 1` is the extra point `P_p = k + p`.
pub const STAR: u8 = 0;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarTuple(Vec<u8>);

impl StarTuple {
    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn stars(&self) -> usize {
        self.0.iter().filter(|&&x| x == STAR).count()
    }
}

impl fmt::Display for StarTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&x| match x {
                STAR => "*".to_string(),
                1 => "1".to_string(),
                p => format!("P{}", p - 1),
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for StarTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Basis of `W ∩ ker α_{A₀}`: tuples over `{★, 1, P_1, …, P_s}` with distinct
/// non-star symbols, in lexicographic order of the symbol codes.
pub fn star_basis(arity: usize, extra_points: usize) -> Result<Vec<StarTuple>, GammaError> {
    if !matches!((arity, extra_points), (3, 4) | (2, 3)) {
        return Err(GammaError::UnsupportedShape(arity, extra_points));
    }
    let symbols = extra_points as u8 + 2;
    let mut out = Vec::new();
    let mut cur = vec![0u8; arity];
    loop {
        let distinct = (0..arity).all(|i| cur[i] == STAR || !cur[i + 1..].contains(&cur[i]));
        if distinct {
            out.push(StarTuple(cur.clone()));
        }
        // odometer, last position fastest
        let mut pos = arity;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < symbols {
                break;
            }
            cur[pos] = 0;
        }
    }
}

fn index_of(basis: &[StarTuple]) -> HashMap<StarTuple, usize> {
    basis.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect()
}

/// Basis elements supported on the `Sym(B)`-orbit of `v`, `B = A₀ ∪ S`:
/// positions holding `★` or a symbol of `S` are refilled from `{★} ∪ S`
/// (non-star symbols distinct), all other positions are kept.
fn orbit_members(v: &StarTuple, s: &[u8]) -> Vec<StarTuple> {
    let free: Vec<usize> = (0..v.arity()).filter(|&i| v.0[i] == STAR || s.contains(&v.0[i])).collect();
    let mut palette = vec![STAR];
    palette.extend_from_slice(s);
    let mut out = Vec::new();
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut w = v.0.clone();
        for (slot, &c) in free.iter().zip(&choice) {
            w[*slot] = palette[c];
        }
        let ok = free.iter().enumerate().all(|(a, &i)| w[i] == STAR || free[a + 1..].iter().all(|&j| w[j] != w[i]));
        if ok {
            out.push(StarTuple(w));
        }
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < palette.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// `k · (J_B coefficient)` for a vector with `n_B` movable coordinates of which
/// `n_star` are stars and `|B| = k − 1 + sigma`: the ratio
/// `(k−1)⋯(k−n★) / ((|B|−1)⋯(|B|−n_B+1))` times `k`, after cancelling the
/// linear factors shared by numerator and denominator.
fn scaled_coefficient(n_b: usize, n_star: usize, sigma: usize) -> IntPolynomial {
    let k = IntPolynomial::k();
    if n_b == 0 {
        return &k * &IntPolynomial::linear(sigma as i64 - 1);
    }
    let mut numerator: Vec<i64> = (1..=n_star as i64).map(|r| -r).collect();
    numerator.push(0);
    for r in 1..n_b as i64 {
        let off = sigma as i64 - 1 - r;
        let pos = numerator.iter().position(|&x| x == off).expect("denominator factor cancels");
        numerator.swap_remove(pos);
    }
    numerator.into_iter().fold(IntPolynomial::one(), |acc, off| &acc * &IntPolynomial::linear(off))
}

/// `k·α_B` on the star basis for `B = A₀ ∪ S`, `S` a set of non-star symbols;
/// column `v` holds the coordinates of `α_B · v`. The returned matrix has
/// `k_exp = 1`.
pub fn alpha_star_action(s: &[u8], basis: &[StarTuple]) -> Result<PolyMatrix, GammaError> {
    let max_symbol = basis.iter().flat_map(|v| v.0.iter().copied()).max().unwrap_or(0);
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != s.len() || sorted.iter().any(|&x| x == STAR || x > max_symbol) || s.len() > 2 {
        return Err(GammaError::BadSet(s.to_vec()));
    }
    let index = index_of(basis);
    let sigma = s.len();
    let k = IntPolynomial::k();
    let diag = &k * &IntPolynomial::linear(sigma as i64 - 1);
    let mut m = PolyMatrix::zeros(basis.len(), 1);
    for (col, v) in basis.iter().enumerate() {
        let n_star = v.stars();
        let n_b = v.0.iter().filter(|&&x| x == STAR || s.contains(&x)).count();
        let coef = scaled_coefficient(n_b, n_star, sigma);
        m.set(col, col, &m.get(col, col).clone() + &diag);
        for w in orbit_members(v, s) {
            let row = index[&w];
            m.set(row, col, m.get(row, col) - &coef);
        }
    }
    Ok(m)
}

/// Number of tuples summed in `v` once `k` is fixed: `(k−1)⋯(k−n★)`.
pub fn support_size(v: &StarTuple) -> IntPolynomial {
    (1..=v.stars() as i64).fold(IntPolynomial::one(), |acc, r| &acc * &IntPolynomial::linear(-r))
}

/// The concrete module at a fixed `k`: ordered tuples of distinct points of
/// `[k + s]`, with `1 ↦ 1`, `A₀ = {2, …, k}`, `P_p ↦ k + p`.
pub struct ConcreteModule {
    pub k: usize,
    pub basis: Vec<StarTuple>,
    /// Support of each basis vector.
    supports: Vec<Vec<Vec<usize>>>,
    owner: HashMap<Vec<usize>, usize>,
}

impl ConcreteModule {
    pub fn new(k: usize, basis: Vec<StarTuple>) -> Self {
        let a0: Vec<usize> = (2..=k).collect();
        let mut supports = Vec::with_capacity(basis.len());
        let mut owner = HashMap::new();
        for (idx, v) in basis.iter().enumerate() {
            let mut tuples = Vec::new();
            let stars: Vec<usize> = (0..v.arity()).filter(|&i| v.0[i] == STAR).collect();
            let mut pick = vec![0usize; stars.len()];
            'fill: loop {
                let vals: Vec<usize> = pick.iter().map(|&c| a0.get(c).copied().unwrap_or(0)).collect();
                let distinct = (0..vals.len()).all(|i| vals[i] != 0 && !vals[i + 1..].contains(&vals[i]));
                if distinct {
                    let mut t: Vec<usize> = v.0.iter().map(|&x| point(x, k)).collect();
                    for (slot, val) in stars.iter().zip(&vals) {
                        t[*slot] = *val;
                    }
                    owner.insert(t.clone(), idx);
                    tuples.push(t);
                }
                let mut pos = stars.len();
                loop {
                    if pos == 0 {
                        break 'fill;
                    }
                    pos -= 1;
                    pick[pos] += 1;
                    if pick[pos] < a0.len().max(1) {
                        break;
                    }
                    pick[pos] = 0;
                }
            }
            supports.push(tuples);
        }
        ConcreteModule { k, basis, supports, owner }
    }

    /// Concrete point of a non-star symbol.
    pub fn point(&self, symbol: u8) -> usize {
        point(symbol, self.k)
    }

    /// Matrix of `α_B` in the star basis, `B ⊇ A₀` a set of concrete points,
    /// computed from `Sym(B)`-orbits of the supporting tuples.
    pub fn alpha(&self, b: &[usize]) -> Result<RationalMatrix, GammaError> {
        let bsize = b.len();
        let mut m = RationalMatrix::zeros(self.basis.len());
        for (col, tuples) in self.supports.iter().enumerate() {
            let mut image: HashMap<Vec<usize>, Q> = HashMap::new();
            for t in tuples {
                *image.entry(t.clone()).or_insert_with(Q::zero) += q(bsize as i64);
                let moving: Vec<usize> = (0..t.len()).filter(|&i| b.contains(&t[i])).collect();
                // each orbit point is hit (|B| − m)! times by Sym(B); divide by (|B|−1)!
                let weight = Q::new(factorial_big(bsize - moving.len()), factorial_big(bsize.saturating_sub(1)));
                for assignment in injections(moving.len(), b) {
                    let mut s = t.clone();
                    for (slot, val) in moving.iter().zip(&assignment) {
                        s[*slot] = *val;
                    }
                    *image.entry(s).or_insert_with(Q::zero) -= &weight;
                }
            }
            image.retain(|_, c| !c.is_zero());
            // coordinates: read the value at the first support tuple of each basis vector
            let mut coords: HashMap<usize, Q> = HashMap::new();
            for (t, c) in &image {
                let Some(&owner) = self.owner.get(t) else { return Err(GammaError::NotInSpan) };
                match coords.get(&owner) {
                    Some(existing) if existing != c => return Err(GammaError::NotInSpan),
                    _ => {
                        coords.insert(owner, c.clone());
                    }
                }
            }
            for (row, c) in coords {
                if self.supports[row].iter().any(|t| !image.contains_key(t)) {
                    return Err(GammaError::NotInSpan);
                }
                m[(row, col)] = c;
            }
        }
        Ok(m)
    }
}

fn point(symbol: u8, k: usize) -> usize {
    match symbol {
        1 => 1,
        p => k + p as usize - 1,
    }
}

fn factorial_big(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// All injective maps from `m` positions into `b`.
fn injections(m: usize, b: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for partial in &out {
            for &x in b {
                if !partial.contains(&x) {
                    let mut p = partial.clone();
                    p.push(x);
                    next.push(p);
                }
            }
        }
        out = next;
    }
    out
}
