use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::repr_engine::berkowitz;
use crate::repr_engine::modular::{charpoly_hessenberg, primes_for_bound, Crt, Mont};

/// Polynomial in `k` with integer coefficients, ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial(Vec<BigInt>);

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The variable `k`.
    pub fn k() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `k + offset`.
    pub fn linear(offset: i64) -> Self {
        Self::from_i64(&[offset, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Degree, with the zero polynomial given degree 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, k: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_i64(&self, k: i64) -> BigInt {
        self.eval(&BigInt::from(k))
    }

    /// Sum of absolute values of the coefficients.
    pub fn norm1(&self) -> BigUint {
        self.0.iter().map(|c| c.magnitude().clone()).sum()
    }

    /// `p(k + s)`.
    pub fn shift(&self, s: i64) -> Self {
        let lin = IntPolynomial::linear(s);
        self.0.iter().rev().fold(IntPolynomial::zero(), |acc, c| &(&acc * &lin) + &IntPolynomial::constant(c.clone()))
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn div_exact(&self, d: &BigInt) -> Self {
        Self::new(
            self.0
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(d);
                    assert!(r.is_zero(), "inexact division");
                    q
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// Residue of `p(k)` modulo the Montgomery prime, `k` a plain residue.
    pub(crate) fn eval_mod(coeffs: &[u64], mont: &Mont, k: u64) -> u64 {
        let km = mont.to_mont(k);
        coeffs.iter().rev().fold(0, |acc, &c| mont.add(mont.mul(acc, km), c))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("k")?;
                    if d > 1 {
                        write!(f, "^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.0.len() >= rhs.0.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.0.clone();
        for (o, c) in out.iter_mut().zip(&short.0) {
            *o += c;
        }
        IntPolynomial::new(out)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.0.is_empty() || rhs.0.is_empty() {
            return IntPolynomial::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl Zero for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::default()
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for IntPolynomial {
    fn one() -> Self {
        IntPolynomial::constant(1)
    }
}

/// Square matrix over `ℤ[k]` standing for `entries / (scale · k^k_exp)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    order: usize,
    entries: Vec<IntPolynomial>,
    k_exp: u32,
    scale: BigInt,
}

impl PolyMatrix {
    pub fn zeros(order: usize, k_exp: u32) -> Self {
        PolyMatrix { order, entries: vec![IntPolynomial::zero(); order * order], k_exp, scale: BigInt::one() }
    }

    pub fn from_entries(order: usize, entries: Vec<IntPolynomial>, k_exp: u32, scale: BigInt) -> Self {
        assert_eq!(entries.len(), order * order);
        PolyMatrix { order, entries, k_exp, scale }
    }

    /// `diag(c)`, integral part only.
    pub fn scalar(order: usize, c: &IntPolynomial, k_exp: u32) -> Self {
        let mut m = Self::zeros(order, k_exp);
        for i in 0..order {
            m.entries[i * order + i] = c.clone();
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn k_exp(&self) -> u32 {
        self.k_exp
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn entries(&self) -> &[IntPolynomial] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPolynomial {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: IntPolynomial) {
        self.entries[i * self.order + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn max_degree(&self) -> usize {
        self.entries.iter().map(IntPolynomial::degree).max().unwrap_or(0)
    }

    /// Entrywise `a·self + b·other` on the integral parts.
    pub fn combine(&self, a: &IntPolynomial, other: &PolyMatrix, b: &IntPolynomial) -> PolyMatrix {
        assert_eq!(self.order, other.order);
        let entries = self.entries.iter().zip(&other.entries).map(|(x, y)| &(a * x) + &(b * y)).collect();
        PolyMatrix { order: self.order, entries, k_exp: self.k_exp, scale: self.scale.clone() }
    }

    /// Product of the integral parts; the denominators multiply.
    pub fn matmul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.order, rhs.order);
        let n = self.order;
        let rows: Vec<Vec<IntPolynomial>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![IntPolynomial::zero(); n];
                for l in 0..n {
                    let a = &self.entries[i * n + l];
                    if a.is_zero() {
                        continue;
                    }
                    for (j, slot) in row.iter_mut().enumerate() {
                        let b = &rhs.entries[l * n + j];
                        if !b.is_zero() {
                            *slot = &*slot + &(a * b);
                        }
                    }
                }
                row
            })
            .collect();
        PolyMatrix {
            order: n,
            entries: rows.into_iter().flatten().collect(),
            k_exp: self.k_exp + rhs.k_exp,
            scale: &self.scale * &rhs.scale,
        }
    }

    /// Cancels the largest power of two dividing both `scale` and every
    /// coefficient of the integral part.
    pub fn reduce_scale(&mut self) {
        let content = self.entries.iter().fold(BigInt::zero(), |acc, e| acc.gcd(&e.content()));
        let shared = content.gcd(&self.scale);
        let mut d = BigInt::one();
        let two = BigInt::from(2);
        while !shared.is_zero() && (&shared % (&d * &two)).is_zero() {
            d *= &two;
        }
        if !d.is_one() {
            for e in self.entries.iter_mut() {
                *e = e.div_exact(&d);
            }
            self.scale = &self.scale / &d;
        }
    }

    /// Integral part evaluated at `k`.
    pub fn eval(&self, k: i64) -> Vec<BigInt> {
        let k = BigInt::from(k);
        self.entries.iter().map(|e| e.eval(&k)).collect()
    }

    /// `Σ_i max_j deg N_ij`, a bound on the `k`-degree of `det(tI − N)`.
    pub fn determinant_degree_bound(&self) -> usize {
        (0..self.order)
            .map(|i| {
                self.entries[i * self.order..(i + 1) * self.order].iter().map(IntPolynomial::degree).max().unwrap_or(0)
            })
            .sum()
    }

    /// `Π_i (1 + Σ_j ‖N_ij‖₁)`, bounding every integer coefficient of `det(tI − N)`.
    pub fn coefficient_bound(&self) -> BigUint {
        (0..self.order).fold(BigUint::one(), |acc, i| {
            let row: BigUint =
                self.entries[i * self.order..(i + 1) * self.order].iter().map(IntPolynomial::norm1).sum();
            acc * (row + 1u32)
        })
    }

    /// Canonical text of the integral part, used for content hashes.
    pub fn canonical_text(&self) -> String {
        let mut s = format!("order {} k_exp {} scale {}\n", self.order, self.k_exp, self.scale);
        for (idx, e) in self.entries.iter().enumerate() {
            if !e.is_zero() {
                s.push_str(&format!("{} {} {}\n", idx / self.order, idx % self.order, e));
            }
        }
        s
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

/// Polynomial in `t` with coefficients in `ℤ[k]`, ascending in `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariatePoly {
    coeffs: Vec<IntPolynomial>,
}

impl BivariatePoly {
    pub fn new(mut coeffs: Vec<IntPolynomial>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        BivariatePoly { coeffs }
    }

    pub fn coeffs(&self) -> &[IntPolynomial] {
        &self.coeffs
    }

    pub fn degree_t(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn degree_k(&self) -> usize {
        self.coeffs.iter().map(IntPolynomial::degree).max().unwrap_or(0)
    }

    /// `p(k + s, t)`.
    pub fn shift_k(&self, s: i64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.shift(s)).collect())
    }

    /// `±p(k, −t)`, signed so the leading `t`-coefficient keeps its sign.
    pub fn negate_t(&self) -> Self {
        let d = self.degree_t();
        Self::new(self.coeffs.iter().enumerate().map(|(j, c)| if (d - j) % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// Specialisation `p(k₀, t)`.
    pub fn at(&self, k: i64) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.eval_i64(k)).collect()
    }

    pub fn leading(&self) -> Option<&IntPolynomial> {
        self.coeffs.last()
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "t^{j}: {c}")?;
        }
        Ok(())
    }
}

/// `det(tI − N)` for the integral part `N`, by Berkowitz directly over `ℤ[k]`.
pub fn charpoly_direct(m: &PolyMatrix) -> BivariatePoly {
    BivariatePoly::new(berkowitz(m.entries(), m.order()))
}

/// `det(tI − N)` by evaluating at `k = 0, 1, …, D`, computing each integer
/// characteristic polynomial modulo enough primes, interpolating in `k` and
/// Chinese remaindering. `progress(done, total)` is called once per prime.
pub fn charpoly_interpolated(m: &PolyMatrix, progress: Option<&(dyn Fn(usize, usize) + Sync)>) -> BivariatePoly {
    let n = m.order();
    if n == 0 {
        return BivariatePoly::new(vec![IntPolynomial::one()]);
    }
    let points = m.determinant_degree_bound() + 1;
    let primes = primes_for_bound(&m.coefficient_bound());
    let done = std::sync::atomic::AtomicUsize::new(0);
    let per_prime: Vec<Vec<Vec<u64>>> = primes
        .par_iter()
        .map(|&p| {
            let mont = Mont::new(p);
            let reduced: Vec<Vec<u64>> =
                m.entries().iter().map(|e| e.coeffs().iter().map(|c| mont.from_bigint(c)).collect()).collect();
            // values[x][b] = coefficient of t^b at k = x, plain residues
            let values: Vec<Vec<u64>> = (0..points)
                .map(|x| {
                    let mut a: Vec<u64> = reduced.iter().map(|c| IntPolynomial::eval_mod(c, &mont, x as u64)).collect();
                    charpoly_hessenberg(&mont, &mut a, n).into_iter().map(|c| mont.from_mont(c)).collect()
                })
                .collect();
            let out =
                (0..=n).map(|b| interpolate_mod(&mont, &values.iter().map(|v| v[b]).collect::<Vec<_>>())).collect();
            let finished = done.fetch_add(1, std::sync::atomic::Ordering::SeqCst) + 1;
            if let Some(cb) = progress {
                cb(finished, primes.len());
            }
            out
        })
        .collect();
    let crt = Crt::new(&primes);
    let coeffs = (0..=n)
        .map(|b| {
            IntPolynomial::new(
                (0..points)
                    .map(|a| {
                        let r: Vec<u64> = per_prime.iter().map(|v| v[b][a]).collect();
                        crt.combine(&r)
                    })
                    .collect(),
            )
        })
        .collect();
    BivariatePoly::new(coeffs)
}

/// Monomial coefficients (plain residues) of the polynomial of degree
/// `< values.len()` taking `values[x]` at `x = 0, 1, …`.
fn interpolate_mod(mont: &Mont, values: &[u64]) -> Vec<u64> {
    let d = values.len();
    let mut c: Vec<u64> = values.iter().map(|&v| mont.to_mont(v)).collect();
    let invs: Vec<u64> = (0..d).map(|j| if j == 0 { 0 } else { mont.inv(mont.to_mont(j as u64)) }).collect();
    for (j, &inv) in invs.iter().enumerate().skip(1) {
        for i in (j..d).rev() {
            c[i] = mont.mul(mont.sub(c[i], c[i - 1]), inv);
        }
    }
    // Newton form Σ c_i Π_{m<i} (x − m) to monomials, Horner from the top
    let mut poly: Vec<u64> = vec![0; d];
    for i in (0..d).rev() {
        // poly ← poly·(x − i) + c_i
        let shift = mont.to_mont(i as u64);
        for j in (0..d).rev() {
            let lower = if j > 0 { poly[j - 1] } else { 0 };
            poly[j] = mont.sub(lower, mont.mul(poly[j], shift));
        }
        poly[0] = mont.add(poly[0], c[i]);
    }
    poly.into_iter().map(|v| mont.from_mont(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[1, -2, 3]);
        assert_eq!(a.to_string(), "3*k^2 - 2*k + 1");
        assert_eq!((&a * &p(&[0, 1])).coeffs().len(), 4);
        assert!((&a - &a).is_zero());
        assert_eq!(a.shift(1), p(&[2, 4, 3]));
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn small_charpolys() {
        let z = PolyMatrix::zeros(3, 0);
        let cp = charpoly_direct(&z);
        assert_eq!(cp.coeffs(), &[p(&[]), p(&[]), p(&[]), p(&[1])][..cp.coeffs().len()]);
        assert_eq!(cp.degree_t(), 3);
        let mut d = PolyMatrix::zeros(2, 0);
        d.set(0, 0, p(&[0, 1]));
        d.set(1, 1, p(&[1, 1]));
        let expected = BivariatePoly::new(vec![p(&[0, 1, 1]), p(&[-1, -2]), p(&[1])]);
        assert_eq!(charpoly_direct(&d), expected);
        assert_eq!(charpoly_interpolated(&d, None), expected);
    }

    #[test]
    fn interpolation_matches_berkowitz() {
        let mut m = PolyMatrix::zeros(3, 0);
        let vals =
            [[1, 2, -1], [0, 3, 5], [-2, 1, 0], [4, 0, 1], [1, 1, 1], [7, -3, 2], [0, 0, 3], [2, 2, -2], [1, -5, 0]];
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, p(&vals[i * 3 + j]));
            }
        }
        assert_eq!(charpoly_interpolated(&m, None), charpoly_direct(&m));
    }

    #[test]
    fn shift_and_negate() {
        // p = t(t − 2k)
        let bp = BivariatePoly::new(vec![p(&[]), p(&[0, -2]), p(&[1])]);
        let q = bp.negate_t();
        assert_eq!(q, BivariatePoly::new(vec![p(&[]), p(&[0, 2]), p(&[1])]));
        assert_eq!(bp.shift_k(1).coeffs()[1], p(&[-2, -2]));
        assert_eq!(bp.at(3), vec![BigInt::from(0), BigInt::from(-6), BigInt::from(1)]);
    }
}
