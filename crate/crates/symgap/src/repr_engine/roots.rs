//! Real roots of integer polynomials (ascending coefficient vectors).
//!
//! The counting routines based on Descartes' rule are exact only for
//! polynomials whose roots are all real, which is the case for
//! characteristic polynomials of symmetric group-algebra elements.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::group_algebra::Q;

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn sign_variations(p: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for c in p {
        let s = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// `p(s + a)`.
pub fn taylor_shift(p: &[BigInt], a: &BigInt) -> Vec<BigInt> {
    let mut c = p.to_vec();
    if a.is_zero() {
        return c;
    }
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a * &c[j + 1];
            c[j] += t;
        }
    }
    c
}

/// `2^{b·d} p(s / 2^b)`, whose roots are those of `p` scaled by `2^b`.
pub fn scale_pow2(p: &[BigInt], b: u32) -> Vec<BigInt> {
    let d = p.len() - 1;
    p.iter().enumerate().map(|(j, c)| c << (b as usize * (d - j))).collect()
}

/// `p(−t)`.
pub fn reflect(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() }).collect()
}

/// Number of roots strictly greater than zero, counted with multiplicity.
pub fn count_positive(p: &[BigInt]) -> usize {
    let p = trim(p.to_vec());
    let first = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
    sign_variations(&p[first..])
}

/// Roots strictly greater than `a / 2^b`; `scaled` must be `scale_pow2(p, b)`.
fn count_greater_scaled(scaled: &[BigInt], a: &BigInt) -> usize {
    count_positive(&taylor_shift(scaled, a))
}

/// Integer `R` with every root in `(−R, R)` (Cauchy bound).
pub fn root_bound(p: &[BigInt]) -> BigInt {
    let p = trim(p.to_vec());
    let lead = p.last().expect("non-empty").abs();
    let max = p[..p.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    BigInt::one() + max.div_ceil(&lead) + BigInt::one()
}

/// Closed dyadic interval `[lo, hi]` of width `2^{-bits}` around a root.
#[derive(Clone, Debug, PartialEq)]
pub struct RootInterval {
    pub lo: Q,
    pub hi: Q,
}

impl RootInterval {
    pub fn midpoint(&self) -> f64 {
        ((&self.lo + &self.hi) / Q::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }
    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }
}

/// The `k`-th largest root (`k ≥ 1`, with multiplicity) of a real-rooted
/// polynomial, to within `2^{-bits}`.
pub fn kth_largest_root(p: &[BigInt], k: usize, bits: u32) -> RootInterval {
    let p = trim(p.to_vec());
    let d = p.len() - 1;
    assert!(k >= 1 && k <= d, "root index out of range");
    let scaled = scale_pow2(&p, bits);
    let r = root_bound(&p) << bits as usize;
    // invariant: count(lo) ≥ k, count(hi) < k, root in (lo, hi]
    let mut lo = -r.clone();
    let mut hi = r;
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1usize;
        if count_greater_scaled(&scaled, &mid) >= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let den = BigInt::one() << bits as usize;
    RootInterval { lo: Q::new(lo, den.clone()), hi: Q::new(hi, den) }
}

pub fn largest_root(p: &[BigInt], bits: u32) -> RootInterval {
    kth_largest_root(p, 1, bits)
}

pub fn smallest_root(p: &[BigInt], bits: u32) -> RootInterval {
    let d = trim(p.to_vec()).len() - 1;
    kth_largest_root(p, d, bits)
}

fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    if p.len() <= 1 {
        return vec![BigInt::zero()];
    }
    p.iter().enumerate().skip(1).map(|(j, c)| c * BigInt::from(j)).collect()
}

fn primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let g = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder `lc(b)^{δ+1}·a mod b`.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return r;
    }
    let delta = r.len() - b.len();
    let mut steps = 0;
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, c) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * c;
        }
        r = trim(r);
        steps += 1;
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    for _ in steps..delta + 1 {
        for c in r.iter_mut() {
            *c *= &lb;
        }
    }
    r
}

/// Quotient `q` with `lc(b)^{δ+1}·a = q·b + r`.
fn pseudo_quotient(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return vec![BigInt::zero()];
    }
    let delta = r.len() - b.len();
    let mut quot = vec![BigInt::zero(); delta + 1];
    for step in (0..=delta).rev() {
        let lr = r.get(step + db).cloned().unwrap_or_else(BigInt::zero);
        for c in quot.iter_mut() {
            *c *= &lb;
        }
        quot[step] += &lr;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, c) in b.iter().enumerate() {
            r[step + j] -= &lr * c;
        }
    }
    quot
}

fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut x, mut y) = (primitive(trim(a.to_vec())), primitive(trim(b.to_vec())));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = primitive(pseudo_remainder(&x, &y));
        x = y;
        y = r;
    }
    x
}

/// `p / gcd(p, p')` up to a constant: same distinct roots, all simple.
pub fn squarefree_part(p: &[BigInt]) -> Vec<BigInt> {
    let p = trim(p.to_vec());
    if p.len() <= 2 {
        return p;
    }
    let g = poly_gcd(&p, &derivative(&p));
    if g.len() == 1 {
        return primitive(p);
    }
    let mut q = primitive(pseudo_quotient(&p, &g));
    if q.last().is_some_and(|c| c.is_negative()) != p.last().is_some_and(|c| c.is_negative()) {
        q = q.into_iter().map(|c| -c).collect();
    }
    q
}

/// Sturm sequence of `p` built with primitive pseudo-remainders; signs are
/// preserved so the sequence counts distinct real roots.
pub fn sturm_sequence(p: &[BigInt]) -> Vec<Vec<BigInt>> {
    let p = squarefree_part(p);
    let mut seq = vec![p.clone(), primitive(derivative(&p))];
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.len() == 1 {
            break;
        }
        let mut r = pseudo_remainder(a, b);
        let lb = b.last().expect("non-empty");
        let delta = a.len() - b.len();
        // prem = lc^{δ+1}·a mod b; keep the sign of the true remainder
        if lb.is_negative() && delta % 2 == 0 {
            r = r.into_iter().map(|c| -c).collect();
        }
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        seq.push(primitive(r.into_iter().map(|c| -c).collect()));
    }
    seq
}

fn sign_at(p: &[BigInt], x: &Q) -> i8 {
    let mut acc = Q::zero();
    for c in p.iter().rev() {
        acc = acc * x + Q::from_integer(c.clone());
    }
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_at_neg_infinity(p: &[BigInt]) -> i8 {
    let d = p.len() - 1;
    let s = if p[d].is_positive() { 1 } else { -1 };
    if d % 2 == 1 {
        -s
    } else {
        s
    }
}

fn variations_of_signs(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs {
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Distinct real roots in `(−∞, x]`, by Sturm's theorem.
pub fn sturm_count_at_most(p: &[BigInt], x: &Q) -> usize {
    let seq = sturm_sequence(p);
    let at_neg = variations_of_signs(seq.iter().map(|q| sign_at_neg_infinity(q)));
    let at_x = variations_of_signs(seq.iter().map(|q| sign_at(q, x)));
    at_neg - at_x
}

/// Distinct real roots strictly below zero, by Sturm's theorem.
pub fn sturm_count_negative(p: &[BigInt]) -> usize {
    let zero = Q::zero();
    let p = squarefree_part(p);
    let at_zero = sturm_count_at_most(&p, &zero);
    let zero_is_root = p[0].is_zero();
    at_zero - usize::from(zero_is_root)
}
