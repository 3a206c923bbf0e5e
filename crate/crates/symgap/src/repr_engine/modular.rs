//! Word-sized modular arithmetic for multimodular characteristic polynomials.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Montgomery arithmetic modulo an odd prime `p < 2^63`.
#[derive(Clone, Copy, Debug)]
pub struct Mont {
    pub p: u64,
    ninv: u64,
    r2: u64,
}

impl Mont {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 63));
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Mont { p, ninv: inv.wrapping_neg(), r2 }
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.ninv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Plain residue into Montgomery form.
    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64) as u64;
        self.to_mont(r)
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        self.to_mont(r.to_u64().expect("reduced"))
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^62`, descending.
pub fn primes_below_2_62(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c: u64 = (1 << 62) - 1;
    while out.len() < count {
        if is_prime_u64(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// Primes whose product exceeds `2·bound + 1`.
pub fn primes_for_bound(bound: &BigUint) -> Vec<u64> {
    let target: BigUint = bound * 2u32 + 1u32;
    let bits = target.bits() as usize;
    // each prime contributes just under 62 bits
    let count = bits / 61 + 1;
    let primes = primes_below_2_62(count);
    let prod = primes.iter().fold(BigUint::one(), |acc, &p| acc * p);
    assert!(prod > target);
    primes
}

/// Characteristic polynomial `det(tI − A)` over `ℤ/p` (entries in Montgomery form),
/// via reduction to upper Hessenberg form. Returns ascending coefficients, monic,
/// in Montgomery form.
pub fn charpoly_hessenberg(mont: &Mont, a: &mut [u64], n: usize) -> Vec<u64> {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| a[at(i, j)] != 0) else { continue };
        if piv != j + 1 {
            for c in 0..n {
                a.swap(at(piv, c), at(j + 1, c));
            }
            for r in 0..n {
                a.swap(at(r, piv), at(r, j + 1));
            }
        }
        let inv = mont.inv(a[at(j + 1, j)]);
        for r in j + 2..n {
            let x = a[at(r, j)];
            if x == 0 {
                continue;
            }
            let u = mont.mul(x, inv);
            // row_r -= u * row_{j+1}
            for c in 0..n {
                let v = a[at(j + 1, c)];
                if v != 0 {
                    a[at(r, c)] = mont.sub(a[at(r, c)], mont.mul(u, v));
                }
            }
            // col_{j+1} += u * col_r
            for rr in 0..n {
                let v = a[at(rr, r)];
                if v != 0 {
                    a[at(rr, j + 1)] = mont.add(a[at(rr, j + 1)], mont.mul(u, v));
                }
            }
        }
    }
    // p_m = (t − h_mm) p_{m−1} − Σ_{i<m} h_im (Π_{l=i+1..m} h_{l,l−1}) p_{i−1}   (1-based)
    let one = mont.one();
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![one]);
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = mont.add(next[d + 1], c);
            next[d] = mont.sub(next[d], mont.mul(a[at(m, m)], c));
        }
        let mut prod = one;
        for i in (0..m).rev() {
            prod = mont.mul(prod, a[at(i + 1, i)]);
            if prod == 0 {
                break;
            }
            let coef = mont.mul(a[at(i, m)], prod);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = mont.sub(next[d], mont.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n+1 polynomials")
}

/// Chinese remaindering by Garner's algorithm into the symmetric range.
pub struct Crt {
    primes: Vec<u64>,
    /// `(p_0 ⋯ p_{i−1})^{-1} mod p_i`, plain residues.
    inverses: Vec<u64>,
    modulus: BigInt,
    half: BigInt,
}

impl Crt {
    pub fn new(primes: &[u64]) -> Self {
        let mut inverses = Vec::with_capacity(primes.len());
        for (i, &p) in primes.iter().enumerate() {
            let mut prod = 1u64 % p;
            for &q in &primes[..i] {
                prod = mulmod(prod, q % p, p);
            }
            inverses.push(if i == 0 { 1 } else { powmod(prod, p - 2, p) });
        }
        let modulus = primes.iter().fold(BigInt::one(), |acc, &p| acc * p);
        let half = &modulus >> 1;
        Crt { primes: primes.to_vec(), inverses, modulus, half }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Reconstructs the integer in `(−M/2, M/2]` from plain residues.
    pub fn combine(&self, residues: &[u64]) -> BigInt {
        let k = self.primes.len();
        let mut digits = vec![0u64; k];
        for i in 0..k {
            let p = self.primes[i];
            // value of v_0 + v_1 p_0 + … + v_{i−1} p_0⋯p_{i−2} mod p
            let mut acc = 0u64;
            for j in (0..i).rev() {
                acc = (mulmod(acc, self.primes[j] % p, p) + digits[j] % p) % p;
            }
            let diff = (residues[i] % p + p - acc) % p;
            digits[i] = mulmod(diff, self.inverses[i], p);
        }
        let mut x = BigUint::zero();
        for i in (0..k).rev() {
            x = x * self.primes[i] + digits[i];
        }
        let x = BigInt::from_biguint(Sign::Plus, x);
        if x > self.half {
            x - &self.modulus
        } else {
            x
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert!(!is_prime_u64(3_215_031_751));
        let ps = primes_below_2_62(3);
        assert!(ps.iter().all(|&p| p < (1 << 62) && is_prime_u64(p)));
    }

    #[test]
    fn montgomery_round_trip() {
        let m = Mont::new(1_000_000_007);
        let a = m.from_i64(-5);
        let b = m.from_i64(7);
        assert_eq!(m.from_mont(m.mul(a, b)), (1_000_000_007 - 35) as u64);
        assert_eq!(m.from_mont(m.mul(b, m.inv(b))), 1);
    }

    #[test]
    fn hessenberg_matches_small_cases() {
        let p = primes_below_2_62(1)[0];
        let m = Mont::new(p);
        // [[2,1],[1,2]] -> t^2 - 4t + 3
        let mut a: Vec<u64> = [2, 1, 1, 2].iter().map(|&v| m.from_i64(v)).collect();
        let cp: Vec<u64> = charpoly_hessenberg(&m, &mut a, 2).iter().map(|&c| m.from_mont(c)).collect();
        assert_eq!(cp, vec![3, p - 4, 1]);
        // permutation matrix of a 3-cycle -> t^3 - 1
        let mut b: Vec<u64> = [0, 1, 0, 0, 0, 1, 1, 0, 0].iter().map(|&v| m.from_i64(v)).collect();
        let cp: Vec<u64> = charpoly_hessenberg(&m, &mut b, 3).iter().map(|&c| m.from_mont(c)).collect();
        assert_eq!(cp, vec![p - 1, 0, 0, 1]);
    }

    #[test]
    fn crt_symmetric_range() {
        let primes = primes_below_2_62(3);
        let crt = Crt::new(&primes);
        for v in [BigInt::from(-123456789i64), BigInt::from(0), BigInt::from(1u64 << 62) * 12345] {
            let res: Vec<u64> = primes.iter().map(|&p| v.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect();
            assert_eq!(crt.combine(&res), v);
        }
    }
}
