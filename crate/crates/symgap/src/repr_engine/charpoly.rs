use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::matrix::RationalMatrix;
use super::modular::{charpoly_hessenberg, primes_for_bound, Crt, Mont};
use crate::group_algebra::Q;

/// Division-free characteristic polynomial `det(tI − A)` over any commutative ring.
///
/// `a` is row-major of order `n`; coefficients are returned in ascending degree.
pub fn berkowitz<T>(a: &[T], n: usize) -> Vec<T>
where
    T: Clone + Zero + One,
    for<'x> &'x T: Add<&'x T, Output = T> + Sub<&'x T, Output = T> + Mul<&'x T, Output = T> + Neg<Output = T>,
{
    assert_eq!(a.len(), n * n);
    // coefficients from t^r down to t^0
    let mut poly: Vec<T> = vec![T::one()];
    for r in 0..n {
        // column vector S = A[0..r, r], row vector R = A[r, 0..r]
        let s: Vec<T> = (0..r).map(|i| a[i * n + r].clone()).collect();
        let row: Vec<T> = (0..r).map(|j| a[r * n + j].clone()).collect();
        let mut toeplitz: Vec<T> = Vec::with_capacity(r + 2);
        toeplitz.push(T::one());
        toeplitz.push(-&a[r * n + r]);
        let mut v = s;
        for _ in 0..r {
            let dot = row.iter().zip(&v).fold(T::zero(), |acc, (x, y)| &acc + &(x * y));
            toeplitz.push(-&dot);
            // v ← A_r v
            let next: Vec<T> =
                (0..r).map(|i| (0..r).fold(T::zero(), |acc, j| &acc + &(&a[i * n + j] * &v[j]))).collect();
            v = next;
        }
        // new poly = Toeplitz(r+2 × r+1) · poly
        let mut next = vec![T::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, c) in poly.iter().enumerate() {
                if i >= j && i - j < toeplitz.len() {
                    *slot = &*slot + &(&toeplitz[i - j] * c);
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    poly
}

/// `Π_i (1 + Σ_j |a_ij|)`, a bound on every coefficient of `det(tI − A)`.
pub fn charpoly_coefficient_bound(a: &[BigInt], n: usize) -> BigUint {
    let mut bound = BigUint::one();
    for i in 0..n {
        let row: BigUint = a[i * n..(i + 1) * n].iter().map(|x| x.magnitude().clone()).sum();
        bound *= row + 1u32;
    }
    bound
}

/// Exact `det(tI − A)` for an integer matrix, by Hessenberg reduction modulo
/// enough 62-bit primes and Chinese remaindering.
pub fn charpoly_integer(a: &[BigInt], n: usize) -> Vec<BigInt> {
    if n == 0 {
        return vec![BigInt::one()];
    }
    let bound = charpoly_coefficient_bound(a, n);
    let primes = primes_for_bound(&bound);
    let residues: Vec<Vec<u64>> = primes
        .par_iter()
        .map(|&p| {
            let m = Mont::new(p);
            let mut red: Vec<u64> = a.iter().map(|x| m.from_bigint(x)).collect();
            charpoly_hessenberg(&m, &mut red, n).into_iter().map(|c| m.from_mont(c)).collect()
        })
        .collect();
    let crt = Crt::new(&primes);
    (0..=n)
        .map(|d| {
            let r: Vec<u64> = residues.iter().map(|v| v[d]).collect();
            crt.combine(&r)
        })
        .collect()
}

/// Integer polynomial whose roots are exactly the eigenvalues of `M`
/// (with multiplicity): `p_N(D·t)` for `N = D·M` integral.
pub fn eigen_polynomial(m: &RationalMatrix) -> Vec<BigInt> {
    let n = m.order();
    let (ints, d) = m.clear_denominators();
    let cn = charpoly_integer(&ints, n);
    let mut pow = BigInt::one();
    let mut out = Vec::with_capacity(n + 1);
    for c in cn {
        out.push(c * &pow);
        pow *= &d;
    }
    let g = out.iter().fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
    if g > BigInt::one() {
        for c in out.iter_mut() {
            *c = &*c / &g;
        }
    }
    out
}

/// Exact monic `det(tI − M)` over ℚ, ascending coefficients.
pub fn char_poly(m: &RationalMatrix) -> Vec<Q> {
    let n = m.order();
    let (ints, d) = m.clear_denominators();
    let cn = charpoly_integer(&ints, n);
    // p_M(t) = D^{−n} p_N(D t)
    cn.into_iter().enumerate().map(|(j, c)| Q::new(c, num_traits::pow(d.clone(), n - j))).collect()
}

/// `det(A)` for an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(a: &[BigInt], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                m.swap(k * n + c, piv * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k * n + k] * &m[i * n + j] - &m[i * n + k] * &m[k * n + j]) / &prev;
                m[i * n + j] = v;
            }
        }
        prev = m[k * n + k].clone();
    }
    sign * &m[n * n - 1]
}

/// Signs of the coefficients of `(−1)^d p(−t)` for `p` given ascending;
/// returns the first index whose coefficient is negative.
pub fn first_negative_after_reflection(p: &[BigInt]) -> Option<(usize, BigInt)> {
    let d = p.len() - 1;
    p.iter().enumerate().find_map(|(j, c)| {
        let v = if (d - j) % 2 == 1 { -c } else { c.clone() };
        v.is_negative().then_some((j, v))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::q;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn berkowitz_small() {
        assert_eq!(berkowitz(&ints(&[0, 0, 0, 0]), 2), ints(&[0, 0, 1]));
        assert_eq!(berkowitz(&ints(&[1, 0, 0, 0, 2, 0, 0, 0, 3]), 3), ints(&[-6, 11, -6, 1]));
        assert_eq!(berkowitz(&ints(&[1, -1, -1, 1]), 2), ints(&[0, -2, 1]));
    }

    #[test]
    fn modular_agrees_with_berkowitz() {
        let a = ints(&[3, -7, 2, 0, 11, 5, -4, 8, 1, 9, 6, -2, 0, 13, -5, 7]);
        assert_eq!(charpoly_integer(&a, 4), berkowitz(&a, 4));
        let big: Vec<BigInt> = (0..25).map(|i| BigInt::from(1u64 << 40) * (i * 7919 % 23 - 11)).collect();
        assert_eq!(charpoly_integer(&big, 5), berkowitz(&big, 5));
    }

    #[test]
    fn rational_char_poly() {
        let m = RationalMatrix::from_rows(vec![vec![q(1), q(0), q(0)], vec![q(0), q(2), q(0)], vec![q(0), q(0), q(3)]]);
        assert_eq!(char_poly(&m), vec![q(-6), q(11), q(-6), q(1)]);
        assert_eq!(char_poly(&RationalMatrix::zeros(2)), vec![q(0), q(0), q(1)]);
        let half = m.scale(&crate::group_algebra::qf(1, 2));
        let cp = char_poly(&half);
        assert_eq!(cp[0], crate::group_algebra::qf(-6, 8));
    }

    #[test]
    fn determinant_oracle() {
        let a = ints(&[2, 0, 1, 1, 3, 2, 1, 1, 2]);
        assert_eq!(bareiss_determinant(&a, 3), BigInt::from(6));
        assert_eq!(berkowitz(&a, 3)[0], BigInt::from(-6));
        let singular = ints(&[2, 0, 1, 1, 3, 2, 1, 1, 1]);
        assert!(bareiss_determinant(&singular, 3).is_zero());
    }
}
