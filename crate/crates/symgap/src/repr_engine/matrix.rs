use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::group_algebra::{fmt_q, Q};

/// Dense square matrix over ℚ, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    order: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(order: usize) -> Self {
        RationalMatrix { order, data: vec![Q::zero(); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn scalar(order: usize, c: &Q) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let order = rows.len();
        assert!(rows.iter().all(|r| r.len() == order), "matrix must be square");
        RationalMatrix { order, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn trace(&self) -> Q {
        (0..self.order).fold(Q::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn scale(&self, c: &Q) -> Self {
        RationalMatrix { order: self.order, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_scalar(&self, c: &Q) -> bool {
        *self == Self::scalar(self.order, c)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.order;
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else { continue };
            for c in 0..n {
                a.swap(rank * n + c, piv * n + c);
            }
            let inv = a[rank * n + col].recip();
            for r in 0..n {
                if r != rank && !a[r * n + col].is_zero() {
                    let f = &a[r * n + col] * &inv;
                    for c in col..n {
                        let v = &f * &a[rank * n + c];
                        a[r * n + c] -= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// `(N, D)` with `N = D·self` integral and `D > 0` the least common denominator.
    pub fn clear_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = self.data.iter().map(|x| (x * Q::from_integer(d.clone())).to_integer()).collect();
        (ints, d)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn max_abs_entry(&self) -> Q {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero)
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[RationalMatrix]) -> Self {
        let order = blocks.iter().map(|b| b.order).sum();
        let mut m = Self::zeros(order);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.order {
                for j in 0..b.order {
                    m[(off + i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.order;
        }
        m
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.order + j]
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.order, rhs.order);
        RationalMatrix { order: self.order, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.order, rhs.order);
        RationalMatrix { order: self.order, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.order, rhs.order);
        let n = self.order;
        let mut out = RationalMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(fmt_q).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for i in 0..self.order {
            write!(f, "[")?;
            for j in 0..self.order {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.order + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::{q, qf};

    #[test]
    fn rank_and_products() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(RationalMatrix::zeros(3).rank(), 0);
        let sq = &m * &m;
        assert_eq!(sq, RationalMatrix::from_i64(&[&[5, 10], &[10, 20]]));
        assert_eq!(m.trace(), q(5));
    }

    #[test]
    fn denominators_cleared() {
        let m = RationalMatrix::from_rows(vec![vec![qf(1, 2), qf(1, 3)], vec![q(1), qf(-5, 6)]]);
        let (ints, d) = m.clear_denominators();
        assert_eq!(d, BigInt::from(6));
        let v: Vec<i64> = ints.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(v, vec![3, 2, 6, -5]);
    }
}
