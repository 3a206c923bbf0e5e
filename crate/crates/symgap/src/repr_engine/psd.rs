use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::act::{act_on_shapes, IrrepCache};
use super::charpoly::{eigen_polynomial, first_negative_after_reflection};
use super::matrix::RationalMatrix;
use super::partition::{partitions_of, Partition};
use super::roots::{smallest_root, RootInterval};
use super::seminormal::IrrepMatrices;
use super::ReprError;
use crate::group_algebra::AlgebraElement;
use crate::symmetric_core::{compose_unchecked, enumerate_sym, VertexSet};

/// Largest support handled by the regular-representation routes.
pub const MAX_SUPPORT: usize = 8;
/// Largest support for which the explicit `|E|!×|E|!` oracle runs.
pub const ORACLE_SUPPORT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PsdVerdict {
    Psd,
    /// Coefficient `index` (of `t^index`) of `(−1)^d p(−t)` is the negative `value`.
    NotPsd {
        index: usize,
        value: String,
    },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd)
    }
}

/// Certifies a matrix with real spectrum: PSD iff no coefficient of
/// `(−1)^d p(−t)` is negative.
pub fn certify_matrix_psd(m: &RationalMatrix) -> PsdVerdict {
    if m.order() == 0 {
        return PsdVerdict::Psd;
    }
    let p = eigen_polynomial(m);
    match first_negative_after_reflection(&p) {
        None => PsdVerdict::Psd,
        Some((index, value)) => PsdVerdict::NotPsd { index, value: value.to_string() },
    }
}

/// Isolating interval of the least eigenvalue of a matrix with real spectrum.
pub fn least_eigenvalue(m: &RationalMatrix, bits: u32) -> RootInterval {
    smallest_root(&eigen_polynomial(m), bits)
}

pub fn certify_psd(e: &AlgebraElement, rep: &IrrepMatrices) -> Result<PsdVerdict, ReprError> {
    if !e.is_symmetric() {
        return Err(ReprError::NotSymmetric);
    }
    Ok(certify_matrix_psd(&super::act(e, rep)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularVerdict {
    /// Support `E` the element was restricted to.
    pub support: VertexSet,
    pub per_partition: Vec<(Partition, PsdVerdict)>,
    /// Result of the explicit regular-representation check, when it ran.
    pub oracle: Option<bool>,
}

impl RegularVerdict {
    pub fn is_psd(&self) -> bool {
        self.per_partition.iter().all(|(_, v)| v.is_psd())
    }
}

/// Left-multiplication matrix of `e` on `ℚ[Sym_n]`: `L[π][σ] = e_{πσ⁻¹}`,
/// rows and columns in lexicographic order of permutations.
pub fn regular_matrix(e: &AlgebraElement) -> RationalMatrix {
    let n = e.degree();
    let perms = enumerate_sym(&VertexSet::full(n), n).expect("full set");
    let index: std::collections::HashMap<_, _> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut m = RationalMatrix::zeros(perms.len());
    for (g, c) in e.terms() {
        for (s, sigma) in perms.iter().enumerate() {
            let pi = compose_unchecked(g, sigma);
            m[(index[&pi], s)] = c.clone();
        }
    }
    m
}

/// PSD test for a symmetric integer matrix by fraction-free symmetric elimination.
pub(crate) fn symmetric_integer_psd(a: &[BigInt], n: usize) -> bool {
    let mut m = a.to_vec();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    while let Some(&k) = alive.first() {
        alive.remove(0);
        let pivot = m[k * n + k].clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            if alive.iter().any(|&j| !m[k * n + j].is_zero()) {
                return false;
            }
            continue;
        }
        for &i in &alive {
            for &j in &alive {
                let v = (&pivot * &m[i * n + j] - &m[i * n + k] * &m[k * n + j]).div_floor(&prev);
                m[i * n + j] = v;
            }
        }
        prev = pivot;
    }
    true
}

/// PSD test of `e` on the regular representation of `Sym(E)`, `E = supp(e)`:
/// sweeps every irrep of `Sym_{|E|}` and, for `|E| ≤ 5` or when forced,
/// cross-checks with the explicit left-multiplication matrix.
pub fn certify_psd_regular_with(e: &AlgebraElement, force_oracle: bool) -> Result<RegularVerdict, ReprError> {
    if !e.is_symmetric() {
        return Err(ReprError::NotSymmetric);
    }
    let support = e.support_set();
    if support.len() > MAX_SUPPORT {
        return Err(ReprError::TooLarge(support.len()));
    }
    if support.len() <= 1 {
        // e is a multiple of the identity
        let c = e.augmentation();
        let verdict =
            if c.is_negative() { PsdVerdict::NotPsd { index: 0, value: c.to_string() } } else { PsdVerdict::Psd };
        let trivial = Partition::new(vec![1]).expect("(1)");
        return Ok(RegularVerdict { support, per_partition: vec![(trivial, verdict)], oracle: None });
    }
    let restricted = e.restrict_to(&support)?;
    let shapes = partitions_of(support.len())?;
    let cache = IrrepCache::new();
    let mats = act_on_shapes(&restricted, &shapes, &cache)?;
    let per_partition: Vec<(Partition, PsdVerdict)> =
        shapes.into_iter().zip(mats.par_iter().map(certify_matrix_psd).collect::<Vec<_>>()).collect();
    let mut verdict = RegularVerdict { support, per_partition, oracle: None };
    if verdict.support.len() <= ORACLE_SUPPORT || force_oracle {
        let l = regular_matrix(&restricted);
        let (ints, _) = l.clear_denominators();
        let ok = symmetric_integer_psd(&ints, l.order());
        verdict.oracle = Some(ok);
        if ok != verdict.is_psd() {
            return Err(ReprError::RouteDisagreement);
        }
    }
    Ok(verdict)
}

pub fn certify_psd_regular(e: &AlgebraElement) -> Result<RegularVerdict, ReprError> {
    certify_psd_regular_with(e, false)
}
