//! Irreducible representations of `Sym_n` in seminormal form, the standard
//! representation, exact characteristic polynomials and PSD certificates.

mod act;
pub mod charpoly;
pub mod matrix;
pub mod modular;
pub mod partition;
pub mod psd;
pub mod roots;
pub mod seminormal;

use thiserror::Error;

use crate::group_algebra::{q, AlgebraElement, Q};
use crate::symmetric_core::SymError;

pub use act::{act, act_on_shapes, IrrepCache};
pub use charpoly::{berkowitz, char_poly, eigen_polynomial};
pub use matrix::RationalMatrix;
pub use partition::{partitions_of, remove_corner_squares, Partition};
pub use psd::{
    certify_matrix_psd, certify_psd, certify_psd_regular, certify_psd_regular_with, least_eigenvalue, regular_matrix,
    PsdVerdict, RegularVerdict,
};
pub use seminormal::{seminormal_irrep, standard_tableaux, IrrepMatrices, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReprError {
    #[error("not a partition: {0:?}")]
    BadPartition(Vec<usize>),
    #[error("degree must be at least one (or two where a transposition is needed)")]
    EmptyDegree,
    #[error("element of degree {element} acting on a representation of degree {rep}")]
    DegreeMismatch { element: usize, rep: usize },
    #[error("element is not symmetric, so its spectrum need not be real")]
    NotSymmetric,
    #[error("support of size {0} exceeds the limit of 8")]
    TooLarge(usize),
    #[error("irrep sweep and regular-representation oracle disagree")]
    RouteDisagreement,
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Matrix of `e` on ℚⁿ where `π·v = (v_{π(1)}, …, v_{π(n)})`, i.e. `M[i][π(i)] += c`.
pub fn standard_rep_matrix(e: &AlgebraElement) -> RationalMatrix {
    let n = e.degree();
    let mut m = RationalMatrix::zeros(n);
    for (p, c) in e.terms() {
        for i in 1..=n {
            m[(i - 1, p.apply(i) - 1)] += c;
        }
    }
    m
}

/// `binom(n,2)·(1 − χ_μ((1 2))/χ_μ(id))`, the scalar by which `Σ_{i<j} α_{{i,j}}` acts on `V_μ`.
pub fn ds_scalar(mu: &Partition) -> Result<Q, ReprError> {
    let n = mu.size();
    if n < 2 {
        return Err(ReprError::EmptyDegree);
    }
    let rep = seminormal_irrep(mu);
    let pairs = q((n * (n - 1) / 2) as i64);
    Ok(pairs * (Q::from_integer(1.into()) - seminormal::transposition_ratio(&rep)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::{alpha, qf};
    use crate::symmetric_core::VertexSet;

    #[test]
    fn standard_matrix_of_transposition_alpha() {
        let a = alpha(&VertexSet::new([2, 4]), 4).unwrap();
        let m = standard_rep_matrix(&a);
        let expected = RationalMatrix::from_i64(&[&[0, 0, 0, 0], &[0, 1, 0, -1], &[0, 0, 0, 0], &[0, -1, 0, 1]]);
        assert_eq!(m, expected);
    }

    #[test]
    fn ds_scalar_values() {
        for n in 2..=7 {
            assert_eq!(ds_scalar(&Partition::new(vec![n]).unwrap()).unwrap(), q(0));
            let hook = Partition::new(vec![n - 1, 1]).unwrap();
            let min = ds_scalar(&hook).unwrap();
            assert_eq!(min, q(n as i64));
            for mu in partitions_of(n).unwrap().into_iter().skip(1) {
                assert!(ds_scalar(&mu).unwrap() >= min, "{mu}");
            }
        }
        // α_{1,2} = id − (1 2) acts on the sign representation as 2
        assert_eq!(ds_scalar(&Partition::new(vec![1, 1]).unwrap()).unwrap(), q(2));
        assert_eq!(ds_scalar(&Partition::new(vec![2, 1]).unwrap()).unwrap(), qf(3, 1));
    }
}
