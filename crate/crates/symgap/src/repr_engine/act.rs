use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;

use super::matrix::RationalMatrix;
use super::partition::Partition;
use super::seminormal::{seminormal_irrep, IrrepMatrices};
use super::ReprError;
use crate::group_algebra::{AlgebraElement, Q};

/// Shared store of seminormal irreps keyed by shape.
#[derive(Default)]
pub struct IrrepCache {
    map: Mutex<HashMap<Partition, Arc<IrrepMatrices>>>,
}

impl IrrepCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, mu: &Partition) -> Arc<IrrepMatrices> {
        if let Some(r) = self.map.lock().expect("irrep cache poisoned").get(mu) {
            return r.clone();
        }
        let rep = Arc::new(seminormal_irrep(mu));
        self.map.lock().expect("irrep cache poisoned").entry(mu.clone()).or_insert(rep).clone()
    }
}

type Terms = Vec<(Vec<u8>, Q)>;

const PARALLEL_THRESHOLD: usize = 48;

/// `Σ_π c_π ρ_μ(π)` for every `μ` in `shapes`.
///
/// Each `π` factors as `σ·s_{n−1}⋯s_j` with `j = π⁻¹(n)` and `σ` fixing `n`;
/// the basis is adapted to restriction, so `ρ(σ)` is block diagonal over the
/// shapes one box smaller and the sum over each coset is computed recursively.
fn act_rec(
    terms: Terms,
    n: usize,
    shapes: &BTreeSet<Partition>,
    cache: &IrrepCache,
) -> HashMap<Partition, RationalMatrix> {
    if terms.is_empty() {
        return shapes.iter().map(|mu| (mu.clone(), RationalMatrix::zeros(mu.dimension() as usize))).collect();
    }
    if n == 1 {
        let sum = terms.iter().fold(Q::zero(), |acc, (_, c)| acc + c);
        return shapes.iter().map(|mu| (mu.clone(), RationalMatrix::scalar(1, &sum))).collect();
    }
    let mut buckets: Vec<Terms> = vec![Vec::new(); n];
    for (images, c) in terms {
        let j = images.iter().position(|&v| v as usize == n).expect("bijection");
        let mut rest = images;
        rest.remove(j);
        buckets[j].push((rest, c));
    }
    let sub_shapes: BTreeSet<Partition> =
        shapes.iter().flat_map(|mu| mu.corner_rows().into_iter().map(move |r| mu.remove_box(r))).collect();
    let total: usize = buckets.iter().map(Vec::len).sum();
    let solve = |bucket: Terms| -> Option<HashMap<Partition, RationalMatrix>> {
        (!bucket.is_empty()).then(|| act_rec(bucket, n - 1, &sub_shapes, cache))
    };
    let subs: Vec<Option<HashMap<Partition, RationalMatrix>>> = if total > PARALLEL_THRESHOLD {
        buckets.into_par_iter().map(solve).collect()
    } else {
        buckets.into_iter().map(solve).collect()
    };
    shapes
        .iter()
        .map(|mu| {
            let rep = cache.get(mu);
            let d = rep.dimension();
            let mut acc = RationalMatrix::zeros(d);
            for (j, sub) in subs.iter().enumerate() {
                let Some(sub) = sub else { continue };
                let blocks: Vec<RationalMatrix> =
                    mu.corner_rows().into_iter().map(|r| sub[&mu.remove_box(r)].clone()).collect();
                let mut x = RationalMatrix::block_diag(&blocks);
                // right-multiply by ρ(s_{n−1}) ρ(s_{n−2}) ⋯ ρ(s_{j+1}) (1-based j+1)
                for i in (j + 1..n).rev() {
                    rep.right_multiply_generator(&mut x, i);
                }
                acc = &acc + &x;
            }
            (mu.clone(), acc)
        })
        .collect()
}

fn check_degrees(e: &AlgebraElement, shapes: &[Partition]) -> Result<(), ReprError> {
    for mu in shapes {
        if mu.size() != e.degree() {
            return Err(ReprError::DegreeMismatch { element: e.degree(), rep: mu.size() });
        }
    }
    Ok(())
}

/// Matrices of `e` on several irreps at once, sharing the recursion.
pub fn act_on_shapes(
    e: &AlgebraElement,
    shapes: &[Partition],
    cache: &IrrepCache,
) -> Result<Vec<RationalMatrix>, ReprError> {
    check_degrees(e, shapes)?;
    let set: BTreeSet<Partition> = shapes.iter().cloned().collect();
    let terms: Terms = e.terms().map(|(p, c)| (p.raw().to_vec(), c.clone())).collect();
    let mut out = act_rec(terms, e.degree(), &set, cache);
    Ok(shapes
        .iter()
        .map(|mu| out.remove(mu).unwrap_or_else(|| RationalMatrix::zeros(mu.dimension() as usize)))
        .collect())
}

/// Matrix of `e = Σ c_π π` on `rep`: `Σ c_π ρ(π)`.
pub fn act(e: &AlgebraElement, rep: &IrrepMatrices) -> Result<RationalMatrix, ReprError> {
    let mu = rep.shape().clone();
    check_degrees(e, std::slice::from_ref(&mu))?;
    let cache = IrrepCache::new();
    cache.map.lock().expect("fresh cache").insert(mu.clone(), Arc::new(rep.clone()));
    Ok(act_on_shapes(e, &[mu], &cache)?.pop().expect("one shape"))
}
