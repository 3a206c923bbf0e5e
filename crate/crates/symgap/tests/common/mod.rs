#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symgap::group_algebra::{qf, Q};
use symgap::inequality_lab::{Shape, SquidInstance};
use symgap::symmetric_core::VertexSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Non-negative rational with small numerator and denominator.
pub fn weight(rng: &mut ChaCha8Rng) -> Q {
    qf(rng.gen_range(0..=6), rng.gen_range(1..=4))
}

pub fn positive_weight(rng: &mut ChaCha8Rng) -> Q {
    qf(rng.gen_range(1..=6), rng.gen_range(1..=4))
}

pub fn set(v: &[usize]) -> VertexSet {
    VertexSet::new(v.iter().copied())
}

/// Every subset of `{lo, …, hi}`.
pub fn subsets(lo: usize, hi: usize) -> Vec<VertexSet> {
    let m = hi + 1 - lo;
    (0u32..1 << m).map(|mask| VertexSet::new((0..m).filter(|b| mask >> b & 1 == 1).map(|b| lo + b))).collect()
}

/// A uniformly random subset of `{lo, …, hi}`.
pub fn random_subset(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> VertexSet {
    VertexSet::new((lo..=hi).filter(|_| rng.gen_bool(0.5)))
}

/// A random instance of one of the four theorem shapes on `4 ≤ n ≤ 7` vertices.
pub fn random_instance(rng: &mut ChaCha8Rng, shape: Shape) -> SquidInstance {
    let n = rng.gen_range(4..=7);
    let (sets, count): (Vec<VertexSet>, usize) = match shape {
        Shape::ClassicOctopus => {
            let sets: Vec<VertexSet> = (2..=n).map(|v| set(&[v])).collect();
            let c = sets.len();
            (sets, c)
        }
        Shape::Disjoint => {
            let mut sets: Vec<Vec<usize>> = vec![Vec::new(); rng.gen_range(1..=3)];
            for v in 2..=n {
                let slot = rng.gen_range(0..=sets.len());
                if slot < sets.len() {
                    sets[slot].push(v);
                }
            }
            let sets: Vec<VertexSet> = sets.into_iter().filter(|s| !s.is_empty()).map(VertexSet::new).collect();
            let c = sets.len();
            (sets, c)
        }
        Shape::LargeIntersection => {
            let a0 = VertexSet::range(2, rng.gen_range(2..=n - 2));
            let mut sets = vec![a0.clone()];
            sets.extend((VertexSet::max(&a0).unwrap() + 1..=n).filter(|_| rng.gen_bool(0.7)).map(|v| a0.with(v)));
            let c = sets.len();
            (sets, c)
        }
        Shape::CosizeOne => {
            let a0 = VertexSet::range(2, n);
            let mut sets = vec![a0.clone()];
            sets.extend(a0.iter().filter(|_| rng.gen_bool(0.5)).map(|v| a0.without(v)));
            let c = sets.len();
            (sets, c)
        }
        Shape::General => unreachable!(),
    };
    let weights = (0..count).map(|_| weight(rng)).collect();
    SquidInstance::new(n, sets, weights, shape).unwrap()
}
