//! Octopus and squid difference elements, their PSD verification, and the
//! induction-step audit for core-shaped hypergraphs.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::group_algebra::{fmt_q, q, qf, AlgebraElement, AlphaCombination, Q};
use crate::process_spectra::{pivot_data, pivot_reduce, pivot_reweight, SpectraError, WeightedHypergraph};
use crate::repr_engine::psd::{certify_psd_regular_with, least_eigenvalue, MAX_SUPPORT};
use crate::repr_engine::roots::{largest_root, smallest_root};
use crate::repr_engine::{
    act_on_shapes, eigen_polynomial, partitions_of, standard_rep_matrix, IrrepCache, Partition, PsdVerdict,
    RationalMatrix, RegularVerdict, ReprError,
};
use crate::symmetric_core::{SymError, VertexSet};

const EIGEN_BITS: u32 = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("negative weight {0}")]
    NegativeWeight(String),
    #[error("{0} sets but {1} weights")]
    LengthMismatch(usize, usize),
    #[error("theorem form disagrees with the squid difference: {0}")]
    FormMismatch(String),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Repr(#[from] ReprError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Shape {
    General,
    Disjoint,
    /// `A₀ ⊆ A_i`, `|A_i ∖ A₀| = 1`; the first set is `A₀`.
    LargeIntersection,
    /// `A_i ⊆ A₀`, `|A₀ ∖ A_i| = 1`; the first set is `A₀`.
    CosizeOne,
    /// All sets are distinct singletons.
    ClassicOctopus,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Shape::General => "general",
            Shape::Disjoint => "disjoint",
            Shape::LargeIntersection => "large-intersection",
            Shape::CosizeOne => "cosize-one",
            Shape::ClassicOctopus => "octopus",
        };
        f.write_str(s)
    }
}

impl FromStr for Shape {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self, LabError> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "general" => Ok(Shape::General),
            "disjoint" => Ok(Shape::Disjoint),
            "large-intersection" => Ok(Shape::LargeIntersection),
            "cosize-one" => Ok(Shape::CosizeOne),
            "octopus" | "classic-octopus" => Ok(Shape::ClassicOctopus),
            other => Err(LabError::Shape(format!("unknown shape `{other}`"))),
        }
    }
}

/// Sets `A_i ⊆ {2,…,n}` with weights `c_i ≥ 0` and a shape tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquidInstance {
    n: usize,
    sets: Vec<VertexSet>,
    weights: Vec<Q>,
    shape: Shape,
}

fn distinct(sets: &[VertexSet]) -> bool {
    (0..sets.len()).all(|i| (i + 1..sets.len()).all(|j| sets[i] != sets[j]))
}

impl SquidInstance {
    pub fn new(n: usize, sets: Vec<VertexSet>, weights: Vec<Q>, shape: Shape) -> Result<Self, LabError> {
        if sets.len() != weights.len() {
            return Err(LabError::LengthMismatch(sets.len(), weights.len()));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(LabError::NegativeWeight(fmt_q(w)));
        }
        for s in &sets {
            s.check_within(n)?;
            if s.contains(1) {
                return Err(LabError::Shape(format!("{s} contains the vertex 1")));
            }
        }
        let bad = |msg: &str| Err(LabError::Shape(msg.to_string()));
        match shape {
            Shape::General => {}
            Shape::Disjoint => {
                for i in 0..sets.len() {
                    for j in i + 1..sets.len() {
                        if !sets[i].is_disjoint(&sets[j]) {
                            return Err(LabError::Shape(format!("{} and {} intersect", sets[i], sets[j])));
                        }
                    }
                }
            }
            Shape::LargeIntersection | Shape::CosizeOne => {
                let Some(a0) = sets.first() else { return bad("the first set A0 is required") };
                if !distinct(&sets[1..]) {
                    return bad("sets must be distinct");
                }
                for s in &sets[1..] {
                    let ok = if shape == Shape::LargeIntersection {
                        a0.is_subset(s) && s.difference(a0).len() == 1
                    } else {
                        s.is_subset(a0) && a0.difference(s).len() == 1
                    };
                    if !ok {
                        return Err(LabError::Shape(format!("{s} is not of the required form relative to {a0}")));
                    }
                }
            }
            Shape::ClassicOctopus => {
                if sets.iter().any(|s| s.len() != 1) || !distinct(&sets) {
                    return bad("octopus sets must be distinct singletons");
                }
            }
        }
        Ok(SquidInstance { n, sets, weights, shape })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// `C = Σ c_i |A_i|`.
    pub fn big_c(&self) -> Q {
        big_c(&self.sets, &self.weights)
    }
}

fn big_c(sets: &[VertexSet], weights: &[Q]) -> Q {
    sets.iter().zip(weights).fold(Q::zero(), |acc, (s, c)| acc + c * q(s.len() as i64))
}

/// `C·Σ c_i α_{A_i ∪ {apex}}`.
fn squid_lhs(sets: &[VertexSet], weights: &[Q], apex: usize) -> AlphaCombination {
    let c = big_c(sets, weights);
    let mut lhs = AlphaCombination::new();
    for (s, w) in sets.iter().zip(weights) {
        lhs.add(s.with(apex), &c * w);
    }
    lhs
}

/// `Σ (C c_i + c_i²) α_{A_i} + Σ_{i<j} c_i c_j (α_{A_i∪A_j} + α_{A_i∩A_j} − α_{A_i∖A_j} − α_{A_j∖A_i})`.
fn squid_rhs_of(sets: &[VertexSet], weights: &[Q]) -> AlphaCombination {
    let c = big_c(sets, weights);
    let mut rhs = AlphaCombination::new();
    for (s, w) in sets.iter().zip(weights) {
        rhs.add(s.clone(), &c * w + w * w);
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let cc = &weights[i] * &weights[j];
            let (a, b) = (&sets[i], &sets[j]);
            rhs.add(a.union(b), cc.clone());
            rhs.add(a.intersection(b), cc.clone());
            rhs.add(a.difference(b), -cc.clone());
            rhs.add(b.difference(a), -cc);
        }
    }
    rhs
}

fn squid_combination_at(sets: &[VertexSet], weights: &[Q], apex: usize) -> AlphaCombination {
    let mut delta = squid_lhs(sets, weights, apex);
    delta.add_combination(&squid_rhs_of(sets, weights), &-Q::one());
    delta
}

/// Right-hand side of the squid inequality as an `α`-combination.
pub fn squid_rhs(inst: &SquidInstance) -> AlphaCombination {
    squid_rhs_of(&inst.sets, &inst.weights)
}

/// The squid difference `Δ` as an `α`-combination.
pub fn squid_combination(inst: &SquidInstance) -> AlphaCombination {
    squid_combination_at(&inst.sets, &inst.weights, 1)
}

/// `(Σ c_i)(Σ c_i α_{{1,i}}) − Σ_{i<j} c_i c_j α_{{i,j}}` for weights `c_2, …, c_n`.
pub fn octopus_combination(c: &[Q]) -> Result<AlphaCombination, LabError> {
    if let Some(w) = c.iter().find(|w| w.is_negative()) {
        return Err(LabError::NegativeWeight(fmt_q(w)));
    }
    let total = c.iter().fold(Q::zero(), |acc, x| acc + x);
    let mut out = AlphaCombination::new();
    for (i, ci) in c.iter().enumerate() {
        out.add(VertexSet::new([1, i + 2]), &total * ci);
        for (j, cj) in c.iter().enumerate().skip(i + 1) {
            out.add(VertexSet::new([i + 2, j + 2]), -(ci * cj));
        }
    }
    Ok(out)
}

pub fn octopus_delta(c: &[Q]) -> Result<AlgebraElement, LabError> {
    Ok(octopus_combination(c)?.to_element(c.len() + 1)?)
}

/// `(LHS, RHS)` of the theorem matching the shape tag, with `LHS − RHS`
/// expected to equal the squid difference.
pub fn theorem_form(inst: &SquidInstance) -> Option<(AlphaCombination, AlphaCombination)> {
    let (sets, w) = (&inst.sets, &inst.weights);
    let c = inst.big_c();
    let mut lhs = AlphaCombination::new();
    for (s, ci) in sets.iter().zip(w) {
        lhs.add(s.with(1), &c * ci);
        lhs.add(s.clone(), -(&c * ci));
    }
    let mut rhs = AlphaCombination::new();
    for (s, ci) in sets.iter().zip(w) {
        rhs.add(s.clone(), ci * ci);
    }
    let pairs = |f: &mut dyn FnMut(usize, usize)| {
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                f(i, j);
            }
        }
    };
    match inst.shape {
        Shape::General => return None,
        Shape::ClassicOctopus => {
            let mut full = vec![Q::zero(); inst.n - 1];
            for (s, ci) in sets.iter().zip(w) {
                full[s.members()[0] - 2] += ci;
            }
            return octopus_combination(&full).ok().map(|oct| (oct, AlphaCombination::new()));
        }
        Shape::Disjoint => pairs(&mut |i, j| {
            let cc = &w[i] * &w[j];
            rhs.add(sets[i].union(&sets[j]), cc.clone());
            rhs.add(sets[i].clone(), -cc.clone());
            rhs.add(sets[j].clone(), -cc);
        }),
        Shape::LargeIntersection => pairs(&mut |i, j| {
            let cc = &w[i] * &w[j];
            rhs.add(sets[i].union(&sets[j]), cc.clone());
            rhs.add(sets[0].clone(), cc);
        }),
        Shape::CosizeOne => pairs(&mut |i, j| {
            let cc = &w[i] * &w[j];
            rhs.add(sets[0].clone(), cc.clone());
            rhs.add(sets[i].intersection(&sets[j]), cc);
        }),
    }
    Some((lhs, rhs))
}

/// Checks `LHS − RHS` of the theorem form against the squid difference.
pub fn check_theorem_form(inst: &SquidInstance) -> Result<(), LabError> {
    let Some((lhs, rhs)) = theorem_form(inst) else { return Ok(()) };
    let mut diff = lhs;
    diff.add_combination(&rhs, &-Q::one());
    let delta = squid_combination(inst);
    if diff != delta {
        return Err(LabError::FormMismatch(format!("{diff} vs {delta}")));
    }
    Ok(())
}

/// The squid difference as a group-algebra element, after checking the
/// theorem-specific form for tagged shapes.
pub fn squid_delta(inst: &SquidInstance) -> Result<AlgebraElement, LabError> {
    check_theorem_form(inst)?;
    Ok(squid_combination(inst).to_element(inst.n)?)
}

/// Every `α_A` with `|A| ≥ 2` on the squid right-hand side has a non-negative
/// total coefficient.
pub fn rhs_coefficients_nonnegative(inst: &SquidInstance) -> bool {
    squid_rhs(inst).terms().all(|(_, c)| !c.is_negative())
}

#[derive(Clone, Debug, Serialize)]
pub struct Rank1Report {
    /// `x_i = Σ_{j : i ∈ A_j} c_j` for `i = 2..=n`.
    pub x: Vec<String>,
    pub rank: usize,
    pub trace: String,
    /// `standard_rep_matrix(Δ) = standard_rep_matrix(octopus(x))`.
    pub matches_octopus: bool,
    /// trace equals `(Σ x_i)² + Σ x_i²`, the diagonal sum of the rank-1 matrix.
    pub trace_matches: bool,
}

impl Rank1Report {
    pub fn passes(&self) -> bool {
        self.rank <= 1 && self.matches_octopus && self.trace_matches
    }
}

pub fn octopus_weights(inst: &SquidInstance) -> Vec<Q> {
    (2..=inst.n)
        .map(|i| {
            inst.sets.iter().zip(&inst.weights).filter(|(s, _)| s.contains(i)).fold(Q::zero(), |acc, (_, c)| acc + c)
        })
        .collect()
}

pub fn standard_rank1_check(inst: &SquidInstance) -> Result<Rank1Report, LabError> {
    let x = octopus_weights(inst);
    let delta = squid_combination(inst).to_element(inst.n)?;
    let m = standard_rep_matrix(&delta);
    let oct = standard_rep_matrix(&octopus_delta(&x)?);
    let sum = x.iter().fold(Q::zero(), |acc, v| acc + v);
    let sq = x.iter().fold(Q::zero(), |acc, v| acc + v * v);
    let trace = m.trace();
    Ok(Rank1Report {
        x: x.iter().map(fmt_q).collect(),
        rank: m.rank(),
        trace_matches: trace == &sum * &sum + sq,
        trace: fmt_q(&trace),
        matches_octopus: m == oct,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

/// A failing irrep with an isolating interval for its least eigenvalue.
#[derive(Clone, Debug, Serialize)]
pub struct FailureWitness {
    pub partition: Partition,
    pub verdict: PsdVerdict,
    pub least_eigenvalue: [f64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub shape: Shape,
    pub support: VertexSet,
    pub rank1: Rank1Report,
    pub verdict: Verdict,
    pub per_partition: Vec<(Partition, PsdVerdict)>,
    pub oracle: Option<bool>,
    pub witnesses: Vec<FailureWitness>,
}

fn witnesses_for(restricted: &AlgebraElement, verdict: &RegularVerdict) -> Result<Vec<FailureWitness>, LabError> {
    let failing: Vec<(Partition, PsdVerdict)> =
        verdict.per_partition.iter().filter(|(_, v)| !v.is_psd()).cloned().collect();
    if failing.is_empty() {
        return Ok(Vec::new());
    }
    let shapes: Vec<Partition> = failing.iter().map(|(p, _)| p.clone()).collect();
    let mats = act_on_shapes(restricted, &shapes, &IrrepCache::new())?;
    Ok(failing
        .into_iter()
        .zip(mats)
        .map(|((partition, verdict), m)| {
            let r = least_eigenvalue(&m, EIGEN_BITS);
            let bounds = [r.lo.to_f64().unwrap_or(f64::NAN), r.hi.to_f64().unwrap_or(f64::NAN)];
            FailureWitness { partition, verdict, least_eigenvalue: bounds }
        })
        .collect())
}

/// Rank-1 check on the standard representation, then an exact PSD sweep over
/// every irrep of `Sym(E)` with `E` the support of `Δ`. Accepts the general
/// shape too, in which case a failure is a legitimate outcome.
pub fn verify_theorem_with(inst: &SquidInstance, force_oracle: bool) -> Result<TheoremReport, LabError> {
    let delta = squid_delta(inst)?;
    let rank1 = standard_rank1_check(inst)?;
    let support = delta.support_set();
    if support.len() > MAX_SUPPORT {
        return Ok(TheoremReport {
            shape: inst.shape,
            support,
            rank1,
            verdict: Verdict::Undecided,
            per_partition: Vec::new(),
            oracle: None,
            witnesses: Vec::new(),
        });
    }
    let regular = certify_psd_regular_with(&delta, force_oracle)?;
    let witnesses = if regular.is_psd() || support.len() <= 1 {
        Vec::new()
    } else {
        witnesses_for(&delta.restrict_to(&support)?, &regular)?
    };
    let verdict = if regular.is_psd() && rank1.passes() { Verdict::Pass } else { Verdict::Fail };
    Ok(TheoremReport {
        shape: inst.shape,
        support,
        rank1,
        verdict,
        per_partition: regular.per_partition,
        oracle: regular.oracle,
        witnesses,
    })
}

pub fn verify_theorem(inst: &SquidInstance) -> Result<TheoremReport, LabError> {
    verify_theorem_with(inst, false)
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub which: u8,
    pub element: String,
    pub target: Partition,
    /// `(partition, verdict, least eigenvalue interval)` for every irrep.
    pub per_partition: Vec<(Partition, PsdVerdict, [f64; 2])>,
    /// First instance: the least eigenvalue on the target block is exactly `−2`.
    pub exact_least_eigenvalue: Option<bool>,
    /// Second instance: right-hand side coefficients `(set, expected, computed)`.
    pub rhs_coefficients: Vec<(VertexSet, String, String)>,
    pub target_least_eigenvalue: [f64; 2],
    pub passes: bool,
}

/// The two failing squid instances: `A = {2}, {2,3,4}` with unit weights in
/// `Sym_4`, and `A = {2,…,6}, {2,3}, {4,5,6}` with weights `3/20, 1/10, 1/60`.
pub fn counterexample_instance(which: u8) -> Result<SquidInstance, LabError> {
    let set = |v: &[usize]| VertexSet::new(v.iter().copied());
    match which {
        1 => SquidInstance::new(4, vec![set(&[2]), set(&[2, 3, 4])], vec![q(1), q(1)], Shape::General),
        2 => SquidInstance::new(
            6,
            vec![set(&[2, 3, 4, 5, 6]), set(&[2, 3]), set(&[4, 5, 6])],
            vec![qf(3, 20), qf(1, 10), qf(1, 60)],
            Shape::General,
        ),
        other => Err(LabError::Shape(format!("no counterexample {other}"))),
    }
}

pub fn counterexample_report(which: u8) -> Result<CounterexampleReport, LabError> {
    let inst = counterexample_instance(which)?;
    let comb = squid_combination(&inst);
    let delta = comb.to_element(inst.n)?;
    let shapes = partitions_of(inst.n)?;
    let mats = act_on_shapes(&delta, &shapes, &IrrepCache::new())?;
    let target = Partition::new(if which == 1 { vec![2, 2] } else { vec![4, 2] })?;
    let mut per_partition = Vec::new();
    let mut target_least = [f64::NAN; 2];
    let mut exact_least_eigenvalue = None;
    let mut others_psd = true;
    for (mu, m) in shapes.iter().zip(&mats) {
        let verdict = crate::repr_engine::certify_matrix_psd(m);
        let r = smallest_root(&eigen_polynomial(m), EIGEN_BITS);
        let bounds = [r.lo.to_f64().unwrap_or(f64::NAN), r.hi.to_f64().unwrap_or(f64::NAN)];
        if *mu == target {
            target_least = bounds;
            if which == 1 {
                let shifted = m + &RationalMatrix::scalar(m.order(), &q(2));
                exact_least_eigenvalue =
                    Some(shifted.rank() < m.order() && crate::repr_engine::certify_matrix_psd(&shifted).is_psd());
            }
        } else if !verdict.is_psd() {
            others_psd = false;
        }
        per_partition.push((mu.clone(), verdict, bounds));
    }
    let mut rhs_coefficients = Vec::new();
    let passes = if which == 1 {
        let expected = {
            let mut u = AlphaCombination::new();
            u.add(VertexSet::new([1, 2]), q(4));
            u.add(VertexSet::full(4), q(4));
            u.add(VertexSet::new([2, 3, 4]), q(-6));
            u.add(VertexSet::new([3, 4]), q(1));
            u
        };
        comb == expected && exact_least_eigenvalue == Some(true) && others_psd
    } else {
        let rhs = squid_rhs(&inst);
        let c = inst.big_c();
        let table = [
            (VertexSet::new([2, 3, 4, 5, 6]), qf(23, 120)),
            (VertexSet::new([2, 3]), qf(29, 240)),
            (VertexSet::new([4, 5, 6]), qf(1, 360)),
        ];
        let mut ok = c.is_one();
        for (set, want) in table {
            let got = rhs.coefficient(&set);
            ok &= got == want;
            rhs_coefficients.push((set, fmt_q(&want), fmt_q(&got)));
        }
        ok && target_least[1] < 0.0 && target_least[0] > -0.006 && target_least[1] < -0.004
    };
    Ok(CounterexampleReport {
        which,
        element: comb.to_string(),
        target,
        per_partition,
        exact_least_eigenvalue,
        rhs_coefficients,
        target_least_eigenvalue: target_least,
        passes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub pivot: usize,
    pub core: VertexSet,
    pub reduced: String,
    /// `C·(S_G − S_{H⊔{pivot}})` equals the squid difference with the pivot as apex.
    pub squid_identity: bool,
    /// (a) `S_G − S_{H⊔{pivot}} ≥ 0`.
    pub difference_psd: bool,
    /// (b) rank on the standard representation.
    pub standard_rank: usize,
    /// (c) `λ_min(S_H, V_{(n−2,1)})` and `λ_min(S_G, V_{(n−1,1)})`.
    pub lambda_min_h: f64,
    pub lambda_min_g: f64,
    pub interlaces: bool,
    pub passes: bool,
}

fn hook_lambda_min(e: &AlgebraElement) -> Result<f64, LabError> {
    let n = e.degree();
    let hook = Partition::new(vec![n - 1, 1])?;
    let m = act_on_shapes(e, &[hook], &IrrepCache::new())?.pop().expect("one shape");
    Ok(least_eigenvalue(&m, EIGEN_BITS).midpoint())
}

/// Checks the three ingredients of one induction step at `pivot`.
pub fn audit_induction_step(g: &WeightedHypergraph, pivot: usize) -> Result<AuditReport, LabError> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(LabError::Shape("the audit needs at least three vertices".into()));
    }
    let data = pivot_data(g, pivot)?;
    let keep = VertexSet::full(n).without(pivot);
    let (h_lifted, h) = if data.big_c.is_zero() {
        let lifted = WeightedHypergraph::new(
            n,
            g.edges().filter(|(e, _)| !e.contains(pivot)).map(|(e, w)| (e.clone(), w.clone())),
        )?;
        let h = lifted.induced(&keep)?;
        (lifted, h)
    } else {
        (pivot_reweight(g, pivot)?, pivot_reduce(g, pivot)?)
    };
    let s_g = g.alpha_sum()?;
    let diff = &s_g - &h_lifted.alpha_sum()?;

    let mut sets = vec![data.core.clone()];
    sets.extend(data.others.iter().map(|&m| data.core.with(m)));
    let mut weights = vec![data.c0.clone()];
    weights.extend(data.c.iter().cloned());
    let squid = squid_combination_at(&sets, &weights, pivot).to_element(n)?;
    let squid_identity = diff.scale(&data.big_c) == squid;

    let difference_psd = certify_psd_regular_with(&diff, false)?.is_psd();
    let standard_rank = standard_rep_matrix(&diff).rank();
    let lambda_min_g = hook_lambda_min(&s_g)?;
    let lambda_min_h = hook_lambda_min(&h.alpha_sum()?)?;
    let interlaces = lambda_min_h >= lambda_min_g - 1e-9;
    Ok(AuditReport {
        pivot,
        core: data.core,
        reduced: h.to_string(),
        squid_identity,
        difference_psd,
        standard_rank,
        lambda_min_h,
        lambda_min_g,
        interlaces,
        passes: squid_identity && difference_psd && standard_rank <= 1 && interlaces,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NormCheck {
    pub lhs: String,
    pub norm_bound: String,
    /// `LHS − bound = (n−2)(S² − Q − 2T)`, which vanishes.
    pub slack: String,
    /// On every `V_μ` with `μ₁ ≤ n−2`: the `|B| ≥ n−1` side is the scalar `LHS`,
    /// the spectral radius of the other side is at most the bound, and `Δ ≥ 0`.
    pub per_partition: Vec<(Partition, bool, f64, bool)>,
    pub passes: bool,
}

/// The norm argument for co-size-one instances, on `Sym(A₀ ∪ {1})`.
pub fn cosize_one_norm_check(inst: &SquidInstance) -> Result<NormCheck, LabError> {
    if inst.shape != Shape::CosizeOne {
        return Err(LabError::Shape("norm check applies to the co-size-one shape".into()));
    }
    let a0 = inst.sets[0].clone();
    let e = a0.with(1);
    let n = e.len();
    let (c0, rest) = (&inst.weights[0], &inst.weights[1..]);
    let nq = q(n as i64);
    let s = rest.iter().fold(Q::zero(), |acc, c| acc + c);
    let qq = rest.iter().fold(Q::zero(), |acc, c| acc + c * c);
    let mut t = Q::zero();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            t += &rest[i] * &rest[j];
        }
    }
    let big_c = inst.big_c();
    let two = q(2);
    let lhs = &big_c * &big_c - (&nq - &two) * c0 * &big_c + (&nq - &two) * &s * &s - (&nq - Q::one()) * (c0 * c0 + &t);
    let bound = &big_c * &big_c - (&nq - &two) * c0 * &big_c - (&nq - Q::one()) * c0 * c0
        + (&nq - &two) * &qq
        + (&nq - q(3)) * &t;
    let slack = &lhs - &bound;

    // the |B| ≥ n−1 side and the remaining side
    let mut big_side = AlphaCombination::new();
    let mut cross = Q::zero();
    let all: Vec<&Q> = inst.weights.iter().collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            cross += all[i] * all[j];
        }
    }
    for (set, c) in inst.sets.iter().zip(&inst.weights) {
        big_side.add(set.with(1), &big_c * c);
    }
    big_side.add(a0.clone(), -(&big_c * c0 + c0 * c0 + cross));
    let mut small_side = AlphaCombination::new();
    for (set, c) in inst.sets.iter().zip(&inst.weights).skip(1) {
        small_side.add(set.clone(), c * (&big_c + c + c0));
    }
    for i in 1..inst.sets.len() {
        for j in i + 1..inst.sets.len() {
            small_side.add(inst.sets[i].intersection(&inst.sets[j]), &inst.weights[i] * &inst.weights[j]);
        }
    }
    let mut recombined = big_side.clone();
    recombined.add_combination(&small_side, &-Q::one());
    if recombined != squid_combination(inst) {
        return Err(LabError::FormMismatch("rearranged co-size-one form".into()));
    }

    let big_el = big_side.to_element(inst.n)?.restrict_to(&e)?;
    let small_el = small_side.to_element(inst.n)?.restrict_to(&e)?;
    let delta = squid_combination(inst).to_element(inst.n)?.restrict_to(&e)?;
    let shapes: Vec<Partition> = partitions_of(n)?.into_iter().filter(|mu| mu.first_row() + 2 <= n).collect();
    let cache = IrrepCache::new();
    let bigs = act_on_shapes(&big_el, &shapes, &cache)?;
    let smalls = act_on_shapes(&small_el, &shapes, &cache)?;
    let deltas = act_on_shapes(&delta, &shapes, &cache)?;
    let bound_f = bound.to_f64().unwrap_or(f64::NAN);
    let mut per_partition = Vec::new();
    let mut passes = slack.is_zero();
    for (((mu, b), sm), d) in shapes.into_iter().zip(bigs).zip(smalls).zip(deltas) {
        let scalar = b.is_scalar(&lhs);
        let p = eigen_polynomial(&sm);
        let top = largest_root(&p, EIGEN_BITS);
        let bottom = smallest_root(&p, EIGEN_BITS);
        let radius = top.hi.abs().max(bottom.lo.abs()).to_f64().unwrap_or(f64::NAN);
        let psd = crate::repr_engine::certify_matrix_psd(&d).is_psd();
        passes &= scalar && psd && radius <= bound_f + 1e-9;
        per_partition.push((mu, scalar, radius, psd));
    }
    Ok(NormCheck { lhs: fmt_q(&lhs), norm_bound: fmt_q(&bound), slack: fmt_q(&slack), per_partition, passes })
}
