//! Weighted hypergraphs, the interchange process (IP) and the single-ball
//! random walk (RW), and their second largest eigenvalues.
//!
//! Both operators use the lazy convention: a step picks a hyper-edge with
//! probability proportional to its weight and applies a uniform permutation
//! of its vertices. With `W = Σ w_A` the IP element is
//! `U = W⁻¹ Σ w_A J_A / |A|! = id − W⁻¹ Σ (w_A/|A|) α_A`, so
//! `1 − λ₂(U)` is the least non-trivial eigenvalue of `W⁻¹ Σ (w_A/|A|) α_A`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::group_algebra::{fmt_q, j_element, parse_q, q, AlgebraElement, Q};
use crate::repr_engine::roots::{kth_largest_root, largest_root, RootInterval};
use crate::repr_engine::{
    act_on_shapes, eigen_polynomial, partitions_of, standard_rep_matrix, IrrepCache, Partition, RationalMatrix,
    ReprError,
};
use crate::symmetric_core::{compose_unchecked, enumerate_sym, factorial, SymError, VertexSet};

/// Largest vertex count for the irrep route.
pub const MAX_VERTICES: usize = 8;
/// Largest vertex count for the explicit `n!`-state oracle.
pub const MAX_ORACLE_VERTICES: usize = 6;
/// Bits of precision for root isolation (`2^-48 < 4·10⁻¹⁵`).
pub const ROOT_BITS: u32 = 48;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectraError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("negative weight {0} on edge {1}")]
    NegativeWeight(String, VertexSet),
    #[error("edge {0} listed twice")]
    DuplicateEdge(VertexSet),
    #[error("total weight is zero")]
    ZeroWeight,
    #[error("{0} vertices exceeds the limit of {1}")]
    TooLarge(usize, usize),
    #[error("hypergraph needs at least two vertices")]
    TooSmall,
    #[error("not of core shape: {0}")]
    Shape(String),
    #[error("pivot {0} lies in the core {1}")]
    PivotInCore(usize, VertexSet),
    #[error("no positive-weight hyper-edge contains the pivot")]
    ZeroPivotWeight,
    #[error("no hyper-edge of size at least two has a vertex of its own")]
    NoLeaf,
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Repr(#[from] ReprError),
}

/// Vertex count plus distinct hyper-edges with non-negative rational weights.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedHypergraph {
    n: usize,
    edges: BTreeMap<VertexSet, Q>,
}

impl WeightedHypergraph {
    pub fn new<I: IntoIterator<Item = (VertexSet, Q)>>(n: usize, edges: I) -> Result<Self, SpectraError> {
        let mut g = WeightedHypergraph { n, edges: BTreeMap::new() };
        for (set, w) in edges {
            g.insert(set, w)?;
        }
        Ok(g)
    }

    fn insert(&mut self, set: VertexSet, w: Q) -> Result<(), SpectraError> {
        set.check_within(self.n)?;
        if w.is_negative() {
            return Err(SpectraError::NegativeWeight(fmt_q(&w), set));
        }
        if self.edges.contains_key(&set) {
            return Err(SpectraError::DuplicateEdge(set));
        }
        self.edges.insert(set, w);
        Ok(())
    }

    /// Unit weights on the given edges.
    pub fn unit(n: usize, edges: &[&[usize]]) -> Result<Self, SpectraError> {
        Self::new(n, edges.iter().map(|e| (VertexSet::new(e.iter().copied()), Q::one())))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (&VertexSet, &Q)> {
        self.edges.iter()
    }

    pub fn weight(&self, set: &VertexSet) -> Q {
        self.edges.get(set).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total_weight(&self) -> Q {
        self.edges.values().fold(Q::zero(), |acc, w| acc + w)
    }

    fn positive_edges(&self) -> impl Iterator<Item = (&VertexSet, &Q)> {
        self.edges.iter().filter(|(_, w)| w.is_positive())
    }

    /// Every positive-weight edge has at most two vertices.
    pub fn is_graph(&self) -> bool {
        self.positive_edges().all(|(e, _)| e.len() <= 2)
    }

    /// `Σ w_A α_A`.
    pub fn alpha_sum(&self) -> Result<AlgebraElement, SpectraError> {
        let mut comb = crate::group_algebra::AlphaCombination::new();
        for (set, w) in &self.edges {
            comb.add(set.clone(), w.clone());
        }
        Ok(comb.to_element(self.n)?)
    }

    /// Relabels the vertices `keep` (sorted) order-preservingly as `1..=|keep|`,
    /// dropping edges that leave `keep`.
    pub fn induced(&self, keep: &VertexSet) -> Result<Self, SpectraError> {
        let mut pos = vec![0usize; self.n + 1];
        for (i, v) in keep.iter().enumerate() {
            pos[v] = i + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(e, _)| e.is_subset(keep))
            .map(|(e, w)| (VertexSet::new(e.iter().map(|v| pos[v])), w.clone()));
        Self::new(keep.len(), edges)
    }

    /// Line-oriented text form accepted by [`FromStr`].
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (e, w) in &self.edges {
            let members: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let list = if members.is_empty() { "{}".to_string() } else { members.join(",") };
            s.push_str(&format!("edge {list} weight {}\n", fmt_q(w)));
        }
        s
    }
}

impl fmt::Display for WeightedHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        for (e, w) in &self.edges {
            write!(f, " {e}:{}", fmt_q(w))?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeightedHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for WeightedHypergraph {
    type Err = SpectraError;

    /// `n <count>` then `edge <v1>,<v2>,... weight <p>/<q>` lines; `#` starts a comment.
    fn from_str(text: &str) -> Result<Self, SpectraError> {
        let err = |line: usize, message: &str| SpectraError::Parse { line, message: message.to_string() };
        let mut graph: Option<WeightedHypergraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some(g) = graph.as_mut() else {
                let mut it = line.split_whitespace();
                if it.next() != Some("n") {
                    return Err(err(line_no, "expected header `n <count>`"));
                }
                let n: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| err(line_no, "vertex count must be a positive integer"))?;
                if it.next().is_some() {
                    return Err(err(line_no, "trailing tokens after vertex count"));
                }
                if n > u8::MAX as usize {
                    return Err(err(line_no, "vertex count too large"));
                }
                graph = Some(WeightedHypergraph { n, edges: BTreeMap::new() });
                continue;
            };
            let rest = line.strip_prefix("edge").ok_or_else(|| err(line_no, "expected `edge ... weight ...`"))?;
            let (list, weight) = rest.split_once("weight").ok_or_else(|| err(line_no, "missing `weight` keyword"))?;
            let list = list.trim();
            let set = if list == "{}" {
                VertexSet::empty()
            } else {
                list.parse::<VertexSet>().map_err(|e| err(line_no, &e.to_string()))?
            };
            let w = parse_q(weight).ok_or_else(|| err(line_no, &format!("bad weight `{}`", weight.trim())))?;
            g.insert(set, w).map_err(|e| err(line_no, &e.to_string()))?;
        }
        graph.ok_or_else(|| err(0, "empty input"))
    }
}

fn check_total(g: &WeightedHypergraph) -> Result<Q, SpectraError> {
    let w = g.total_weight();
    if w.is_zero() {
        return Err(SpectraError::ZeroWeight);
    }
    Ok(w)
}

/// `U = W⁻¹ Σ_A w_A J_A / |A|!`.
pub fn ip_operator(g: &WeightedHypergraph) -> Result<AlgebraElement, SpectraError> {
    let total = check_total(g)?;
    let mut u = AlgebraElement::zero(g.n);
    for (set, w) in g.edges() {
        if w.is_zero() {
            continue;
        }
        let scale = w / (&total * q(factorial(set.len()) as i64));
        u.add_scaled(&j_element(set, g.n)?, &scale);
    }
    Ok(u)
}

/// Transition matrix of the single-ball walk, `P[u][v]`.
pub fn rw_matrix(g: &WeightedHypergraph) -> Result<RationalMatrix, SpectraError> {
    let total = check_total(g)?;
    let n = g.n;
    let mut m = RationalMatrix::zeros(n);
    for (set, w) in g.edges() {
        if w.is_zero() {
            continue;
        }
        let share = w / &total;
        let spread = &share / q(set.len().max(1) as i64);
        for u in 1..=n {
            if set.contains(u) {
                for v in set.iter() {
                    m[(u - 1, v - 1)] += &spread;
                }
            } else {
                m[(u - 1, u - 1)] += &share;
            }
        }
    }
    Ok(m)
}

/// λ₁ of one irreducible block.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionEigenvalue {
    pub partition: Partition,
    pub lambda1: f64,
    #[serde(skip)]
    pub interval: RootInterval,
}

#[derive(Clone, Debug, Serialize)]
pub struct Lambda2 {
    pub value: f64,
    #[serde(skip)]
    pub interval: RootInterval,
    /// Largest eigenvalue on every non-trivial irrep, in partition order.
    pub table: Vec<PartitionEigenvalue>,
}

fn check_size(g: &WeightedHypergraph) -> Result<(), SpectraError> {
    if g.n > MAX_VERTICES {
        return Err(SpectraError::TooLarge(g.n, MAX_VERTICES));
    }
    if g.n < 2 {
        return Err(SpectraError::TooSmall);
    }
    Ok(())
}

/// λ₂ of the IP as the largest λ₁ over the non-trivial irreps.
pub fn lambda2_ip(g: &WeightedHypergraph) -> Result<Lambda2, SpectraError> {
    check_size(g)?;
    let u = ip_operator(g)?;
    let shapes: Vec<Partition> = partitions_of(g.n)?.into_iter().skip(1).collect();
    let cache = IrrepCache::new();
    let mats = act_on_shapes(&u, &shapes, &cache)?;
    let table: Vec<PartitionEigenvalue> = shapes
        .into_par_iter()
        .zip(mats.into_par_iter())
        .map(|(partition, m)| {
            let interval = largest_root(&eigen_polynomial(&m), ROOT_BITS);
            PartitionEigenvalue { partition, lambda1: interval.midpoint(), interval }
        })
        .collect();
    let best = table.iter().max_by(|a, b| a.interval.lo.cmp(&b.interval.lo)).expect("at least one non-trivial irrep");
    Ok(Lambda2 { value: best.lambda1, interval: best.interval.clone(), table })
}

/// λ₂ of the random walk, from the exact `n×n` transition matrix.
pub fn lambda2_rw(g: &WeightedHypergraph) -> Result<(f64, RootInterval), SpectraError> {
    check_size(g)?;
    let p = eigen_polynomial(&rw_matrix(g)?);
    let r = kth_largest_root(&p, 2, ROOT_BITS);
    Ok((r.midpoint(), r))
}

/// Left-multiplication matrix of `e` on `ℝ[Sym_n]` in floating point.
pub fn regular_matrix_f64(e: &AlgebraElement) -> DMatrix<f64> {
    let n = e.degree();
    let perms = enumerate_sym(&VertexSet::full(n), n).expect("full set");
    let index: std::collections::HashMap<_, _> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut m = DMatrix::zeros(perms.len(), perms.len());
    for (g, c) in e.terms() {
        let c = c.to_f64().unwrap_or(f64::NAN);
        for (s, sigma) in perms.iter().enumerate() {
            m[(index[&compose_unchecked(g, sigma)], s)] += c;
        }
    }
    m
}

/// λ₂ of the IP from the full `n! × n!` operator (floating point).
pub fn lambda2_ip_oracle(g: &WeightedHypergraph) -> Result<f64, SpectraError> {
    if g.n > MAX_ORACLE_VERTICES {
        return Err(SpectraError::TooLarge(g.n, MAX_ORACLE_VERTICES));
    }
    check_size(g)?;
    let u = ip_operator(g)?;
    let eig = SymmetricEigen::new(regular_matrix_f64(&u));
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values[1])
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub n: usize,
    pub lambda2_rw: f64,
    pub lambda2_ip: f64,
    /// Decimal renderings to 15 places.
    pub lambda2_rw_decimal: String,
    pub lambda2_ip_decimal: String,
    pub gap: f64,
    /// `1 − λ₂`, also the least non-trivial eigenvalue of `W⁻¹ Σ (w_A/|A|) α_A`.
    pub spectral_gap: f64,
    pub table: Vec<PartitionEigenvalue>,
    pub oracle: Option<f64>,
    pub equal: bool,
    /// Every irrep satisfies `λ₁(V_μ) ≤ λ₁(V_{(n−1,1)}) + tolerance`.
    pub standard_dominates: bool,
    pub tolerance: f64,
}

/// Compares λ₂ of RW and IP; the oracle runs when `oracle` is set and `n ≤ 6`.
pub fn check_caputo_with(g: &WeightedHypergraph, tolerance: f64, oracle: bool) -> Result<SpectralReport, SpectraError> {
    let (rw, _) = lambda2_rw(g)?;
    let ip = lambda2_ip(g)?;
    let oracle = if oracle && g.n <= MAX_ORACLE_VERTICES { Some(lambda2_ip_oracle(g)?) } else { None };
    let n = g.n;
    let hook = ip.table.iter().find(|row| row.partition.parts() == [n - 1, 1]).map(|row| row.lambda1);
    let hook = hook.expect("(n-1,1) is non-trivial");
    let gap = (rw - ip.value).abs();
    Ok(SpectralReport {
        n,
        lambda2_rw: rw,
        lambda2_ip: ip.value,
        lambda2_rw_decimal: format!("{rw:.15}"),
        lambda2_ip_decimal: format!("{:.15}", ip.value),
        gap,
        spectral_gap: 1.0 - ip.value,
        standard_dominates: ip.table.iter().all(|row| row.lambda1 <= hook + tolerance),
        table: ip.table,
        oracle,
        equal: gap <= tolerance,
        tolerance,
    })
}

pub fn check_caputo(g: &WeightedHypergraph) -> Result<SpectralReport, SpectraError> {
    check_caputo_with(g, 1e-8, g.n <= 5)
}

/// The largest `B` contained in every positive-weight edge, checked to leave
/// at most two vertices of each edge outside it.
pub fn core_set(g: &WeightedHypergraph) -> Result<VertexSet, SpectraError> {
    let mut core: Option<VertexSet> = None;
    for (e, _) in g.positive_edges() {
        core = Some(match core {
            None => e.clone(),
            Some(c) => c.intersection(e),
        });
    }
    let core = core.unwrap_or_else(VertexSet::empty);
    if let Some((e, _)) = g.positive_edges().find(|(e, _)| e.difference(&core).len() > 2) {
        return Err(SpectraError::Shape(format!("edge {e} has more than two vertices outside {core}")));
    }
    Ok(core)
}

/// Data of one pivot reduction: the core `B`, the pivot weights
/// `c_0 = w_{B∪{p}}`, `c_i = w_{B∪{p,m_i}}` and `C = Σ c_i |A_i|`.
#[derive(Clone, Debug)]
pub struct PivotData {
    pub core: VertexSet,
    pub pivot: usize,
    /// `m_1 < … < m_t`, the vertices outside `B ∪ {p}`.
    pub others: Vec<usize>,
    pub c0: Q,
    pub c: Vec<Q>,
    pub big_c: Q,
}

pub fn pivot_data(g: &WeightedHypergraph, pivot: usize) -> Result<PivotData, SpectraError> {
    let core = core_set(g)?;
    if pivot == 0 || pivot > g.n {
        return Err(SymError::OutOfRange { vertex: pivot, n: g.n }.into());
    }
    if core.contains(pivot) {
        return Err(SpectraError::PivotInCore(pivot, core));
    }
    let others: Vec<usize> = (1..=g.n).filter(|&v| v != pivot && !core.contains(v)).collect();
    let c0 = g.weight(&core.with(pivot));
    let c: Vec<Q> = others.iter().map(|&m| g.weight(&core.with(pivot).with(m))).collect();
    let b = q(core.len() as i64);
    let big_c = c.iter().fold(&c0 * &b, |acc, ci| acc + ci * (&b + Q::one()));
    Ok(PivotData { core, pivot, others, c0, c, big_c })
}

/// Hyper-edges of `G` avoiding the pivot, reweighted by the three-case rule:
/// `B`, `B ∪ {m_i}` and `B ∪ {m_i, m_j}` receive the extra weights
/// `c_0 + (c_0² + Σ_{0≤i<j} c_i c_j)/C`, `c_i + (c_i² + c_0 c_i)/C` and `c_i c_j / C`.
/// The result keeps the vertex labels of `G` (the pivot becomes isolated).
pub fn pivot_reweight(g: &WeightedHypergraph, pivot: usize) -> Result<WeightedHypergraph, SpectraError> {
    let d = pivot_data(g, pivot)?;
    if d.big_c.is_zero() {
        return Err(SpectraError::ZeroPivotWeight);
    }
    let mut w: BTreeMap<VertexSet, Q> =
        g.edges().filter(|(e, _)| !e.contains(pivot)).map(|(e, w)| (e.clone(), w.clone())).collect();
    let mut bump = |set: VertexSet, x: Q| {
        let slot = w.entry(set).or_insert_with(Q::zero);
        *slot += x;
    };
    let all: Vec<&Q> = std::iter::once(&d.c0).chain(d.c.iter()).collect();
    let mut cross = Q::zero();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            cross += all[i] * all[j];
        }
    }
    bump(d.core.clone(), &d.c0 + (&d.c0 * &d.c0 + cross) / &d.big_c);
    for (i, &m) in d.others.iter().enumerate() {
        let ci = &d.c[i];
        bump(d.core.with(m), ci + (ci * ci + &d.c0 * ci) / &d.big_c);
        for (j, &m2) in d.others.iter().enumerate().skip(i + 1) {
            bump(d.core.with(m).with(m2), ci * &d.c[j] / &d.big_c);
        }
    }
    WeightedHypergraph::new(g.n, w.into_iter().filter(|(_, x)| !x.is_zero()))
}

/// The reduced hypergraph `H` on `[n] ∖ {pivot}`, relabelled as `[n−1]`.
pub fn pivot_reduce(g: &WeightedHypergraph, pivot: usize) -> Result<WeightedHypergraph, SpectraError> {
    let h = pivot_reweight(g, pivot)?;
    h.induced(&VertexSet::full(g.n).without(pivot))
}

/// One leaf step: the edge, the vertex of its own that was removed, and the new graph.
#[derive(Clone, Debug)]
pub struct LeafStep {
    pub edge: VertexSet,
    pub vertex: usize,
    pub graph: WeightedHypergraph,
}

/// Replaces the first edge `E` (`|E| ≥ 2`) owning a vertex `v` that lies in no
/// other positive-weight edge by `E ∖ {v}`, with weight scaled by `|E|/(|E|−1)`.
pub fn leaf_reduce(g: &WeightedHypergraph) -> Result<LeafStep, SpectraError> {
    let positive: Vec<(&VertexSet, &Q)> = g.positive_edges().collect();
    for (e, w) in &positive {
        if e.len() < 2 {
            continue;
        }
        let own = e.iter().find(|&v| positive.iter().all(|(f, _)| *f == *e || !f.contains(v)));
        if let Some(v) = own {
            let size = e.len() as i64;
            let scaled = *w * Q::new(size.into(), (size - 1).into());
            let mut edges: BTreeMap<VertexSet, Q> =
                g.edges().filter(|(f, _)| f != e).map(|(f, x)| (f.clone(), x.clone())).collect();
            *edges.entry(e.without(v)).or_insert_with(Q::zero) += scaled;
            let graph = WeightedHypergraph::new(g.n, edges)?;
            return Ok(LeafStep { edge: (*e).clone(), vertex: v, graph });
        }
    }
    Err(SpectraError::NoLeaf)
}

/// Applies [`leaf_reduce`] until no leaf remains.
pub fn leaf_reduce_all(g: &WeightedHypergraph) -> Vec<LeafStep> {
    let mut steps: Vec<LeafStep> = Vec::new();
    let mut cur = g.clone();
    while let Ok(step) = leaf_reduce(&cur) {
        cur = step.graph.clone();
        steps.push(step);
    }
    steps
}

/// Standard-representation check `rw_matrix = standard_rep_matrix(ip_operator)`.
pub fn rw_is_standard_restriction(g: &WeightedHypergraph) -> Result<bool, SpectraError> {
    Ok(rw_matrix(g)? == standard_rep_matrix(&ip_operator(g)?))
}
