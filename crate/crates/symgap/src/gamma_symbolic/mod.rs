//! Symbolic certificates in the parameter `k` for the squared inequality used
//! with sets `A_i = A₀ ∪ {k+i}`, `A₀ = {2,…,k}`.
//!
//! The quartic coefficient `Γ` of a pattern is assembled on the star basis of
//! `W ∩ ker α_{A₀}` as a matrix over `ℤ[k]`; its characteristic polynomial is
//! shifted and reflected, and non-negative coefficients certify that no
//! eigenvalue is negative for every large enough `k`.

mod basis;
mod poly;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use basis::{alpha_star_action, star_basis, support_size, ConcreteModule, StarTuple, STAR};
pub use poly::{charpoly_direct, charpoly_interpolated, BivariatePoly, IntPolynomial, PolyMatrix};

use crate::group_algebra::{alpha, fmt_q, q, qf, Q};
use crate::repr_engine::charpoly::bareiss_determinant;
use crate::repr_engine::roots::sturm_count_negative;
use crate::repr_engine::{
    act_on_shapes, certify_matrix_psd, partitions_of, IrrepCache, Partition, PsdVerdict, RationalMatrix, ReprError,
};
use crate::symmetric_core::{SymError, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("unsupported star basis: arity {0} with {1} extra points")]
    UnsupportedShape(usize, usize),
    #[error("set {0:?} is not of the form A0 ∪ S")]
    BadSet(Vec<u8>),
    #[error("pattern {0} has no symbolic star-basis form")]
    NoSymbolicForm(Pattern),
    #[error("pattern {0} is not checked at k = {1}")]
    OutOfRange(Pattern, usize),
    #[error("concrete image left the span of the star basis")]
    NotInSpan,
    #[error("unknown pattern `{0}`")]
    UnknownPattern(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Repr(#[from] ReprError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Index multisets of the quartic coefficients; `0` refers to `A₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Pattern {
    #[serde(rename = "ijlm")]
    Ijlm,
    #[serde(rename = "iijl")]
    Iijl,
    #[serde(rename = "0ijl")]
    ZeroIjl,
    #[serde(rename = "00ij")]
    ZeroZeroIj,
    #[serde(rename = "0iij")]
    ZeroIij,
}

impl Pattern {
    pub const ALL: [Pattern; 5] =
        [Pattern::Ijlm, Pattern::Iijl, Pattern::ZeroIjl, Pattern::ZeroZeroIj, Pattern::ZeroIij];

    pub fn indices(self) -> [u8; 4] {
        match self {
            Pattern::Ijlm => [1, 2, 3, 4],
            Pattern::Iijl => [1, 1, 2, 3],
            Pattern::ZeroIjl => [0, 1, 2, 3],
            Pattern::ZeroZeroIj => [0, 0, 1, 2],
            Pattern::ZeroIij => [0, 1, 1, 2],
        }
    }

    /// `(arity, extra points)` of the star basis carrying the symbolic matrix.
    pub fn symbolic_shape(self) -> Option<(usize, usize)> {
        match self {
            Pattern::Ijlm => Some((3, 4)),
            Pattern::Iijl | Pattern::ZeroIjl => Some((2, 3)),
            _ => None,
        }
    }

    fn positives(self) -> usize {
        self.indices().iter().filter(|&&i| i > 0).collect::<BTreeSet<_>>().len()
    }

    /// `k` values and first-row lengths (relative to `k`) of the direct small-`k` checks.
    fn small_k_plan(self) -> (std::ops::RangeInclusive<usize>, &'static [usize]) {
        match self {
            Pattern::ZeroZeroIj => (2..=5, &[0]),
            Pattern::ZeroIij => (2..=2, &[0]),
            Pattern::ZeroIjl => (2..=2, &[0, 1]),
            Pattern::Iijl => (2..=2, &[1]),
            Pattern::Ijlm => (2..=3, &[1, 2]),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::Ijlm => "ijlm",
            Pattern::Iijl => "iijl",
            Pattern::ZeroIjl => "0ijl",
            Pattern::ZeroZeroIj => "00ij",
            Pattern::ZeroIij => "0iij",
        })
    }
}

impl FromStr for Pattern {
    type Err = GammaError;
    fn from_str(s: &str) -> Result<Self, GammaError> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.to_string() == s.trim())
            .ok_or_else(|| GammaError::UnknownPattern(s.to_string()))
    }
}

/// Ordered pairs `(p, p')` of two-element sub-multisets with `p ∪ p' = M`.
pub fn ordered_splittings(m: [u8; 4]) -> Vec<([u8; 2], [u8; 2])> {
    let mut seen = BTreeSet::new();
    for a in 0..4 {
        for b in a + 1..4 {
            let mut p = [m[a], m[b]];
            p.sort_unstable();
            let rest: Vec<u8> = (0..4).filter(|&i| i != a && i != b).map(|i| m[i]).collect();
            let mut r = [rest[0], rest[1]];
            r.sort_unstable();
            seen.insert((p, r));
        }
    }
    seen.into_iter().collect()
}

/// Star-basis symbol of a positive index.
fn symbol(i: u8) -> u8 {
    i + 1
}

/// `U_ef` as `Σ coefficient · α_{A₀ ∪ S}`, with `S` given by symbols.
fn u_terms(e: u8, f: u8) -> Vec<(IntPolynomial, Vec<u8>)> {
    let (e, f) = if e <= f { (e, f) } else { (f, e) };
    let lin = IntPolynomial::linear;
    let k = IntPolynomial::k;
    let c = |x: i64| IntPolynomial::constant(x);
    match (e, f) {
        (0, 0) => vec![(lin(-1), vec![1]), (-&k(), vec![])],
        (i, j) if i == j => vec![(k(), vec![1, symbol(i)]), (-&lin(1), vec![symbol(i)])],
        (0, j) => vec![(k(), vec![1]), (lin(-1), vec![1, symbol(j)]), (-&lin(1), vec![]), (-&k(), vec![symbol(j)])],
        (i, j) => vec![
            (k(), vec![1, symbol(i)]),
            (k(), vec![1, symbol(j)]),
            (-&k(), vec![symbol(i)]),
            (-&k(), vec![symbol(j)]),
            (c(-1), vec![symbol(i), symbol(j)]),
            (c(-1), vec![]),
        ],
    }
}

/// `2 w_ef`.
fn two_w(e: u8, f: u8) -> IntPolynomial {
    match (e.min(f), e.max(f)) {
        (0, 0) => IntPolynomial::from_i64(&[0, -1, 1]),
        (i, j) if i == j => IntPolynomial::from_i64(&[0, 1, 1]),
        (0, _) => IntPolynomial::from_i64(&[-2, 0, 2]),
        _ => IntPolynomial::from_i64(&[-2, 2, 2]),
    }
}

/// `k²M(Γ)` on the star basis (stored with its constant scale), assembled as
/// `4k²Γ = Σ_{(p,p')} (k²(2w_p)(2w_{p'}) − Y_p Y_{p'})` with `Y = 2k(U − w)`.
pub fn build_gamma(pattern: Pattern) -> Result<PolyMatrix, GammaError> {
    let (arity, s) = pattern.symbolic_shape().ok_or(GammaError::NoSymbolicForm(pattern))?;
    let basis = star_basis(arity, s)?;
    let n = basis.len();
    let mut alphas: HashMap<Vec<u8>, PolyMatrix> = HashMap::new();
    let mut ys: HashMap<[u8; 2], PolyMatrix> = HashMap::new();
    let splits = ordered_splittings(pattern.indices());
    let k = IntPolynomial::k();
    let k2 = &k * &k;
    let two = IntPolynomial::constant(2);
    for (p, _) in &splits {
        if ys.contains_key(p) {
            continue;
        }
        let mut y = PolyMatrix::scalar(n, &-&(&k * &two_w(p[0], p[1])), 1);
        for (coef, set) in u_terms(p[0], p[1]) {
            if !alphas.contains_key(&set) {
                alphas.insert(set.clone(), alpha_star_action(&set, &basis)?);
            }
            y = y.combine(&IntPolynomial::one(), &alphas[&set], &(&two * &coef));
        }
        ys.insert(*p, y);
    }
    let mut acc = PolyMatrix::zeros(n, 2);
    for (p, r) in &splits {
        let ww = &k2 * &(&two_w(p[0], p[1]) * &two_w(r[0], r[1]));
        let prod = ys[p].matmul(&ys[r]);
        acc = acc.combine(&IntPolynomial::one(), &PolyMatrix::scalar(n, &ww, 2), &IntPolynomial::one());
        acc = acc.combine(&IntPolynomial::one(), &prod, &-&IntPolynomial::one());
    }
    let mut out = PolyMatrix::from_entries(n, acc.entries().to_vec(), 2, BigInt::from(4));
    out.reduce_scale();
    Ok(out)
}

fn a_set(i: u8, k: usize) -> VertexSet {
    let a0 = VertexSet::range(2, k);
    if i == 0 {
        a0
    } else {
        a0.with(k + i as usize)
    }
}

/// `Γ` for a concrete `k` from the defining expansion
/// `Σ_{e≤f, e'≤f'} w_ef w_e'f' − (U_ef − w_ef)⋆(U_e'f' − w_e'f')`, with
/// `U_ef` written through the set sizes and `α_B` supplied by `alpha_of`.
pub fn gamma_from_alphas(
    pattern: Pattern,
    k: usize,
    dim: usize,
    alpha_of: &mut dyn FnMut(&VertexSet) -> Result<RationalMatrix, GammaError>,
) -> Result<RationalMatrix, GammaError> {
    let mut memo: HashMap<VertexSet, RationalMatrix> = HashMap::new();
    let mut get =
        |set: VertexSet, memo: &mut HashMap<VertexSet, RationalMatrix>| -> Result<RationalMatrix, GammaError> {
            if let Some(m) = memo.get(&set) {
                return Ok(m.clone());
            }
            let m = alpha_of(&set)?;
            memo.insert(set, m.clone());
            Ok(m)
        };
    let kq = q(k as i64);
    let w = |e: u8, f: u8| -> Q {
        match (e.min(f), e.max(f)) {
            (0, 0) => &kq * (&kq - q(1)) / q(2),
            (i, j) if i == j => &kq * (&kq + q(1)) / q(2),
            (0, _) => &kq * &kq - q(1),
            _ => &kq * &kq + &kq - q(1),
        }
    };
    let mut x_of =
        |e: u8, f: u8, memo: &mut HashMap<VertexSet, RationalMatrix>| -> Result<RationalMatrix, GammaError> {
            let (ae, af) = (a_set(e, k), a_set(f, k));
            let (se, sf) = (q(ae.len() as i64), q(af.len() as i64));
            let u = if e == f {
                &get(ae.with(1), memo)?.scale(&se) - &get(ae.clone(), memo)?.scale(&(&se + q(1)))
            } else {
                let mut u = &get(af.with(1), memo)?.scale(&se) - &get(af.clone(), memo)?.scale(&se);
                u = &u + &(&get(ae.with(1), memo)?.scale(&sf) - &get(ae.clone(), memo)?.scale(&sf));
                u = &u - &get(ae.union(&af), memo)?;
                &u - &get(a_set(0, k), memo)?
            };
            Ok(&u - &RationalMatrix::scalar(dim, &w(e, f)))
        };
    // every ordering of the index tuple, read as ((e,f),(e',f'))
    let idx = pattern.indices();
    let mut terms = BTreeSet::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if a == b || a == c || b == c {
                    continue;
                }
                let d = 6 - a - b - c;
                let p = (idx[a].min(idx[b]), idx[a].max(idx[b]));
                let r = (idx[c].min(idx[d]), idx[c].max(idx[d]));
                terms.insert((p, r));
            }
        }
    }
    let mut gamma = RationalMatrix::zeros(dim);
    let half = qf(1, 2);
    for ((e, f), (e2, f2)) in terms {
        let x1 = x_of(e, f, &mut memo)?;
        let x2 = x_of(e2, f2, &mut memo)?;
        let jordan = (&(&x1 * &x2) + &(&x2 * &x1)).scale(&half);
        gamma = &gamma + &(&RationalMatrix::scalar(dim, &(w(e, f) * w(e2, f2))) - &jordan);
    }
    Ok(gamma)
}

/// `Γ` on the concrete star-basis module at `k`, with `α_B` from explicit
/// `Sym(B)`-orbits.
pub fn concrete_gamma(pattern: Pattern, k: usize) -> Result<RationalMatrix, GammaError> {
    let (arity, s) = pattern.symbolic_shape().ok_or(GammaError::NoSymbolicForm(pattern))?;
    let module = ConcreteModule::new(k, star_basis(arity, s)?);
    let dim = module.basis.len();
    gamma_from_alphas(pattern, k, dim, &mut |set| module.alpha(set.members()))
}

/// Whether the symbolic matrix evaluated at `k` equals `scale·k^e` times the
/// concrete `Γ`, entrywise.
pub fn specialisation_matches(symbolic: &PolyMatrix, pattern: Pattern, k: usize) -> Result<bool, GammaError> {
    let concrete = concrete_gamma(pattern, k)?;
    let factor = Q::from_integer(symbolic.scale() * BigInt::from(k).pow(symbolic.k_exp()));
    let values = symbolic.eval(k as i64);
    let n = symbolic.order();
    Ok((0..n * n).all(|i| Q::from_integer(values[i].clone()) == &concrete[(i / n, i % n)] * &factor))
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallKReport {
    pub pattern: Pattern,
    pub k: usize,
    pub degree: usize,
    pub per_partition: Vec<(Partition, PsdVerdict)>,
    pub passes: bool,
}

/// Direct check of `Γ ≥ 0` on the irreducibles of `Sym_{|E|}` singled out for
/// small `k`, each `α_B` realised through its seminormal action.
pub fn verify_small_k(pattern: Pattern, k: usize) -> Result<SmallKReport, GammaError> {
    let (range, rows) = pattern.small_k_plan();
    if !range.contains(&k) {
        return Err(GammaError::OutOfRange(pattern, k));
    }
    let degree = k + pattern.positives();
    let shapes: Vec<Partition> =
        partitions_of(degree)?.into_iter().filter(|mu| rows.iter().any(|&r| mu.first_row() == k + r)).collect();
    let cache = IrrepCache::new();
    let mut per_partition = Vec::new();
    for mu in shapes {
        let dim = mu.dimension() as usize;
        let gamma = gamma_from_alphas(pattern, k, dim, &mut |set| {
            let el = alpha(set, degree)?;
            Ok(act_on_shapes(&el, std::slice::from_ref(&mu), &cache)?.pop().expect("one shape"))
        })?;
        per_partition.push((mu, certify_matrix_psd(&gamma)));
    }
    let passes = per_partition.iter().all(|(_, v)| v.is_psd());
    Ok(SmallKReport { pattern, k, degree, per_partition, passes })
}

/// All `(pattern, k)` pairs of the direct small-`k` checks.
pub fn small_k_cases() -> Vec<(Pattern, usize)> {
    Pattern::ALL.into_iter().flat_map(|p| p.small_k_plan().0.map(move |k| (p, k))).collect()
}

fn padd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn pmul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// `tr(U|_D)` as a polynomial in `k` for weights `c_0, …, c_t`, from the
/// definition of `U` and `tr(α_A|_D) = |A|(|A| − 1)`.
pub fn d_trace_polynomial(c: &[Q]) -> Vec<Q> {
    // set sizes as linear polynomials [constant, slope]
    let size = |i: usize| if i == 0 { vec![q(-1), q(1)] } else { vec![q(0), q(1)] };
    let tr = |s: &[Q]| pmul(s, &padd(s, &[q(-1)]));
    let plus = |s: &[Q], x: i64| padd(s, &[q(x)]);
    let mut d = Vec::new();
    for i in 0..c.len() {
        for j in i..c.len() {
            let cc = [&c[i] * &c[j]];
            let (si, sj) = (size(i), size(j));
            let term = if i == j {
                padd(&pmul(&si, &tr(&plus(&si, 1))), &pmul(&[q(-1)], &pmul(&plus(&si, 1), &tr(&si))))
            } else {
                let union = if i == 0 { sj.clone() } else { plus(&si, 1) };
                let mut t = pmul(&si, &padd(&tr(&plus(&sj, 1)), &pmul(&[q(-1)], &tr(&sj))));
                t = padd(&t, &pmul(&sj, &padd(&tr(&plus(&si, 1)), &pmul(&[q(-1)], &tr(&si)))));
                t = padd(&t, &pmul(&[q(-1)], &tr(&union)));
                padd(&t, &pmul(&[q(-1)], &tr(&size(0))))
            };
            d = padd(&d, &pmul(&cc, &term));
        }
    }
    d
}

/// `c₀²k(k−1) + Σc_i²k(k+1) + Σc₀c_j(2k²−2) + Σ_{i<j}c_ic_j(2k²+2k−2)`.
pub fn d_closed_form(c: &[Q]) -> Vec<Q> {
    let mut d = Vec::new();
    for i in 0..c.len() {
        for j in i..c.len() {
            let poly = match (i, j) {
                (0, 0) => vec![q(0), q(-1), q(1)],
                (a, b) if a == b => vec![q(0), q(1), q(1)],
                (0, _) => vec![q(-2), q(0), q(2)],
                _ => vec![q(-2), q(2), q(2)],
            };
            d = padd(&d, &pmul(&[&c[i] * &c[j]], &poly));
        }
    }
    d
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every coefficient of `q(k,t) = ±p(k+s, −t)` is non-negative.
    Certified { shift: i64, q: BivariatePoly },
    /// Coefficient of `k^k_degree t^t_degree` in `q` is the negative `value`.
    Failed { shift: i64, t_degree: usize, k_degree: usize, value: BigInt },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified { .. })
    }

    pub fn shift(&self) -> i64 {
        match self {
            Certificate::Certified { shift, .. } | Certificate::Failed { shift, .. } => *shift,
        }
    }
}

/// Computes `q(k,t) = ±p(k+s, −t)`, signed so the leading `t`-coefficient is
/// positive. Certified iff all integer coefficients of `q` are non-negative,
/// which rules out negative roots of `p(k,·)` for every integer `k ≥ s+1`.
pub fn shift_negate_certificate(p: &BivariatePoly, shift: i64) -> Certificate {
    let mut qp = p.shift_k(shift).negate_t();
    if qp.leading().is_some_and(|l| l.coeffs().last().is_some_and(Signed::is_negative)) {
        qp = BivariatePoly::new(qp.coeffs().iter().map(|c| -c).collect());
    }
    for (t_degree, c) in qp.coeffs().iter().enumerate() {
        if let Some((k_degree, value)) = c.coeffs().iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Certificate::Failed { shift, t_degree, k_degree, value: value.clone() };
        }
    }
    Certificate::Certified { shift, q: qp }
}

/// Least `s ∈ 0..=max_shift` whose shift-negate certificate succeeds.
pub fn minimal_certifying_shift(p: &BivariatePoly, max_shift: i64) -> Option<i64> {
    (0..=max_shift).find(|&s| shift_negate_certificate(p, s).is_certified())
}

#[derive(Clone, Debug)]
pub struct GammaRun {
    pub pattern: Pattern,
    pub order: usize,
    pub k_exp: u32,
    pub scale: BigInt,
    pub matrix_hash: String,
    pub charpoly: BivariatePoly,
    pub certificate: Certificate,
    /// Least certifying shift found by the search, when one was run.
    pub minimal_shift: Option<i64>,
    /// `p(5, t)` has no negative roots, by Sturm sequences.
    pub sturm_at_5: bool,
    pub from_cache: bool,
}

impl GammaRun {
    /// Certificate valid for every `k ≥ k_min`.
    pub fn k_min(&self) -> i64 {
        self.certificate.shift() + 1
    }

    pub fn passes(&self) -> bool {
        let shift_ok = match self.pattern {
            Pattern::Ijlm => self.certificate.shift() == 3,
            _ => self.certificate.shift() <= 2,
        };
        self.certificate.is_certified() && shift_ok && self.sturm_at_5
    }

    /// Plain-text certificate: pattern, shift, the coefficient table of `q`
    /// and the content hash of the generating matrix.
    pub fn certificate_text(&self) -> String {
        let mut s = format!(
            "pattern {}\nmatrix-sha256 {}\norder {}\nmatrix-denominator {}*k^{}\nshift {}\n",
            self.pattern,
            self.matrix_hash,
            self.order,
            self.scale,
            self.k_exp,
            self.certificate.shift()
        );
        match &self.certificate {
            Certificate::Certified { q, .. } => {
                s.push_str(&format!("status CERTIFIED for k >= {}\n", self.k_min()));
                for (j, c) in q.coeffs().iter().enumerate() {
                    for (a, v) in c.coeffs().iter().enumerate() {
                        if !v.is_zero() {
                            s.push_str(&format!("q t^{j} k^{a} {v}\n"));
                        }
                    }
                }
            }
            Certificate::Failed { t_degree, k_degree, value, .. } => {
                s.push_str(&format!("status FAILED coefficient t^{t_degree} k^{k_degree} = {value}\n"));
            }
        }
        s
    }
}

pub fn matrix_hash(pattern: Pattern, m: &PolyMatrix) -> String {
    let mut h = Sha256::new();
    h.update(pattern.to_string().as_bytes());
    h.update(b"\n");
    h.update(m.canonical_text().as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Default)]
pub struct RunOptions<'a> {
    /// Directory for cached characteristic polynomials, keyed by matrix hash.
    pub cache_dir: Option<PathBuf>,
    /// Also compute Berkowitz directly over `ℤ[k]` and require agreement.
    pub cross_check_direct: bool,
    pub progress: Option<&'a (dyn Fn(usize, usize) + Sync)>,
}

fn cache_path(dir: &Path, pattern: Pattern, hash: &str) -> PathBuf {
    dir.join(format!("gamma-{pattern}-{hash}.charpoly"))
}

fn write_cache(path: &Path, p: &BivariatePoly) -> Result<(), GammaError> {
    let err = |e: std::io::Error| GammaError::Cache(e.to_string());
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(err)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(err)?;
    for (j, c) in p.coeffs().iter().enumerate() {
        for (a, v) in c.coeffs().iter().enumerate() {
            if !v.is_zero() {
                writeln!(f, "{j} {a} {v}").map_err(err)?;
            }
        }
    }
    f.sync_all().map_err(err)?;
    fs::rename(&tmp, path).map_err(err)
}

fn read_cache(path: &Path) -> Option<BivariatePoly> {
    let text = fs::read_to_string(path).ok()?;
    let mut table: Vec<Vec<BigInt>> = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let mut it = line.split_whitespace();
        let j: usize = it.next()?.parse().ok()?;
        let a: usize = it.next()?.parse().ok()?;
        let v: BigInt = it.next()?.parse().ok()?;
        if table.len() <= j {
            table.resize(j + 1, Vec::new());
        }
        if table[j].len() <= a {
            table[j].resize(a + 1, BigInt::zero());
        }
        table[j][a] = v;
    }
    Some(BivariatePoly::new(table.into_iter().map(IntPolynomial::new).collect()))
}

/// Cheap checks on a loaded polynomial: degree, the `t^{n−1}` coefficient
/// against `−tr M`, and the constant term against `det(−M)` at `k = 3`.
fn cache_consistent(m: &PolyMatrix, p: &BivariatePoly) -> bool {
    let n = m.order();
    if p.degree_t() != n || p.coeffs()[n] != IntPolynomial::constant(1) {
        return false;
    }
    let mut trace = IntPolynomial::constant(0);
    for i in 0..n {
        trace = &trace + m.get(i, i);
    }
    if &p.coeffs()[n - 1] + &trace != IntPolynomial::constant(0) {
        return false;
    }
    let det = bareiss_determinant(&m.eval(3), n);
    let signed = if n.is_multiple_of(2) { det } else { -det };
    p.at(3)[0] == signed
}

/// Builds `k²M(Γ)` for a symbolic pattern, computes its characteristic
/// polynomial (or loads it from the cache) and certifies it.
pub fn run_symbolic(pattern: Pattern, opts: &RunOptions<'_>) -> Result<GammaRun, GammaError> {
    let m = build_gamma(pattern)?;
    let hash = matrix_hash(pattern, &m);
    let cached = opts.cache_dir.as_ref().and_then(|d| read_cache(&cache_path(d, pattern, &hash)));
    let from_cache = cached.as_ref().is_some_and(|p| cache_consistent(&m, p));
    let charpoly = match cached {
        Some(p) if from_cache => p,
        _ => {
            let p = charpoly_interpolated(&m, opts.progress);
            if opts.cross_check_direct && charpoly_direct(&m) != p {
                return Err(GammaError::Cache("direct and interpolated characteristic polynomials differ".into()));
            }
            if let Some(dir) = &opts.cache_dir {
                write_cache(&cache_path(dir, pattern, &hash), &p)?;
            }
            p
        }
    };
    let (certificate, minimal_shift) = match pattern {
        Pattern::Ijlm => (shift_negate_certificate(&charpoly, 3), None),
        _ => {
            let s = minimal_certifying_shift(&charpoly, 8);
            (shift_negate_certificate(&charpoly, s.unwrap_or(8)), s)
        }
    };
    let sturm_at_5 = sturm_count_negative(&charpoly.at(5)) == 0;
    Ok(GammaRun {
        pattern,
        order: m.order(),
        k_exp: m.k_exp(),
        scale: m.scale().clone(),
        matrix_hash: hash,
        charpoly,
        certificate,
        minimal_shift,
        sturm_at_5,
        from_cache,
    })
}

/// Rational coefficients rendered for reports.
pub fn format_rational_poly(p: &[Q]) -> String {
    let parts: Vec<String> =
        p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| format!("{}*k^{i}", fmt_q(c))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_census() {
        assert_eq!(ordered_splittings(Pattern::Ijlm.indices()).len(), 6);
        assert_eq!(ordered_splittings(Pattern::Iijl.indices()).len(), 4);
        assert_eq!(ordered_splittings(Pattern::ZeroIjl.indices()).len(), 6);
        assert_eq!(ordered_splittings(Pattern::ZeroZeroIj.indices()).len(), 4);
        assert_eq!(ordered_splittings([1, 1, 2, 2]).len(), 3);
    }

    #[test]
    fn pattern_names_round_trip() {
        for p in Pattern::ALL {
            assert_eq!(p.to_string().parse::<Pattern>().unwrap(), p);
        }
        assert!("xyz".parse::<Pattern>().is_err());
    }

    #[test]
    fn toy_certificates() {
        let t = |c: &[i64]| IntPolynomial::from_i64(c);
        // t(t − 2)
        let p = BivariatePoly::new(vec![t(&[]), t(&[-2]), t(&[1])]);
        match shift_negate_certificate(&p, 0) {
            Certificate::Certified { q, .. } => assert_eq!(q, BivariatePoly::new(vec![t(&[]), t(&[2]), t(&[1])])),
            other => panic!("{other:?}"),
        }
        // (t + 1)(t − 1)
        let p = BivariatePoly::new(vec![t(&[-1]), t(&[]), t(&[1])]);
        assert!(matches!(shift_negate_certificate(&p, 0), Certificate::Failed { t_degree: 0, .. }));
        // t − (k − 3): certified only after shifting by 3
        let p = BivariatePoly::new(vec![t(&[3, -1]), t(&[1])]);
        assert_eq!(minimal_certifying_shift(&p, 5), Some(3));
    }

    #[test]
    fn d_identity() {
        for c in [vec![q(1), q(2), q(3)], vec![qf(1, 2), q(0), qf(7, 3), q(5)], vec![q(0), q(1)]] {
            assert_eq!(d_trace_polynomial(&c), d_closed_form(&c));
        }
    }

    #[test]
    fn small_gamma_specialises() {
        let m = build_gamma(Pattern::Iijl).unwrap();
        assert_eq!(m.order(), 21);
        for k in [3, 5] {
            assert!(specialisation_matches(&m, Pattern::Iijl, k).unwrap(), "k = {k}");
        }
    }
}
