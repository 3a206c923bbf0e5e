mod common;

use num_bigint::BigInt;
use symgap::gamma_symbolic::{
    alpha_star_action, build_gamma, charpoly_direct, charpoly_interpolated, d_closed_form, d_trace_polynomial,
    matrix_hash, minimal_certifying_shift, run_symbolic, shift_negate_certificate, small_k_cases,
    specialisation_matches, star_basis, verify_small_k, BivariatePoly, Certificate, GammaError, IntPolynomial, Pattern,
    PolyMatrix, RunOptions,
};
use symgap::group_algebra::{q, Q};
use symgap::inequality_lab::{squid_delta, Shape, SquidInstance};
use symgap::repr_engine::charpoly::bareiss_determinant;
use symgap::repr_engine::standard_rep_matrix;
use symgap::symmetric_core::VertexSet;

fn long_enabled() -> bool {
    std::env::var("SYMGAP_LONG").is_ok_and(|v| !v.is_empty() && v != "0")
}

#[test]
fn basis_sizes_and_census() {
    let triples = star_basis(3, 4).unwrap();
    let pairs = star_basis(2, 3).unwrap();
    assert_eq!(triples.len(), 136);
    assert_eq!(pairs.len(), 21);
    let census = |b: &[symgap::gamma_symbolic::StarTuple], r: usize| {
        (0..=r).map(|s| b.iter().filter(|v| v.stars() == s).count()).collect::<Vec<_>>()
    };
    assert_eq!(census(&triples, 3), vec![60, 60, 15, 1]);
    assert_eq!(census(&pairs, 2), vec![12, 8, 1]);
    assert!(matches!(star_basis(3, 3), Err(GammaError::UnsupportedShape(3, 3))));
}

#[test]
fn a0_is_zero_on_the_basis() {
    for (r, s) in [(2, 3), (3, 4)] {
        let basis = star_basis(r, s).unwrap();
        assert!(alpha_star_action(&[], &basis).unwrap().is_zero());
    }
}

#[test]
fn denominators_are_powers_of_k() {
    for p in [Pattern::Iijl, Pattern::ZeroIjl, Pattern::Ijlm] {
        let m = build_gamma(p).unwrap();
        assert_eq!(m.k_exp(), 2, "{p}");
        assert_eq!(m.scale(), &BigInt::from(1), "{p}");
    }
}

#[test]
fn specialisation_small_patterns() {
    for p in [Pattern::Iijl, Pattern::ZeroIjl] {
        let m = build_gamma(p).unwrap();
        for k in 3..=8 {
            assert!(specialisation_matches(&m, p, k).unwrap(), "{p} at k = {k}");
        }
    }
}

#[test]
fn specialisation_ijlm() {
    let m = build_gamma(Pattern::Ijlm).unwrap();
    assert_eq!(m.order(), 136);
    let ks: Vec<usize> = if long_enabled() { (4..=8).collect() } else { vec![4, 7] };
    for k in ks {
        assert!(specialisation_matches(&m, Pattern::Ijlm, k).unwrap(), "k = {k}");
    }
}

#[test]
fn charpoly_routes_agree_and_match_determinants() {
    for p in [Pattern::Iijl, Pattern::ZeroIjl] {
        let m = build_gamma(p).unwrap();
        let direct = charpoly_direct(&m);
        let interp = charpoly_interpolated(&m, None);
        assert_eq!(direct, interp, "{p}");
        assert_eq!(direct.degree_t(), 21);
        for k in [3i64, 6, 11] {
            let det = bareiss_determinant(&m.eval(k), m.order());
            // p(k, 0) = det(−M) = (−1)^21 det M
            assert_eq!(direct.at(k)[0], -det, "{p} at k = {k}");
        }
    }
}

#[test]
fn toy_polymatrix_charpolys() {
    let zero = PolyMatrix::zeros(3, 0);
    let p = charpoly_direct(&zero);
    assert_eq!(p.degree_t(), 3);
    assert!(p.coeffs()[..3].iter().all(|c| c.coeffs().is_empty()));
    let k = IntPolynomial::k();
    let mut d = PolyMatrix::zeros(2, 0);
    d.set(0, 0, k.clone());
    d.set(1, 1, IntPolynomial::linear(1));
    let want = BivariatePoly::new(vec![
        &k * &IntPolynomial::linear(1),
        IntPolynomial::from_i64(&[-1, -2]),
        IntPolynomial::constant(1),
    ]);
    assert_eq!(charpoly_direct(&d), want);
    assert_eq!(charpoly_interpolated(&d, None), want);
}

#[test]
fn certificate_examples() {
    let c = |v: &[i64]| IntPolynomial::from_i64(v);
    let spectrum_0_2 = BivariatePoly::new(vec![c(&[]), c(&[-2]), c(&[1])]);
    assert!(shift_negate_certificate(&spectrum_0_2, 0).is_certified());
    let spectrum_pm1 = BivariatePoly::new(vec![c(&[-1]), c(&[]), c(&[1])]);
    match shift_negate_certificate(&spectrum_pm1, 0) {
        Certificate::Failed { t_degree, value, .. } => {
            assert_eq!(t_degree, 0);
            assert_eq!(value, BigInt::from(-1));
        }
        other => panic!("{other:?}"),
    }
    // eigenvalue 4 − k: negative from k = 5 on, never certified
    let drifting = BivariatePoly::new(vec![c(&[-4, 1]), c(&[1])]);
    assert_eq!(minimal_certifying_shift(&drifting, 6), None);
}

#[test]
fn small_certificates() {
    let dir = tempfile::tempdir().unwrap();
    for p in [Pattern::Iijl, Pattern::ZeroIjl] {
        let opts = RunOptions { cache_dir: Some(dir.path().to_path_buf()), cross_check_direct: true, progress: None };
        let run = run_symbolic(p, &opts).unwrap();
        assert!(run.passes(), "{}", run.certificate_text());
        assert!(run.minimal_shift.unwrap() <= 2);
        assert!(run.sturm_at_5);
        assert!(!run.from_cache);
        let again = run_symbolic(p, &RunOptions { cross_check_direct: false, ..opts }).unwrap();
        assert!(again.from_cache);
        assert_eq!(again.charpoly, run.charpoly);
        assert_eq!(again.certificate_text(), run.certificate_text());
        let text = run.certificate_text();
        assert!(text.contains(&format!("pattern {p}")) && text.contains(&run.matrix_hash));
        assert!(text.contains("status CERTIFIED"));
        assert_eq!(run.matrix_hash, matrix_hash(p, &build_gamma(p).unwrap()));
    }
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 2);
}

#[test]
fn large_certificate() {
    if !long_enabled() {
        eprintln!("skipping the 136x136 certificate (set SYMGAP_LONG=1)");
        return;
    }
    let cache = std::env::var_os("SYMGAP_CACHE_DIR").map(Into::into);
    let run = run_symbolic(Pattern::Ijlm, &RunOptions { cache_dir: cache, ..Default::default() }).unwrap();
    assert_eq!(run.certificate.shift(), 3);
    assert!(run.passes(), "{}", run.certificate_text());
}

#[test]
fn small_k_sweep() {
    let cases = small_k_cases();
    assert_eq!(cases.len(), 4 + 1 + 1 + 1 + 2);
    for (p, k) in cases {
        let r = verify_small_k(p, k).unwrap();
        assert!(r.passes, "{p} at k = {k}: {:?}", r.per_partition);
        assert!(!r.per_partition.is_empty());
    }
    assert!(matches!(verify_small_k(Pattern::ZeroIij, 3), Err(GammaError::OutOfRange(..))));
    assert!(matches!(verify_small_k(Pattern::Ijlm, 4), Err(GammaError::OutOfRange(..))));
}

#[test]
fn ijlm_small_k_uses_the_five_listed_irreps() {
    let r = verify_small_k(Pattern::Ijlm, 2).unwrap();
    let mut shapes: Vec<Vec<usize>> = r.per_partition.iter().map(|(mu, _)| mu.parts().to_vec()).collect();
    shapes.sort();
    let mut want = vec![vec![3, 3], vec![3, 2, 1], vec![3, 1, 1, 1], vec![4, 2], vec![4, 1, 1]];
    want.sort();
    assert_eq!(shapes, want);
}

#[test]
fn d_identity_random_weights() {
    let mut rng = common::rng(31);
    for t in [2, 3, 4] {
        let c: Vec<Q> = (0..t).map(|_| common::weight(&mut rng)).collect();
        assert_eq!(d_trace_polynomial(&c), d_closed_form(&c), "{c:?}");
    }
}

/// The squid difference for `A₀ = {2..k}`, `A_i = A₀ ∪ {k+i}` has trace `d(k)`
/// on the standard representation.
#[test]
fn d_identity_concrete_traces() {
    let mut rng = common::rng(8);
    for k in 3..=4 {
        for t in 1..=2 {
            let n = k + t;
            let a0 = VertexSet::range(2, k);
            let mut sets = vec![a0.clone()];
            sets.extend((1..=t).map(|i| a0.with(k + i)));
            let w: Vec<Q> = (0..=t).map(|_| common::positive_weight(&mut rng)).collect();
            let inst = SquidInstance::new(n, sets, w.clone(), Shape::LargeIntersection).unwrap();
            let tr = standard_rep_matrix(&squid_delta(&inst).unwrap()).trace();
            let d = d_closed_form(&w);
            let at_k = d.iter().rev().fold(q(0), |acc, c| acc * q(k as i64) + c);
            assert_eq!(tr, at_k, "k = {k}, t = {t}");
        }
    }
}

#[test]
fn pattern_errors() {
    assert!(matches!(build_gamma(Pattern::ZeroZeroIj), Err(GammaError::NoSymbolicForm(_))));
    assert!("ijkl".parse::<Pattern>().is_err());
    assert_eq!("0ijl".parse::<Pattern>().unwrap(), Pattern::ZeroIjl);
}
