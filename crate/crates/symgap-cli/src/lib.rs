//! Report plumbing and command runners behind the `symgap` binary.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use symgap::gamma_symbolic::{self, Certificate, GammaError, Pattern, RunOptions};
use symgap::group_algebra::parse_q;
use symgap::inequality_lab::{self, LabError, Shape, SquidInstance, Verdict};
use symgap::process_spectra::{self, SpectraError, WeightedHypergraph, MAX_VERTICES};
use symgap::repr_engine::psd::MAX_SUPPORT;
use symgap::symmetric_core::VertexSet;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckVerdict {
    Pass,
    Fail,
    Undecided,
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckVerdict::Pass => "PASS",
            CheckVerdict::Fail => "FAIL",
            CheckVerdict::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: CheckVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: &str, note: impl Into<Option<String>>) -> Self {
        Check { name: name.into(), verdict: CheckVerdict::Pass, witness: None, note: note.into() }
    }

    /// A failure always names what failed.
    pub fn fail(name: &str, witness: String) -> Self {
        Check { name: name.into(), verdict: CheckVerdict::Fail, witness: Some(witness), note: None }
    }

    pub fn undecided(name: &str, note: String) -> Self {
        Check { name: name.into(), verdict: CheckVerdict::Undecided, witness: None, note: Some(note) }
    }

    fn from_bool(name: &str, ok: bool, note: String, witness: impl FnOnce() -> String) -> Self {
        let note = Some(note).filter(|n| !n.is_empty());
        if ok {
            Check::pass(name, note)
        } else {
            Check { note, ..Check::fail(name, witness()) }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
    #[serde(default)]
    pub details: Value,
}

impl VerificationReport {
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().all(|c| c.verdict == CheckVerdict::Pass) {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn verdicts(&self) -> Vec<(String, CheckVerdict)> {
        self.checks.iter().map(|c| (c.name.clone(), c.verdict)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("$ {}\n", self.command);
        for c in &self.checks {
            s.push_str(&format!("{:<9} {}", c.verdict.to_string(), c.name));
            if let Some(note) = &c.note {
                s.push_str(&format!("  [{note}]"));
            }
            if let Some(w) = &c.witness {
                s.push_str(&format!("\n          witness: {w}"));
            }
            s.push('\n');
        }
        s.push_str(&format!("elapsed {} ms\n", self.elapsed_ms));
        s
    }
}

/// An error that ends a command before any verdict, with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl fmt::Display) -> Self {
        CliError { code: EXIT_INPUT, message: message.to_string() }
    }

    pub fn resource(message: impl fmt::Display) -> Self {
        CliError { code: EXIT_RESOURCE, message: message.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::TooLarge(..) => CliError::resource(e),
            SpectraError::Parse { .. }
            | SpectraError::NegativeWeight(..)
            | SpectraError::DuplicateEdge(_)
            | SpectraError::ZeroWeight
            | SpectraError::TooSmall
            | SpectraError::Sym(_) => CliError::input(e),
            other => CliError { code: EXIT_FAIL, message: other.to_string() },
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::Spectra(s) => s.into(),
            LabError::Shape(_) | LabError::NegativeWeight(_) | LabError::LengthMismatch(..) | LabError::Sym(_) => {
                CliError::input(e)
            }
            other => CliError { code: EXIT_FAIL, message: other.to_string() },
        }
    }
}

impl From<GammaError> for CliError {
    fn from(e: GammaError) -> Self {
        match e {
            GammaError::UnknownPattern(_) | GammaError::NoSymbolicForm(_) | GammaError::OutOfRange(..) => {
                CliError::input(e)
            }
            other => CliError { code: EXIT_FAIL, message: other.to_string() },
        }
    }
}

fn finish(command: String, started: Instant, checks: Vec<Check>, details: Value) -> VerificationReport {
    VerificationReport { command, checks, elapsed_ms: started.elapsed().as_millis() as u64, details }
}

#[derive(Clone, Debug)]
pub struct HypergraphOptions {
    pub tolerance: f64,
    pub oracle: bool,
    pub audit: bool,
}

impl Default for HypergraphOptions {
    fn default() -> Self {
        HypergraphOptions { tolerance: 1e-8, oracle: false, audit: false }
    }
}

/// Parses a hypergraph file body, mapping size violations to the resource exit.
pub fn parse_hypergraph(text: &str) -> Result<WeightedHypergraph, CliError> {
    let g: WeightedHypergraph = text.parse()?;
    if g.vertex_count() > MAX_VERTICES {
        return Err(SpectraError::TooLarge(g.vertex_count(), MAX_VERTICES).into());
    }
    Ok(g)
}

pub fn check_hypergraph(command: String, text: &str, opts: &HypergraphOptions) -> Result<VerificationReport, CliError> {
    let started = Instant::now();
    let g = parse_hypergraph(text)?;
    let report = process_spectra::check_caputo_with(&g, opts.tolerance, opts.oracle)?;
    let mut checks = vec![Check::from_bool(
        "lambda2-rw-equals-ip",
        report.equal,
        format!("rw {} ip {}", report.lambda2_rw_decimal, report.lambda2_ip_decimal),
        || format!("|rw - ip| = {:e} > {:e}", report.gap, report.tolerance),
    )];
    if let Some(o) = report.oracle {
        let diff = (o - report.lambda2_ip).abs();
        checks.push(Check::from_bool("oracle-agreement", diff <= opts.tolerance, format!("oracle {o:.15}"), || {
            format!("|oracle - ip| = {diff:e}")
        }));
    } else if opts.oracle {
        checks.push(Check::undecided(
            "oracle-agreement",
            format!("explicit oracle limited to n <= {}", process_spectra::MAX_ORACLE_VERTICES),
        ));
    }
    let mut audits = Vec::new();
    if opts.audit {
        for pivot in 1..=g.vertex_count() {
            if process_spectra::pivot_data(&g, pivot).is_err() {
                continue;
            }
            let a = inequality_lab::audit_induction_step(&g, pivot)?;
            checks.push(Check::from_bool(
                &format!("audit-pivot-{pivot}"),
                a.passes,
                format!("core {} reduced {}", a.core, a.reduced),
                || {
                    format!(
                        "squid identity {}, difference psd {}, standard rank {}, interlacing {} ({} vs {})",
                        a.squid_identity,
                        a.difference_psd,
                        a.standard_rank,
                        a.interlaces,
                        a.lambda_min_h,
                        a.lambda_min_g
                    )
                },
            ));
            audits.push(a);
        }
        if audits.is_empty() {
            checks.push(Check::undecided("audit", "no admissible pivot: hypergraph is not of core shape".into()));
        }
    }
    let details = json!({ "hypergraph": g.to_text(), "spectral": report, "audits": audits });
    Ok(finish(command, started, checks, details))
}

/// Sets as `2,3;2,3,4` (semicolon separated) and weights as `1,1/2`.
pub fn parse_instance(shape: &str, n: usize, sets: &str, weights: &str) -> Result<SquidInstance, CliError> {
    let shape: Shape = shape.parse()?;
    let sets = sets
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<VertexSet>().map_err(CliError::input))
        .collect::<Result<Vec<_>, _>>()?;
    let weights = weights
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|w| parse_q(w).ok_or_else(|| CliError::input(format!("bad weight `{}`", w.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SquidInstance::new(n, sets, weights, shape)?)
}

pub fn verify_inequality(command: String, inst: &SquidInstance, oracle: bool) -> Result<VerificationReport, CliError> {
    let started = Instant::now();
    let delta = inequality_lab::squid_delta(inst)?;
    let support = delta.support_set();
    if support.len() > MAX_SUPPORT {
        return Err(CliError::resource(format!(
            "support {support} has {} vertices, limit {MAX_SUPPORT}",
            support.len()
        )));
    }
    let report = inequality_lab::verify_theorem_with(inst, oracle)?;
    let mut checks = Vec::new();
    let psd_ok = report.per_partition.iter().all(|(_, v)| v.is_psd());
    let witness = || {
        report
            .witnesses
            .iter()
            .map(|w| {
                format!("V{}: least eigenvalue in [{}, {}]", w.partition, w.least_eigenvalue[0], w.least_eigenvalue[1])
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    checks.push(match report.verdict {
        Verdict::Undecided => Check::undecided("psd", "support too large".into()),
        _ => {
            Check::from_bool("psd", psd_ok, format!("{} irreps of Sym{}", report.per_partition.len(), support), witness)
        }
    });
    let r1 = &report.rank1;
    checks.push(Check::from_bool(
        "standard-rank1",
        r1.passes(),
        format!("rank {} trace {}", r1.rank, r1.trace),
        || format!("rank {}, octopus match {}, trace match {}", r1.rank, r1.matches_octopus, r1.trace_matches),
    ));
    if let Some(psd) = report.oracle {
        // a disagreement between the two routes surfaces as an error earlier
        checks.push(Check::pass("regular-oracle", format!("regular representation agrees, psd = {psd}")));
    }
    if inst.shape() != Shape::General && inst.shape() != Shape::ClassicOctopus {
        let ok = inequality_lab::rhs_coefficients_nonnegative(inst);
        checks.push(Check::from_bool("rhs-coefficients-nonnegative", ok, String::new(), || {
            inequality_lab::squid_rhs(inst).to_string()
        }));
    }
    let mut norm = None;
    if inst.shape() == Shape::CosizeOne {
        let nc = inequality_lab::cosize_one_norm_check(inst)?;
        checks.push(Check::from_bool("norm-bound", nc.passes, format!("slack {}", nc.slack), || {
            format!("lhs {} exceeds bound {}", nc.lhs, nc.norm_bound)
        }));
        norm = Some(nc);
    }
    let details = json!({
        "shape": inst.shape(),
        "element": inequality_lab::squid_combination(inst).to_string(),
        "theorem": report,
        "norm_check": norm,
    });
    Ok(finish(command, started, checks, details))
}

pub fn counterexamples(command: String) -> Result<VerificationReport, CliError> {
    let started = Instant::now();
    let mut checks = Vec::new();
    let mut reports = Vec::new();
    for which in [1u8, 2] {
        let r = inequality_lab::counterexample_report(which)?;
        let [lo, hi] = r.target_least_eigenvalue;
        let note = format!("V{}: least eigenvalue in [{lo}, {hi}]", r.target);
        checks.push(Check::from_bool(&format!("counterexample-{which}"), r.passes, note, || {
            let bad: Vec<String> =
                r.per_partition.iter().filter(|(_, v, _)| !v.is_psd()).map(|(p, _, e)| format!("V{p} {e:?}")).collect();
            format!("expected structure not reproduced; negative blocks: {}", bad.join(", "))
        }));
        reports.push(r);
    }
    Ok(finish(command, started, checks, json!({ "reports": reports })))
}

#[derive(Default)]
pub struct GammaOptions<'a> {
    pub long: bool,
    pub small_k: bool,
    pub cache_dir: Option<PathBuf>,
    pub certificate_out: Option<PathBuf>,
    pub progress: Option<&'a (dyn Fn(usize, usize) + Sync)>,
}

/// Whether the long symbolic run is enabled through the environment.
pub fn long_enabled_by_env() -> bool {
    std::env::var("SYMGAP_LONG").is_ok_and(|v| !v.is_empty() && v != "0")
}

fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("partial");
    fs::write(&tmp, text)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| CliError::resource(format!("{}: {e}", path.display())))
}

pub fn symbolic_gamma(command: String, pattern: &str, opts: &GammaOptions<'_>) -> Result<VerificationReport, CliError> {
    let started = Instant::now();
    let pattern: Pattern = pattern.parse()?;
    let symbolic = pattern.symbolic_shape().is_some();
    if !symbolic && !opts.small_k {
        return Err(CliError::input(format!("pattern {pattern} is only checked with --small-k")));
    }
    if pattern == Pattern::Ijlm && !opts.small_k && !opts.long {
        return Err(CliError::resource("pattern ijlm needs --long (136x136 symbolic run)"));
    }
    let mut checks = Vec::new();
    let mut details = json!({ "pattern": pattern });
    let run_symbolic = symbolic && (pattern != Pattern::Ijlm || opts.long);
    if run_symbolic {
        let run = gamma_symbolic::run_symbolic(
            pattern,
            &RunOptions {
                cache_dir: opts.cache_dir.clone(),
                cross_check_direct: pattern != Pattern::Ijlm,
                progress: opts.progress,
            },
        )?;
        let text = run.certificate_text();
        let note = format!("shift {} (k >= {}), {}x{}", run.certificate.shift(), run.k_min(), run.order, run.order);
        checks.push(Check::from_bool("certificate", run.passes(), note, || match &run.certificate {
            Certificate::Failed { t_degree, k_degree, value, shift } => {
                format!("shift {shift}: coefficient of t^{t_degree} k^{k_degree} is {value}")
            }
            Certificate::Certified { shift, .. } => format!("certified only from shift {shift}"),
        }));
        checks.push(Check::from_bool("sturm-k5", run.sturm_at_5, "p(5, t) has no negative roots".into(), || {
            "p(5, t) has a negative root".into()
        }));
        if let Some(path) = &opts.certificate_out {
            write_atomic(path, &text)?;
        }
        let table: Vec<Vec<String>> =
            run.charpoly.coeffs().iter().map(|c| c.coeffs().iter().map(|v| v.to_string()).collect()).collect();
        details["matrix_sha256"] = json!(run.matrix_hash);
        details["shift"] = json!(run.certificate.shift());
        details["minimal_shift"] = json!(run.minimal_shift);
        details["from_cache"] = json!(run.from_cache);
        details["charpoly_t_coefficients_in_k"] = json!(table);
        details["certificate"] = json!(text);
    }
    if opts.small_k {
        let mut small = Vec::new();
        for (p, k) in gamma_symbolic::small_k_cases().into_iter().filter(|(p, _)| *p == pattern) {
            let r = gamma_symbolic::verify_small_k(p, k)?;
            let note = format!("{} irreps of Sym_{}", r.per_partition.len(), r.degree);
            let bad: Vec<String> =
                r.per_partition.iter().filter(|(_, v)| !v.is_psd()).map(|(mu, v)| format!("V{mu}: {v:?}")).collect();
            checks.push(Check::from_bool(&format!("small-k-{k}"), r.passes, note, || bad.join("; ")));
            small.push(r);
        }
        details["small_k"] = json!(small);
    }
    Ok(finish(command, started, checks, details))
}
