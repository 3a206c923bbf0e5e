use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use symgap_cli::{CheckVerdict, VerificationReport};

const SIX_VERTEX_HUB: &str = "\
# six vertices, five triangles and a pair through vertex 1
n 6
edge 1,2,3 weight 1
edge 1,2,4 weight 1
edge 1,3,4 weight 1
edge 1,4,5 weight 1
edge 1,5,6 weight 1
edge 1,6 weight 1
";

fn symgap(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_symgap"));
    cmd.args(args).env_remove("SYMGAP_LONG");
    match cache {
        Some(dir) => cmd.env("SYMGAP_CACHE_DIR", dir),
        None => cmd.env_remove("SYMGAP_CACHE_DIR"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn six_vertex_hub_passes_with_oracle_and_audit() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "hub.txt", SIX_VERTEX_HUB);
    let json = dir.path().join("report.json");
    let o = symgap(&["--json", json.to_str().unwrap(), "check-hypergraph", &file, "--oracle", "--audit"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report = VerificationReport::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    let names: Vec<String> = report.verdicts().into_iter().map(|(n, _)| n).collect();
    assert!(names.contains(&"lambda2-rw-equals-ip".to_string()));
    assert!(names.contains(&"oracle-agreement".to_string()));
    assert!(names.iter().any(|n| n.starts_with("audit-pivot-")));
    assert!(report.checks.iter().all(|c| c.verdict == CheckVerdict::Pass));
}

#[test]
fn triangle_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "k3.txt", "n 3\nedge 1,2 weight 1\nedge 1,3 weight 1\nedge 2,3 weight 1\n");
    let json = dir.path().join("k3.json");
    let o = symgap(&["check-hypergraph", &file, "--json", json.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&json).unwrap();
    let report = VerificationReport::from_json(&text).unwrap();
    let again = VerificationReport::from_json(&report.to_json()).unwrap();
    assert_eq!(report.verdicts(), again.verdicts());
    assert_eq!(report.checks, again.checks);
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn general_squid_fails_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("ex1.json");
    let o = symgap(
        &["verify-inequality", "--shape", "general", "--n", "4", "--sets", "2;2,3,4", "--weights", "1,1", "--json"]
            .into_iter()
            .chain([json.to_str().unwrap()])
            .collect::<Vec<_>>(),
        None,
    );
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let report = VerificationReport::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    let psd = report.checks.iter().find(|c| c.name == "psd").unwrap();
    assert_eq!(psd.verdict, CheckVerdict::Fail);
    assert!(psd.witness.as_deref().unwrap().contains("(2,2)"));
}

#[test]
fn theorem_shapes_pass() {
    let cases: [&[&str]; 3] = [
        &["--shape", "disjoint", "--n", "6", "--sets", "2,3;4,5", "--weights", "1,2"],
        &["--shape", "large-intersection", "--n", "4", "--sets", "2;2,3;2,4", "--weights", "1,1/2,3"],
        &["--shape", "cosize-one", "--n", "4", "--sets", "2,3,4;2,3;2,4", "--weights", "1,1,1"],
    ];
    for args in cases {
        let full: Vec<&str> = std::iter::once("verify-inequality").chain(args.iter().copied()).collect();
        let o = symgap(&full, None);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
    let o = symgap(
        &["verify-inequality", "--shape", "octopus", "--n", "4", "--sets", "2;3;4", "--weights", "1,1,1", "--oracle"],
        None,
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "n 3\nedge 1,2 weight one\n");
    assert_eq!(symgap(&["check-hypergraph", &bad], None).status.code(), Some(2));
    let missing = dir.path().join("missing.txt");
    assert_eq!(symgap(&["check-hypergraph", missing.to_str().unwrap()], None).status.code(), Some(2));
    let negative = ["verify-inequality", "--shape", "disjoint", "--n", "5", "--sets", "2,3", "--weights", "-1"];
    assert_eq!(symgap(&negative, None).status.code(), Some(2));
    let overlap = ["verify-inequality", "--shape", "disjoint", "--n", "5", "--sets", "2,3;3,4", "--weights", "1,1"];
    assert_eq!(symgap(&overlap, None).status.code(), Some(2));
    assert_eq!(symgap(&["symbolic-gamma", "ijkl"], None).status.code(), Some(2));
    assert_eq!(symgap(&["no-such-command"], None).status.code(), Some(2));
}

#[test]
fn resource_limits_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let nine = write(dir.path(), "nine.txt", "n 9\nedge 1,2 weight 1\n");
    assert_eq!(symgap(&["check-hypergraph", &nine], None).status.code(), Some(3));
    let out = dir.path().join("ijlm.cert");
    let o = symgap(&["symbolic-gamma", "ijlm", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
}

#[test]
fn counterexamples_pass() {
    let o = symgap(&["counterexamples"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("counterexample-1") && text.contains("counterexample-2"));
}

#[test]
fn small_gamma_certificate_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cert = dir.path().join("iijl.cert");
    let json = dir.path().join("iijl.json");
    let args =
        ["symbolic-gamma", "iijl", "--small-k", "--out", cert.to_str().unwrap(), "--json", json.to_str().unwrap()];
    let o = symgap(&args, Some(&cache));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.contains("status CERTIFIED"), "{text}");
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 1);
    let report = VerificationReport::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.details["minimal_shift"], 2);
    assert!(report.checks.iter().any(|c| c.name.starts_with("small-k-")));

    let again = symgap(&args, Some(&cache));
    assert_eq!(again.status.code(), Some(0));
    let report = VerificationReport::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.details["from_cache"], true);
    assert_eq!(fs::read_to_string(&cert).unwrap(), text);
}

#[test]
fn ijlm_small_k_needs_no_long_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ijlm.cert");
    let o = symgap(&["symbolic-gamma", "ijlm", "--small-k", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("small-k-2") && text.contains("small-k-3"), "{text}");
    let o = symgap(&["symbolic-gamma", "00ij", "--small-k"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
