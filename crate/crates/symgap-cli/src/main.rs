use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use symgap_cli::{
    check_hypergraph, counterexamples, long_enabled_by_env, parse_instance, symbolic_gamma, verify_inequality,
    CliError, GammaOptions, HypergraphOptions, VerificationReport, EXIT_INPUT, EXIT_RESOURCE,
};

#[derive(Parser)]
#[command(
    name = "symgap",
    version,
    about = "Exact checks of octopus-type inequalities and interchange-process spectral gaps"
)]
struct Cli {
    /// Also write the machine-readable report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare λ₂ of the random walk and the interchange process on a hypergraph file.
    CheckHypergraph {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        /// Cross-check against the explicit n!-state operator (n ≤ 6).
        #[arg(long)]
        oracle: bool,
        /// Audit the induction step at every admissible pivot.
        #[arg(long)]
        audit: bool,
    },
    /// Certify a squid inequality exactly on every irreducible representation.
    VerifyInequality {
        /// general, disjoint, large-intersection, cosize-one or octopus.
        #[arg(long)]
        shape: String,
        #[arg(long)]
        n: usize,
        /// Sets separated by `;`, e.g. `2,3;2,3,4`.
        #[arg(long)]
        sets: String,
        /// Weights separated by `,`, e.g. `1,1/2`.
        #[arg(long)]
        weights: String,
        /// Cross-check through the regular representation.
        #[arg(long)]
        oracle: bool,
    },
    /// Build k²M(Γ) for a pattern and certify it for all large k.
    SymbolicGamma {
        /// ijlm, iijl, 0ijl, 00ij or 0iij.
        pattern: String,
        /// Allow the 136×136 run for ijlm (also enabled by SYMGAP_LONG=1).
        #[arg(long)]
        long: bool,
        /// Run the direct irrep checks for small k.
        #[arg(long)]
        small_k: bool,
        /// Certificate output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the two failing general-squid instances.
    Counterexamples,
}

fn run(cli: &Cli, command_line: String) -> Result<VerificationReport, CliError> {
    match &cli.command {
        Command::CheckHypergraph { file, tolerance, oracle, audit } => {
            let text = fs::read_to_string(file).map_err(|e| CliError::input(format!("{}: {e}", file.display())))?;
            let opts = HypergraphOptions { tolerance: *tolerance, oracle: *oracle, audit: *audit };
            check_hypergraph(command_line, &text, &opts)
        }
        Command::VerifyInequality { shape, n, sets, weights, oracle } => {
            let inst = parse_instance(shape, *n, sets, weights)?;
            verify_inequality(command_line, &inst, *oracle)
        }
        Command::SymbolicGamma { pattern, long, small_k, out } => {
            let progress = |done: usize, total: usize| eprintln!("symbolic-gamma: prime {done}/{total}");
            let out = out.clone().or_else(|| Some(PathBuf::from(format!("gamma-{}.cert", pattern.trim()))));
            let opts = GammaOptions {
                long: *long || long_enabled_by_env(),
                small_k: *small_k,
                cache_dir: std::env::var_os("SYMGAP_CACHE_DIR").map(PathBuf::from),
                certificate_out: out,
                progress: Some(&progress),
            };
            symbolic_gamma(command_line, pattern, &opts)
        }
        Command::Counterexamples => counterexamples(command_line),
    }
}

fn main() -> ExitCode {
    let command_line = std::env::args().collect::<Vec<_>>().join(" ");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli, command_line) {
        Ok(report) => {
            print!("{}", report.render_text());
            if let Some(path) = &cli.json {
                if let Err(e) = fs::write(path, report.to_json()) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(EXIT_RESOURCE as u8);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
