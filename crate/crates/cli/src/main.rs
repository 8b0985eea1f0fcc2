//! `syzygy`: Betti tables, Grassmannian cohomology and curve numerology from
//! the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use syzygy_core::acceptance::criteria;
use syzygy_core::bwb::{appendix_csv, bott, verify_appendix, GrassmannWeight};
use syzygy_core::koszul::DEFAULT_ENTRY_BUDGET;
use syzygy_core::numerology::{
    brill_noether_number, corollary2_range, generic_clifford_index, generic_gonality, green_prediction, lm_chi,
};
use syzygy_core::runner::{compute_betti, green_check, render_table, OutputFormat, RunConfig, DEFAULT_MAX_Q};
use syzygy_core::varieties::VarietySpec;
use syzygy_core::Error;

const SEED_ENV: &str = "SYZYGY_SEED";

#[derive(Parser)]
#[command(name = "syzygy", version, about = "Exact Koszul cohomology over prime fields")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Field characteristic [default: 32003, or the spec file's prime]
    #[arg(long, global = true)]
    prime: Option<u64>,

    /// Sampling seed; SYZYGY_SEED overrides it
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Largest p to tabulate [default: dim H^0(L) - 1]
    #[arg(long, global = true)]
    max_p: Option<usize>,

    #[arg(long, global = true, default_value_t = DEFAULT_MAX_Q)]
    max_q: usize,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Number of additional primes the table is recomputed at
    #[arg(long, global = true, default_value_t = 1)]
    crosscheck_primes: usize,

    /// Largest differential, in rows times columns
    #[arg(long, global = true, default_value_t = DEFAULT_ENTRY_BUDGET)]
    entry_budget: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Pretty => OutputFormat::Pretty,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Betti table of a variety
    Betti(VarietyArgs),
    /// Compare predicted and computed K_{p,1} of a canonical curve
    GreenCheck(VarietyArgs),
    /// Cohomology of homogeneous bundles on Grassmannians
    Bwb(BwbArgs),
    /// Gonality, Lazarsfeld-Mukai and Brill-Noether numerology
    Numerology(NumerologyArgs),
    /// Run the acceptance suite
    Selftest,
}

#[derive(Args)]
struct VarietyArgs {
    /// rnc, canonical, quartic_P3, ci23_P4, ci222_P5 or <k3>_section
    #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
    constructor: Option<String>,

    /// Degree of the rational normal curve
    #[arg(long)]
    n: Option<i64>,

    /// Genus of the canonical curve
    #[arg(long)]
    g: Option<i64>,

    /// Coordinate cut by the hyperplane section
    #[arg(long)]
    var: Option<i64>,

    /// JSON variety spec
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct BwbArgs {
    /// Grassmannian G(2, k+2) of the appendix family
    #[arg(long, conflicts_with_all = ["r", "n", "mu"])]
    k: Option<usize>,

    /// Tabulate every (q, q') in 1..=2k+2
    #[arg(long, requires = "k")]
    sweep: bool,

    #[arg(long, requires = "k", conflicts_with = "sweep", allow_negative_numbers = true)]
    q: Option<i64>,

    #[arg(long, requires = "k", conflicts_with = "sweep", allow_negative_numbers = true)]
    q_prime: Option<i64>,

    /// Rank of the subbundle
    #[arg(long, requires_all = ["n", "mu"])]
    r: Option<usize>,

    #[arg(long)]
    n: Option<usize>,

    /// Weight of the Schur functor applied to S*, comma separated
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    mu: Option<Vec<i64>>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct NumerologyArgs {
    #[arg(long, value_name = "K")]
    lm_chi: Option<u64>,

    #[arg(long, value_name = "G")]
    gonality: Option<usize>,

    #[arg(long, value_name = "G_MAX")]
    cor2: Option<usize>,

    #[arg(long, num_args = 2, value_names = ["G", "CLIFF"])]
    green: Option<Vec<usize>>,

    #[arg(long, num_args = 3, value_names = ["G", "R", "D"], allow_negative_numbers = true)]
    brill_noether: Option<Vec<i64>>,
}

enum Failure {
    Engine(Error),
    Usage(String),
    /// Output already written; only the exit status reports the failure.
    Silent,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome = Result<(), Failure>;

fn seed_override(flag: Option<u64>) -> Result<Option<u64>, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{SEED_ENV}={v} is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn variety_spec(args: &VarietyArgs) -> Result<VarietySpec, Failure> {
    if let Some(path) = &args.spec {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok(VarietySpec::from_json(&text)?);
    }
    let constructor = args.constructor.clone().expect("clap enforces constructor or spec");
    let params: Vec<(&str, i64)> = [("n", args.n), ("g", args.g), ("var", args.var)]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect();
    Ok(VarietySpec::new(constructor, &params, 0))
}

fn run_config(global: &GlobalArgs, spec: &VarietySpec, default_format: OutputFormat) -> Result<RunConfig, Failure> {
    Ok(RunConfig {
        prime: global.prime.unwrap_or(spec.prime),
        seed: seed_override(global.seed)?.unwrap_or(spec.seed),
        max_p: global.max_p,
        max_q: global.max_q,
        format: global.format.map_or(default_format, Into::into),
        entry_budget: global.entry_budget,
        crosscheck_primes: global.crosscheck_primes,
    })
}

fn print_json(value: serde_json::Value) {
    println!("{value}");
}

fn cmd_betti(global: &GlobalArgs, args: &VarietyArgs) -> Outcome {
    let spec = variety_spec(args)?;
    let cfg = run_config(global, &spec, OutputFormat::Json)?;
    let run = compute_betti(&spec, &cfg)?;
    let out = render_table(&run.table, cfg.format);
    print!("{out}");
    if !out.ends_with('\n') {
        println!();
    }
    Ok(())
}

fn cmd_green_check(global: &GlobalArgs, args: &VarietyArgs) -> Outcome {
    let spec = variety_spec(args)?;
    let cfg = run_config(global, &spec, OutputFormat::Pretty)?;
    let report = green_check(&spec, &cfg)?;
    let out = report.render(cfg.format);
    print!("{out}");
    if !out.ends_with('\n') {
        println!();
    }
    if report.all_match() {
        Ok(())
    } else {
        let ps: Vec<usize> = report.mismatches().map(|r| r.p).collect();
        eprintln!("prediction fails at p = {ps:?}");
        Err(Failure::Silent)
    }
}

fn cmd_bwb(global: &GlobalArgs, args: &BwbArgs) -> Outcome {
    let format = global.format.map(OutputFormat::from);
    if let (Some(k), true) = (args.k, args.sweep) {
        if k == 0 {
            return Err(Failure::Usage("--k must be positive".into()));
        }
        let entries: Vec<_> = verify_appendix(k)?.into_iter().filter(|e| e.k == k).collect();
        match format.unwrap_or(OutputFormat::Csv) {
            OutputFormat::Json => print_json(serde_json::to_value(&entries).expect("plain data serializes")),
            _ => print!("{}", appendix_csv(&entries)),
        }
        return Ok(());
    }
    let weight = match (args.k, args.r, &args.mu) {
        (Some(k), _, _) => {
            let (Some(q), Some(q_prime)) = (args.q, args.q_prime) else {
                return Err(Failure::Usage("--k needs --sweep or both --q and --q-prime".into()));
            };
            if k == 0 {
                return Err(Failure::Usage("--k must be positive".into()));
            }
            GrassmannWeight::appendix(k, q, q_prime)
        }
        (None, Some(r), Some(mu)) => GrassmannWeight::new(r, args.n.expect("clap requires --n"), mu.clone())?,
        _ => return Err(Failure::Usage("give --k, or --r, --n and --mu".into())),
    };
    let result = bott(&weight);
    let degree = result.degree.map(|d| d.to_string()).unwrap_or_default();
    match format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => print_json(json!({
            "r": weight.r(),
            "n": weight.n(),
            "mu": weight.mu(),
            "degree": result.degree,
            "dimension": result.dimension.to_string(),
        })),
        OutputFormat::Csv => print!("degree,dimension\n{degree},{}\n", result.dimension),
        OutputFormat::Pretty => match result.degree {
            Some(d) => println!("H^{d} = {}, all other cohomology vanishes", result.dimension),
            None => println!("all cohomology vanishes"),
        },
    }
    Ok(())
}

fn cmd_numerology(args: &NumerologyArgs) -> Outcome {
    if let Some(k) = args.lm_chi {
        if k == 0 {
            return Err(Failure::Usage("--lm-chi needs k >= 1".into()));
        }
        print_json(serde_json::to_value(lm_chi(k)).expect("plain data serializes"));
    } else if let Some(g) = args.gonality {
        if g < 2 {
            return Err(Failure::Usage("--gonality needs g >= 2".into()));
        }
        print_json(json!({
            "g": g,
            "gonality": generic_gonality(g),
            "clifford_index": generic_clifford_index(g),
        }));
    } else if let Some(g_max) = args.cor2 {
        let report = corollary2_range(g_max)?;
        print_json(json!({ "g_max": g_max, "pairs": report.members.len(), "passed": true }));
    } else if let Some(v) = &args.green {
        print_json(json!({ "g": v[0], "cliff": v[1], "predictions": green_prediction(v[0], v[1]) }));
    } else if let Some(v) = &args.brill_noether {
        print_json(json!({ "g": v[0], "r": v[1], "d": v[2], "rho": brill_noether_number(v[0], v[1], v[2]) }));
    }
    Ok(())
}

fn cmd_selftest() -> Outcome {
    let mut first_failure = None;
    for criterion in criteria() {
        let outcome = criterion.run();
        println!("{}", outcome.line());
        if !outcome.passed && first_failure.is_none() {
            first_failure = Some(format!("criterion {} ({})", outcome.id, outcome.name));
        }
    }
    match first_failure {
        None => Ok(()),
        Some(name) => {
            eprintln!("selftest failed: first failing {name}");
            Err(Failure::Silent)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DegenerateSample { .. } => 2,
        Error::ResourceLimit { .. } => 3,
        Error::BadPrime { .. } => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Betti(a) => cmd_betti(&cli.global, a),
        Command::GreenCheck(a) => cmd_green_check(&cli.global, a),
        Command::Bwb(a) => cmd_bwb(&cli.global, a),
        Command::Numerology(a) => cmd_numerology(a),
        Command::Selftest => cmd_selftest(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(64)
        }
        Err(Failure::Silent) => ExitCode::FAILURE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let degenerate = Error::DegenerateSample {
            variety: "x".into(),
            degree: 2,
            expected: 3,
            found: 4,
        };
        assert_eq!(exit_code(&degenerate), 2);
        assert_eq!(
            exit_code(&Error::ResourceLimit {
                rows: 1,
                cols: 1,
                budget: 0
            }),
            3
        );
        assert_eq!(exit_code(&Error::BadPrime { primes: vec![2] }), 4);
        assert_eq!(exit_code(&Error::InvalidInput(String::new())), 1);
    }

    #[test]
    fn cli_definition() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
