//! `approval-outliers`: solve, decide, generate, verify and benchmark outlier-robust
//! committee elections.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 infeasible parameters,
//! unsupported structure or a "no" decision, 3 size-cap refusal, 4 verification failure.

mod bench;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use approval_outliers::approx::{self, ApproxConfig, Epsilon, SamplingMode};
use approval_outliers::exact::{self, ExactLimits, SolveOptions};
use approval_outliers::io::{self, DecisionDoc, InstanceFile, ReportDoc};
use approval_outliers::par::Threads;
use approval_outliers::reductions::{self, ReductionKind};
use approval_outliers::special;
use approval_outliers::{Election, Error, OutlierQuery, ScoringRule, SolverReport};

#[derive(Parser)]
#[command(
    name = "approval-outliers",
    version,
    about = "Committee selection from approval ballots with outlier removal"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print a report document
    Solve(SolveArgs),
    /// Decide whether a minisum solution with score at most the target exists
    Decide(DecideArgs),
    /// Build an instance from a graph reduction
    Generate(GenerateArgs),
    /// Check a report against its instance
    Verify(VerifyArgs),
    /// Run a benchmark suite and print CSV rows
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Auto,
    CommitteeEnum,
    VotersetEnum,
    Oracle,
    EpsMbar,
    Sampling,
    SingleApprovalGreedy,
    SingleApproverDp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    MonteCarlo,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file, or `stdout`
    #[arg(long, default_value = "stdout")]
    output: String,
    /// Report elapsed time as 0 so repeated runs are byte-identical
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: String,
    #[arg(long, value_enum, default_value = "auto")]
    algorithm: AlgorithmArg,
    /// Approximation parameter, e.g. `1/2`, `0.25` or `1`
    #[arg(long, default_value = "1/2")]
    epsilon: Epsilon,
    /// Sample size r for the sampling scheme; defaults to a size derived from epsilon
    #[arg(long)]
    sample_size: Option<usize>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    /// Monte-Carlo trials
    #[arg(long, default_value_t = 64)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the parallel enumerations
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct DecideArgs {
    #[arg(long)]
    instance: String,
    /// Target score; defaults to the instance's target
    #[arg(long, allow_hyphen_values = true)]
    target: Option<i64>,
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    reduction: String,
    /// Edge-list file or family such as `complete:4` or `random_regular:8:3:1`
    #[arg(long)]
    graph: String,
    #[arg(long)]
    k: usize,
    /// Scoring rule; optional for reductions that fix one
    #[arg(long)]
    rule: Option<String>,
    #[arg(long, default_value = "stdout")]
    output: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: String,
    /// Report document produced by `solve`
    #[arg(long)]
    solution: String,
    /// Re-solve exactly and check optimality claims
    #[arg(long)]
    against_oracle: bool,
}

/// A failure with the exit code it maps to.
pub(crate) struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 1,
            Error::Parameter(_) | Error::Structure(_) | Error::Usage(_) => 2,
            Error::Size { .. } => 3,
        };
        Failure::new(code, e.to_string())
    }
}

pub(crate) type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(a) => solve(&a),
        Command::Decide(a) => decide(&a),
        Command::Generate(a) => generate(&a),
        Command::Verify(a) => verify(&a),
        Command::Bench(a) => bench::run(&a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::new(1, format!("cannot read {path}: {e}")))
}

pub(crate) fn emit(output: &str, text: &str) -> CliResult<()> {
    if output == "stdout" || output == "-" {
        print!("{text}");
        Ok(())
    } else {
        fs::write(output, text).map_err(|e| Failure::new(1, format!("cannot write {output}: {e}")))
    }
}

fn load_instance(path: &str) -> CliResult<InstanceFile> {
    Ok(io::parse_instance(&read(path)?)?)
}

fn solve_options(threads: Option<usize>) -> SolveOptions {
    SolveOptions {
        limits: ExactLimits::default(),
        threads: Threads(threads),
    }
}

/// Picks a solver: structured minisum classes first, then committee enumeration within its
/// cap, then the Hamming-ball approximation for minisum.
fn route_auto(
    election: &Election,
    query: &OutlierQuery,
    limits: &ExactLimits,
) -> CliResult<AlgorithmArg> {
    let structure = special::detect_structure(election);
    let minisum = query.rule == ScoringRule::Minisum;
    Ok(if minisum && structure.single_approval_votes() {
        AlgorithmArg::SingleApprovalGreedy
    } else if minisum && structure.single_approver_candidates() {
        AlgorithmArg::SingleApproverDp
    } else if election.m() <= limits.committee_enum_max_m {
        AlgorithmArg::CommitteeEnum
    } else if minisum {
        AlgorithmArg::EpsMbar
    } else {
        return Err(Error::Size {
            what: "m",
            actual: election.m(),
            cap: limits.committee_enum_max_m,
        }
        .into());
    })
}

fn solve(args: &SolveArgs) -> CliResult<u8> {
    let file = load_instance(&args.instance)?;
    let (election, query) = (&file.election, &file.query);
    let opts = solve_options(args.threads);
    let algorithm = match args.algorithm {
        AlgorithmArg::Auto => route_auto(election, query, &opts.limits)?,
        other => other,
    };
    let config = ApproxConfig {
        epsilon: args.epsilon,
        sample_size: args.sample_size,
        mode: match args.mode {
            ModeArg::Exhaustive => SamplingMode::ExhaustiveSubsets,
            ModeArg::MonteCarlo => SamplingMode::MonteCarlo,
        },
        trials: args.trials,
        seed: args.seed,
        threads: Threads(args.threads),
    };
    let report: SolverReport = match algorithm {
        AlgorithmArg::Auto => unreachable!("routed above"),
        AlgorithmArg::CommitteeEnum => exact::solve_committee_enum(election, query, &opts)?,
        AlgorithmArg::VotersetEnum => exact::solve_voterset_enum(election, query, &opts)?,
        AlgorithmArg::Oracle => exact::brute_force_oracle(election, query, &opts)?,
        AlgorithmArg::EpsMbar => approx::approx_eps_mbar(election, query, &config)?,
        AlgorithmArg::Sampling => approx::approx_sampling(election, query, &config)?,
        AlgorithmArg::SingleApprovalGreedy => {
            special::solve_single_approval_greedy(election, query)?
        }
        AlgorithmArg::SingleApproverDp => special::solve_single_approver_dp(election, query)?,
    };
    let mut doc = ReportDoc::from_report(&report, query);
    match algorithm {
        AlgorithmArg::EpsMbar => doc.epsilon = Some(args.epsilon.to_string()),
        AlgorithmArg::Sampling => {
            doc.epsilon = Some(args.epsilon.to_string());
            doc.sample_size = Some(config.sample_size_for(election)?);
            doc.mode = Some(config.mode.as_str().to_string());
            if config.mode == SamplingMode::MonteCarlo {
                doc.trials = Some(config.trials);
            }
        }
        _ => {}
    }
    if args.out.no_timing {
        doc.elapsed_ms = 0.0;
    }
    emit(&args.out.output, &doc.render())?;
    Ok(0)
}

fn decide(args: &DecideArgs) -> CliResult<u8> {
    let file = load_instance(&args.instance)?;
    let target = args
        .target
        .or(file.query.target)
        .ok_or_else(|| Failure::new(2, "no target: pass --target or set one in the instance"))?;
    let query = file.query.with_target(target);
    let decision = exact::decide_minisum_fpt(&file.election, &query, &solve_options(args.threads))?;
    let mut doc = DecisionDoc::from_decision(&decision, &query, target);
    if args.out.no_timing {
        doc.elapsed_ms = 0.0;
    }
    emit(&args.out.output, &doc.render())?;
    Ok(if decision.accepted { 0 } else { 2 })
}

fn generate(args: &GenerateArgs) -> CliResult<u8> {
    let kind: ReductionKind = args.reduction.parse()?;
    let rule = match (&args.rule, kind.rules()) {
        (Some(r), _) => r.parse()?,
        (None, [only]) => *only,
        (None, _) => return Err(Failure::new(2, format!("{kind} needs --rule"))),
    };
    let graph = io::load_graph(&args.graph)?;
    let instance = reductions::reduce(kind, &graph, args.k, rule)?;
    emit(
        &args.output,
        &io::serialize_instance(&InstanceFile::from_reduced(&instance)),
    )?;
    Ok(0)
}

/// Field-by-field comparison of a report with what its instance implies.
fn verify(args: &VerifyArgs) -> CliResult<u8> {
    let file = load_instance(&args.instance)?;
    let doc = io::parse_report(&read(&args.solution)?)?;
    let (election, query) = (&file.election, &file.query);
    let mut problems = Vec::new();
    if doc.rule != query.rule {
        problems.push(format!(
            "rule: report says {}, instance says {}",
            doc.rule, query.rule
        ));
    }
    if doc.m_star != query.m_star {
        problems.push(format!(
            "m_star: report says {}, instance says {}",
            doc.m_star, query.m_star
        ));
    }
    if doc.n_bar != query.n_bar {
        problems.push(format!(
            "n_bar: report says {}, instance says {}",
            doc.n_bar, query.n_bar
        ));
    }
    let ascending = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
    if doc.committee.len() != query.m_star {
        problems.push(format!(
            "committee: {} members, expected {}",
            doc.committee.len(),
            query.m_star
        ));
    }
    if !ascending(&doc.committee) || doc.committee.iter().any(|&c| c >= election.m()) {
        problems.push("committee: indices must be ascending, distinct and below m".into());
    }
    if !ascending(&doc.non_outliers) || doc.non_outliers.iter().any(|&i| i >= election.n()) {
        problems.push("non_outliers: indices must be ascending, distinct and below n".into());
    }
    let n_star = query.n_star(election);
    if doc.non_outliers.len() < n_star {
        problems.push(format!(
            "non_outliers: {} kept, at least {n_star} required",
            doc.non_outliers.len()
        ));
    }
    let recomputed = if problems.is_empty() {
        let solution = doc.to_solution(election.m())?;
        let actual = approval_outliers::score::total_score(
            query.rule,
            &solution.committee,
            election,
            &solution.non_outliers,
        );
        if actual != doc.score {
            problems.push(format!(
                "score: report says {}, solution scores {actual}",
                doc.score
            ));
        }
        Some(actual)
    } else {
        None
    };
    if args.against_oracle {
        if let Some(actual) = recomputed {
            let opts = solve_options(None);
            let opt = if election.m() <= opts.limits.oracle_max_m
                && election.n() <= opts.limits.oracle_max_n
            {
                exact::brute_force_oracle(election, query, &opts)?
            } else {
                exact::solve_committee_enum(election, query, &opts)?
            }
            .solution
            .score;
            if doc.claims_exact() && actual != opt {
                problems.push(format!(
                    "optimality: claimed exact but the optimum is {opt}, not {actual}"
                ));
            }
            if actual < opt {
                problems.push(format!("score: {actual} is below the optimum {opt}"));
            }
        }
    }
    if problems.is_empty() {
        println!("ok: feasible, score {} verified", doc.score);
        Ok(0)
    } else {
        for p in &problems {
            println!("discrepancy {p}");
        }
        Ok(4)
    }
}
