//! Benchmark suites printed as CSV.
//!
//! Header: `suite,instance,algorithm,rule,n,m,m_star,n_bar,score,opt,ratio,target,decision,graph_oracle,elapsed_ms`.
//! Columns that do not apply to a row are left empty.

use std::time::{Duration, Instant};

use clap::{Args, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use approval_outliers::approx::{self, ApproxConfig, Epsilon, SamplingMode};
use approval_outliers::exact::{self, SolveOptions};
use approval_outliers::graph::Graph;
use approval_outliers::par::Threads;
use approval_outliers::reductions::{self, ReductionKind};
use approval_outliers::{Election, OutlierQuery, Score, ScoringRule, SolverReport};

use crate::{emit, CliResult, Failure};

pub const HEADER: [&str; 15] = [
    "suite",
    "instance",
    "algorithm",
    "rule",
    "n",
    "m",
    "m_star",
    "n_bar",
    "score",
    "opt",
    "ratio",
    "target",
    "decision",
    "graph_oracle",
    "elapsed_ms",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Random,
    Reductions,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Random instances per scoring rule
    #[arg(long, default_value_t = 20)]
    instances: usize,
    #[arg(long, default_value_t = 8)]
    max_m: usize,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    /// Fix the outlier budget (clamped to n - 1) instead of drawing it
    #[arg(long)]
    n_bar: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "1/2")]
    epsilon: Epsilon,
    /// Sampling subset size: an integer, `n` for every vote, or `default`
    #[arg(long, default_value = "default")]
    sample_size: String,
    /// Largest random 3-regular graph in the reductions suite
    #[arg(long, default_value_t = 8)]
    max_vertices: usize,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value = "stdout")]
    output: String,
    /// Write 0 in the elapsed column so output is reproducible
    #[arg(long)]
    no_timing: bool,
}

#[derive(Default)]
struct Row {
    suite: &'static str,
    instance: String,
    algorithm: String,
    rule: String,
    n: usize,
    m: usize,
    m_star: usize,
    n_bar: usize,
    score: Option<Score>,
    opt: Option<Score>,
    ratio: Option<String>,
    target: Option<Score>,
    decision: Option<bool>,
    graph_oracle: Option<bool>,
    elapsed: Duration,
}

fn yes_no(b: Option<bool>) -> String {
    b.map(|b| if b { "yes" } else { "no" }.to_string())
        .unwrap_or_default()
}

fn opt_string<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// score / OPT for the nonnegative rules; 1 when both are zero.
pub fn ratio(rule: ScoringRule, score: Score, opt: Score) -> Option<String> {
    if !rule.is_nonnegative() {
        return None;
    }
    Some(match (score, opt) {
        (0, 0) => "1.0000".to_string(),
        (_, 0) => "inf".to_string(),
        (s, o) => format!("{:.4}", s as f64 / o as f64),
    })
}

fn parse_sample_size(spec: &str, n: usize) -> CliResult<Option<usize>> {
    match spec {
        "default" => Ok(None),
        "n" => Ok(Some(n)),
        other => other
            .parse::<usize>()
            .map(|r| Some(r.min(n)))
            .map_err(|_| Failure::new(2, format!("bad --sample-size {other:?}"))),
    }
}

pub fn run(args: &BenchArgs) -> CliResult<u8> {
    if args.max_m == 0 || args.max_n == 0 {
        return Err(Failure::new(2, "--max-m and --max-n must be positive"));
    }
    let rows = match args.suite {
        Suite::Random => random_suite(args)?,
        Suite::Reductions => reductions_suite(args)?,
    };
    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::new(1, format!("csv output: {e}"));
    writer.write_record(HEADER).map_err(csv_err)?;
    for r in rows {
        let elapsed = if args.no_timing {
            0.0
        } else {
            (r.elapsed.as_secs_f64() * 1e6).round() / 1e3
        };
        writer
            .write_record([
                r.suite.to_string(),
                r.instance,
                r.algorithm,
                r.rule,
                r.n.to_string(),
                r.m.to_string(),
                r.m_star.to_string(),
                r.n_bar.to_string(),
                opt_string(r.score),
                opt_string(r.opt),
                r.ratio.unwrap_or_default(),
                opt_string(r.target),
                yes_no(r.decision),
                yes_no(r.graph_oracle),
                format!("{elapsed:.3}"),
            ])
            .map_err(csv_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::new(1, format!("csv output: {e}")))?;
    emit(
        &args.output,
        &String::from_utf8(bytes).expect("CSV fields are UTF-8"),
    )?;
    Ok(0)
}

fn random_election(rng: &mut ChaCha8Rng, max_m: usize, max_n: usize) -> Election {
    let m = rng.gen_range(1..=max_m);
    let n = rng.gen_range(1..=max_n);
    let lists: Vec<Vec<usize>> = (0..n)
        .map(|_| (0..m).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    Election::from_lists(m, &lists).expect("indices below m")
}

fn random_suite(args: &BenchArgs) -> CliResult<Vec<Row>> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let opts = SolveOptions {
        threads: Threads(args.threads),
        ..Default::default()
    };
    let mut rows = Vec::new();
    for rule in ScoringRule::ALL {
        for i in 0..args.instances {
            let election = random_election(&mut rng, args.max_m, args.max_n);
            let (m, n) = (election.m(), election.n());
            let m_star = rng.gen_range(0..=m);
            let drawn = rng.gen_range(0..n);
            let n_bar = args.n_bar.map_or(drawn, |b| b.min(n - 1));
            let query = OutlierQuery::new(rule, m_star, n_bar);
            let opt = exact::brute_force_oracle(&election, &query, &opts)
                .ok()
                .map(|r| r.solution.score);
            let name = format!("random-{}-{i}", rule.as_str());

            let mut runs: Vec<(String, approval_outliers::Result<SolverReport>)> = vec![
                (
                    "committee-enum".into(),
                    exact::solve_committee_enum(&election, &query, &opts),
                ),
                (
                    "voterset-enum".into(),
                    exact::solve_voterset_enum(&election, &query, &opts),
                ),
            ];
            if rule == ScoringRule::Minisum {
                let config = ApproxConfig {
                    epsilon: args.epsilon,
                    sample_size: parse_sample_size(&args.sample_size, n)?,
                    mode: SamplingMode::ExhaustiveSubsets,
                    trials: 0,
                    seed: args.seed,
                    threads: Threads(args.threads),
                };
                runs.push((
                    format!("eps-mbar:eps={}", args.epsilon),
                    approx::approx_eps_mbar(&election, &query, &config),
                ));
                runs.push((
                    format!(
                        "sampling:eps={}:r={}",
                        args.epsilon,
                        config.sample_size_for(&election)?
                    ),
                    approx::approx_sampling(&election, &query, &config),
                ));
            }
            for (algorithm, result) in runs {
                let report = result?;
                let score = report.solution.score;
                rows.push(Row {
                    suite: "random",
                    instance: name.clone(),
                    algorithm,
                    rule: rule.as_str().into(),
                    n,
                    m,
                    m_star,
                    n_bar,
                    score: Some(score),
                    opt,
                    ratio: opt.and_then(|o| ratio(rule, score, o)),
                    elapsed: report.elapsed,
                    ..Default::default()
                });
            }
        }
    }
    Ok(rows)
}

/// Small named graphs plus seeded random 3-regular graphs up to `max_vertices`.
pub fn reduction_corpus(max_vertices: usize, seed: u64) -> Vec<(String, Graph)> {
    let mut corpus: Vec<(String, Graph)> = Vec::new();
    for k in 3..=5 {
        corpus.push((format!("complete:{k}"), Graph::complete(k)));
    }
    for k in 4..=6 {
        corpus.push((format!("cycle:{k}"), Graph::cycle(k).expect("k >= 3")));
    }
    for k in 3..=5 {
        corpus.push((format!("path:{k}"), Graph::path(k)));
    }
    corpus.push((
        "complete_bipartite:2:2".into(),
        Graph::complete_bipartite(2, 2),
    ));
    corpus.push((
        "complete_bipartite:3:3".into(),
        Graph::complete_bipartite(3, 3),
    ));
    for n in (4..=max_vertices.min(16)).step_by(2) {
        for s in seed..seed + 2 {
            let spec = format!("random_regular:{n}:3:{s}");
            if let Ok(g) = Graph::family(&spec) {
                corpus.push((spec, g));
            }
        }
    }
    corpus
}

fn reductions_suite(args: &BenchArgs) -> CliResult<Vec<Row>> {
    let opts = SolveOptions {
        threads: Threads(args.threads),
        ..Default::default()
    };
    let mut rows = Vec::new();
    for (name, graph) in reduction_corpus(args.max_vertices, args.seed) {
        for kind in ReductionKind::ALL {
            for &rule in kind.rules() {
                for k in kind.valid_ks(&graph, rule) {
                    let inst = reductions::reduce(kind, &graph, k, rule)?;
                    let start = Instant::now();
                    let report = exact::reference_solve(&inst.election, &inst.query, &opts)?;
                    let elapsed = start.elapsed();
                    let opt = report.solution.score;
                    rows.push(Row {
                        suite: "reductions",
                        instance: format!("{kind}/{name}/k={k}"),
                        algorithm: report.algorithm.as_str().into(),
                        rule: rule.as_str().into(),
                        n: inst.election.n(),
                        m: inst.election.m(),
                        m_star: inst.query.m_star,
                        n_bar: inst.query.n_bar,
                        score: Some(opt),
                        opt: Some(opt),
                        ratio: None,
                        target: Some(inst.target()),
                        decision: Some(opt <= inst.target()),
                        graph_oracle: Some(kind.graph_answer(&graph, k)?),
                        elapsed,
                    });
                }
            }
        }
    }
    Ok(rows)
}
