//! Approximation algorithms for minisum with outliers.
//!
//! * [`approx_eps_mbar`]: searches Hamming balls of radius ⌊1/ε⌋ around every ballot and
//!   falls back to a greedy committee over a well-chosen set of n* votes.
//! * [`approx_sampling`]: takes the greedy committee of a small vote sample, keeps the n*
//!   votes closest to it and re-optimizes the committee on those. The sample is either every
//!   r-subset (the exhaustive scheme) or `trials` seeded random draws.
//!
//! Neither approximates disapproval or net disapproval; both refuse those rules.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinations::{binomial, for_each_in_rank_range};
use crate::error::{Error, Result};
use crate::exact::{Algorithm, Optimality, SolverReport};
use crate::model::{ApprovalVote, Committee, Election, OutlierQuery, Score, ScoringRule, Solution};
use crate::par::{self, Threads};
use crate::score;

/// A positive rational ε = num / den.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::Parameter(format!(
                "epsilon {num}/{den} must be positive"
            )));
        }
        let g = gcd(num, den);
        Ok(Epsilon {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// ⌊1/ε⌋.
    pub fn radius(self) -> usize {
        (self.den / self.num) as usize
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    /// Accepts `p/q`, an integer, or a decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("cannot read `{s}` as a positive rational"));
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q = q.trim().parse().map_err(|_| bad())?;
            return Epsilon::new(p, q);
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.len() > 9 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let whole: u64 = if whole.is_empty() {
                0
            } else {
                whole.parse().map_err(|_| bad())?
            };
            let frac: u64 = if frac.is_empty() {
                0
            } else {
                frac.parse().map_err(|_| bad())?
            };
            return Epsilon::new(whole * den + frac, den);
        }
        Epsilon::new(s.parse().map_err(|_| bad())?, 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingMode {
    /// Every r-subset of the votes.
    ExhaustiveSubsets,
    /// `trials` uniform r-subsets drawn from the seeded generator.
    MonteCarlo,
}

impl FromStr for SamplingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SamplingMode::ExhaustiveSubsets),
            "monte-carlo" => Ok(SamplingMode::MonteCarlo),
            _ => Err(Error::Usage(format!("unknown sampling mode `{s}`"))),
        }
    }
}

impl SamplingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SamplingMode::ExhaustiveSubsets => "exhaustive",
            SamplingMode::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ApproxConfig {
    pub epsilon: Epsilon,
    /// Sample size r; `None` selects [`ApproxConfig::default_sample_size`].
    pub sample_size: Option<usize>,
    pub mode: SamplingMode,
    pub trials: usize,
    pub seed: u64,
    pub threads: Threads,
}

/// Multiplier on ln(m)/ε² for the default sample size.
pub const SAMPLE_SIZE_CONSTANT: f64 = 12.0;

/// Largest number of r-subsets the exhaustive scheme will visit.
pub const MAX_EXHAUSTIVE_SAMPLES: u64 = 1 << 24;

impl ApproxConfig {
    pub fn new(epsilon: Epsilon) -> Self {
        ApproxConfig {
            epsilon,
            sample_size: None,
            mode: SamplingMode::ExhaustiveSubsets,
            trials: 64,
            seed: 0,
            threads: Threads::default(),
        }
    }

    pub fn radius(&self) -> usize {
        self.epsilon.radius()
    }

    /// ⌈12·ln(max(m, 2))/ε²⌉, capped at n.
    pub fn default_sample_size(&self, m: usize, n: usize) -> usize {
        let eps = self.epsilon.as_f64();
        let r = (SAMPLE_SIZE_CONSTANT * (m.max(2) as f64).ln() / (eps * eps)).ceil() as usize;
        r.clamp(1, n)
    }

    pub fn sample_size_for(&self, election: &Election) -> Result<usize> {
        let n = election.n();
        match self.sample_size {
            None => Ok(self.default_sample_size(election.m(), n)),
            Some(0) => Err(Error::Parameter("sample size must be at least 1".into())),
            Some(r) if r > n => Err(Error::Size {
                what: "sample size r",
                actual: r,
                cap: n,
            }),
            Some(r) => Ok(r),
        }
    }
}

fn require_minisum(query: &OutlierQuery) -> Result<()> {
    if query.rule != ScoringRule::Minisum {
        return Err(Error::Usage(format!(
            "approximation is only available for minisum, not {}",
            query.rule
        )));
    }
    Ok(())
}

/// Every size-`m_star` committee within Hamming distance `radius` of `vote`, each exactly
/// once, in lexicographic order.
pub fn hamming_ball_committees(
    vote: &ApprovalVote,
    radius: usize,
    m: usize,
    m_star: usize,
) -> impl Iterator<Item = Committee> {
    let inside = vote.indices();
    let outside: Vec<usize> = (0..m).filter(|&c| !vote.approved().contains(c)).collect();
    let a = inside.len();
    let mut found = Vec::new();
    // Drop `removed` approved candidates and add `added` unapproved ones.
    for removed in 0..=a {
        let Some(added) = (m_star + removed).checked_sub(a) else {
            continue;
        };
        if added > outside.len() || removed + added > radius {
            continue;
        }
        for_each_in_rank_range(a, removed, 0, binomial(a, removed), |drop| {
            let kept: Vec<usize> = {
                let mut d = drop.iter().peekable();
                (0..a)
                    .filter(|&i| {
                        if d.peek() == Some(&&i) {
                            d.next();
                            false
                        } else {
                            true
                        }
                    })
                    .map(|i| inside[i])
                    .collect()
            };
            for_each_in_rank_range(
                outside.len(),
                added,
                0,
                binomial(outside.len(), added),
                |add| {
                    let mut members = kept.clone();
                    members.extend(add.iter().map(|&j| outside[j]));
                    members.sort_unstable();
                    found.push(Committee::from_sorted_unchecked(m, members));
                },
            );
        });
    }
    found.sort();
    found.into_iter()
}

fn best_pairing(election: &Election, query: &OutlierQuery, committee: Committee) -> Solution {
    let (non_outliers, score) = score::best_nonoutliers_for_committee(
        query.rule,
        election,
        &committee,
        query.n_star(election),
    )
    .expect("n* ≤ n after validation");
    Solution {
        committee,
        non_outliers,
        score,
    }
}

/// Hamming-ball search around every vote plus a greedy fallback.
///
/// Returns the optimum whenever OPT ≤ n*/ε: some optimal non-outlier then lies within
/// ⌊1/ε⌋ of the optimal committee. The fallback takes the n* votes closest to the
/// whole-electorate greedy committee and re-greedies the committee on them.
pub fn approx_eps_mbar(
    election: &Election,
    query: &OutlierQuery,
    config: &ApproxConfig,
) -> Result<SolverReport> {
    require_minisum(query)?;
    query.validate(election)?;
    let start = Instant::now();
    let radius = config.radius();
    let (m, n) = (election.m(), election.n());
    let n_star = query.n_star(election);

    let (ball_best, nodes) = par::install(config.threads, || {
        par::min_over_range(n as u64, |votes| {
            let mut best: Option<(Score, Committee)> = None;
            let mut visited = 0u64;
            for i in votes {
                for committee in
                    hamming_ball_committees(election.vote(i as usize), radius, m, query.m_star)
                {
                    visited += 1;
                    let mut scores = score::per_vote_scores(query.rule, &committee, election);
                    scores.sort_unstable();
                    let total: Score = scores[..n_star].iter().sum();
                    if best
                        .as_ref()
                        .is_none_or(|(s, c)| (total, &committee) < (*s, c))
                    {
                        best = Some((total, committee));
                    }
                }
            }
            (best, visited)
        })
    });

    let everyone: Vec<usize> = (0..n).collect();
    let global = score::best_committee_for_votes(query.rule, election, &everyone, query.m_star)?;
    let (closest, _) =
        score::best_nonoutliers_for_committee(query.rule, election, &global, n_star)?;
    let fallback = score::best_committee_for_votes(query.rule, election, &closest, query.m_star)?;
    let fallback = best_pairing(election, query, fallback);

    let solution = match ball_best {
        Some((s, c)) if (s, &c) < (fallback.score, &fallback.committee) => {
            best_pairing(election, query, c)
        }
        _ => fallback,
    };
    Ok(SolverReport {
        solution,
        nodes_explored: nodes + 1,
        elapsed: start.elapsed(),
        algorithm: Algorithm::EpsMbar,
        optimality: Optimality::Bounded(format!(
            "score <= max(OPT, {}*mbar*OPT); exact when OPT <= n*/epsilon",
            config.epsilon
        )),
        threads: config.threads.effective(),
        seed: None,
    })
}

/// One sample V′: c(V′), then the n* votes V″ closest to it, then c(V″) paired with its
/// best non-outliers.
fn refine_sample(
    election: &Election,
    query: &OutlierQuery,
    sample: &[usize],
) -> (Score, Committee) {
    let n_star = query.n_star(election);
    let first = score::best_committee_for_votes(query.rule, election, sample, query.m_star)
        .expect("m* ≤ m after validation");
    let (closest, _) = score::best_nonoutliers_for_committee(query.rule, election, &first, n_star)
        .expect("n* ≤ n after validation");
    let second = score::best_committee_for_votes(query.rule, election, &closest, query.m_star)
        .expect("m* ≤ m after validation");
    let (_, total) = score::best_nonoutliers_for_committee(query.rule, election, &second, n_star)
        .expect("n* ≤ n after validation");
    (total, second)
}

/// Sample-and-refine scheme.
///
/// In exhaustive mode every r-subset is tried; in Monte-Carlo mode trial `k` draws its
/// subset from a generator seeded with `(seed, k)`, so the result does not depend on the
/// worker count and adding trials never worsens it.
pub fn approx_sampling(
    election: &Election,
    query: &OutlierQuery,
    config: &ApproxConfig,
) -> Result<SolverReport> {
    require_minisum(query)?;
    query.validate(election)?;
    let r = config.sample_size_for(election)?;
    if config.mode == SamplingMode::MonteCarlo && config.trials == 0 {
        return Err(Error::Parameter(
            "Monte-Carlo mode needs at least one trial".into(),
        ));
    }
    let n = election.n();
    if config.mode == SamplingMode::ExhaustiveSubsets && binomial(n, r) > MAX_EXHAUSTIVE_SAMPLES {
        return Err(Error::Size {
            what: "exhaustive sample count C(n, r)",
            actual: binomial(n, r).min(usize::MAX as u64) as usize,
            cap: MAX_EXHAUSTIVE_SAMPLES as usize,
        });
    }
    let start = Instant::now();

    let (best, nodes) = par::install(config.threads, || match config.mode {
        SamplingMode::ExhaustiveSubsets => par::min_over_range(binomial(n, r), |ranks| {
            let mut best: Option<(Score, Committee)> = None;
            let mut visited = 0u64;
            for_each_in_rank_range(n, r, ranks.start, ranks.end, |sample| {
                visited += 1;
                let key = refine_sample(election, query, sample);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            });
            (best, visited)
        }),
        SamplingMode::MonteCarlo => par::min_over_range(config.trials as u64, |trials| {
            let mut best: Option<(Score, Committee)> = None;
            let mut visited = 0u64;
            for trial in trials {
                visited += 1;
                let sample = draw_sample(config.seed, trial, n, r);
                let key = refine_sample(election, query, &sample);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
            (best, visited)
        }),
    });
    let (_, committee) = best.expect("at least one sample");
    let solution = best_pairing(election, query, committee);
    let (optimality, seed) = match config.mode {
        SamplingMode::ExhaustiveSubsets => (
            Optimality::Bounded(format!(
                "score <= (1+{})*OPT when some {r}-subset of the optimal non-outliers estimates every approval count within epsilon*n",
                config.epsilon
            )),
            None,
        ),
        SamplingMode::MonteCarlo => (Optimality::Heuristic, Some(config.seed)),
    };
    Ok(SolverReport {
        solution,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        algorithm: Algorithm::Sampling,
        optimality,
        threads: config.threads.effective(),
        seed,
    })
}

/// Uniform r-subset of `0..n` for one Monte-Carlo trial, ascending.
pub fn draw_sample(seed: u64, trial: u64, n: usize, r: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut sample = rand::seq::index::sample(&mut rng, n, r).into_vec();
    sample.sort_unstable();
    sample
}
