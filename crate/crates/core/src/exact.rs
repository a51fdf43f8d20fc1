//! Exact optimizers: committee enumeration, non-outlier-set enumeration, the
//! zero-distance decision procedure for minisum, and an independent double-enumeration
//! oracle that exists only to validate the others.
//!
//! All solvers break ties the same way: lowest score, then the lexicographically
//! smallest committee, with non-outliers re-derived from that committee. Their outputs are
//! therefore comparable bit for bit.

use std::fmt;
use std::time::{Duration, Instant};

use crate::bitset::CandidateSet;
use crate::combinations::{binomial, for_each_in_rank_range};
use crate::error::{Error, Result};
use crate::model::{Committee, Election, OutlierQuery, Score, ScoringRule, Solution};
use crate::par::{self, Threads};
use crate::score::{self, score_from_sizes, top_candidates};

/// Which algorithm produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    CommitteeEnum,
    VotersetEnum,
    Oracle,
    FptDecision,
    EpsMbar,
    Sampling,
    SingleApprovalGreedy,
    SingleApproverDp,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::CommitteeEnum => "committee-enum",
            Algorithm::VotersetEnum => "voterset-enum",
            Algorithm::Oracle => "oracle",
            Algorithm::FptDecision => "fpt-decide",
            Algorithm::EpsMbar => "eps-mbar",
            Algorithm::Sampling => "sampling",
            Algorithm::SingleApprovalGreedy => "single-approval-greedy",
            Algorithm::SingleApproverDp => "single-approver-dp",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a solver guarantees about its returned score.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimality {
    Exact,
    /// Heuristic result with a human-readable bound relative to the optimum.
    Bounded(String),
    Heuristic,
}

impl Optimality {
    pub fn is_exact(&self) -> bool {
        matches!(self, Optimality::Exact)
    }
}

#[derive(Clone, Debug)]
pub struct SolverReport {
    pub solution: Solution,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub algorithm: Algorithm,
    pub optimality: Optimality,
    pub threads: usize,
    pub seed: Option<u64>,
}

/// Refusal thresholds for the exponential solvers. Exceeding one is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactLimits {
    pub committee_enum_max_m: usize,
    pub voterset_enum_max_n: usize,
    pub oracle_max_m: usize,
    pub oracle_max_n: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            committee_enum_max_m: 30,
            voterset_enum_max_n: 25,
            oracle_max_m: 12,
            oracle_max_n: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    pub limits: ExactLimits,
    pub threads: Threads,
}

impl SolveOptions {
    pub fn with_threads(threads: usize) -> Self {
        SolveOptions {
            threads: Threads(Some(threads)),
            ..Default::default()
        }
    }
}

fn check_cap(what: &'static str, actual: usize, cap: usize) -> Result<()> {
    if actual > cap {
        Err(Error::Size { what, actual, cap })
    } else {
        Ok(())
    }
}

/// Pairs `committee` with its best non-outliers.
fn canonical_solution(
    election: &Election,
    query: &OutlierQuery,
    committee: Committee,
) -> Result<Solution> {
    let (non_outliers, score) = score::best_nonoutliers_for_committee(
        query.rule,
        election,
        &committee,
        query.n_star(election),
    )?;
    Ok(Solution {
        committee,
        non_outliers,
        score,
    })
}

/// Sum of the `n_star` smallest entries plus, when `keep_negative`, any further negatives.
/// Sorts `scores` in place.
fn lowest_sum(scores: &mut [Score], n_star: usize, keep_negative: bool) -> Score {
    scores.sort_unstable();
    let mut total: Score = scores[..n_star].iter().sum();
    if keep_negative {
        total += scores[n_star..]
            .iter()
            .take_while(|&&s| s < 0)
            .sum::<Score>();
    }
    total
}

/// Enumerates every size-m* committee in lexicographic order, pairing each with its best
/// non-outliers. Exact for all four rules.
pub fn solve_committee_enum(
    election: &Election,
    query: &OutlierQuery,
    opts: &SolveOptions,
) -> Result<SolverReport> {
    query.validate(election)?;
    check_cap("m", election.m(), opts.limits.committee_enum_max_m)?;
    let start = Instant::now();
    let (m, k) = (election.m(), query.m_star);
    let n_star = query.n_star(election);
    let rule = query.rule;
    let sizes: Vec<usize> = election.votes().iter().map(|v| v.len()).collect();

    let (best, nodes) = par::install(opts.threads, || {
        par::min_over_range(binomial(m, k), |ranks| {
            let mut scratch = vec![0; election.n()];
            let mut best: Option<(Score, Vec<usize>)> = None;
            let mut visited = 0u64;
            for_each_in_rank_range(m, k, ranks.start, ranks.end, |combo| {
                visited += 1;
                let members = CandidateSet::from_indices(m, combo.iter().copied());
                for (slot, (vote, &s)) in
                    scratch.iter_mut().zip(election.votes().iter().zip(&sizes))
                {
                    *slot = score_from_sizes(rule, k, s, members.intersection_len(vote.approved()));
                }
                let total = lowest_sum(&mut scratch, n_star, !rule.is_nonnegative());
                if best.as_ref().is_none_or(|(b, _)| total < *b) {
                    best = Some((total, combo.to_vec()));
                }
            });
            (best, visited)
        })
    });
    let (_, indices) = best.expect("at least one committee exists");
    let solution = canonical_solution(
        election,
        query,
        Committee::from_sorted_unchecked(m, indices),
    )?;
    Ok(SolverReport {
        solution,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        algorithm: Algorithm::CommitteeEnum,
        optimality: Optimality::Exact,
        threads: opts.threads.effective(),
        seed: None,
    })
}

/// Enumerates candidate non-outlier sets and takes the greedy committee of each.
///
/// For the nonnegative rules the optimum uses exactly n* votes, so only the C(n, n*) subsets
/// of that size are visited. Under net disapproval the optimum may need more than n* votes
/// and no single n*-subset need lead to it, so every subset of size at least n* is visited
/// and each is then augmented with the remaining negative-score votes.
pub fn solve_voterset_enum(
    election: &Election,
    query: &OutlierQuery,
    opts: &SolveOptions,
) -> Result<SolverReport> {
    query.validate(election)?;
    check_cap("n", election.n(), opts.limits.voterset_enum_max_n.min(63))?;
    let start = Instant::now();
    let (m, n) = (election.m(), election.n());
    let n_star = query.n_star(election);
    let rule = query.rule;

    let evaluate = |subset: &[usize]| -> (Score, Vec<usize>) {
        let counts = score::counts_over(election, subset.iter().copied());
        let indices = top_candidates(&counts, query.m_star);
        let committee = CandidateSet::from_indices(m, indices.iter().copied());
        let mut total: Score = 0;
        let mut in_subset = vec![false; n];
        for &i in subset {
            in_subset[i] = true;
        }
        for (i, vote) in election.votes().iter().enumerate() {
            let s = score_from_sizes(
                rule,
                query.m_star,
                vote.len(),
                committee.intersection_len(vote.approved()),
            );
            if in_subset[i] || (!rule.is_nonnegative() && s < 0) {
                total += s;
            }
        }
        (total, indices)
    };

    let (best, nodes) = par::install(opts.threads, || {
        if rule.is_nonnegative() {
            par::min_over_range(binomial(n, n_star), |ranks| {
                let mut best: Option<(Score, Vec<usize>)> = None;
                let mut visited = 0u64;
                for_each_in_rank_range(n, n_star, ranks.start, ranks.end, |subset| {
                    visited += 1;
                    let key = evaluate(subset);
                    if best.as_ref().is_none_or(|b| key < *b) {
                        best = Some(key);
                    }
                });
                (best, visited)
            })
        } else {
            par::min_over_range(1u64 << n, |masks| {
                let mut best: Option<(Score, Vec<usize>)> = None;
                let mut visited = 0u64;
                let mut subset = Vec::with_capacity(n);
                for mask in masks {
                    if (mask.count_ones() as usize) < n_star {
                        continue;
                    }
                    visited += 1;
                    subset.clear();
                    subset.extend((0..n).filter(|&i| mask >> i & 1 == 1));
                    let key = evaluate(&subset);
                    if best.as_ref().is_none_or(|b| key < *b) {
                        best = Some(key);
                    }
                }
                (best, visited)
            })
        }
    });
    let (_, indices) = best.expect("at least one vote subset exists");
    let solution = canonical_solution(
        election,
        query,
        Committee::from_sorted_unchecked(m, indices),
    )?;
    Ok(SolverReport {
        solution,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        algorithm: Algorithm::VotersetEnum,
        optimality: Optimality::Exact,
        threads: opts.threads.effective(),
        seed: None,
    })
}

/// Which case of the minisum decision procedure answered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FptBranch {
    /// t < n*: some non-outlier must coincide with the committee.
    ZeroDistance,
    /// t ≥ n*: delegated to non-outlier-set enumeration.
    VotersetEnum,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub accepted: bool,
    /// Certificate with score ≤ t; present exactly when `accepted`.
    pub witness: Option<Solution>,
    pub branch: FptBranch,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Decides whether a minisum solution with score ≤ t exists.
///
/// When t < n*, n* nonnegative distances summing below n* force one of them to be zero, so
/// the committee must equal some ballot of size m*; each such ballot is tried as the
/// committee. Otherwise the non-outlier-set enumeration settles it.
pub fn decide_minisum_fpt(
    election: &Election,
    query: &OutlierQuery,
    opts: &SolveOptions,
) -> Result<Decision> {
    if query.rule != ScoringRule::Minisum {
        return Err(Error::Usage(format!(
            "the zero-distance decision procedure is only sound for minisum, not {}",
            query.rule
        )));
    }
    query.validate(election)?;
    let t = query
        .target
        .ok_or_else(|| Error::Usage("a target score t is required".into()))?;
    if t < 0 {
        return Err(Error::Parameter(format!("target score {t} is negative")));
    }
    let start = Instant::now();
    let n_star = query.n_star(election);

    if t < n_star as Score {
        let mut best: Option<Solution> = None;
        let mut nodes = 0u64;
        for vote in election.votes() {
            if vote.len() != query.m_star {
                continue;
            }
            nodes += 1;
            let committee = Committee::from_set(vote.approved().clone());
            let candidate = canonical_solution(election, query, committee)?;
            let better = best
                .as_ref()
                .is_none_or(|b| (candidate.score, &candidate.committee) < (b.score, &b.committee));
            if better {
                best = Some(candidate);
            }
        }
        let witness = best.filter(|s| s.score <= t);
        return Ok(Decision {
            accepted: witness.is_some(),
            witness,
            branch: FptBranch::ZeroDistance,
            nodes_explored: nodes,
            elapsed: start.elapsed(),
        });
    }

    let report = solve_voterset_enum(election, query, opts)?;
    let accepted = report.solution.score <= t;
    Ok(Decision {
        accepted,
        witness: accepted.then_some(report.solution),
        branch: FptBranch::VotersetEnum,
        nodes_explored: report.nodes_explored,
        elapsed: start.elapsed(),
    })
}

/// Ground truth by double enumeration: every size-m* committee against every vote subset of
/// size at least n*, scored directly with no half-solver shortcuts.
///
/// Among optimal pairs it returns the lexicographically smallest committee, then the
/// smallest non-outlier set, then the lexicographically smallest one, which coincides with
/// the tie-break of the other exact solvers.
pub fn brute_force_oracle(
    election: &Election,
    query: &OutlierQuery,
    opts: &SolveOptions,
) -> Result<SolverReport> {
    query.validate(election)?;
    check_cap("m", election.m(), opts.limits.oracle_max_m)?;
    check_cap("n", election.n(), opts.limits.oracle_max_n.min(30))?;
    let start = Instant::now();
    let (m, n, k) = (election.m(), election.n(), query.m_star);
    let n_star = query.n_star(election);

    let (best, nodes) = par::install(opts.threads, || {
        par::min_over_range(binomial(m, k), |ranks| {
            let mut best: Option<(Score, Vec<usize>, usize, Vec<usize>)> = None;
            let mut visited = 0u64;
            for_each_in_rank_range(m, k, ranks.start, ranks.end, |combo| {
                let committee = Committee::from_sorted_unchecked(m, combo.to_vec());
                let scores: Vec<Score> = election
                    .votes()
                    .iter()
                    .map(|v| score::per_vote_score(query.rule, &committee, v))
                    .collect();
                // Gray-code walk over all 2^n subsets.
                let mut mask = 0u64;
                let mut total: Score = 0;
                let mut local: Option<(Score, usize, u64)> = None;
                for step in 0..(1u64 << n) {
                    if step > 0 {
                        let bit = step.trailing_zeros() as usize;
                        mask ^= 1 << bit;
                        if mask >> bit & 1 == 1 {
                            total += scores[bit];
                        } else {
                            total -= scores[bit];
                        }
                    }
                    visited += 1;
                    let size = mask.count_ones() as usize;
                    if size < n_star {
                        continue;
                    }
                    let better = match local {
                        None => true,
                        Some((s, sz, other)) => {
                            (total, size) < (s, sz)
                                || ((total, size) == (s, sz) && lex_less(mask, other))
                        }
                    };
                    if better {
                        local = Some((total, size, mask));
                    }
                }
                let (s, size, mask) = local.expect("the full vote set qualifies");
                let key = (s, combo.to_vec(), size, bits(mask, n));
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            });
            (best, visited)
        })
    });
    let (score, committee, _, non_outliers) = best.expect("at least one committee exists");
    Ok(SolverReport {
        solution: Solution {
            committee: Committee::from_sorted_unchecked(m, committee),
            non_outliers,
            score,
        },
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        algorithm: Algorithm::Oracle,
        optimality: Optimality::Exact,
        threads: opts.threads.effective(),
        seed: None,
    })
}

/// Work bound, in (committee, vote subset) pairs, under which [`reference_solve`] runs the
/// oracle even beyond its default size caps.
pub const REFERENCE_ORACLE_BUDGET: u64 = 1 << 26;

/// Ground truth for instances past the oracle caps, such as generated reductions: the oracle
/// when C(m, m*)·2^n fits [`REFERENCE_ORACLE_BUDGET`], committee enumeration otherwise.
pub fn reference_solve(
    election: &Election,
    query: &OutlierQuery,
    opts: &SolveOptions,
) -> Result<SolverReport> {
    query.validate(election)?;
    let (m, n) = (election.m(), election.n());
    let work = if n < 63 {
        binomial(m, query.m_star).saturating_mul(1 << n)
    } else {
        u64::MAX
    };
    if work <= REFERENCE_ORACLE_BUDGET {
        let raised = SolveOptions {
            limits: ExactLimits {
                oracle_max_m: m,
                oracle_max_n: n,
                ..opts.limits
            },
            threads: opts.threads,
        };
        brute_force_oracle(election, query, &raised)
    } else {
        solve_committee_enum(election, query, opts)
    }
}

/// For equal-size sets: the one holding the smallest element of the symmetric difference
/// has the lexicographically smaller ascending listing.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

fn bits(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ScoringRule::*;

    fn toy(m: usize, m_star: usize, copies: usize) -> Election {
        // `copies` ballots approving {0..m_star} and one approving the complement.
        let l: Vec<usize> = (0..m_star).collect();
        let rest: Vec<usize> = (m_star..m).collect();
        let mut lists = vec![l; copies];
        lists.push(rest);
        Election::from_lists(m, &lists).unwrap()
    }

    #[test]
    fn toy_election_drops_the_complement_vote() {
        let e = toy(6, 3, 4);
        let q = OutlierQuery::new(Minisum, 3, 1);
        let opts = SolveOptions::default();
        for report in [
            solve_committee_enum(&e, &q, &opts).unwrap(),
            solve_voterset_enum(&e, &q, &opts).unwrap(),
            brute_force_oracle(&e, &q, &opts).unwrap(),
        ] {
            assert_eq!(report.solution.score, 0);
            assert_eq!(report.solution.committee.indices(), &[0, 1, 2]);
            assert_eq!(report.solution.non_outliers, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn no_outliers_is_winner_determination() {
        let e = Election::from_lists(4, &[vec![0, 1], vec![1, 2], vec![3], vec![1]]).unwrap();
        let opts = SolveOptions::default();
        for rule in ScoringRule::ALL {
            let q = OutlierQuery::new(rule, 2, 0);
            let all: Vec<usize> = (0..4).collect();
            let c = score::best_committee_for_votes(rule, &e, &all, 2).unwrap();
            let wd = score::total_score(rule, &c, &e, &all);
            let wd = if rule.is_nonnegative() {
                wd
            } else {
                score::best_nonoutliers_for_committee(rule, &e, &c, 4)
                    .unwrap()
                    .1
            };
            assert_eq!(
                solve_committee_enum(&e, &q, &opts).unwrap().solution.score,
                wd
            );
            assert_eq!(
                brute_force_oracle(&e, &q, &opts).unwrap().solution.score,
                wd
            );
        }
    }

    #[test]
    fn oracle_hand_enumerated_example() {
        let e = Election::from_lists(1, &[vec![0], vec![], vec![0]]).unwrap();
        let q = OutlierQuery::new(Minisum, 1, 1);
        let r = brute_force_oracle(&e, &q, &SolveOptions::default()).unwrap();
        assert_eq!(r.solution.committee.indices(), &[0]);
        assert_eq!(r.solution.non_outliers, vec![0, 2]);
        assert_eq!(r.solution.score, 0);
    }

    #[test]
    fn voterset_singletons_when_all_but_one_vote_is_dropped() {
        let e = Election::from_lists(4, &[vec![0, 1, 2], vec![1, 3], vec![2]]).unwrap();
        let q = OutlierQuery::new(Minisum, 2, 2);
        let r = solve_voterset_enum(&e, &q, &SolveOptions::default()).unwrap();
        assert_eq!(r.solution.score, 0);
        assert_eq!(r.solution.committee.indices(), &[1, 3]);
        assert_eq!(r.solution.non_outliers, vec![1]);
    }

    #[test]
    fn net_disapproval_needs_supersets_of_n_star() {
        // Each ballot alone greedily picks its smallest candidate, yet candidate 3 is approved
        // by all three ballots and is the unique optimum with score -3.
        let e = Election::from_lists(4, &[vec![0, 3], vec![1, 3], vec![2, 3]]).unwrap();
        let q = OutlierQuery::new(NetDisapproval, 1, 2);
        let opts = SolveOptions::default();
        let oracle = brute_force_oracle(&e, &q, &opts).unwrap();
        assert_eq!(oracle.solution.score, -3);
        assert_eq!(
            solve_voterset_enum(&e, &q, &opts).unwrap().solution,
            oracle.solution
        );
        assert_eq!(
            solve_committee_enum(&e, &q, &opts).unwrap().solution,
            oracle.solution
        );
    }

    #[test]
    fn caps_refuse_with_size_error() {
        let e = Election::from_lists(13, &[vec![0]]).unwrap();
        let q = OutlierQuery::new(Minisum, 1, 0);
        let err = brute_force_oracle(&e, &q, &SolveOptions::default()).unwrap_err();
        assert_eq!(
            err,
            Error::Size {
                what: "m",
                actual: 13,
                cap: 12
            }
        );
        let mut opts = SolveOptions::default();
        opts.limits.committee_enum_max_m = 10;
        assert!(matches!(
            solve_committee_enum(&e, &q, &opts),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn fpt_zero_distance_case() {
        let e = Election::from_lists(5, &[vec![1, 2], vec![1, 2], vec![1, 2]]).unwrap();
        let q = OutlierQuery::new(Minisum, 2, 0).with_target(0);
        let d = decide_minisum_fpt(&e, &q, &SolveOptions::default()).unwrap();
        assert!(d.accepted);
        assert_eq!(d.branch, FptBranch::ZeroDistance);
        assert_eq!(d.witness.unwrap().committee.indices(), &[1, 2]);
    }

    #[test]
    fn fpt_rejects_other_rules_and_missing_target() {
        let e = Election::from_lists(2, &[vec![0]]).unwrap();
        let q = OutlierQuery::new(Disapproval, 1, 0).with_target(0);
        assert!(matches!(
            decide_minisum_fpt(&e, &q, &SolveOptions::default()),
            Err(Error::Usage(_))
        ));
        let q = OutlierQuery::new(Minisum, 1, 0);
        assert!(matches!(
            decide_minisum_fpt(&e, &q, &SolveOptions::default()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn lex_order_on_masks() {
        // {0,3} < {1,2}
        assert!(lex_less(0b1001, 0b0110));
        assert!(!lex_less(0b0110, 0b1001));
        assert!(!lex_less(0b11, 0b11));
    }
}
