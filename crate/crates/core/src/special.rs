//! Polynomial exact solvers for two structured minisum classes.
//!
//! * Every ballot approves at most one candidate: greedy committee plus class-ordered
//!   outlier removal.
//! * Every candidate is approved by at most one ballot: dynamic program over
//!   (votes seen, outliers used, committee seats allocated).

use std::time::Instant;

use crate::error::{Error, Result};
use crate::exact::{Algorithm, Optimality, SolverReport};
use crate::model::{Committee, Election, OutlierQuery, Score, ScoringRule, Solution};
use crate::score::{self, top_candidates};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureClass {
    SingleApprovalVotes,
    SingleApproverCandidates,
    Both,
    Neither,
}

impl StructureClass {
    pub fn single_approval_votes(self) -> bool {
        matches!(
            self,
            StructureClass::SingleApprovalVotes | StructureClass::Both
        )
    }

    pub fn single_approver_candidates(self) -> bool {
        matches!(
            self,
            StructureClass::SingleApproverCandidates | StructureClass::Both
        )
    }
}

pub fn detect_structure(election: &Election) -> StructureClass {
    let single_vote = election.votes().iter().all(|v| v.len() <= 1);
    let single_cand = score::approval_counts(election).iter().all(|&c| c <= 1);
    match (single_vote, single_cand) {
        (true, true) => StructureClass::Both,
        (true, false) => StructureClass::SingleApprovalVotes,
        (false, true) => StructureClass::SingleApproverCandidates,
        (false, false) => StructureClass::Neither,
    }
}

fn require_minisum(query: &OutlierQuery) -> Result<()> {
    if query.rule != ScoringRule::Minisum {
        return Err(Error::Usage(format!(
            "the structured solvers handle minisum only, not {}",
            query.rule
        )));
    }
    Ok(())
}

fn report(solution: Solution, algorithm: Algorithm, nodes: u64, start: Instant) -> SolverReport {
    SolverReport {
        solution,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        algorithm,
        optimality: Optimality::Exact,
        threads: 1,
        seed: None,
    }
}

/// Exact minisum when every ballot approves at most one candidate.
///
/// The committee is the m* most-approved candidates. Removing a vote approving a
/// non-member saves m*+1, an empty vote saves m*, and a vote approving a member saves
/// m*−1, so outliers are taken from those classes in that order (lowest index first).
pub fn solve_single_approval_greedy(
    election: &Election,
    query: &OutlierQuery,
) -> Result<SolverReport> {
    require_minisum(query)?;
    query.validate(election)?;
    if let Some(i) = election.votes().iter().position(|v| v.len() > 1) {
        return Err(Error::Structure(format!(
            "vote {i} approves {} candidates; the greedy needs at most one",
            election.vote(i).len()
        )));
    }
    let start = Instant::now();
    let counts = score::approval_counts(election);
    let committee =
        Committee::from_sorted_unchecked(election.m(), top_candidates(&counts, query.m_star));

    let (mut members, mut others, mut empty) = (Vec::new(), Vec::new(), Vec::new());
    for (i, v) in election.votes().iter().enumerate() {
        match v.approved().iter().next() {
            Some(c) if committee.members().contains(c) => members.push(i),
            Some(_) => others.push(i),
            None => empty.push(i),
        }
    }
    let mut is_outlier = vec![false; election.n()];
    for &i in others
        .iter()
        .chain(&empty)
        .chain(&members)
        .take(query.n_bar)
    {
        is_outlier[i] = true;
    }
    let non_outliers: Vec<usize> = (0..election.n()).filter(|&i| !is_outlier[i]).collect();
    let score = score::total_score(query.rule, &committee, election, &non_outliers);
    Ok(report(
        Solution {
            committee,
            non_outliers,
            score,
        },
        Algorithm::SingleApprovalGreedy,
        election.n() as u64,
        start,
    ))
}

/// Back-pointer of one DP cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpChoice {
    Outlier,
    /// The vote keeps all of its approved candidates in the committee.
    NonOutlierFull,
    /// Remaining capacity is smaller than the vote; all of it goes to this vote.
    NonOutlierPartial,
}

/// Minimal residual cost Σ(|S_i| − 2·x_i) over processed non-outliers, where x_i is the number
/// of committee seats allocated to vote i.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpCell {
    pub value: Score,
    pub choice: Option<DpChoice>,
}

/// Exact minisum when ballots are pairwise disjoint.
///
/// With disjoint ballots |X Δ S_i| = m* + |S_i| − 2|X ∩ S_i|, so the score is
/// n*·m* + Σ(|S_i| − 2x_i) over non-outliers. Cell (i, j, ℓ) holds the least residual over
/// the first i votes with exactly j outliers and at most ℓ seats allocated. Base: (0, 0, ℓ)
/// is 0 and (0, j > 0, ℓ) is unreachable. Unallocated seats are padded with the
/// smallest-index unallocated candidates.
pub fn solve_single_approver_dp(election: &Election, query: &OutlierQuery) -> Result<SolverReport> {
    require_minisum(query)?;
    query.validate(election)?;
    let counts = score::approval_counts(election);
    if let Some(c) = counts.iter().position(|&k| k > 1) {
        return Err(Error::Structure(format!(
            "candidate {c} is approved by {} votes; the DP needs disjoint votes",
            counts[c]
        )));
    }
    let start = Instant::now();
    let (n, n_bar, cap) = (election.n(), query.n_bar, query.m_star);
    let sizes: Vec<usize> = election.votes().iter().map(|v| v.len()).collect();

    let idx = |i: usize, j: usize, l: usize| (i * (n_bar + 1) + j) * (cap + 1) + l;
    let mut table: Vec<Option<DpCell>> = vec![None; (n + 1) * (n_bar + 1) * (cap + 1)];
    for l in 0..=cap {
        table[idx(0, 0, l)] = Some(DpCell {
            value: 0,
            choice: None,
        });
    }
    for i in 1..=n {
        let s = sizes[i - 1];
        for j in 0..=n_bar.min(i) {
            for l in 0..=cap {
                let keep = if l >= s {
                    table[idx(i - 1, j, l - s)]
                        .map(|c| (c.value - s as Score, DpChoice::NonOutlierFull))
                } else {
                    table[idx(i - 1, j, 0)].map(|c| {
                        (
                            c.value + s as Score - 2 * l as Score,
                            DpChoice::NonOutlierPartial,
                        )
                    })
                };
                let drop = if j > 0 {
                    table[idx(i - 1, j - 1, l)].map(|c| (c.value, DpChoice::Outlier))
                } else {
                    None
                };
                let best = match (keep, drop) {
                    (Some(k), Some(d)) => Some(if d.0 < k.0 { d } else { k }),
                    (k, d) => k.or(d),
                };
                table[idx(i, j, l)] = best.map(|(value, choice)| DpCell {
                    value,
                    choice: Some(choice),
                });
            }
        }
    }

    let final_cell = table[idx(n, n_bar, cap)].expect("n̄ < n keeps the final cell reachable");
    let mut allocated = Vec::new();
    let mut non_outliers = Vec::new();
    let (mut j, mut l) = (n_bar, cap);
    for i in (1..=n).rev() {
        let cell = table[idx(i, j, l)].expect("back-pointers stay on reachable cells");
        let vote = election.vote(i - 1);
        match cell.choice.expect("non-base cell") {
            DpChoice::Outlier => j -= 1,
            DpChoice::NonOutlierFull => {
                non_outliers.push(i - 1);
                allocated.extend(vote.approved().iter());
                l -= sizes[i - 1];
            }
            DpChoice::NonOutlierPartial => {
                non_outliers.push(i - 1);
                allocated.extend(vote.approved().iter().take(l));
                l = 0;
            }
        }
    }
    non_outliers.reverse();
    let mut chosen = vec![false; election.m()];
    for &c in &allocated {
        chosen[c] = true;
    }
    let mut padding = (0..election.m()).filter(|&c| !chosen[c]);
    while allocated.len() < cap {
        allocated.push(padding.next().expect("m* ≤ m"));
    }
    let committee = Committee::new(election.m(), allocated)?;
    let score = score::total_score(query.rule, &committee, election, &non_outliers);
    debug_assert_eq!(
        score,
        (query.n_star(election) * cap) as Score + final_cell.value,
        "residual identity"
    );
    Ok(report(
        Solution {
            committee,
            non_outliers,
            score,
        },
        Algorithm::SingleApproverDp,
        table.len() as u64,
        start,
    ))
}
