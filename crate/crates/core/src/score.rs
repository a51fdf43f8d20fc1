//! Per-vote and total scores, plus the two polynomial half-solvers every other solver composes:
//! the best committee for a fixed set of votes, and the best non-outliers for a fixed committee.

use crate::error::{Error, Result};
use crate::model::{ApprovalVote, Committee, Election, Score, ScoringRule};

/// Score `committee` incurs from a single ballot.
#[inline]
pub fn per_vote_score(rule: ScoringRule, committee: &Committee, vote: &ApprovalVote) -> Score {
    let shared = committee.members().intersection_len(vote.approved());
    score_from_sizes(rule, committee.len(), vote.len(), shared)
}

/// Per-vote score from |X|, |S| and |X ∩ S|.
#[inline]
pub(crate) fn score_from_sizes(rule: ScoringRule, x: usize, s: usize, shared: usize) -> Score {
    let (x, s, shared) = (x as Score, s as Score, shared as Score);
    match rule {
        ScoringRule::Minisum => x + s - 2 * shared,
        ScoringRule::Disapproval => x - shared,
        ScoringRule::DisapprovalPrime => s - shared,
        ScoringRule::NetDisapproval => x - 2 * shared,
    }
}

/// Sum of per-vote scores over `subset` (vote indices).
pub fn total_score(
    rule: ScoringRule,
    committee: &Committee,
    election: &Election,
    subset: &[usize],
) -> Score {
    subset
        .iter()
        .map(|&i| per_vote_score(rule, committee, election.vote(i)))
        .sum()
}

/// Per-vote scores of every ballot in the election.
pub fn per_vote_scores(
    rule: ScoringRule,
    committee: &Committee,
    election: &Election,
) -> Vec<Score> {
    election
        .votes()
        .iter()
        .map(|v| per_vote_score(rule, committee, v))
        .collect()
}

/// Number of approvals each candidate receives from the whole election.
pub fn approval_counts(election: &Election) -> Vec<usize> {
    counts_over(election, 0..election.n())
}

pub(crate) fn counts_over(
    election: &Election,
    subset: impl IntoIterator<Item = usize>,
) -> Vec<usize> {
    let mut counts = vec![0; election.m()];
    for i in subset {
        for c in election.vote(i).approved().iter() {
            counts[c] += 1;
        }
    }
    counts
}

/// The `m_star` candidates with the most approvals (ties to the smaller index).
pub(crate) fn top_candidates(counts: &[usize], m_star: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
    order.truncate(m_star);
    order.sort_unstable();
    order
}

/// Winner determination restricted to `subset`.
///
/// For every rule the total decomposes per candidate and is minimized by the `m_star`
/// highest approval counts within `subset`; ties go to the smallest candidate index.
pub fn best_committee_for_votes(
    _rule: ScoringRule,
    election: &Election,
    subset: &[usize],
    m_star: usize,
) -> Result<Committee> {
    if m_star > election.m() {
        return Err(Error::Parameter(format!(
            "committee size {m_star} exceeds candidate count {}",
            election.m()
        )));
    }
    let counts = counts_over(election, subset.iter().copied());
    Ok(Committee::from_sorted_unchecked(
        election.m(),
        top_candidates(&counts, m_star),
    ))
}

/// The `n_star` votes scoring lowest against `committee` (ties to the smaller vote index).
///
/// Under net disapproval every remaining vote with a strictly negative score is added too.
/// Returns ascending vote indices and their total.
pub fn best_nonoutliers_for_committee(
    rule: ScoringRule,
    election: &Election,
    committee: &Committee,
    n_star: usize,
) -> Result<(Vec<usize>, Score)> {
    if n_star > election.n() {
        return Err(Error::Parameter(format!(
            "{n_star} non-outliers requested from {} votes",
            election.n()
        )));
    }
    let scores = per_vote_scores(rule, committee, election);
    Ok(select_lowest(&scores, n_star, rule.is_nonnegative()))
}

pub(crate) fn select_lowest(
    scores: &[Score],
    n_star: usize,
    nonnegative: bool,
) -> (Vec<usize>, Score) {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by_key(|&i| (scores[i], i));
    let keep = if nonnegative {
        n_star
    } else {
        let negatives = order.iter().take_while(|&&i| scores[i] < 0).count();
        n_star.max(negatives)
    };
    order.truncate(keep);
    let total = order.iter().map(|&i| scores[i]).sum();
    order.sort_unstable();
    (order, total)
}
