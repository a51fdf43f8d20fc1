//! Domain types: ballots, elections, scoring rules, queries, committees and solutions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::CandidateSet;
use crate::error::{Error, Result};
use crate::score;

/// Signed total score. Only net disapproval produces negative values.
pub type Score = i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateId(pub usize);

/// One approval ballot: the subset of candidates the voter approves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ApprovalVote {
    approved: CandidateSet,
    size: usize,
}

impl ApprovalVote {
    pub fn new(approved: CandidateSet) -> Self {
        let size = approved.len();
        ApprovalVote { approved, size }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(m: usize, indices: I) -> Self {
        Self::new(CandidateSet::from_indices(m, indices))
    }

    pub fn approved(&self) -> &CandidateSet {
        &self.approved
    }

    /// Number of approved candidates.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn approves(&self, c: CandidateId) -> bool {
        self.approved.contains(c.0)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.approved.to_vec()
    }
}

/// `m` candidates and an ordered list of ballots. Votes are identified by position;
/// duplicate ballots stay distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    m: usize,
    votes: Vec<ApprovalVote>,
}

impl Election {
    pub fn new(m: usize, votes: Vec<ApprovalVote>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parameter(
                "an election needs at least one candidate".into(),
            ));
        }
        if votes.is_empty() {
            return Err(Error::Parameter(
                "an election needs at least one vote".into(),
            ));
        }
        for (i, v) in votes.iter().enumerate() {
            if v.approved.span() > m {
                return Err(Error::Parameter(format!(
                    "vote {i} approves candidate {} but m = {m}",
                    v.approved.span() - 1
                )));
            }
        }
        Ok(Election { m, votes })
    }

    /// Builds an election from per-vote index lists, rejecting out-of-range indices.
    pub fn from_lists<V: AsRef<[usize]>>(m: usize, lists: &[V]) -> Result<Self> {
        let mut votes = Vec::with_capacity(lists.len());
        for (i, list) in lists.iter().enumerate() {
            if let Some(&bad) = list.as_ref().iter().find(|&&c| c >= m) {
                return Err(Error::Parameter(format!(
                    "vote {i} approves candidate {bad} but m = {m}"
                )));
            }
            votes.push(ApprovalVote::from_indices(m, list.as_ref().iter().copied()));
        }
        Election::new(m, votes)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.votes.len()
    }

    pub fn votes(&self) -> &[ApprovalVote] {
        &self.votes
    }

    pub fn vote(&self, i: usize) -> &ApprovalVote {
        &self.votes[i]
    }

    /// Vote index lists, each ascending.
    pub fn vote_lists(&self) -> Vec<Vec<usize>> {
        self.votes.iter().map(ApprovalVote::indices).collect()
    }
}

/// The four per-vote scores a committee X can incur from a ballot S.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScoringRule {
    /// |X Δ S|
    Minisum,
    /// |X \ S|
    Disapproval,
    /// |S \ X|
    DisapprovalPrime,
    /// |X \ S| − |X ∩ S|
    NetDisapproval,
}

impl ScoringRule {
    pub const ALL: [ScoringRule; 4] = [
        ScoringRule::Minisum,
        ScoringRule::Disapproval,
        ScoringRule::DisapprovalPrime,
        ScoringRule::NetDisapproval,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScoringRule::Minisum => "minisum",
            ScoringRule::Disapproval => "disapproval",
            ScoringRule::DisapprovalPrime => "disapproval-prime",
            ScoringRule::NetDisapproval => "net-disapproval",
        }
    }

    /// True when per-vote scores are never negative.
    pub fn is_nonnegative(self) -> bool {
        !matches!(self, ScoringRule::NetDisapproval)
    }
}

impl fmt::Display for ScoringRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScoringRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScoringRule::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown scoring rule `{s}`")))
    }
}

/// Scoring rule, committee size `m_star`, outlier budget `n_bar` and an optional target score.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OutlierQuery {
    pub rule: ScoringRule,
    pub m_star: usize,
    pub n_bar: usize,
    pub target: Option<Score>,
}

impl OutlierQuery {
    pub fn new(rule: ScoringRule, m_star: usize, n_bar: usize) -> Self {
        OutlierQuery {
            rule,
            m_star,
            n_bar,
            target: None,
        }
    }

    pub fn with_target(mut self, t: Score) -> Self {
        self.target = Some(t);
        self
    }

    /// Minimum number of non-outliers, n* = n − n̄.
    pub fn n_star(&self, election: &Election) -> usize {
        election.n() - self.n_bar
    }

    /// Candidates left out of the committee, m̄ = m − m*.
    pub fn m_bar(&self, election: &Election) -> usize {
        election.m() - self.m_star
    }

    pub fn validate(&self, election: &Election) -> Result<()> {
        if self.m_star > election.m() {
            return Err(Error::Parameter(format!(
                "committee size {} exceeds candidate count {}",
                self.m_star,
                election.m()
            )));
        }
        if self.n_bar >= election.n() {
            return Err(Error::Parameter(format!(
                "outlier budget {} leaves no non-outliers among {} votes",
                self.n_bar,
                election.n()
            )));
        }
        Ok(())
    }
}

/// A committee; ordered lexicographically by its ascending member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Committee {
    members: CandidateSet,
    indices: Vec<usize>,
}

impl Committee {
    pub fn new(m: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parameter("committee lists a candidate twice".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&c| c >= m) {
            return Err(Error::Parameter(format!(
                "committee member {bad} is out of range for m = {m}"
            )));
        }
        Ok(Self::from_sorted_unchecked(m, indices))
    }

    pub(crate) fn from_sorted_unchecked(m: usize, indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Committee {
            members: CandidateSet::from_indices(m, indices.iter().copied()),
            indices,
        }
    }

    pub(crate) fn from_set(members: CandidateSet) -> Self {
        let indices = members.to_vec();
        Committee { members, indices }
    }

    pub fn members(&self) -> &CandidateSet {
        &self.members
    }

    /// Ascending member indices.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.members.contains(c.0)
    }
}

impl Ord for Committee {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices.cmp(&other.indices)
    }
}

impl PartialOrd for Committee {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A committee, its non-outlier votes (ascending indices) and the score they achieve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub committee: Committee,
    pub non_outliers: Vec<usize>,
    pub score: Score,
}

impl Solution {
    /// Checks committee size, non-outlier count and range, and that `score` is truthful.
    pub fn verify(&self, election: &Election, query: &OutlierQuery) -> Result<()> {
        if self.committee.len() != query.m_star {
            return Err(Error::Structure(format!(
                "committee has {} members, expected {}",
                self.committee.len(),
                query.m_star
            )));
        }
        if self.committee.members.span() > election.m() {
            return Err(Error::Structure("committee member out of range".into()));
        }
        if self.non_outliers.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Structure(
                "non-outlier indices must be strictly ascending".into(),
            ));
        }
        if self.non_outliers.last().is_some_and(|&i| i >= election.n()) {
            return Err(Error::Structure("non-outlier index out of range".into()));
        }
        let n_star = query.n_star(election);
        if self.non_outliers.len() < n_star {
            return Err(Error::Structure(format!(
                "{} non-outliers, at least {n_star} required",
                self.non_outliers.len()
            )));
        }
        let actual = score::total_score(query.rule, &self.committee, election, &self.non_outliers);
        if actual != self.score {
            return Err(Error::Structure(format!(
                "claimed score {} but the solution scores {actual}",
                self.score
            )));
        }
        Ok(())
    }
}
