//! Elections built from graphs so that "optimal score ≤ t" holds exactly when the graph has a
//! small vertex cover, a k-clique or a k×k biclique. Each generator records enough
//! provenance to be re-run bit for bit, and [`forward_witness`] turns a graph certificate
//! into the committee and non-outliers the construction intends.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::bitset::CandidateSet;
use crate::error::{Error, Result};
use crate::graph::{pairs, Graph};
use crate::model::{ApprovalVote, Committee, Election, OutlierQuery, Score, ScoringRule, Solution};
use crate::score;

/// The seven generators, named as on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    Vc3,
    CliqueEdgeComplement,
    CliqueEdgeIncident,
    CliqueVertexNonincident,
    CliqueVertexIncident,
    CliqueNetDummy,
    Biclique,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 7] = [
        ReductionKind::Vc3,
        ReductionKind::CliqueEdgeComplement,
        ReductionKind::CliqueEdgeIncident,
        ReductionKind::CliqueVertexNonincident,
        ReductionKind::CliqueVertexIncident,
        ReductionKind::CliqueNetDummy,
        ReductionKind::Biclique,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReductionKind::Vc3 => "vc3",
            ReductionKind::CliqueEdgeComplement => "clique-edge-complement",
            ReductionKind::CliqueEdgeIncident => "clique-edge-incident",
            ReductionKind::CliqueVertexNonincident => "clique-vertex-nonincident",
            ReductionKind::CliqueVertexIncident => "clique-vertex-incident",
            ReductionKind::CliqueNetDummy => "clique-net-dummy",
            ReductionKind::Biclique => "biclique",
        }
    }

    /// Rules the construction defines a target for.
    pub fn rules(self) -> &'static [ScoringRule] {
        use ScoringRule::*;
        match self {
            ReductionKind::Vc3
            | ReductionKind::CliqueEdgeComplement
            | ReductionKind::CliqueEdgeIncident
            | ReductionKind::CliqueVertexIncident => &[Minisum, Disapproval, NetDisapproval],
            ReductionKind::CliqueVertexNonincident => &[Minisum, Disapproval],
            ReductionKind::CliqueNetDummy => &[NetDisapproval],
            ReductionKind::Biclique => &[Disapproval],
        }
    }

    /// Every k the generator accepts for `graph` under `rule`.
    pub fn valid_ks(self, graph: &Graph, rule: ScoringRule) -> Vec<usize> {
        (0..=graph.vertex_count() + 1)
            .filter(|&k| reduce(self, graph, k, rule).is_ok())
            .collect()
    }

    /// Ground truth for the graph question the reduction encodes.
    pub fn graph_answer(self, graph: &Graph, k: usize) -> Result<bool> {
        match self {
            ReductionKind::Vc3 => Ok(graph.min_vertex_cover_size()? <= k),
            ReductionKind::Biclique => graph.has_biclique(k),
            _ => graph.has_clique(k),
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReductionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown reduction {s:?}")))
    }
}

/// Inputs that regenerate an instance exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub reduction: ReductionKind,
    pub graph: Graph,
    pub k: usize,
    pub rule: ScoringRule,
}

/// Padding candidates and votes appended after the graph-derived ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DummyBlock {
    pub candidates: Range<usize>,
    pub votes: Range<usize>,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    pub election: Election,
    /// Always carries the target t.
    pub query: OutlierQuery,
    pub provenance: Provenance,
    pub dummy_block: Option<DummyBlock>,
}

impl ReducedInstance {
    pub fn target(&self) -> Score {
        self.query.target.expect("generators always set a target")
    }

    /// Re-runs the generator recorded in the provenance.
    pub fn regenerate(&self) -> Result<ReducedInstance> {
        let p = &self.provenance;
        reduce(p.reduction, &p.graph, p.k, p.rule)
    }
}

/// Dispatches to the generator named by `kind`.
pub fn reduce(
    kind: ReductionKind,
    graph: &Graph,
    k: usize,
    rule: ScoringRule,
) -> Result<ReducedInstance> {
    match kind {
        ReductionKind::Vc3 => reduce_vc3(graph, k, rule),
        ReductionKind::CliqueEdgeComplement => {
            reduce_clique_edges_as_votes(graph, k, rule, EdgeVariant::Complement)
        }
        ReductionKind::CliqueEdgeIncident => {
            reduce_clique_edges_as_votes(graph, k, rule, EdgeVariant::Incident)
        }
        ReductionKind::CliqueVertexNonincident => {
            reduce_clique_vertices_as_votes(graph, k, rule, VertexVariant::Nonincident)
        }
        ReductionKind::CliqueVertexIncident => {
            reduce_clique_vertices_as_votes(graph, k, rule, VertexVariant::Incident)
        }
        ReductionKind::CliqueNetDummy => {
            require_rule(kind, rule)?;
            reduce_clique_net_dummy(graph, k)
        }
        ReductionKind::Biclique => {
            require_rule(kind, rule)?;
            reduce_biclique(graph, k)
        }
    }
}

fn require_rule(kind: ReductionKind, rule: ScoringRule) -> Result<()> {
    if kind.rules().contains(&rule) {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "{kind} defines no target for the {rule} rule"
        )))
    }
}

fn require_regular(graph: &Graph, kind: ReductionKind) -> Result<usize> {
    graph
        .regular_degree()
        .ok_or_else(|| Error::Structure(format!("{kind} needs a regular graph")))
}

fn require_clique_size(graph: &Graph, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Parameter(format!(
            "clique size must be at least 2, got {k}"
        )));
    }
    if pairs(k) > graph.edge_count() {
        return Err(Error::Parameter(format!(
            "a {k}-clique needs {} edges but the graph has {}",
            pairs(k),
            graph.edge_count()
        )));
    }
    Ok(())
}

fn build(
    m: usize,
    votes: Vec<CandidateSet>,
    query: OutlierQuery,
    provenance: Provenance,
    dummy_block: Option<DummyBlock>,
) -> Result<ReducedInstance> {
    let election = Election::new(m, votes.into_iter().map(ApprovalVote::new).collect())?;
    query.validate(&election)?;
    Ok(ReducedInstance {
        election,
        query,
        provenance,
        dummy_block,
    })
}

fn provenance(reduction: ReductionKind, graph: &Graph, k: usize, rule: ScoringRule) -> Provenance {
    Provenance {
        reduction,
        graph: graph.clone(),
        k,
        rule,
    }
}

fn as_score(x: usize) -> Score {
    x as Score
}

/// Vertex cover on 3-regular graphs: one vote and one candidate per vertex, each vote
/// approving the vertex's neighbours. m* = k, n* = n − k; t = (n−k)(k−3), or (n−k)(k−6)
/// under net disapproval.
pub fn reduce_vc3(graph: &Graph, k: usize, rule: ScoringRule) -> Result<ReducedInstance> {
    let kind = ReductionKind::Vc3;
    require_rule(kind, rule)?;
    if graph.regular_degree() != Some(3) {
        return Err(Error::Structure("vc3 needs a 3-regular graph".into()));
    }
    let n = graph.vertex_count();
    if k < 3 || k >= n {
        return Err(Error::Parameter(format!(
            "vc3 needs 3 <= k < {n} (vertex count), got {k}"
        )));
    }
    let votes = graph
        .adjacency()
        .into_iter()
        .map(|nb| CandidateSet::from_indices(n, nb))
        .collect();
    let (nk, k_s) = (as_score(n - k), as_score(k));
    let t = match rule {
        ScoringRule::NetDisapproval => nk * (k_s - 6),
        _ => nk * (k_s - 3),
    };
    let query = OutlierQuery::new(rule, k, k).with_target(t);
    build(n, votes, query, provenance(kind, graph, k, rule), None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeVariant {
    /// Vote per edge approving every vertex off the edge; d-regular input.
    Complement,
    /// Vote per edge approving its two endpoints.
    Incident,
}

/// Clique with one vote per edge and one candidate per vertex; n* = C(k,2).
///
/// Complement: m̄ = k, t = (k−2)·C(k,2) for minisum and 0 otherwise. Incident: m* = k,
/// t = (k−2)·C(k,2) for minisum and disapproval, (k−4)·C(k,2) for net disapproval.
pub fn reduce_clique_edges_as_votes(
    graph: &Graph,
    k: usize,
    rule: ScoringRule,
    variant: EdgeVariant,
) -> Result<ReducedInstance> {
    let kind = match variant {
        EdgeVariant::Complement => ReductionKind::CliqueEdgeComplement,
        EdgeVariant::Incident => ReductionKind::CliqueEdgeIncident,
    };
    require_rule(kind, rule)?;
    if variant == EdgeVariant::Complement {
        require_regular(graph, kind)?;
    }
    require_clique_size(graph, k)?;
    let n = graph.vertex_count();
    if k > n {
        return Err(Error::Parameter(format!(
            "k = {k} exceeds the {n} vertices"
        )));
    }
    let c = pairs(k);
    let votes: Vec<CandidateSet> = graph
        .edges()
        .iter()
        .map(|&(u, v)| match variant {
            EdgeVariant::Complement => {
                CandidateSet::from_indices(n, (0..n).filter(|&j| j != u && j != v))
            }
            EdgeVariant::Incident => CandidateSet::from_indices(n, [u, v]),
        })
        .collect();
    let (k_s, c_s) = (as_score(k), as_score(c));
    let (m_star, t) = match (variant, rule) {
        (EdgeVariant::Complement, ScoringRule::Minisum) => (n - k, (k_s - 2) * c_s),
        (EdgeVariant::Complement, _) => (n - k, 0),
        (EdgeVariant::Incident, ScoringRule::NetDisapproval) => (k, (k_s - 4) * c_s),
        (EdgeVariant::Incident, _) => (k, (k_s - 2) * c_s),
    };
    let query = OutlierQuery::new(rule, m_star, graph.edge_count() - c).with_target(t);
    build(n, votes, query, provenance(kind, graph, k, rule), None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexVariant {
    /// Vote per vertex approving every edge not touching it.
    Nonincident,
    /// Vote per vertex approving its incident edges.
    Incident,
}

/// Clique on d-regular graphs with one vote per vertex and one candidate per edge; n̄ = k.
///
/// Non-incident: m* = C(k,2), t = (m−C(k,2))(n−k) for minisum and 0 for disapproval.
/// Incident: m̄ = C(k,2), t = (n−k)(m−C(k,2)−d) for minisum and disapproval; under net
/// disapproval m−2d dummy candidates approved by every vote are appended and t = 0.
pub fn reduce_clique_vertices_as_votes(
    graph: &Graph,
    k: usize,
    rule: ScoringRule,
    variant: VertexVariant,
) -> Result<ReducedInstance> {
    let kind = match variant {
        VertexVariant::Nonincident => ReductionKind::CliqueVertexNonincident,
        VertexVariant::Incident => ReductionKind::CliqueVertexIncident,
    };
    require_rule(kind, rule)?;
    let d = require_regular(graph, kind)?;
    require_clique_size(graph, k)?;
    let (n, m) = (graph.vertex_count(), graph.edge_count());
    if k >= n {
        return Err(Error::Parameter(format!(
            "k = {k} leaves no non-outliers among {n} vertex votes"
        )));
    }
    let c = pairs(k);
    let dummies = match (variant, rule) {
        (VertexVariant::Incident, ScoringRule::NetDisapproval) => {
            if m < 2 * d {
                return Err(Error::Parameter(format!(
                    "net variant needs m - 2d >= 0, got m = {m}, d = {d}"
                )));
            }
            m - 2 * d
        }
        _ => 0,
    };
    let total = m + dummies;
    let votes: Vec<CandidateSet> = (0..n)
        .map(|u| {
            let edges = graph.edges().iter().enumerate();
            let mut s = match variant {
                VertexVariant::Nonincident => CandidateSet::from_indices(
                    total,
                    edges
                        .filter(|(_, &(a, b))| a != u && b != u)
                        .map(|(j, _)| j),
                ),
                VertexVariant::Incident => CandidateSet::from_indices(
                    total,
                    edges
                        .filter(|(_, &(a, b))| a == u || b == u)
                        .map(|(j, _)| j),
                ),
            };
            for j in m..total {
                s.insert(j);
            }
            s
        })
        .collect();
    let (n_s, m_s, k_s, c_s, d_s) = (
        as_score(n),
        as_score(m),
        as_score(k),
        as_score(c),
        as_score(d),
    );
    let (m_star, t) = match (variant, rule) {
        (VertexVariant::Nonincident, ScoringRule::Minisum) => (c, (m_s - c_s) * (n_s - k_s)),
        (VertexVariant::Nonincident, _) => (c, 0),
        (VertexVariant::Incident, ScoringRule::NetDisapproval) => (total - c, 0),
        (VertexVariant::Incident, _) => (total - c, (n_s - k_s) * (m_s - c_s - d_s)),
    };
    let dummy_block = (dummies > 0).then(|| DummyBlock {
        candidates: m..total,
        votes: 0..0,
        description: format!("{dummies} candidates approved by every vote"),
    });
    let query = OutlierQuery::new(rule, m_star, k).with_target(t);
    build(
        total,
        votes,
        query,
        provenance(kind, graph, k, rule),
        dummy_block,
    )
}

/// Clique under net disapproval on any graph. Candidates are the edges followed by a block D
/// of C(k,2) dummies; votes are one per vertex (approving edges not touching it) followed
/// by n+2k copies of D. n̄ = k, m* = 2·C(k,2), t = 0.
pub fn reduce_clique_net_dummy(graph: &Graph, k: usize) -> Result<ReducedInstance> {
    let kind = ReductionKind::CliqueNetDummy;
    let rule = ScoringRule::NetDisapproval;
    require_clique_size(graph, k)?;
    let (n, m) = (graph.vertex_count(), graph.edge_count());
    let c = pairs(k);
    let total = m + c;
    let copies = n + 2 * k;
    let mut votes: Vec<CandidateSet> = (0..n)
        .map(|u| {
            CandidateSet::from_indices(
                total,
                graph
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|(_, &(a, b))| a != u && b != u)
                    .map(|(j, _)| j),
            )
        })
        .collect();
    let block = CandidateSet::from_indices(total, m..total);
    votes.extend(std::iter::repeat_n(block, copies));
    let dummy_block = Some(DummyBlock {
        candidates: m..total,
        votes: n..n + copies,
        description: format!("{c} dummy candidates and {copies} votes approving exactly them"),
    });
    let query = OutlierQuery::new(rule, 2 * c, k).with_target(0);
    build(
        total,
        votes,
        query,
        provenance(kind, graph, k, rule),
        dummy_block,
    )
}

/// Biclique under disapproval: one vote per left vertex approving its right neighbours, one
/// candidate per right vertex. n* = k, m* = k, t = 0.
pub fn reduce_biclique(graph: &Graph, k: usize) -> Result<ReducedInstance> {
    let kind = ReductionKind::Biclique;
    let rule = ScoringRule::Disapproval;
    let left = graph
        .bipartition()
        .ok_or_else(|| Error::Structure("biclique needs a declared bipartition".into()))?;
    let right = graph.vertex_count() - left;
    if k < 1 || k > left.min(right) {
        return Err(Error::Parameter(format!(
            "biclique needs 1 <= k <= min({left}, {right}), got {k}"
        )));
    }
    let adj = graph.adjacency();
    let votes = (0..left)
        .map(|u| CandidateSet::from_indices(right, adj[u].iter().map(|&v| v - left)))
        .collect();
    let query = OutlierQuery::new(rule, k, left - k).with_target(0);
    build(right, votes, query, provenance(kind, graph, k, rule), None)
}

/// Complements every vote, maps m* to m − m* and swaps disapproval with its primed variant.
/// n̄ and the target are unchanged. Applying it twice is the identity.
pub fn complement_transform(
    election: &Election,
    query: &OutlierQuery,
) -> Result<(Election, OutlierQuery)> {
    let rule = match query.rule {
        ScoringRule::Disapproval => ScoringRule::DisapprovalPrime,
        ScoringRule::DisapprovalPrime => ScoringRule::Disapproval,
        other => {
            return Err(Error::Usage(format!(
                "the complement transform maps disapproval rules only, not {other}"
            )))
        }
    };
    query.validate(election)?;
    let m = election.m();
    let votes = election
        .votes()
        .iter()
        .map(|v| ApprovalVote::new(v.approved().complement(m)))
        .collect();
    let image = Election::new(m, votes)?;
    let mapped = OutlierQuery {
        rule,
        m_star: m - query.m_star,
        n_bar: query.n_bar,
        target: query.target,
    };
    Ok((image, mapped))
}

/// The committee and non-outliers the construction pairs with a graph certificate, or
/// `None` when the graph has no certificate for k. Graph oracle caps apply.
pub fn forward_witness(instance: &ReducedInstance) -> Result<Option<Solution>> {
    let p = &instance.provenance;
    let (graph, k) = (&p.graph, p.k);
    let election = &instance.election;
    let (n, m) = (graph.vertex_count(), graph.edge_count());
    let in_clique =
        |clique: &[usize], (a, b): (usize, usize)| clique.contains(&a) && clique.contains(&b);

    let parts: Option<(Vec<usize>, Vec<usize>)> = match p.reduction {
        ReductionKind::Vc3 => {
            let mut cover = graph.min_vertex_cover()?;
            if cover.len() > k {
                None
            } else {
                let extra: Vec<usize> = (0..n).filter(|v| !cover.contains(v)).collect();
                cover.extend(extra.into_iter().take(k - cover.len()));
                let outside = (0..n).filter(|v| !cover.contains(v)).collect();
                Some((cover, outside))
            }
        }
        ReductionKind::CliqueEdgeComplement | ReductionKind::CliqueEdgeIncident => {
            graph.find_clique(k)?.map(|w| {
                let committee = if p.reduction == ReductionKind::CliqueEdgeIncident {
                    w.clone()
                } else {
                    (0..n).filter(|v| !w.contains(v)).collect()
                };
                let kept = (0..m)
                    .filter(|&e| in_clique(&w, graph.edges()[e]))
                    .collect();
                (committee, kept)
            })
        }
        ReductionKind::CliqueVertexNonincident
        | ReductionKind::CliqueVertexIncident
        | ReductionKind::CliqueNetDummy => graph.find_clique(k)?.map(|w| {
            let q: Vec<usize> = (0..m)
                .filter(|&e| in_clique(&w, graph.edges()[e]))
                .collect();
            let mut committee: Vec<usize> = if p.reduction == ReductionKind::CliqueVertexIncident {
                (0..m).filter(|e| !q.contains(e)).collect()
            } else {
                q
            };
            if let Some(block) = &instance.dummy_block {
                committee.extend(block.candidates.clone());
            }
            let mut kept: Vec<usize> = (0..n).filter(|v| !w.contains(v)).collect();
            if let Some(block) = &instance.dummy_block {
                kept.extend(block.votes.clone());
            }
            (committee, kept)
        }),
        ReductionKind::Biclique => graph.find_biclique(k)?.map(|(a, b)| {
            let left = graph.bipartition().unwrap_or(0);
            (b.into_iter().map(|v| v - left).collect(), a)
        }),
    };
    let Some((members, non_outliers)) = parts else {
        return Ok(None);
    };
    let committee = Committee::new(election.m(), members)?;
    let score = score::total_score(instance.query.rule, &committee, election, &non_outliers);
    Ok(Some(Solution {
        committee,
        non_outliers,
        score,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{brute_force_oracle, ExactLimits, SolveOptions};

    fn optimum(inst: &ReducedInstance) -> Score {
        let opts = SolveOptions {
            limits: ExactLimits {
                oracle_max_m: 16,
                oracle_max_n: 16,
                ..Default::default()
            },
            ..Default::default()
        };
        brute_force_oracle(&inst.election, &inst.query, &opts)
            .unwrap()
            .solution
            .score
    }

    #[test]
    fn vc3_on_k4() {
        let inst = reduce_vc3(&Graph::complete(4), 3, ScoringRule::Minisum).unwrap();
        assert_eq!(inst.query.m_star, 3);
        assert_eq!(inst.query.n_star(&inst.election), 1);
        assert_eq!(inst.target(), 0);
        assert!(inst.election.votes().iter().all(|v| v.len() == 3));
        assert_eq!(optimum(&inst), 0);

        let net = reduce_vc3(&Graph::complete(4), 3, ScoringRule::NetDisapproval).unwrap();
        assert_eq!(net.target(), -3);
        assert!(optimum(&net) <= -3);
    }

    #[test]
    fn vc3_guards() {
        assert!(matches!(
            reduce_vc3(&Graph::cycle(5).unwrap(), 3, ScoringRule::Minisum),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            reduce_vc3(&Graph::complete(4), 2, ScoringRule::Minisum),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            reduce_vc3(&Graph::complete(4), 3, ScoringRule::DisapprovalPrime),
            Err(Error::Usage(_))
        ));
        let k33 = reduce_vc3(&Graph::complete_bipartite(3, 3), 3, ScoringRule::Minisum).unwrap();
        assert_eq!(k33.target(), 0);
        assert_eq!(optimum(&k33), 0);
    }

    #[test]
    fn edge_incident_examples() {
        let inst = reduce_clique_edges_as_votes(
            &Graph::complete(4),
            3,
            ScoringRule::Minisum,
            EdgeVariant::Incident,
        )
        .unwrap();
        assert_eq!(
            (
                inst.query.m_star,
                inst.query.n_star(&inst.election),
                inst.target()
            ),
            (3, 3, 3)
        );
        assert!(inst.election.votes().iter().all(|v| v.len() == 2));
        assert!(optimum(&inst) <= 3);
        let p3 = reduce_clique_edges_as_votes(
            &Graph::path(3),
            3,
            ScoringRule::Minisum,
            EdgeVariant::Incident,
        );
        // P3 has two edges, too few for a triangle.
        assert!(matches!(p3, Err(Error::Parameter(_))));
    }

    #[test]
    fn edge_complement_needs_regular_graph() {
        let err = reduce_clique_edges_as_votes(
            &Graph::path(4),
            2,
            ScoringRule::Minisum,
            EdgeVariant::Complement,
        );
        assert!(matches!(err, Err(Error::Structure(_))));
    }

    #[test]
    fn vertex_variants_on_k4() {
        let non = reduce_clique_vertices_as_votes(
            &Graph::complete(4),
            3,
            ScoringRule::Minisum,
            VertexVariant::Nonincident,
        )
        .unwrap();
        assert_eq!((non.query.n_bar, non.query.m_star, non.target()), (3, 3, 3));
        assert!(optimum(&non) <= 3);

        let inc = reduce_clique_vertices_as_votes(
            &Graph::complete(4),
            3,
            ScoringRule::Minisum,
            VertexVariant::Incident,
        )
        .unwrap();
        assert_eq!(
            (
                inc.query.n_bar,
                inc.query.m_bar(&inc.election),
                inc.target()
            ),
            (3, 3, 0)
        );
        assert!(score::approval_counts(&inc.election)
            .iter()
            .all(|&c| c == 2));
        assert_eq!(optimum(&inc), 0);

        let net = reduce_clique_vertices_as_votes(
            &Graph::complete(4),
            3,
            ScoringRule::NetDisapproval,
            VertexVariant::Incident,
        )
        .unwrap();
        assert_eq!(net.election.m(), 6);
        assert!(net.dummy_block.is_none());
        let c5 = reduce_clique_vertices_as_votes(
            &Graph::cycle(5).unwrap(),
            2,
            ScoringRule::NetDisapproval,
            VertexVariant::Incident,
        )
        .unwrap();
        assert_eq!(c5.election.m(), 6);
        assert_eq!(c5.dummy_block.as_ref().unwrap().candidates, 5..6);
    }

    #[test]
    fn net_dummy_on_k4() {
        let inst = reduce_clique_net_dummy(&Graph::complete(4), 3).unwrap();
        assert_eq!(inst.election.n(), 14);
        assert_eq!(inst.election.m(), 9);
        assert_eq!(
            (inst.query.m_star, inst.query.n_bar, inst.target()),
            (6, 3, 0)
        );
        let w = forward_witness(&inst).unwrap().unwrap();
        assert_eq!(w.score, 0);
        w.verify(&inst.election, &inst.query).unwrap();
    }

    #[test]
    fn biclique_examples() {
        let inst = reduce_biclique(&Graph::complete_bipartite(2, 2), 2).unwrap();
        assert_eq!(inst.election.n(), 2);
        assert_eq!(optimum(&inst), 0);
        let matching = Graph::new(4, [(0, 2), (1, 3)])
            .unwrap()
            .with_bipartition(2)
            .unwrap();
        let inst = reduce_biclique(&matching, 2).unwrap();
        assert!(optimum(&inst) > 0);
        assert!(matches!(
            reduce_biclique(&Graph::complete(3), 1),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn complement_single_pair() {
        let e = Election::from_lists(4, &[vec![1, 2]]).unwrap();
        let q = OutlierQuery::new(ScoringRule::Disapproval, 2, 0);
        let (img, q2) = complement_transform(&e, &q).unwrap();
        assert_eq!(img.vote(0).indices(), vec![0, 3]);
        assert_eq!((q2.rule, q2.m_star), (ScoringRule::DisapprovalPrime, 2));
        let x = Committee::new(4, [0, 1]).unwrap();
        let xbar = Committee::new(4, [2, 3]).unwrap();
        assert_eq!(
            score::per_vote_score(q.rule, &x, e.vote(0)),
            score::per_vote_score(q2.rule, &xbar, img.vote(0))
        );
        let (back, q3) = complement_transform(&img, &q2).unwrap();
        assert_eq!((back, q3), (e.clone(), q));
        let minisum = OutlierQuery::new(ScoringRule::Minisum, 2, 0);
        assert!(matches!(
            complement_transform(&e, &minisum),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn provenance_regenerates() {
        let g = Graph::random_regular(8, 3, 4).unwrap();
        for kind in ReductionKind::ALL {
            for &rule in kind.rules() {
                for k in kind.valid_ks(&g, rule) {
                    let inst = reduce(kind, &g, k, rule).unwrap();
                    assert_eq!(inst.regenerate().unwrap(), inst);
                }
            }
        }
    }
}
