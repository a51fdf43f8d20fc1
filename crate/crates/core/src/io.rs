//! JSON instance and report documents, plus graph loading for the generators.
//!
//! Documents are written canonically: top-level keys in a fixed order, one per line, nested
//! arrays of arrays one element per line, every index list ascending.

use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exact::{Decision, FptBranch, Optimality, SolverReport};
use crate::graph::Graph;
use crate::model::{ApprovalVote, Committee, Election, OutlierQuery, Score, ScoringRule, Solution};
use crate::reductions::{DummyBlock, Provenance, ReducedInstance, ReductionKind};

pub const SCHEMA_VERSION: u32 = 1;

/// An election, its query and, for generated instances, how it was made.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub election: Election,
    pub query: OutlierQuery,
    pub provenance: Option<ProvenanceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertex_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<usize>,
    pub edges: Vec<[usize; 2]>,
}

impl GraphDoc {
    pub fn from_graph(graph: &Graph) -> Self {
        GraphDoc {
            vertex_count: graph.vertex_count(),
            left: graph.bipartition(),
            edges: graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let g = Graph::new(self.vertex_count, self.edges.iter().map(|e| (e[0], e[1])))?;
        match self.left {
            Some(l) => g.with_bipartition(l),
            None => Ok(g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DummyBlockDoc {
    /// Half-open candidate index range.
    pub candidates: [usize; 2],
    /// Half-open vote index range.
    pub votes: [usize; 2],
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProvenanceDoc {
    pub reduction: String,
    pub k: usize,
    pub rule: ScoringRule,
    pub graph: GraphDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dummy_block: Option<DummyBlockDoc>,
}

impl ProvenanceDoc {
    pub fn from_reduced(instance: &ReducedInstance) -> Self {
        let p: &Provenance = &instance.provenance;
        ProvenanceDoc {
            reduction: p.reduction.as_str().to_string(),
            k: p.k,
            rule: p.rule,
            graph: GraphDoc::from_graph(&p.graph),
            dummy_block: instance
                .dummy_block
                .as_ref()
                .map(|d: &DummyBlock| DummyBlockDoc {
                    candidates: [d.candidates.start, d.candidates.end],
                    votes: [d.votes.start, d.votes.end],
                    description: d.description.clone(),
                }),
        }
    }

    /// Re-runs the recorded generator.
    pub fn regenerate(&self) -> Result<ReducedInstance> {
        let kind: ReductionKind = self.reduction.parse()?;
        crate::reductions::reduce(kind, &self.graph.to_graph()?, self.k, self.rule)
    }
}

impl InstanceFile {
    pub fn from_reduced(instance: &ReducedInstance) -> Self {
        InstanceFile {
            election: instance.election.clone(),
            query: instance.query,
            provenance: Some(ProvenanceDoc::from_reduced(instance)),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    schema_version: u32,
    m: usize,
    votes: Vec<Vec<usize>>,
    rule: String,
    m_star: usize,
    n_bar: Option<usize>,
    n_star: Option<usize>,
    target: Option<Score>,
    provenance: Option<ProvenanceDoc>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(
        format!("line {} column {}", e.line(), e.column()),
        e.to_string(),
    )
}

/// Parses an instance document, rejecting out-of-range or repeated vote indices, unknown
/// rules and infeasible budgets with the offending field named.
pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let raw: RawInstance = serde_json::from_str(text).map_err(json_error)?;
    if raw.schema_version != SCHEMA_VERSION {
        return Err(Error::parse(
            "schema_version",
            format!(
                "unsupported version {}, expected {SCHEMA_VERSION}",
                raw.schema_version
            ),
        ));
    }
    if raw.m == 0 {
        return Err(Error::parse("m", "at least one candidate is required"));
    }
    if raw.votes.is_empty() {
        return Err(Error::parse("votes", "at least one vote is required"));
    }
    let mut votes = Vec::with_capacity(raw.votes.len());
    for (i, list) in raw.votes.iter().enumerate() {
        let mut seen = vec![false; raw.m];
        for (j, &c) in list.iter().enumerate() {
            if c >= raw.m {
                return Err(Error::parse(
                    format!("votes[{i}][{j}]"),
                    format!("candidate {c} is out of range for m = {}", raw.m),
                ));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(Error::parse(
                    format!("votes[{i}][{j}]"),
                    format!("candidate {c} is listed twice"),
                ));
            }
        }
        votes.push(ApprovalVote::from_indices(raw.m, list.iter().copied()));
    }
    let n = votes.len();
    let rule: ScoringRule = raw
        .rule
        .parse()
        .map_err(|_| Error::parse("rule", format!("unknown rule {:?}", raw.rule)))?;
    if raw.m_star > raw.m {
        return Err(Error::parse(
            "m_star",
            format!("committee size {} exceeds m = {}", raw.m_star, raw.m),
        ));
    }
    let n_bar = match (raw.n_bar, raw.n_star) {
        (Some(b), None) if b < n => b,
        (Some(b), None) => {
            return Err(Error::parse(
                "n_bar",
                format!("budget {b} must be below n = {n}"),
            ))
        }
        (None, Some(s)) if (1..=n).contains(&s) => n - s,
        (None, Some(s)) => return Err(Error::parse("n_star", format!("{s} is not in 1..={n}"))),
        (Some(_), Some(_)) => {
            return Err(Error::parse(
                "n_bar",
                "give exactly one of n_bar and n_star",
            ))
        }
        (None, None) => return Err(Error::parse("n_bar", "one of n_bar or n_star is required")),
    };
    let election = Election::new(raw.m, votes)?;
    let query = OutlierQuery {
        rule,
        m_star: raw.m_star,
        n_bar,
        target: raw.target,
    };
    Ok(InstanceFile {
        election,
        query,
        provenance: raw.provenance,
    })
}

/// Canonical text: keys in a fixed order, n_bar rather than n_star, votes ascending.
pub fn serialize_instance(file: &InstanceFile) -> String {
    let mut obj = Map::new();
    obj.insert("schema_version".into(), SCHEMA_VERSION.into());
    obj.insert("m".into(), file.election.m().into());
    obj.insert("rule".into(), file.query.rule.as_str().into());
    obj.insert("m_star".into(), file.query.m_star.into());
    obj.insert("n_bar".into(), file.query.n_bar.into());
    if let Some(t) = file.query.target {
        obj.insert("target".into(), t.into());
    }
    obj.insert(
        "votes".into(),
        serde_json::to_value(file.election.vote_lists()).expect("index lists serialize"),
    );
    if let Some(p) = &file.provenance {
        obj.insert(
            "provenance".into(),
            serde_json::to_value(p).expect("provenance serializes"),
        );
    }
    render(&obj)
}

/// Top-level keys one per line; scalars and flat arrays inline; arrays of arrays one
/// element per line; other nested values compact.
pub fn render(obj: &Map<String, Value>) -> String {
    let compact = |v: &Value| serde_json::to_string(v).expect("JSON values serialize");
    let mut out = String::from("{\n");
    let last = obj.len().saturating_sub(1);
    for (i, (key, value)) in obj.iter().enumerate() {
        out.push_str("  ");
        out.push_str(&compact(&Value::String(key.clone())));
        out.push_str(": ");
        match value {
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_array) => {
                out.push_str("[\n");
                for (j, item) in items.iter().enumerate() {
                    out.push_str("    ");
                    out.push_str(&compact(item));
                    if j + 1 < items.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str("  ]");
            }
            other => out.push_str(&compact(other)),
        }
        if i < last {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

/// Machine-readable solver output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub schema_version: u32,
    pub algorithm: String,
    pub rule: ScoringRule,
    pub m_star: usize,
    pub n_bar: usize,
    pub committee: Vec<usize>,
    pub non_outliers: Vec<usize>,
    pub score: Score,
    /// `exact`, `bounded` or `heuristic`.
    pub optimality: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    pub nodes_explored: u64,
    pub elapsed_ms: f64,
    pub threads: usize,
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

fn millis(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

impl ReportDoc {
    pub fn from_report(report: &SolverReport, query: &OutlierQuery) -> Self {
        let (optimality, bound) = match &report.optimality {
            Optimality::Exact => ("exact", None),
            Optimality::Bounded(b) => ("bounded", Some(b.clone())),
            Optimality::Heuristic => ("heuristic", None),
        };
        ReportDoc {
            schema_version: SCHEMA_VERSION,
            algorithm: report.algorithm.as_str().to_string(),
            rule: query.rule,
            m_star: query.m_star,
            n_bar: query.n_bar,
            committee: report.solution.committee.indices().to_vec(),
            non_outliers: report.solution.non_outliers.clone(),
            score: report.solution.score,
            optimality: optimality.to_string(),
            bound,
            nodes_explored: report.nodes_explored,
            elapsed_ms: millis(report.elapsed),
            threads: report.threads,
            seed: report.seed,
            epsilon: None,
            sample_size: None,
            mode: None,
            trials: None,
        }
    }

    pub fn claims_exact(&self) -> bool {
        self.optimality == "exact"
    }

    pub fn to_solution(&self, m: usize) -> Result<Solution> {
        Ok(Solution {
            committee: Committee::new(m, self.committee.iter().copied())?,
            non_outliers: self.non_outliers.clone(),
            score: self.score,
        })
    }

    pub fn render(&self) -> String {
        match serde_json::to_value(self).expect("report serializes") {
            Value::Object(obj) => render(&obj),
            _ => unreachable!("report is an object"),
        }
    }
}

pub fn parse_report(text: &str) -> Result<ReportDoc> {
    let doc: ReportDoc = serde_json::from_str(text).map_err(json_error)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::parse(
            "schema_version",
            format!(
                "unsupported version {}, expected {SCHEMA_VERSION}",
                doc.schema_version
            ),
        ));
    }
    Ok(doc)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub committee: Vec<usize>,
    pub non_outliers: Vec<usize>,
    pub score: Score,
}

/// Output of the decision procedure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionDoc {
    pub schema_version: u32,
    pub algorithm: String,
    pub rule: ScoringRule,
    pub m_star: usize,
    pub n_bar: usize,
    pub target: Score,
    pub accepted: bool,
    /// `zero-distance` or `voterset-enum`.
    pub branch: String,
    pub witness: Option<WitnessDoc>,
    pub nodes_explored: u64,
    pub elapsed_ms: f64,
}

impl DecisionDoc {
    pub fn from_decision(decision: &Decision, query: &OutlierQuery, target: Score) -> Self {
        DecisionDoc {
            schema_version: SCHEMA_VERSION,
            algorithm: "fpt-decide".into(),
            rule: query.rule,
            m_star: query.m_star,
            n_bar: query.n_bar,
            target,
            accepted: decision.accepted,
            branch: match decision.branch {
                FptBranch::ZeroDistance => "zero-distance",
                FptBranch::VotersetEnum => "voterset-enum",
            }
            .into(),
            witness: decision.witness.as_ref().map(|w| WitnessDoc {
                committee: w.committee.indices().to_vec(),
                non_outliers: w.non_outliers.clone(),
                score: w.score,
            }),
            nodes_explored: decision.nodes_explored,
            elapsed_ms: millis(decision.elapsed),
        }
    }

    pub fn render(&self) -> String {
        match serde_json::to_value(self).expect("decision serializes") {
            Value::Object(obj) => render(&obj),
            _ => unreachable!("decision is an object"),
        }
    }
}

/// Reads a graph from an edge-list file when `spec` names one, else builds a named family.
pub fn load_graph(spec: &str) -> Result<Graph> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {spec}: {e}")))?;
        Graph::parse_edge_list(&text)
    } else {
        Graph::family(spec)
    }
}
