//! Committee selection from approval ballots when a bounded number of votes may be
//! discarded as outliers.
//!
//! Given `n` approval ballots over `m` candidates, a committee size `m*` and an outlier
//! budget `n̄`, the solvers here pick a committee and at least `n − n̄` non-outlier votes
//! minimizing one of four scores (minisum, disapproval, its primed variant, or net
//! disapproval). The crate also builds elections from graphs whose optimal score encodes
//! vertex cover, clique and biclique questions.

pub mod approx;
pub mod bitset;
pub mod combinations;
pub mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod model;
pub mod par;
pub mod reductions;
pub mod score;
pub mod special;

pub use error::{Error, Result};
pub use exact::{Algorithm, ExactLimits, Optimality, SolveOptions, SolverReport};
pub use model::{
    ApprovalVote, CandidateId, Committee, Election, OutlierQuery, Score, ScoringRule, Solution,
};
