//! Root-cause attribution for binary causal Bayesian networks.
//!
//! The crate computes the probability that a set of causes is the root
//! cause of an observed outcome, both from a closed-form expression over
//! conditional probability tables and by brute-force enumeration of an
//! explicit structural model, so the two can be checked against each other.

pub mod attribution;
pub mod cli;
pub mod closedform;
pub mod counterfactual;
pub mod joint;
pub mod model;
pub mod netformat;

pub use attribution::{rank_candidates, AttributionReport, Engine};
pub use closedform::{prc, prc_full_obs};
pub use counterfactual::{canonical_sem_from_network, oracle_prc, MonotoneSem};
pub use model::{Assignment, Candidate, CandidateSet, Evidence, Network, Var};
pub use netformat::{parse_candidate, parse_evidence, parse_network, serialize_network};
