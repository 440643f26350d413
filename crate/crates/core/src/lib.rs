//! Online matching on hypergraphs: greedy, water-filling and weighted
//! water-filling with free disposal, primal-dual certificates, randomized
//! and adaptive lower-bound constructions, and offline optima.

// `!(x >= y)` comparisons below also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod duals;
pub mod error;
pub mod hypergraph;
pub mod online;
pub mod adversary;
pub mod oracle;
pub mod harness;

pub use duals::{verify_certificate, CertificateReport, DualCertificate, DualIncrement, DualMode, Tolerances};
pub use error::{Error, Result};
pub use hypergraph::{EdgeId, FractionalAllocation, HyperEdge, Instance, IntegralMatching, ResourceId};
pub use online::{run_online, Algorithm, OnlineRun, Transcript};
