//! Hybrid node and link fault diagnosis under the generalized PMC model.
//!
//! Adjacent processors test each other across the link joining them. A good
//! tester reports a failure exactly when the testee is faulty or the link is
//! faulty; a faulty tester may report anything. Faulty links never touch
//! faulty processors.
//!
//! ```
//! use gpmc::{build_hypercube, diagnose, generate_syndrome, make_fault_pair, Adversary, Edge, VertexId};
//!
//! let q3 = build_hypercube(3)?;
//! let truth = make_fault_pair(&q3, [VertexId(0)], [Edge::new(3, 7)?])?;
//! let syndrome = generate_syndrome(&q3, &truth, &Adversary::AllFail)?;
//! let result = diagnose(&q3, &syndrome, 1, 1)?;
//! assert_eq!(result.unique(), Some(&truth));
//! # Ok::<(), gpmc::Error>(())
//! ```

pub mod diagnosability;
pub mod diagnosis;
pub mod distinguish;
mod error;
pub mod fault;
pub mod graph;
pub mod hypercube;
pub mod topology;

pub use diagnosability::{
    construct_edge_witness, construct_indistinguishable_witness, edge_restricted_diagnosability,
    edge_restricted_diagnosability_with, is_ts_diagnosable, is_ts_diagnosable_with,
    lemma2_upper_bounds, pmc_diagnosability, vertex_restricted_edge_diagnosability,
    vertex_restricted_edge_diagnosability_with, DiagnosabilityReport, Parameter, SearchOptions,
    SearchStats, Strategy, TsCheck,
};
pub use diagnosis::{adversarial_roundtrip, diagnose, diagnose_with_cap, DiagnosisResult, DiagnosisStatus};
pub use distinguish::{distinguishable_by_enumeration, distinguishable_lemma1, distinguishable_oracle, Verdict};
pub use error::{Error, Result};
pub use fault::{
    enumerate_consistent_pairs, enumerate_tests, forced_outcome, generate_syndrome, is_consistent,
    make_fault_pair, random_fault_pair, Adversary, FaultPair, ForcedOutcome, Outcome, Syndrome, Test,
};
pub use graph::{Edge, Graph, VertexId};
pub use hypercube::{build_hypercube, hypercube_neighbor};
pub use topology::Topology;

// The guide's Rust snippets run as doc-tests, one module per chapter.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/fault-model.md")]
    mod fault_model {}
    #[doc = include_str!("../../../book/src/distinguishability.md")]
    mod distinguishability {}
    #[doc = include_str!("../../../book/src/diagnosability.md")]
    mod diagnosability {}
    #[doc = include_str!("../../../book/src/diagnosis.md")]
    mod diagnosis {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
