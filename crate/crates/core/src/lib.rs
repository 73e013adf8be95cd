//! Reduction toolkit around the subgraph isomorphism problem.
//!
//! The crate mechanizes a chain of instance transformations:
//!
//! * CNF normalization into (3,4)-form — every clause exactly three distinct
//!   variables, every variable in at most four clauses ([`formula`]),
//! * variable coloring and clause packing into `2^k` groups ([`grouping`]),
//! * encoding a packed formula as a family of vertex- and edge-colored
//!   subgraph isomorphism instances parametrized by preimage-size
//!   sequences ([`sat2si`]),
//! * removal of edge and vertex colors at a small vertex blow-up
//!   ([`decolor`]),
//! * graph homomorphism to subgraph isomorphism via preimage-size
//!   guessing ([`hom2si`]).
//!
//! Everything is backed by deliberately exhaustive oracles ([`solve`],
//! [`formula::sat_oracle`], [`hom2si::hom_oracle`]) so that each
//! transformation can be machine-checked on desk-scale instances; the
//! [`harness`] module bundles the end-to-end verification pipeline and
//! deterministic corpus generators.
//!
//! With the default `parallel` feature, family sweeps and corpus checks
//! run on a rayon pool; disabling it falls back to sequential loops with
//! identical results.

pub mod compose;
pub mod decolor;
pub mod formula;
pub mod graph;
pub mod grouping;
pub mod harness;
pub mod hom2si;
pub mod sat2si;
pub mod solve;

pub use formula::{Assignment, CnfFormula, Lit};
pub use graph::{ColoredMultigraph, Embedding, SiInstance};
