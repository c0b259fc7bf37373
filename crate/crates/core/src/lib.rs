//! Uniform-attachment and preferential-attachment random graphs.
//!
//! The crate is organised around the raw output of an attachment process
//! ([`AttachGraph`]) and its loop-free, deduplicated projection
//! ([`SimpleView`]). On top of those sit:
//!
//! - [`generate`]: both random processes and the blue/red two-round colouring,
//! - [`matching`]: exact maximum matching, the isolatable set `A(G)` and the
//!   co-isolatable sets `B(v)`, Tutte witnesses and the augmentation simulator,
//! - [`hamilton`]: rotation-extension machinery, the greedy longest-path
//!   procedure, a bitmask oracle and the Hamiltonicity simulator,
//! - [`analysis`]: numeric utilities, the expansion-constant verifier and
//!   empirical lemma checkers,
//! - [`lowerbound`]: lonely vertices, the deleted graph `H`, sweet cherries and
//!   the no-perfect-matching certificate for `m = 2`,
//! - [`experiments`]: a reproducible Monte Carlo harness with JSON-lines
//!   persistence.
//!
//! Vertices are 1-based everywhere (`1..=n`); index `0` is never a vertex.

pub mod analysis;
pub mod error;
pub mod experiments;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod hamilton;
pub mod io;
pub mod lowerbound;
pub mod matching;
pub mod rng;

pub use error::{Error, Result};
pub use generate::{gen_preferential, gen_uniform, generate, project, GenParams};
pub use graph::{
    degree_at_time, neighbourhood, simple_view, AttachGraph, Colour, EdgeRecord, Model,
    SimpleView, Vertex,
};
