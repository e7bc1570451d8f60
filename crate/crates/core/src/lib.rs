//! Hypergraph Lambek calculus: hypergraphs, HL types and sequents, the
//! sequent calculus with derivation checking, a proof search, string-calculus
//! embeddings and a translation into first-order intuitionistic logic.

pub mod calculus;
pub mod embeddings;
pub mod error;
pub mod foint;
pub mod hypergraph;
pub mod oracle;
pub mod prover;
pub mod types;

pub use error::{Error, Result};
pub use hypergraph::{CanonicalKey, Edge, EdgeLabel, EdgeSpec, Hypergraph};
pub use types::{HLType, Sequent, TypeKind};
