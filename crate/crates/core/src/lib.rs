//! Network verification posed as unstructured search.
//!
//! A network plus a property defines a verifier `f` over `n`-bit instances
//! (packet headers or link-failure vectors). The crate evaluates `f`
//! classically, compiles it into a phase oracle, runs Grover search on a
//! dense state-vector simulator and estimates qubit counts for the reference
//! circuits.

pub mod bits;
pub mod circuit;
pub mod classical;
pub mod cli;
pub mod error;
pub mod grover;
pub mod netmodel;
pub mod oracle;
pub mod resources;

pub use bits::{Bits, FailureInstance, Header};
pub use error::{Error, Result};
pub use netmodel::{Mode, Problem};
