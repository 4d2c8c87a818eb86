//! Finite decomposition spaces, truncated to sets.
//!
//! Simplicial and Ξ-presheaves are stored level by level up to a cap, with
//! explicit structure-map tables. Axiom checks reduce to pullback squares of
//! finite sets.

pub mod axioms;
pub mod error;
pub mod incidence;
pub mod ingest;
pub mod interval;
pub mod io;
pub mod presheaf;
pub mod pullback;
pub mod simplex;
pub mod structure;

pub use error::{Error, Result};
