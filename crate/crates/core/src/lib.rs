//! Enumeration and verification of empty lattice 4-simplices.
//!
//! Cyclic simplices of determinant `D` are encoded as residue tuples on the
//! discrete torus ([`torus`]); emptiness and lattice width become congruence
//! checks on those tuples ([`simplex`]). [`enumeration`] produces the full
//! set of empty classes per determinant and persists it in a flat-file
//! [`store`]. [`catalog`] holds the known list of wide empty 4-simplices and
//! diffs it against a store, [`bounds`] evaluates the volume bounds that cap
//! the search, and [`certify`] combines the two into a completeness verdict.
//! [`oracle`] and [`white`] are independent checks on the machinery.

pub mod arith;
pub mod bounds;
pub mod catalog;
pub mod certify;
pub mod enumeration;
pub mod error;
pub mod oracle;
pub mod simplex;
pub mod store;
pub mod torus;
pub mod white;

pub use error::{Error, Result};
pub use simplex::{VRepSimplex, WidthResult};
pub use torus::{CanonicalTuple, Determinant, ResidueTuple};
