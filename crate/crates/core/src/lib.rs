//! Combinatorics of type-A cluster algebras.
//!
//! Triangulations of a polygon, the exchange graph they form under flips, cluster
//! variables as Laurent polynomials, the integral homology of the exchange graph
//! with its square and pentagon cells, and the module of exchange relations.

pub mod checks;
pub mod clustervars;
pub mod combinat;
pub mod error;
pub mod exchmod;
pub mod flipgraph;
pub mod homology;
pub mod laurent;
pub mod polygon;
pub mod zlinalg;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
