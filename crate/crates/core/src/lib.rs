//! Signed a-numbers, a-polynomials and Betti numbers of toric arrangements of
//! graphs, together with exact generating-function tooling for checking the
//! closed forms of standard graph families.

pub mod closed_forms;
pub mod error;
pub mod graph;
pub mod identities;
pub mod invariants;
pub mod motzkin;
pub mod poly;
pub mod series;

pub use error::{Error, Result};
pub use graph::{Graph, GraphFamily, VertexSet, DEFAULT_CAP, MAX_CAP};
pub use identities::{verify_identity, IdentityId, VerificationReport};
pub use invariants::{Engine, InvariantReport, ReportJson};
pub use poly::{IntPolynomial, RationalPolynomial};
