//! Nilpotent graph Lie algebras over the rationals.
//!
//! Given a simple graph `G` on ordered vertices `v1 < ... < vm` and a step
//! bound `k`, the crate builds the `k`-step nilpotent graph Lie algebra
//! `g(k, G)`: the free `k`-step nilpotent Lie algebra on the vertices modulo
//! the ideal generated by brackets of non-adjacent vertex pairs. On top of the
//! construction it provides
//!
//! - exact linear algebra over `Q` ([`linalg`]),
//! - a Lyndon-labelled graded basis with structure constants, checked against
//!   an independent clique-polynomial dimension count ([`basis`]),
//! - generic Lie algebra operations such as lower central series, center and
//!   associated graded ([`lie`]),
//! - the 2-step nil-cohomology `(ker d2 ∩ ker eta2) / im d1` ([`cohomology`]),
//! - linear deformations, non-rigidity witnesses and a rigidity classifier
//!   with sweeps over isomorphism classes of small graphs ([`rigidity`]).

pub mod basis;
pub mod cohomology;
mod error;
pub mod graph;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod rigidity;

pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use lie::{GradedLieAlgebra, LieAlgebra};
pub use linalg::{Rational, RatMatrix, SparseVec, Subspace};
