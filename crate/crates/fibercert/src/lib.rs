//! Verify algebraic fibrations of right-angled Coxeter groups by direct
//! computation.
//!
//! Given a finite simplicial graph, a system of commuting `Z_2` moves, and a
//! starting state, this crate enumerates the whole orbit, checks every state
//! for legality, and computes the integral homology of every ascending and
//! descending link via Smith normal form. The built-in models are the
//! 1-skeletons of the 24-cell and the 600-cell together with their known
//! admissible systems; for the 600-cell this means an exhaustive sweep over
//! all 2^20 orbit states.
//!
//! The narrative guide lives in `book/`; its code samples are compiled as
//! doc-tests through the [`guide`] module.

pub mod complex;
pub mod golden;
pub mod graph;
pub mod homology;
pub mod io;
pub mod moves;
pub mod polytope;
pub mod verifier;

#[doc(hidden)]
pub mod guide;

pub use graph::{Bipartition, Graph, GraphError, VertexSet};
pub use moves::{MoveSystem, Orbit};
