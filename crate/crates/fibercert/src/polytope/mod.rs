//! Built-in polytope models.

pub mod cell24;
pub mod cell600;
pub mod hypercube;
