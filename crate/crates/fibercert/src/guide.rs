//! The book's chapters, compiled here so every code block in `book/src/`
//! runs as a doc-test and cannot drift away from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/states-and-moves.md")]
pub mod states_and_moves {}

#[doc = include_str!("../../../book/src/polytope-models.md")]
pub mod polytope_models {}

#[doc = include_str!("../../../book/src/links-and-homology.md")]
pub mod links_and_homology {}

#[doc = include_str!("../../../book/src/certificates.md")]
pub mod certificates {}
