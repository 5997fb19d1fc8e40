//! Elastic-degenerate string matching with at most one error.
//!
//! An elastic-degenerate (ED) text is a sequence of segments, each a finite
//! set of strings (possibly containing the empty string). This crate finds
//! all end segments j' where the pattern matches a path through the text
//! exactly, with at most one mismatch (Hamming), or with at most one edit.
//!
//! Modules:
//! - [`eds`]: data model, `.eds` parser/serializer, alphabet remapping, reverse
//! - [`bits`]: the prefix-length bit vector all lattice sets live in
//! - [`seq`]: suffix arrays, LCE, compacted tries, heavy-light, 1-error SM
//! - [`geom`]: rectangle emptiness / stabbing / grid / nested-offline engines
//! - [`ape`]: active-prefix extension and exact-occurrence propagation
//! - [`anchor`]: error strictly inside a middle segment (geometric + grid)
//! - [`affix`]: error in the last (prefix case) or first (suffix case) segment
//! - [`errata`]: the 1-errata-tree alternative for the Hamming anchor case
//! - [`engine`]: per-segment orchestration, reporting and decision entry points
//! - [`oracle`]: independent brute-force reference implementations
//! - [`generate`]: seeded random instance generator

pub mod affix;
pub mod anchor;
pub mod ape;
pub mod bits;
pub mod eds;
pub mod engine;
pub mod errata;
pub mod generate;
pub mod geom;
pub mod oracle;
pub mod seq;
