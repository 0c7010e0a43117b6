//! Word metrics on Cayley graphs, exact isoperimetric area search for
//! finitely presented groups, and a finite-sample laboratory for
//! quasimetric spaces, doubling measures and free-group boundaries.

pub mod boundary;
pub mod cayley;
pub mod cli;
pub mod isoperimetry;
pub mod presentation;
pub mod quasimetric;
pub mod word;
