//! Exact routing for order pickers in rectangular multi-block warehouses.
//!
//! The crate models the warehouse as a unit-edge multigraph, enumerates
//! optimal picking tours by two independent exact solvers, applies
//! length-preserving rewrites that remove doubled traversals from outer
//! subaisles, and checks the structural claims over instance families.

pub mod brute;
pub mod dp;
pub mod rewrite;
pub mod verify;
pub mod configs;
pub mod tour;
pub mod warehouse;
