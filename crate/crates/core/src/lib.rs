//! Exact combinatorics of rooted ordered trees.
//!
//! The crate enumerates the trees of `T_n` (the rooted ordered trees with
//! `n` edges), computes per-vertex statistics, encodes trees as Dyck paths,
//! carries out the reversible marked-vertex surgeries between the four
//! vertex classes refined by degree and level, maps marked vertices to
//! lattice paths with fixed endpoints, and evaluates every associated
//! closed-form count in exact integer arithmetic.
//!
//! Everything is pure and allocation-only; the crate is `no_std` (with
//! `alloc`). IO, text tables, and the command line live in the companion
//! `ordtree-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classes;
pub mod counts;
pub mod path;
pub mod phi_map;
pub mod tree;
pub mod verify;

pub use classes::{classify, map_between, Class, ClassSet, NotInClass};
pub use counts::{binomial, catalan, half_vertices, CountTable, Statistic};
pub use path::{phi, phi_inv, psi, psi_inv, reflect_suffix, DyckPath, LatticePath, Step};
pub use phi_map::{decompose, phi_map, phi_map_inv, recompose, Decomposition, PathSet};
pub use tree::{enumerate_trees, total_vertex_count, MarkedTree, Tree, VertexStats};
pub use verify::{tally, verify_bijections, verify_counts, verify_phi, VerificationReport};
