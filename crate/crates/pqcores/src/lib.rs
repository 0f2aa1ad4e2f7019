//! Exact construction and core computation for the symmetric graphs of order
//! `p*q` (distinct primes `p < q`) that admit an imprimitive arc-transitive
//! group: circulants built from multiplicative subgroups, incidence and
//! non-incidence graphs of the classical symmetric designs, and
//! Marušič–Scapellato graphs over `GF(2^a)`.
//!
//! The crate has three layers:
//!
//! * substrate — number theory, `GF(2^a)` tables, projective designs
//!   ([`algebra`]) and a bitset graph type with products and isomorphism
//!   testing ([`graph`]);
//! * constructions — one constructor per graph family, each returning the
//!   graph, its parameter record and a set of automorphism generators
//!   ([`families`]);
//! * decision procedures — exact clique/chromatic/independence and
//!   (constrained) homomorphism search ([`solvers`]), and core computation by
//!   brute force, by the classification decision tables, or by certificate,
//!   with cross-validation between the routes ([`cores`]).
//!
//! [`suite`] bundles the end-to-end verification runs used by the CLI and the
//! acceptance tests.

pub mod algebra;
pub mod cores;
pub mod error;
pub mod families;
pub mod graph;
pub mod perm;
pub mod solvers;
pub mod suite;

pub use error::{Error, Result};
