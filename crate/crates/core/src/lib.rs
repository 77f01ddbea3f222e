//! Exact combinatorics of Dyck paths and pattern-avoiding permutations:
//! tunnel statistics, the zigzag bijection family with inverses, the
//! staircase and Krattenthaler array-walk bijections, and a truncated
//! power-series engine that checks every closed-form generating function
//! against brute-force enumeration.

pub mod config;
pub mod dyck;
pub mod perm;
pub mod series;
pub mod stats;
pub mod verify;
pub mod zigzag;

pub use dyck::{DyckPath, Step};
pub use perm::Permutation;
pub use stats::StatProfile;
