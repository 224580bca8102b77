//! Finite-rank computational toolkit for direct limits of commutative nilmanifolds.
//!
//! The crate covers highest-weight calculus and multiplicity-free
//! certification for compact groups acting on polynomial rings, exact
//! Pfaffians of two-step nilpotent Lie algebras, a truncated Bargmann-Fock
//! model of the Heisenberg group, direct systems of labeled Hilbert-space
//! stages, and centralizer computations in sp(2).

#![allow(clippy::needless_range_loop)]

pub mod carcano;
pub mod error;
pub mod fock;
pub mod limits;
pub mod linalg;
pub mod nilpotent;
pub mod repcalc;
pub mod stabilizers;
pub mod suite;
pub mod tables;
pub mod weights;

pub use error::{Error, Result};
