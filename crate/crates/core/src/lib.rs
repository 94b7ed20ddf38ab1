//! Exact computations with nilpotent data in classical Lie algebras and a
//! certifier for reduction by stages of Slodowy slices.

pub mod exactlin;
pub mod liecore;
pub mod gradings;
pub mod triples;
pub mod expr;
pub mod stagecert;
pub mod catalog;
