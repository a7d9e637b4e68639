//! Persistence lattices of commutative diagrams of vector spaces over a
//! prime field.
//!
//! A [`Diagram`](diagram::Diagram) is a validated commutative DAG of
//! `GF(p)` spaces. [`lattice`] works with the free distributive lattice its
//! nodes generate; [`realize`] turns meets and joins of node sets into
//! actual subspaces and quotients (equalizers and coequalizers) and reads off
//! rank invariants; [`zigzag`] specializes this to zig-zag modules.

#![allow(clippy::needless_range_loop)]

pub mod commands;
pub mod diagram;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod realize;
pub mod zigzag;

pub use diagram::{Diagram, EdgeSpec, NodeIx, NodeSpec, ShapeSpec};
pub use linalg::{Matrix, PrimeField, SubspaceBasis};
