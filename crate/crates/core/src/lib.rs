//! Exact computations on Lie poset algebras.
//!
//! Posets of types A, B, C and D generate matrix Lie algebras lying between a
//! Cartan and a Borel subalgebra. This crate builds those algebras, computes
//! their index and Frobenius functionals, derived series, principal elements
//! and spectra, normalizes Frobenius two-step solvable algebras to the model
//! algebra `Phi_n`, and computes Chevalley-Eilenberg cohomology with adjoint
//! coefficients alongside the simplicial cohomology of the poset's order
//! complex.

pub mod exactla;
pub mod poset;
pub mod liealg;
pub mod indexfrob;
pub mod cohomology;
pub mod nerve;
pub mod suites;
pub mod cli;
