//! Quantum doubles of finite groups and transformation group algebras.
//!
//! The crate builds the finite transformation group algebra `C(X x G)`, the
//! quantum double `D(G) = C(G x G)` with its Hopf and R-matrix structure, and
//! the complete list of irreducible *-representations obtained by inducing
//! from orbit stabilizers. The `compact` module carries the same formulas
//! to `SU(2)` by Haar quadrature and classifies conjugacy classes of
//! `SL(2, R)`.

pub mod compact;
pub mod double;
pub mod dpr;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod report;
pub mod reps;
pub mod suite;
pub mod tga;

pub use error::{Error, Result};
