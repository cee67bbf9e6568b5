//! Exact desk-scale analysis of `l_p` versus `l_0` minimisation on
//! underdetermined linear systems `Ax = b`.
//!
//! The pipeline row-reduces the system, parameterises its solution set,
//! builds the modulus-dominance polytope `G(r)` by Fourier-Motzkin projection,
//! enumerates its vertices, and from them computes a certified exponent bound
//! below which every `l_p` minimiser is also a sparsest solution.

pub mod curve;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod instance_text;
pub mod linalg;
pub mod polytope;
pub mod report;
pub mod settings;
pub mod solvers;
pub mod system;

pub use error::{Error, Result};
pub use settings::{Limits, Settings, Tolerances};
pub use system::{decompose, load_and_reduce, Instance, SolutionParam};
