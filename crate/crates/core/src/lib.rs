//! Kernelization toolkit for H-Coloring parameterized by the vertex cover number.
//!
//! The crate is organised around the objects that the two kernels need:
//!
//! * [`graph`]: dense simple graphs, standard families, the exact homomorphism
//!   solver used as the correctness oracle throughout, and core computation.
//! * [`witness`]: the non-adjacency witness number `q(G)` and the structural
//!   bounds around it (clique number, degeneracy, `B_{m,l}` obstructions).
//! * [`ffalg`]: finite fields `GF(p^m)`, dense linear algebra and the sparse
//!   multilinear polynomials that host the determinant polynomials `p_S`.
//! * [`repr`]: faithful orthogonal and independent representations.
//! * [`kernels`]: the combinatorial and the algebraic kernel.
//! * [`reductions`]: edge gadgets, List-H-Coloring and q-NAE-SAT reductions.
//!
//! Every search that is exponential in the input carries a configurable
//! [`Ceilings`] guard and reports [`Error::Ceiling`] instead of running away.

pub mod bitset;
pub mod config;
pub mod error;
pub mod ffalg;
pub mod graph;
pub mod kernels;
mod par;
pub mod reductions;
pub mod repr;
pub mod witness;

pub use config::Ceilings;
pub use error::{Error, ErrorClass, Result};
pub use graph::{Graph, Homomorphism, VertexSet};

/// `true` when the crate was built with the rayon backend.
pub const PARALLEL: bool = cfg!(feature = "parallel");
