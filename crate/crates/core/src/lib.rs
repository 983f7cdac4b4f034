//! Exact-arithmetic invariants of toric Fano varieties from their lattice
//! polytopes: Ding/K/Chow stability verdicts, the delta invariant, the
//! greatest Ricci lower bound, Ehrhart-type polynomials, and Demazure roots
//! with the reductivity of the automorphism group.
//!
//! All computation is exact over arbitrary-precision rationals. The library
//! side lives here; the `fanotope` binary in the companion CLI crate wraps
//! `analyze`, `scan` and the built-in verification catalog.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod io;
pub mod lattice;
pub mod polynomial;
pub mod polytope;
pub mod report;
pub mod roots;
pub mod stability;

pub use arith::{Int, IntVec, QVec, Rational};
pub use error::{Error, Result};
pub use polynomial::{Polynomial, VectorPolynomial};
pub use polytope::{Halfspace, HalfspaceRep, LatticePolytope, LatticeTag, Simplex};
pub use report::{analyze, analyze_labeled, StabilityReport};
pub use roots::RootSet;
pub use stability::PiecewiseLinear;
