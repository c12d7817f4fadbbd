//! Exact computations in multilinear parts of varieties of Leibniz algebras.
//!
//! Every algebra here is a right Leibniz algebra, `(xy)z = (xz)y + x(yz)`,
//! over the rationals. Elements of the free algebra are kept as linear
//! combinations of left-normed words, `x1x2x3 = (x1x2)x3`.
//!
//! The crate is organised around a handful of modules:
//!
//! * [`term`]: free nonassociative terms, parsing, Leibniz reduction to
//!   left-normed words, multilinearization and skew-symmetrization.
//! * [`linalg`]: exact rational row reduction.
//! * [`variety`]: identity systems, multilinear components of T-ideals,
//!   identity membership and the `xY^k zY^(m-k)` condition.
//! * [`heisenberg`]: the Leibniz algebra `H ⊕ Q[t]` built from the
//!   Heisenberg algebra acting on polynomials by `d/dt`, `t·` and `1`.
//! * [`v3basis`]: the theta basis of `P_n` for the variety generated by
//!   that algebra, and a rewriting procedure onto it.
//! * [`symfunc`]: partitions, symmetric group characters, decompositions
//!   of `P_n(V)` and colength.

pub mod error;
pub mod heisenberg;
pub mod linalg;
pub mod perm;
pub mod scalar;
pub mod space;
pub mod symfunc;
pub mod term;
pub mod v3basis;
pub mod variety;

pub use error::{Error, Result};
pub use scalar::Rational;
