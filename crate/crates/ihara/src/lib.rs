//! Ihara zeta functions and Artin–Ihara L-functions of finite graphs,
//! edge-trivial graphs of groups, and edge-free group quotients.
//!
//! The crate models graphs with legs through a half-edge structure (a root
//! map plus an involution), enumerates primes (rotation classes of primitive
//! closed reduced paths) by brute force, and evaluates the two-term and
//! three-term determinant formulas for zeta and L-function reciprocals in
//! exact arithmetic. Quotients of a graph by an edge-free group action come
//! with sheet and Frobenius data, so primes can be lifted, projected, and
//! split, and the structural identities (Euler products, regular-representation
//! factorization, divisibility) can be verified against independent
//! enumeration.
//!
//! All values are immutable after construction and every operation is a pure
//! function of its inputs.

pub mod action;
pub mod covering;
pub mod error;
pub mod gog;
pub mod graph;
pub mod io;
pub mod lfunction;
pub mod matrix;
pub mod poly;
pub mod zeta;

pub use error::{Error, Result};
