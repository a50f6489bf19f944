//! Exact symbolic computation for quantized coordinate rings and quantum
//! flag manifolds: root-system data, irreducible modules, matrix-coefficient
//! coordinate rings, matrix-unit projections, twisted Hochschild 2-cycles,
//! cocycle pairings, and linear-independence certificates. All arithmetic
//! is exact (Laurent polynomials in `q` over the rationals and their
//! fraction field); there is no floating point anywhere.

pub mod cartan;
pub mod coordring;
pub mod flags;
pub mod hochschild;
pub mod matrix;
pub mod matunits;
pub mod pairings;
pub mod repbuild;
pub mod scalar;
pub mod suite;
