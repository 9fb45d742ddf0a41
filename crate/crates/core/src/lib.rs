//! Rank-metric codes with (r, δ) rank-locality over GF(q^m): field towers,
//! linearized polynomials, encoding and local repair, crisscross erasure
//! decoding, lifted subspace codes and a network-coding channel simulator.

pub mod codes;
pub mod crisscross;
pub mod error;
pub mod formats;
pub mod gf;
pub mod linpoly;
pub mod matrix;
pub mod netsim;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
