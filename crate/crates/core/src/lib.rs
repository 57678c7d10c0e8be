//! Quantum speed limits, radial displacements and average radial speeds of
//! an electron wave packet in a uniform magnetic field, under Schrodinger-Pauli
//! and Dirac dynamics.

pub mod dirac;
pub mod error;
pub mod landau;
pub mod observables;
pub mod qsl;
pub mod scanner;
pub mod specfun;

pub use error::{Error, Result};
