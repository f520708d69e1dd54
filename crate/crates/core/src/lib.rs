//! Chow forms, determinantal representations, Hadamard products and
//! entropic discriminants of reciprocal linear spaces, in exact arithmetic.

pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod detrep;
pub mod exterior;
pub mod matroid;
pub mod random;
pub mod simplicial;
pub mod hadamard;
pub mod entropic;
pub mod reality;
pub mod io;
pub mod verify;
