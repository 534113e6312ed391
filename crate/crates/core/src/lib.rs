//! Orbit and stabiliser data for the ordinary, enhanced and exotic nilpotent
//! cones over small finite fields: closed-form counts as exact polynomials in
//! `q`, and brute-force orbit enumeration to check them.

pub mod combinatorics;
pub mod enhanced;
pub mod error;
pub mod exotic;
pub mod gf;
pub mod groups;
pub mod linalg;
pub mod pointfile;
pub mod qcount;

pub use error::{Error, Result};
