//! Finite profunctors and the truncated exponential `!A`: coend composition,
//! the structural maps of differential linear logic, categorical symmetric
//! sequences, species, and a law checker.

pub mod analytic;
pub mod cat;
pub mod catsym;
pub mod fincat;
pub mod format;
pub mod freesmc;
pub mod perm;
pub mod gen;
pub mod laws;
pub mod prof;
pub mod structmaps;
mod unionfind;
