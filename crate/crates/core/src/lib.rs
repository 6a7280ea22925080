//! Exact verification and construction toolkit for transposed Poisson
//! algebras and their relatives.

pub mod algebra;
pub mod axioms;
pub mod linalg;
pub mod constructions;
pub mod catalog;
pub mod search;
pub mod io;
