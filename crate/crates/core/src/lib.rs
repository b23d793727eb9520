//! Khovanov, Lee and gl2 link homology, s-invariants, and lasagna
//! s-invariants of 2-handlebodies.

pub mod algebra;
pub mod cli;
pub mod khovanov;
pub mod lasagna;
pub mod lee;
pub mod linkdiag;
