//! Khovanov homology: the cube of resolutions, the scanning reduction,
//! integer homology tables and the gl₂ reindexing.

pub mod cob;
pub mod complex;
pub mod cube;
pub mod frobenius;
pub mod gl2;
pub mod homology;
pub mod jones;
pub mod scan;


use thiserror::Error;

pub use complex::{ChainComplex, Gen};
pub use cube::{build_cube_complex, Cube};
pub use frobenius::{FrobeniusSpec, Grading, RingTag};
pub use gl2::{khr2_table, ng_support_check, NgReport};
pub use homology::{homology_int, homology_rat, BigradedHomology, Shifts};
pub use jones::jones_unnormalized;
pub use scan::{reduce_complex, scan, Reduced, ScanConfig};

use crate::algebra::{Int, Rat, Ring};
use crate::linkdiag::LinkDiagram;

/// Default crossing cap for the full cube.
pub const CUBE_CAP: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KhError {
    #[error("diagram has {crossings} crossings, above the cube cap of {cap}; use the scanning builder")]
    CubeCap { crossings: usize, cap: usize },
    #[error("reduction needs {needed} generators, above the budget of {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("diagram has no component {0}")]
    UnknownComponent(usize),
}

pub fn shifts(d: &LinkDiagram) -> Shifts {
    Shifts { n_plus: d.n_positive() as i64, n_minus: d.n_negative() as i64 }
}

/// The reduced Khovanov complex (`X² = 0`) from the scanning builder.
pub fn kh_reduced<R: Ring>(d: &LinkDiagram, budget: Option<usize>) -> Result<ChainComplex<R>, KhError> {
    let cfg = ScanConfig { t: 0, endos: Vec::new(), budget };
    Ok(scan::<R>(d, &cfg)?.complex)
}

/// Classical Khovanov homology through the scanning builder.
pub fn khovanov_homology(d: &LinkDiagram, ring: RingTag, budget: Option<usize>) -> Result<BigradedHomology, KhError> {
    Ok(match ring {
        RingTag::Integers => homology_int(&kh_reduced::<Int>(d, budget)?, shifts(d)),
        RingTag::Rationals => homology_rat(&kh_reduced::<Rat>(d, budget)?, shifts(d)),
    })
}

/// Classical Khovanov homology from the unreduced cube.
pub fn khovanov_homology_cube(d: &LinkDiagram, ring: RingTag, cap: usize) -> Result<BigradedHomology, KhError> {
    let spec = FrobeniusSpec::khovanov(ring);
    Ok(match ring {
        RingTag::Integers => homology_int(&build_cube_complex::<Int>(d, &spec, cap)?, shifts(d)),
        RingTag::Rationals => homology_rat(&build_cube_complex::<Rat>(d, &spec, cap)?, shifts(d)),
    })
}
