//! Exact arithmetic for plane Newton diagrams: Newton numbers, deformation
//! families of two-variable semi-quasi-homogeneous singularities, closed-form
//! predictions of the attainable spectrum, and brute-force oracles that check
//! the predictions independently.

pub mod constructions;
pub mod dsl;
pub mod eea;
pub mod geometry;
pub mod io;
pub mod oracle;
pub mod predictor;

use thiserror::Error;

pub use constructions::NamedDeformation;
pub use geometry::{Diagram, LatticePoint, SegmentTerm};
pub use oracle::{EnumerationConstraints, SpectrumResult, VerificationReport};
pub use predictor::{GapReport, SqhParams};

/// Any error the library can produce, tagged by layer so callers can map
/// them to exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
    #[error(transparent)]
    Eea(#[from] eea::EeaError),
    #[error(transparent)]
    Family(#[from] constructions::FamilyError),
    #[error(transparent)]
    Predictor(#[from] predictor::PredictorError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error(transparent)]
    Parse(#[from] dsl::ParseError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Compresses an ascending value sequence into inclusive `(lo, hi)` runs.
pub fn intervals_from_sorted(values: impl IntoIterator<Item = i64>) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some((_, hi)) if *hi + 1 == v => *hi = v,
            _ => out.push((v, v)),
        }
    }
    out
}
