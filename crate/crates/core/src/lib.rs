//! Cluster variables of unpunctured surfaces from complete paths.
//!
//! Modules, bottom up: [`algebra`] (Laurent polynomials, tropical
//! semifields), [`seeds`] (exchange matrices and mutation), [`surface`]
//! (triangulations and flips), [`arcs`] (crossing bands and complete
//! paths), [`expansion`] (expansions, F-polynomials, g-vectors) and
//! [`harness`] (mutation oracle, file formats, CLI).

pub mod algebra;
pub mod arcs;
pub mod expansion;
pub mod harness;
pub mod seeds;
pub mod surface;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Seed(#[from] seeds::SeedError),
    #[error(transparent)]
    Surface(#[from] surface::SurfaceError),
    #[error(transparent)]
    Arc(#[from] arcs::ArcError),
    #[error(transparent)]
    Expansion(#[from] expansion::ExpansionError),
    #[error(transparent)]
    Oracle(#[from] harness::oracle::OracleError),
    #[error(transparent)]
    Input(#[from] harness::io::InputError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
