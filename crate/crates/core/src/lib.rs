//! Numerical toolkit for circular-law experiments on i.i.d. random matrices.
//!
//! The library is organized around the Hermitization of a non-Hermitian
//! matrix `X`: for a complex shift `z` one studies the Hermitian family
//! `Y_z* Y_z` with `Y_z = X - zI`. Four module groups cover the pipeline:
//!
//! - [`ensembles`]: seeded samplers for matrices with centered entries of
//!   variance `1/N`, plus the shift `Y_z = X - zI`.
//! - [`limiting`]: deterministic limit theory: the Stieltjes transform
//!   `m_c(w, z)`, the density `rho_c`, spectral edges, classical eigenvalue
//!   locations, the log-potential and the Ginibre one-point intensity.
//! - [`resolvent`]: empirical Hermitized spectra, Green functions and
//!   their minors, exact resolvent identities, and local-law sweeps.
//! - [`circlaw`]: non-Hermitian spectra, the local circular-law statistic,
//!   the Girko identity check, eigenvalue rigidity and smallest-singular-value
//!   statistics.

pub mod circlaw;
pub mod ensembles;
pub mod limiting;
pub mod report;
pub mod resolvent;

pub use num_complex::Complex64;

/// Errors surfaced by the numerical layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("theorem hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
