//! Empirical Hermitized spectral computations: eigen-decompositions of
//! `Y_z* Y_z`, Green functions and their minors, exact resolvent identities,
//! the spectral grid `S(α)`, and local-law deviation sweeps.

mod green;
mod sgrid;
mod sweep;

pub use green::{
    green_entries, hermitize, identity_suite, m_empirical, HermitizedSpectrum, IdentityReport,
    MinorSpec,
};
pub use sgrid::{build_sgrid, phi_factor, SGrid, SGridColumn};
pub use sweep::{
    conditional_expectation_check, local_law_sweep, LocalLawReport, LocalLawRow, McErrorReport,
    ResolventSample,
};
