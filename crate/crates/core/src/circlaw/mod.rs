//! Non-Hermitian spectral experiments: eigenvalues of `X`, delta-like local
//! statistics against the uniform disk measure, the Girko log-determinant
//! identity as a numerical check, eigenvalue rigidity, and smallest-eigenvalue
//! statistics.

mod girko;
mod rigidity;
mod smallest;
mod spectrum;
mod stats;
mod testfn;

pub use girko::{girko_check, GirkoReport};
pub use rigidity::{rigidity_check, RigidityReport, RigidityRow};
pub use smallest::{smallest_eigenvalue_stats, SmallestReport};
pub use spectrum::{nonhermitian_spectrum, ComplexSpectrum};
pub use stats::{
    circular_law_scaling, disk_integral, local_stat, CircularLawSample, ScalingReport, ScalingRow,
};
pub use testfn::TestFunction;
