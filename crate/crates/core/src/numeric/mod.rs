//! Floating-point root finding and root-count profiles over parameter
//! grids. Profiles are diagnostics, never proofs: they shadow the analytic
//! conditions the symbolic verifier cannot certify.

mod cluster;
mod profile;
mod roots;

pub use cluster::{cluster_roots, Cluster};
pub use profile::{root_count_profile, ProfileSample, RootProfile, SampleAxis, SampleRegion};
pub use roots::{univariate_roots, RootEstimate};

/// Double-precision complex numbers; every operation that could produce a
/// NaN or infinity reports an error instead of letting it escape.
pub type ComplexApprox = num::complex::Complex64;

/// Default relative clustering tolerance.
pub const DEFAULT_REL_TOL: f64 = 1e-8;
/// Absolute floor: roots this close to zero (relative to the root set's
/// scale) snap to the zero cluster.
pub const ABS_FLOOR: f64 = 1e-10;
