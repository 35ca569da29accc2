//! Exact computation of normal systems of equations (discriminant towers)
//! for polynomial set germs and function germs.
//!
//! The building blocks are truncated power series with exact rational
//! coefficients ([`Jet`]), univariate polynomials over them ([`UniOverJets`]),
//! generalized discriminants computed as Hankel minors of Newton power sums,
//! and Weierstrass preparation. On top of those sit the two tower
//! constructions ([`tower::build_tower_set`], [`tower::build_tower_function`]),
//! an independent verifier, Hensel lifting of graph branches, and a
//! floating-point root-count profiler.

pub mod context;
pub mod disc;
pub mod error;
pub mod jet;
pub mod linear;
pub mod numeric;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod tower;
pub mod uni;
pub mod weier;

pub use context::{Ctx, VarContext};
pub use disc::{DistinctRootReport, GDiscVector};
pub use error::Error;
pub use jet::{Jet, JetOrder};
pub use linear::LinearChange;
pub use poly::{Monomial, MultiPoly};
pub use scalar::Scalar;
pub use uni::UniOverJets;
pub use weier::{PreparationResult, Regularity, SearchConfig};
