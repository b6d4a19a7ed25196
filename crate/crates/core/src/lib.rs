pub mod algebra;
pub mod automorphism;
pub mod cli;
pub mod error;
pub mod fixed_ring;
pub mod linalg;
pub mod quiver;
pub mod ratfun;
pub mod resolution;
pub mod scalar;
pub mod traces;

pub use algebra::{AlgebraElement, GradedAlgebra, PathMonomial};
pub use automorphism::{generate_group, reynolds, AutGroup, ScalingAutomorphism};
pub use error::{Error, Result};
pub use quiver::{build_extended_dynkin, DynkinFamily, FamilyKind, Quiver};
pub use ratfun::{Poly, RatFun, RatMatrix, TruncatedSeries};
pub use resolution::{ext_against_ring, gorenstein_verdict, minimal_resolution, simple_module, ExtGroup, ExtReport, GradedModuleTruncation, Resolution, Verdict};
pub use scalar::{Rational, Scalar};
