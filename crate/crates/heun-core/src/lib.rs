//! Numerical monodromy of Heun's equation in its sphere and elliptic forms.
//!
//! The crate computes transfer matrices of the equation along paths in the
//! complex plane, assembles monodromy generators (loops on the sphere,
//! lattice translations on the torus), decides whether the projective
//! monodromy preserves a positive-definite Hermitian form, and scans the
//! accessory parameter for the values where it does.

pub mod continuation;
pub mod elliptic;
pub mod heun;
pub mod mat2;
pub mod monodromy;
pub mod ode;
pub mod scanner;
pub mod unitarize;

pub use heun::{
    alpha_from_k, coefficient_a, k_from_alpha, ExponentPair, Singularity, SphereHeun, TorusHeun,
};
pub use mat2::Mat2;

use num_complex::Complex64;

/// Errors shared across the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("singular points must be pairwise distinct")]
    CoincidentSingularities,
    #[error("angle must be positive")]
    NonPositiveAngle,
    #[error("degenerate lattice: period ratio is real")]
    DegenerateLattice,
    #[error("pole: {z} is within {tol:e} of a lattice point")]
    Pole { z: Complex64, tol: f64 },
    #[error("unknown singularity label")]
    UnknownLabel,
    #[error("not a singular point")]
    NotASingularPoint,
    #[error("resonant case unsupported: exponent difference {diff} is an integer")]
    Resonant { diff: f64 },
    #[error("did not converge: series order {order} cannot reach the tail bound")]
    DidNotConverge { order: usize },
    #[error(
        "path segment {segment} passes within clearance {clearance:e} of singularity {singularity}"
    )]
    ClearanceViolation {
        segment: usize,
        clearance: f64,
        singularity: Complex64,
    },
    #[error("step size underflow on segment {segment} (t = {t:.6})")]
    StepUnderflow { segment: usize, t: f64 },
    #[error("line through singularity; try a perturbed basepoint such as {suggestion}")]
    LineThroughSingularity { suggestion: Complex64 },
    #[error("fixed point at infinity: connection entry {entry} vanishes")]
    FixedPointAtInfinity { entry: &'static str },
    #[error("bound radius not certified by R = 2^20; supply a region manually")]
    BoundRadiusNotCertified,
    #[error("invalid scan config: {0}")]
    InvalidConfig(String),
    #[error("basepoint coincides with a singularity")]
    BasepointAtSingularity,
}

pub type Result<T> = std::result::Result<T, Error>;
