//! Numerical toolkit for the two-dimensional vorticity equations in a half
//! plane with measure-valued initial data.
//!
//! The crate provides
//!
//! * grids, sampled fields and finite vorticity measures ([`grid`], [`measure`]),
//! * closed-form evaluation of the elementary kernels: the heat kernel, the
//!   logarithmic potential, Poisson and conjugate Poisson kernels and the
//!   Dirichlet Green function of the half plane ([`kernels`]),
//! * spectral operators on boundary-line data: Hilbert transform, Poisson
//!   semigroup, line heat semigroup and the Dirichlet-Neumann generator
//!   ([`line_ops`]),
//! * half-plane heat semigroups and inverse Laplacians by image kernels
//!   ([`semigroups`]),
//! * the Biot-Savart operator, the boundary trace and measure
//!   normalization ([`biot_savart`]),
//! * the vorticity solution operator of the Stokes flow in both its direct
//!   kernel form and its composite semigroup form, the trace-zero variant,
//!   and the Stokes Green matrix ([`vorticity`]),
//! * a Picard iteration for the mild nonlinear vorticity equation with a
//!   finite-difference oracle for the linear problem ([`navier_stokes`]),
//! * named initial-data constructors ([`initial`]).
//!
//! All operations are pure and deterministic: reductions use a fixed
//! pairwise order so repeated runs agree bitwise.

pub mod biot_savart;
mod fftutil;
pub mod grid;
pub mod initial;
pub mod kernels;
pub mod line_ops;
pub mod measure;
pub mod navier_stokes;
pub mod quad;
pub mod semigroups;
mod special;
pub mod vorticity;

/// Errors surfaced by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("time must be positive, got {0}")]
    InvalidTime(f64),
    #[error("nonnegative parameter required, got {0}")]
    NegativeParameter(f64),
    #[error("exponent out of range: {0}")]
    InvalidExponent(f64),
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
    #[error("point ({0}, {1}) lies outside the grid")]
    OutOfDomain(f64, f64),
    #[error("evaluation within {0:.3e} of a kernel singularity")]
    Singular(f64),
    #[error("line resolution too small: {0} samples")]
    Resolution(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("explicit step unstable: dt {dt:.3e} exceeds limit {limit:.3e}")]
    Unstable { dt: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub use grid::{HalfPlaneGrid, LineSamples, ScalarField, TimeMesh, VectorField};
pub use kernels::Point2;
pub use measure::VorticityMeasure;
pub use vorticity::KernelConfig;
