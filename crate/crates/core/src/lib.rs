//! Pseudo-spectral toolkit for the axisymmetric Euler-Coriolis equations
//!
//! The crate is organized around a periodic-box spectral discretization of
//! the incompressible Euler equations in a rotating frame,
//!
//! ```text
//! d_t u + u.grad(u) + e3 x u + grad(p) = 0,    div(u) = 0,
//! ```
//!
//! linearized around rigid rotation. The rotation induces dispersion with
//! relation `Lambda(xi) = xi_3/|xi|`, and the toolkit provides
//!
//! * spectral fields on a centered periodic box with a fixed Fourier
//!   convention ([`field`], [`fft`]),
//! * the scalar decomposition `u <-> (A, C) <-> (U+, U-)` of divergence-free
//!   axisymmetric velocity fields ([`scalars`]),
//! * dyadic, anisotropic and angular Littlewood-Paley projectors together
//!   with the spherical resampling they act on ([`shells`], [`spherical`]),
//! * the `B`/`X`/`D` norm hierarchy ([`norms`]),
//! * the linear semigroup `e^{itLambda}` both as a grid multiplier and as a
//!   Bessel-kernel quadrature oracle, with decay-rate measurements
//!   ([`propagator`], [`oscillatory`], [`bessel`]),
//! * closed-form phase/vector-field identities with finite-difference
//!   verification ([`phase`]),
//! * a profile-based exponential integrator for the nonlinear system and an
//!   independent velocity-space cross-check solver ([`solver`], [`usolver`]).
//!
//! All operations are pure functions of immutable field values; internal
//! loops parallelize with rayon when the `parallel` feature (default) is
//! enabled and fall back to sequential iteration otherwise. Results are
//! bitwise deterministic either way.

pub mod bessel;
pub mod bump;
pub mod datagen;
pub mod error;
pub mod fft;
pub mod field;
pub mod grid;
pub mod legendre;
pub mod norms;
pub mod oscillatory;
pub mod par;
pub mod phase;
pub mod propagator;
pub mod scalars;
pub mod shells;
pub mod solver;
pub mod spectral_ops;
pub mod spherical;
pub mod usolver;

pub use error::{Error, Result};
pub use field::{SpectralField, VectorFieldSpectral};
pub use grid::GridSpec;

/// Complex sample type used throughout.
pub type C64 = num_complex::Complex64;
