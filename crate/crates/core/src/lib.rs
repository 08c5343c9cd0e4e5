//! Numerical analysis of the harmonic quadrinomials
//! `Q(z) = b z^k + conj(z)^n + c conj(z)^m + z`.
//!
//! * [`harmonic`]: evaluation, Jacobian, dilatation and orientation of `h + conj(g)`.
//! * [`critical`]: the critical circle `|z| = M` and grid sense maps.
//! * [`hypocycloid`]: hypocycloids, the closed-form image of the critical
//!   circle, cusp verification and fit reports.
//! * [`zeros`]: Newton-based zero search, winding numbers and the
//!   argument-principle ledger.
//! * [`bounds`]: zero-inclusion disks and Descartes sign counting.
//! * [`commands`]: the artifact-producing commands behind the `harmonic-locus` binary.

pub mod bounds;
pub mod commands;
pub mod critical;
pub mod curve;
pub mod error;
pub mod export;
pub mod harmonic;
pub mod hypocycloid;
pub mod svg;
pub mod zeros;

pub use error::{Error, Result};
pub use harmonic::{ComplexPoint, HarmonicPolynomial, OrientationClass, QuadrinomialParams};
