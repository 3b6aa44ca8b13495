//! Eigenfunctions, intertwining operators and the Fourier transform attached
//! to the one-dimensional differential-reflection operator
//!
//! ```text
//! Λ f(x) = f′(x) + (A′(x)/A(x))·(f(x) − f(−x))/2 − ερ f(−x)
//! ```
//!
//! for a weight `A` from [`chebli::ChebliFamily`]. The eigenfunction
//! `Ψ(λ, ·)` solving `Λ Ψ = iλ Ψ`, `Ψ(0) = 1` is built in [`eigen`]; the
//! Bessel-kernel transmutations and the Laplace-type kernel live in
//! [`intertwine`]; the transform, its inverse and the Plancherel density in
//! [`fourier`]; the heat kernel in [`heat`]. [`verify`] bundles the numerical
//! checks into a report.

pub mod chebli;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod fourier;
pub mod grid;
pub mod heat;
pub mod intertwine;
pub mod quad;
pub mod report;
pub mod special;
pub mod verify;

pub use chebli::{ChebliFamily, FamilyKind, WeightTable};
pub use eigen::{RadialEigen, SpectralPoint};
pub use error::{Error, Result};
pub use grid::{smooth_bump, SampledFunction};
pub use report::{CheckRecord, Status, VerifyReport};
pub use verify::{verify_suite, Numerics, VerifyConfig};
