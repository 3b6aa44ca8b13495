//! Transmutation and intertwining operators.
//!
//! The Bessel-kernel transforms in [`transmute`] work for every family. The
//! kernel `𝕂_ε` with `Ψ(λ, x) = ∫ 𝕂_ε(x, y) e^{iλy} dy` and the intertwiner
//! `V` built from it are implemented for the power weight only, where the
//! base kernel is explicit.

pub mod bessel;
pub mod mehler;
pub mod transmute;

pub use bessel::{bessel_i, bessel_j};
pub use mehler::{dunkl_base_kernel, t_v_eps, v_eps, MehlerKernel};
pub use transmute::{apply_e, BesselKernelOp, Direction};
