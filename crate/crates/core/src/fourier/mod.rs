//! The Fourier transform attached to the differential-reflection operator.

pub mod checks;
pub mod density;
pub mod transform;

pub use checks::{
    conjugate_symmetry_defect, paley_wiener_check, plancherel_check, riemann_lebesgue_ratio, schwartz_seminorm,
    ExponentialTypeFit, PaleyWienerReport, PlancherelReport,
};
pub use density::{c_density, calibrate_dunkl, dunkl_constant, SpectralDensity};
pub use transform::{
    forward, forward_at, inverse, round_trip, round_trips, Inversion, RoundTrip, SpectralGrid, TransformResult,
};
