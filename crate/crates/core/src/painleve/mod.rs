//! Residual checks for the third-order equations satisfied by logarithmic
//! derivatives of the tau functions, the Cosgrove first integral, and the
//! Virasoro/KP identities at the locus t = (x, 0, 0).

mod cosgrove;
mod equations;
mod locus;
mod poly;
mod sampled;
mod series_u;

pub use cosgrove::{
    cosgrove_delta, first_integral_consistency, jacobi_pv_constants, ArgumentSign, FirstIntegralReport,
    JacobiPvF, PvConstantReport,
};
pub use equations::{residual, OdeResidualSpec, ResidualReport};
pub use locus::{kp_residual_check, kp_step_study, virasoro_locus_check, KpReport, LocusPartials, VirasoroReport};
pub use poly::Poly;
pub use sampled::{linear_grid, SampledFunction};
pub use series_u::{pv_series_u, PvSeriesReport};
