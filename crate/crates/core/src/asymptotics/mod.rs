//! Numerical verification drivers for the large-n and large-x limit
//! statements: exact sequences compared against their limits, with
//! trend verdicts rather than rates.

mod chi_square;
mod poissonized;
mod scaling;
mod stirling;
mod study;
mod words;

pub use chi_square::{chi_square_moment_study, strip_moment, ChiSquareStudy};
pub use poissonized::{
    gaussian_ensemble_expectation, nearest_integral_n, poissonized_limit_study, poissonized_sanity,
    rescaled_intensity, ComparisonReport, IntensityGrid, StripPoissonTable, TestFunction,
};
pub use scaling::{
    pv_u_bivariate, rescale_in_n, scaling_limit_check, strip_u_series, Bivariate, RescaledPolynomial, RescaledTerm,
    ScalingStudy,
};
pub use stirling::{stirling_helpers, stirling_monotone_threshold, StirlingReport};
pub use study::{ConvergenceStudy, StudyPoint};
pub use words::{
    word_event_check, word_event_identity, word_event_probability, word_event_study, WordEventCheck, WordEventStudy,
    WordIdentityReport,
};
