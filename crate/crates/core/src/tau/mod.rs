//! Hankel-determinant tau functions of one-matrix integrals.

pub mod direct;
mod evaluator;
mod integrals;
mod moments;
mod weight;

pub use evaluator::{DerivativeRoute, TauDescriptor, TauEvaluator};
pub use integrals::{
    gaussian_normalization, hermitian_ratio, painleve_input_h, painleve_input_k,
    selberg_aomoto_mean, GaussianNormalization, HInterval, KInterval, NormalizationReading,
    PainleveH, PainleveK, SelbergReport,
};
pub use moments::{moment, moments, MomentMethod};
pub use weight::{Deformation, GaussianSupport, LogDerivative, Profile, UnitSupport, WeightSpec};
