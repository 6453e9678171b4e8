//! Bernoulli lattice sums in closed form, their mollified-series oracle,
//! and fitting of the even-power expansion of lattice sums.

pub mod fit;
pub mod lemma;

pub use fit::{fit_delta, fit_delta_values, DeltaFit, DeltaSample, FitError};
pub use lemma::{
    default_schedule, double_sum, line_sum, line_sum_two_factor, mollified_limit, mollified_sum_oracle, parallelogram,
    parallelogram_lattice, required_cutoff, LemmaError, LemmaSum, MollifiedLimit,
};
