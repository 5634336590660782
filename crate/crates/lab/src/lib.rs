//! Seeded Monte Carlo estimates of ordinal pattern frequencies in random
//! walks with i.i.d. steps, and statistical checks of those frequencies
//! against the equivalence classes from `ordwalk-core`.

pub mod dist;
mod error;
pub mod report;
pub mod sim;

pub use dist::{StepDistribution, StepSampler};
pub use error::{Error, Result};
pub use report::{
    class_report, cross_distribution_discrimination, symmetric_n3_probability, ClassReport,
    ClassRow, DiscriminationReport, HomogeneityConfig, PairEvidence,
};
pub use sim::{estimate_frequencies, sample_pattern, FrequencyTable, Sample};
