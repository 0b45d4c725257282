//! SP 800-22 statistical test battery (all fifteen tests) plus the
//! corpus-level aggregation used to judge a keystream family: per-test
//! P-value histograms, observed vs expected proportion of passing sequences,
//! and a chi-square uniformity check over the P-value distribution.
//!
//! Test functions take a [`BitSequence`] and the parameters the battery
//! would use; each returns a [`TestResult`] carrying one or more P-values.
//! [`run_battery`] runs all fifteen with one parameter set, and
//! [`aggregate::run_suite`] maps the battery over a corpus of sequences and
//! folds the results into an [`aggregate::AggregateReport`].

pub mod aggregate;
pub mod bits;
mod complexity;
mod excursions;
mod frequency;
mod rank;
mod serial;
mod special;
mod spectral;
mod template;
mod universal;

pub use aggregate::{run_suite, AggregateReport, TestRow};
pub use bits::BitSequence;
pub use complexity::{berlekamp_massey, linear_complexity};
pub use excursions::{cumulative_sums, random_excursions, random_excursions_variant};
pub use frequency::{block_frequency, longest_run_of_ones, monobit, runs};
pub use rank::binary_matrix_rank;
pub use serial::{approximate_entropy, serial};
pub use special::{erfc, igamc, lgamma, normal_cdf};
pub use spectral::dft_spectral;
pub use template::{aperiodic_templates, non_overlapping_all, non_overlapping_template, overlapping_template};
pub use universal::maurer_universal;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NistError {
    #[error("empty bit sequence")]
    Empty,
    #[error("byte {byte:#04x} at digit offset {offset} is not an ASCII 0/1 or whitespace")]
    BadDigit { byte: u8, offset: usize },
    #[error("sequence has {have} bits, need {want}")]
    BadLength { have: usize, want: usize },
    #[error("test {test:?} needs at least {min} bits, sequence has {have}")]
    TooShort { test: TestId, min: usize, have: usize },
    #[error("invalid parameter for {test:?}: {msg}")]
    BadParameter { test: TestId, msg: String },
    #[error("suite needs at least one input sequence")]
    EmptyCorpus,
}

/// The fifteen tests, in the standard battery order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TestId {
    Monobit,
    BlockFrequency,
    Runs,
    LongestRun,
    MatrixRank,
    Spectral,
    NonOverlappingTemplate,
    OverlappingTemplate,
    Universal,
    LinearComplexity,
    Serial,
    ApproximateEntropy,
    CumulativeSums,
    RandomExcursions,
    RandomExcursionsVariant,
}

impl TestId {
    pub const ALL: [TestId; 15] = [
        TestId::Monobit,
        TestId::BlockFrequency,
        TestId::Runs,
        TestId::LongestRun,
        TestId::MatrixRank,
        TestId::Spectral,
        TestId::NonOverlappingTemplate,
        TestId::OverlappingTemplate,
        TestId::Universal,
        TestId::LinearComplexity,
        TestId::Serial,
        TestId::ApproximateEntropy,
        TestId::CumulativeSums,
        TestId::RandomExcursions,
        TestId::RandomExcursionsVariant,
    ];

    /// 1-based battery position.
    pub fn number(self) -> usize {
        TestId::ALL.iter().position(|t| *t == self).unwrap() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            TestId::Monobit => "frequency",
            TestId::BlockFrequency => "block-frequency",
            TestId::Runs => "runs",
            TestId::LongestRun => "longest-run",
            TestId::MatrixRank => "matrix-rank",
            TestId::Spectral => "spectral",
            TestId::NonOverlappingTemplate => "non-overlapping-template",
            TestId::OverlappingTemplate => "overlapping-template",
            TestId::Universal => "universal",
            TestId::LinearComplexity => "linear-complexity",
            TestId::Serial => "serial",
            TestId::ApproximateEntropy => "approximate-entropy",
            TestId::CumulativeSums => "cumulative-sums",
            TestId::RandomExcursions => "random-excursions",
            TestId::RandomExcursionsVariant => "random-excursions-variant",
        }
    }

    /// P-values the test contributes per sequence when applicable.
    pub fn p_values_per_sequence(self) -> usize {
        match self {
            TestId::Serial | TestId::CumulativeSums => 2,
            TestId::RandomExcursions => 8,
            TestId::RandomExcursionsVariant => 18,
            _ => 1,
        }
    }
}

/// Outcome of one test on one sequence.
#[derive(Clone, Debug)]
pub struct TestResult {
    pub test: TestId,
    /// One or more P-values; see [`TestId::p_values_per_sequence`].
    pub p_values: Vec<f64>,
    /// False when the sequence failed an applicability precondition (e.g.
    /// too few excursion cycles), in which case `p_values` is empty and the
    /// result is excluded from aggregation rather than silently dropped.
    pub valid: bool,
    /// Primary statistics for inspection (test-specific meaning).
    pub statistics: Vec<f64>,
}

impl TestResult {
    fn new(test: TestId, p_values: Vec<f64>, statistics: Vec<f64>) -> Self {
        debug_assert!(p_values.iter().all(|p| (0.0..=1.0).contains(p)), "{test:?}: {p_values:?}");
        Self { test, p_values, valid: true, statistics }
    }

    fn invalid(test: TestId, statistics: Vec<f64>) -> Self {
        Self { test, p_values: Vec::new(), valid: false, statistics }
    }
}

/// Battery parameters. The defaults are the standard choices for sequences
/// of around 10^6 bits and are recorded in every report header.
#[derive(Clone, Copy, Debug)]
pub struct SuiteParams {
    /// Significance level for the pass/fail proportion.
    pub alpha: f64,
    /// Block length of the block-frequency test.
    pub block_frequency_m: usize,
    /// Template length of the non-overlapping template test.
    pub non_overlapping_m: usize,
    /// Template length of the overlapping template test.
    pub overlapping_m: usize,
    /// Block length of the linear-complexity test.
    pub linear_complexity_m: usize,
    /// Pattern length of the serial test.
    pub serial_m: usize,
    /// Pattern length of the approximate-entropy test.
    pub approximate_entropy_m: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            alpha: 0.01,
            block_frequency_m: 128,
            non_overlapping_m: 9,
            overlapping_m: 9,
            linear_complexity_m: 500,
            serial_m: 16,
            approximate_entropy_m: 10,
        }
    }
}

/// Runs all fifteen tests on one sequence, in battery order.
pub fn run_battery(seq: &BitSequence, params: &SuiteParams) -> Result<Vec<TestResult>, NistError> {
    Ok(vec![
        monobit(seq)?,
        block_frequency(seq, params.block_frequency_m)?,
        runs(seq)?,
        longest_run_of_ones(seq)?,
        binary_matrix_rank(seq)?,
        dft_spectral(seq)?,
        non_overlapping_template(seq, params.non_overlapping_m)?,
        overlapping_template(seq, params.overlapping_m)?,
        maurer_universal(seq)?,
        linear_complexity(seq, params.linear_complexity_m)?,
        serial(seq, params.serial_m)?,
        approximate_entropy(seq, params.approximate_entropy_m)?,
        cumulative_sums(seq)?,
        random_excursions(seq)?,
        random_excursions_variant(seq)?,
    ])
}
