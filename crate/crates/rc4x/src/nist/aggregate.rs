//! Corpus-level scoring: run the full battery over many sequences and grade
//! each test on two axes, the proportion of passing P-values and the
//! uniformity of the P-value distribution.

use rayon::prelude::*;

use crate::nist::bits::BitSequence;
use crate::nist::special::igamc;
use crate::nist::{run_battery, NistError, SuiteParams, TestId, TestResult};

/// Histogram cells: C0 = [0, 0.01), C1 = [0.01, 0.1), then nine cells of
/// width 0.1 up to C10 = [0.9, 1.0].
pub const BIN_COUNT: usize = 11;

/// Uniformity verdicts below this threshold reject the test.
pub const UNIFORMITY_THRESHOLD: f64 = 1e-4;

/// Cell index for a P-value.
pub fn p_value_bin(p: f64) -> usize {
    debug_assert!((0.0..=1.0).contains(&p));
    if p >= 1.0 {
        10
    } else if p < 0.01 {
        0
    } else if p < 0.1 {
        1
    } else {
        (p * 10.0) as usize + 1
    }
}

/// Minimum acceptable pass proportion for `count` P-values at level
/// `alpha`: three standard deviations below the expected proportion.
pub fn expected_pass_proportion(alpha: f64, count: u64) -> f64 {
    (1.0 - alpha) - 3.0 * (alpha * (1.0 - alpha) / count as f64).sqrt()
}

/// Uniformity P-value over the histogram. The sub-alpha cell C0 is merged
/// into C1 to restore ten equiprobable cells before the chi-square.
pub fn uniformity_p(bins: &[u64; BIN_COUNT]) -> f64 {
    let total: u64 = bins.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let expect = total as f64 / 10.0;
    let mut cells = [0u64; 10];
    cells[0] = bins[0] + bins[1];
    cells[1..].copy_from_slice(&bins[2..]);
    let chi2: f64 =
        cells.iter().map(|&c| (c as f64 - expect) * (c as f64 - expect) / expect).sum();
    igamc(4.5, chi2 / 2.0)
}

/// Scoring summary for one test across the corpus.
#[derive(Debug, Clone)]
pub struct TestRow {
    pub test: TestId,
    /// P-value histogram over all applicable sequences.
    pub bins: [u64; BIN_COUNT],
    /// Total P-values binned (sequences x P-values per sequence).
    pub p_count: u64,
    /// Sequences the test declined to judge (e.g. too few walk cycles).
    pub skipped: u64,
    /// Minimum acceptable pass proportion for this sample size.
    pub epop: f64,
    /// Observed pass proportion.
    pub opop: f64,
    /// Uniformity P-value of the histogram.
    pub pop: f64,
    pub proportion_ok: bool,
    pub uniformity_ok: bool,
}

/// Battery results aggregated over a corpus of sequences.
#[derive(Debug, Clone)]
pub struct AggregateReport {
    pub rows: Vec<TestRow>,
    pub sequences: usize,
    pub alpha: f64,
    /// Set when the corpus is too small for the proportion bound to mean
    /// much (fewer than two sequences).
    pub low_power: bool,
}

impl AggregateReport {
    /// True when every test passes both the proportion and uniformity checks.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.proportion_ok && r.uniformity_ok)
    }

    /// Plain-text report: one row per test, histogram plus both verdicts.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "battery results: {} sequences, alpha = {}",
            self.sequences, self.alpha
        );
        if self.low_power {
            let _ = writeln!(out, "warning: corpus too small for stable proportions");
        }
        let _ = writeln!(
            out,
            "{:<26} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} \
             {:>6} {:>5} {:>7} {:>7} {:>3} {:>10} {:>3}",
            "test", "C0", "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10",
            "count", "skip", "EPOP", "OPOP", "R_O", "POP", "R_P"
        );
        for row in &self.rows {
            let _ = write!(out, "{:02} {:<23}", row.test.number(), row.test.name());
            for b in row.bins {
                let _ = write!(out, " {b:>4}");
            }
            let _ = writeln!(
                out,
                " {:>6} {:>5} {:>7.4} {:>7.4} {:>3} {:>10.4e} {:>3}",
                row.p_count,
                row.skipped,
                row.epop,
                row.opop,
                if row.proportion_ok { "Y" } else { "N" },
                row.pop,
                if row.uniformity_ok { "Y" } else { "N" },
            );
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.all_pass() { "PASS" } else { "FAIL" }
        );
        out
    }

    /// Machine-readable CSV with the same columns as the text report.
    pub fn render_csv(&self) -> String {
        use std::fmt::Write;
        let mut out = String::from(
            "test,name,c0,c1,c2,c3,c4,c5,c6,c7,c8,c9,c10,p_count,skipped,epop,opop,\
             proportion_ok,pop,uniformity_ok\n",
        );
        for row in &self.rows {
            let _ = write!(out, "{},{}", row.test.number(), row.test.name());
            for b in row.bins {
                let _ = write!(out, ",{b}");
            }
            let _ = writeln!(
                out,
                ",{},{},{:.6},{:.6},{},{:.6e},{}",
                row.p_count,
                row.skipped,
                row.epop,
                row.opop,
                row.proportion_ok,
                row.pop,
                row.uniformity_ok,
            );
        }
        out
    }
}

/// Run the battery over every sequence and aggregate per test. Sequence
/// errors (too short for a test's minimum, bad parameters) abort the whole
/// run: a corpus must be sized for the battery it is scored against.
pub fn run_suite(
    sequences: &[BitSequence],
    params: &SuiteParams,
) -> Result<AggregateReport, NistError> {
    if sequences.is_empty() {
        return Err(NistError::EmptyCorpus);
    }
    let batteries: Vec<Vec<TestResult>> = sequences
        .par_iter()
        .map(|seq| run_battery(seq, params))
        .collect::<Result<_, _>>()?;

    let rows = TestId::ALL
        .iter()
        .enumerate()
        .map(|(t, &test)| {
            let mut bins = [0u64; BIN_COUNT];
            let mut p_count = 0u64;
            let mut skipped = 0u64;
            let mut passed = 0u64;
            for battery in &batteries {
                let result = &battery[t];
                debug_assert_eq!(result.test, test);
                if !result.valid {
                    skipped += 1;
                    continue;
                }
                for &p in &result.p_values {
                    bins[p_value_bin(p)] += 1;
                    p_count += 1;
                    passed += (p >= params.alpha) as u64;
                }
            }
            let (epop, opop) = if p_count == 0 {
                (1.0, 0.0)
            } else {
                (
                    expected_pass_proportion(params.alpha, p_count),
                    passed as f64 / p_count as f64,
                )
            };
            let pop = uniformity_p(&bins);
            TestRow {
                test,
                bins,
                p_count,
                skipped,
                epop,
                opop,
                pop,
                proportion_ok: opop > epop,
                uniformity_ok: pop > UNIFORMITY_THRESHOLD,
            }
        })
        .collect();

    Ok(AggregateReport {
        rows,
        sequences: sequences.len(),
        alpha: params.alpha,
        low_power: sequences.len() < 2,
    })
}
