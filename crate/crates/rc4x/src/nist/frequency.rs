//! Bit-frequency tests: monobit, block frequency, runs, and longest run of
//! ones. Statistic definitions follow NIST SP 800-22 Rev 1a sections 2.1-2.4.

use crate::nist::bits::BitSequence;
use crate::nist::special::{erfc, igamc};
use crate::nist::{NistError, TestId, TestResult};

/// Frequency (monobit) test: `P = erfc(|2*ones - n| / sqrt(2n))`.
pub fn monobit(seq: &BitSequence) -> Result<TestResult, NistError> {
    let n = seq.len();
    if n == 0 {
        return Err(NistError::Empty);
    }
    let s = 2.0 * seq.ones() as f64 - n as f64;
    let s_obs = s.abs() / (n as f64).sqrt();
    let p = erfc(s_obs / std::f64::consts::SQRT_2);
    Ok(TestResult::new(TestId::Monobit, vec![p], vec![s_obs]))
}

/// Block frequency test over `n / m` disjoint blocks of `m` bits.
pub fn block_frequency(seq: &BitSequence, m: usize) -> Result<TestResult, NistError> {
    let n = seq.len();
    if m < 2 {
        return Err(NistError::BadParameter {
            test: TestId::BlockFrequency,
            msg: format!("block length {m} is too small"),
        });
    }
    let blocks = n / m;
    if blocks == 0 {
        return Err(NistError::TooShort { test: TestId::BlockFrequency, min: m, have: n });
    }
    let mut chi2 = 0.0;
    for b in 0..blocks {
        let ones: u32 = (b * m..(b + 1) * m).map(|i| seq.bit(i) as u32).sum();
        let pi = ones as f64 / m as f64;
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * m as f64;
    let p = igamc(blocks as f64 / 2.0, chi2 / 2.0);
    Ok(TestResult::new(TestId::BlockFrequency, vec![p], vec![chi2]))
}

/// Runs test. Precondition: the ones fraction must be within `2 / sqrt(n)`
/// of 1/2; when it is not, the standard behaviour is a zero P-value (the
/// monobit test has already failed by a wide margin).
pub fn runs(seq: &BitSequence) -> Result<TestResult, NistError> {
    let n = seq.len();
    if n < 2 {
        return Err(NistError::TooShort { test: TestId::Runs, min: 2, have: n });
    }
    let pi = seq.ones() as f64 / n as f64;
    if (pi - 0.5).abs() >= 2.0 / (n as f64).sqrt() {
        return Ok(TestResult::new(TestId::Runs, vec![0.0], vec![f64::NAN]));
    }
    let mut v = 1u64;
    let mut prev = seq.bit(0);
    for i in 1..n {
        let cur = seq.bit(i);
        v += (cur != prev) as u64;
        prev = cur;
    }
    let num = (v as f64 - 2.0 * n as f64 * pi * (1.0 - pi)).abs();
    let den = 2.0 * (2.0 * n as f64).sqrt() * pi * (1.0 - pi);
    let p = erfc(num / den);
    Ok(TestResult::new(TestId::Runs, vec![p], vec![v as f64]))
}

/// Longest-run-of-ones test. The block length and reference distribution
/// are chosen from the sequence length per the standard table.
pub fn longest_run_of_ones(seq: &BitSequence) -> Result<TestResult, NistError> {
    let n = seq.len();
    // (M, v_min, class probabilities); K + 1 classes for runs of
    // v_min..=v_min+K, shorter/longer runs land in the end classes.
    let (m, v_min, pi): (usize, u64, &[f64]) = if n < 128 {
        return Err(NistError::TooShort { test: TestId::LongestRun, min: 128, have: n });
    } else if n < 6272 {
        (8, 1, &[0.214_843_75, 0.367_187_5, 0.230_468_75, 0.187_5])
    } else if n < 750_000 {
        (
            128,
            4,
            &[0.117_403_578_8, 0.242_955_959, 0.249_363_483, 0.175_177_06, 0.102_701_071, 0.112_398_847],
        )
    } else {
        (10_000, 10, &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727])
    };
    let k = pi.len() - 1;
    let blocks = n / m;
    let mut nu = vec![0u64; k + 1];
    for b in 0..blocks {
        let mut longest = 0u64;
        let mut run = 0u64;
        for i in b * m..(b + 1) * m {
            if seq.bit(i) == 1 {
                run += 1;
                longest = longest.max(run);
            } else {
                run = 0;
            }
        }
        let class = longest.saturating_sub(v_min).min(k as u64) as usize;
        nu[class] += 1;
    }
    let mut chi2 = 0.0;
    for (count, &prob) in nu.iter().zip(pi) {
        let expect = blocks as f64 * prob;
        chi2 += (*count as f64 - expect) * (*count as f64 - expect) / expect;
    }
    let p = igamc(k as f64 / 2.0, chi2 / 2.0);
    Ok(TestResult::new(TestId::LongestRun, vec![p], vec![chi2]))
}
