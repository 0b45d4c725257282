//! Serial and approximate entropy tests (NIST SP 800-22 sections 2.11 and
//! 2.12). Both count overlapping m-bit patterns cyclically: the window wraps
//! around the end of the sequence, so every pattern count sums to n.

use crate::nist::bits::BitSequence;
use crate::nist::special::igamc;
use crate::nist::{NistError, TestId, TestResult};

/// Occurrence counts of all 2^m overlapping patterns, cyclic.
fn pattern_counts(seq: &BitSequence, m: usize) -> Vec<u32> {
    debug_assert!(m >= 1 && m <= 25);
    let n = seq.len();
    let mut counts = vec![0u32; 1 << m];
    let mask = (1usize << m) - 1;
    let mut w = 0usize;
    // Feed n + m - 1 bits (wrapping); a full window exists from bit m-1 on.
    for p in 0..n + m - 1 {
        w = w << 1 & mask | seq.bit(p % n) as usize;
        if p + 1 >= m {
            counts[w] += 1;
        }
    }
    counts
}

/// psi^2_m = (2^m / n) * sum(counts^2) - n; zero for m = 0.
fn psi2(seq: &BitSequence, m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = seq.len();
    let sum_sq: u64 = pattern_counts(seq, m).iter().map(|&c| c as u64 * c as u64).sum();
    (1u64 << m) as f64 * sum_sq as f64 / n as f64 - n as f64
}

fn check_length(test: TestId, seq: &BitSequence, m: usize) -> Result<(), NistError> {
    // Need the pattern space to be coverable at all.
    if seq.len() < 1 << m {
        return Err(NistError::TooShort { test, min: 1 << m, have: seq.len() });
    }
    Ok(())
}

/// Serial test: two P-values from the first and second differences of
/// psi^2 over pattern lengths m, m-1, m-2. Requires m >= 2 (at m = 1 the
/// first difference degenerates to the monobit statistic).
pub fn serial(seq: &BitSequence, m: usize) -> Result<TestResult, NistError> {
    if !(2..=25).contains(&m) {
        return Err(NistError::BadParameter {
            test: TestId::Serial,
            msg: format!("pattern length {m} out of range"),
        });
    }
    check_length(TestId::Serial, seq, m)?;
    let psi_m = psi2(seq, m);
    let psi_m1 = psi2(seq, m - 1);
    let psi_m2 = psi2(seq, m - 2);
    let d1 = psi_m - psi_m1;
    let d2 = psi_m - 2.0 * psi_m1 + psi_m2;
    let p1 = igamc(2f64.powi(m as i32 - 2), d1 / 2.0);
    let p2 = igamc(2f64.powi(m as i32 - 3), d2 / 2.0);
    Ok(TestResult::new(TestId::Serial, vec![p1, p2], vec![d1, d2]))
}

/// Approximate entropy test: compares the m and m+1 pattern entropies.
pub fn approximate_entropy(seq: &BitSequence, m: usize) -> Result<TestResult, NistError> {
    if !(1..=24).contains(&m) {
        return Err(NistError::BadParameter {
            test: TestId::ApproximateEntropy,
            msg: format!("pattern length {m} out of range"),
        });
    }
    // Floor at 2^m, not 2^(m+1): the m+1 pattern space may be undersampled
    // (absent patterns contribute nothing to phi), and short known-answer
    // inputs operate exactly there.
    check_length(TestId::ApproximateEntropy, seq, m)?;
    let n = seq.len() as f64;
    let phi = |mm: usize| -> f64 {
        pattern_counts(seq, mm)
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let frac = c as f64 / n;
                frac * frac.ln()
            })
            .sum()
    };
    let apen = phi(m) - phi(m + 1);
    let chi2 = 2.0 * n * (std::f64::consts::LN_2 - apen);
    let p = igamc(2f64.powi(m as i32 - 1), chi2 / 2.0);
    Ok(TestResult::new(TestId::ApproximateEntropy, vec![p], vec![apen, chi2]))
}
