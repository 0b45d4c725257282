//! Template matching tests (NIST SP 800-22 sections 2.7 and 2.8):
//! non-overlapping matches against every aperiodic template of a given
//! length, and overlapping matches against the all-ones template.

use crate::nist::bits::BitSequence;
use crate::nist::special::{igamc, lgamma};
use crate::nist::{NistError, TestId, TestResult};

/// Number of disjoint blocks used by the non-overlapping test.
const NON_OVERLAPPING_BLOCKS: usize = 8;
/// Block length used by the overlapping test.
const OVERLAPPING_BLOCK: usize = 1032;
/// Count classes 0..=5 for the overlapping test.
const OVERLAPPING_K: usize = 5;

/// All aperiodic (unbordered) templates of `m` bits, ascending by value.
/// A template is aperiodic when no proper prefix equals the same-length
/// suffix, so shifted copies of it can never overlap in the input.
pub fn aperiodic_templates(m: usize) -> Vec<u16> {
    assert!((2..=16).contains(&m), "template length {m} out of range");
    let mut out = Vec::new();
    'next: for v in 0..1u32 << m {
        for k in 1..m {
            let prefix = v >> (m - k);
            let suffix = v & ((1 << k) - 1);
            if prefix == suffix {
                continue 'next;
            }
        }
        out.push(v as u16);
    }
    out
}

/// `w[p]` = the `m` bits starting at `p`, MSB first, for every window
/// position. Shared by both template tests.
fn window_values(seq: &BitSequence, m: usize) -> Vec<u16> {
    let n = seq.len();
    let mask = ((1u32 << m) - 1) as u16;
    let mut out = Vec::with_capacity(n + 1 - m);
    let mut w = 0u16;
    for i in 0..n {
        w = (w << 1) & mask | seq.bit(i) as u16;
        if i + 1 >= m {
            out.push(w);
        }
    }
    out
}

/// Non-overlapping occurrence counts of `template` in each of `blocks`
/// disjoint blocks of `block_len` bits; a match advances the scan by `m`.
fn scan_template(
    windows: &[u16],
    template: u16,
    m: usize,
    blocks: usize,
    block_len: usize,
) -> Vec<u64> {
    let mut counts = Vec::with_capacity(blocks);
    for b in 0..blocks {
        let start = b * block_len;
        let end = start + block_len - m;
        let mut w = 0u64;
        let mut p = start;
        while p <= end {
            if windows[p] == template {
                w += 1;
                p += m;
            } else {
                p += 1;
            }
        }
        counts.push(w);
    }
    counts
}

fn non_overlapping_p(counts: &[u64], m: usize, block_len: usize) -> f64 {
    let mu = (block_len - m + 1) as f64 / (1u64 << m) as f64;
    let sigma2 = block_len as f64
        * (1.0 / (1u64 << m) as f64 - (2 * m - 1) as f64 / (1u128 << (2 * m)) as f64);
    let chi2: f64 = counts.iter().map(|&w| (w as f64 - mu) * (w as f64 - mu) / sigma2).sum();
    igamc(counts.len() as f64 / 2.0, chi2 / 2.0)
}

fn check_non_overlapping_len(seq: &BitSequence, m: usize) -> Result<usize, NistError> {
    if !(2..=16).contains(&m) {
        return Err(NistError::BadParameter {
            test: TestId::NonOverlappingTemplate,
            msg: format!("template length {m} out of range"),
        });
    }
    let block_len = seq.len() / NON_OVERLAPPING_BLOCKS;
    if block_len < 2 * m {
        return Err(NistError::TooShort {
            test: TestId::NonOverlappingTemplate,
            min: NON_OVERLAPPING_BLOCKS * 2 * m,
            have: seq.len(),
        });
    }
    Ok(block_len)
}

/// Non-overlapping template test, scored on the first (smallest-valued)
/// aperiodic template. Use [`non_overlapping_all`] for the full template set.
pub fn non_overlapping_template(seq: &BitSequence, m: usize) -> Result<TestResult, NistError> {
    let block_len = check_non_overlapping_len(seq, m)?;
    let windows = window_values(seq, m);
    let template = aperiodic_templates(m)[0];
    let counts = scan_template(&windows, template, m, NON_OVERLAPPING_BLOCKS, block_len);
    let p = non_overlapping_p(&counts, m, block_len);
    Ok(TestResult::new(TestId::NonOverlappingTemplate, vec![p], vec![template as f64]))
}

/// Non-overlapping template test over all aperiodic templates of length
/// `m`: one `(template, p_value)` pair per template.
pub fn non_overlapping_all(seq: &BitSequence, m: usize) -> Result<Vec<(u16, f64)>, NistError> {
    let block_len = check_non_overlapping_len(seq, m)?;
    let windows = window_values(seq, m);
    Ok(aperiodic_templates(m)
        .into_iter()
        .map(|t| {
            let counts = scan_template(&windows, t, m, NON_OVERLAPPING_BLOCKS, block_len);
            (t, non_overlapping_p(&counts, m, block_len))
        })
        .collect())
}

/// P(exactly `u` overlapping matches in a block), for the asymptotic
/// compound-Poisson law with parameter `eta`.
fn overlapping_probability(u: usize, eta: f64) -> f64 {
    if u == 0 {
        return (-eta).exp();
    }
    let mut sum = 0.0;
    for l in 1..=u {
        sum += (-eta - u as f64 * std::f64::consts::LN_2
            + l as f64 * eta.ln()
            + lgamma(u as f64)
            - lgamma(l as f64 + 1.0)
            - lgamma(l as f64)
            - lgamma((u - l + 1) as f64))
            .exp();
    }
    sum
}

/// Overlapping template test against the all-ones template of `m` bits.
pub fn overlapping_template(seq: &BitSequence, m: usize) -> Result<TestResult, NistError> {
    if !(2..=16).contains(&m) {
        return Err(NistError::BadParameter {
            test: TestId::OverlappingTemplate,
            msg: format!("template length {m} out of range"),
        });
    }
    let n = seq.len();
    let blocks = n / OVERLAPPING_BLOCK;
    if blocks == 0 {
        return Err(NistError::TooShort {
            test: TestId::OverlappingTemplate,
            min: OVERLAPPING_BLOCK,
            have: n,
        });
    }
    let lambda = (OVERLAPPING_BLOCK - m + 1) as f64 / (1u64 << m) as f64;
    let eta = lambda / 2.0;
    let mut pi = [0.0; OVERLAPPING_K + 1];
    let mut rest = 1.0;
    for (u, slot) in pi.iter_mut().enumerate().take(OVERLAPPING_K) {
        *slot = overlapping_probability(u, eta);
        rest -= *slot;
    }
    pi[OVERLAPPING_K] = rest;

    let ones = ((1u32 << m) - 1) as u16;
    let windows = window_values(seq, m);
    let mut nu = [0u64; OVERLAPPING_K + 1];
    for b in 0..blocks {
        let start = b * OVERLAPPING_BLOCK;
        let hits = windows[start..=start + OVERLAPPING_BLOCK - m]
            .iter()
            .filter(|&&w| w == ones)
            .count();
        nu[hits.min(OVERLAPPING_K)] += 1;
    }
    let mut chi2 = 0.0;
    for (count, prob) in nu.iter().zip(pi) {
        let expect = blocks as f64 * prob;
        chi2 += (*count as f64 - expect) * (*count as f64 - expect) / expect;
    }
    let p = igamc(OVERLAPPING_K as f64 / 2.0, chi2 / 2.0);
    Ok(TestResult::new(TestId::OverlappingTemplate, vec![p], vec![chi2]))
}
