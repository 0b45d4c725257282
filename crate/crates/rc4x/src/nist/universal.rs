//! Maurer's universal statistical test (NIST SP 800-22 section 2.9).

use crate::nist::bits::BitSequence;
use crate::nist::special::erfc;
use crate::nist::{NistError, TestId, TestResult};

/// Reference per-block compression statistics, indexed by `L - MIN_L`.
const MIN_L: usize = 6;
const EXPECTED: [f64; 11] = [
    5.217_705_2, 6.196_250_7, 7.183_665_6, 8.176_424_8, 9.172_324_3, 10.170_032, 11.168_765,
    12.168_07, 13.167_693, 14.167_488, 15.167_379,
];
const VARIANCE: [f64; 11] =
    [2.954, 3.125, 3.238, 3.311, 3.356, 3.384, 3.401, 3.41, 3.416, 3.419, 3.421];

/// Smallest sequence lengths at which each block length L = 6..=16 applies.
const THRESHOLDS: [usize; 11] = [
    387_840, 904_960, 2_068_480, 4_654_080, 10_342_400, 22_753_280, 49_643_520, 107_560_960,
    231_669_760, 496_435_200, 1_059_061_760,
];

/// Block length, initialisation blocks, and test blocks for a given n.
fn parameters(n: usize) -> Result<(usize, usize, usize), NistError> {
    let mut l = None;
    for (i, &t) in THRESHOLDS.iter().enumerate() {
        if n >= t {
            l = Some(MIN_L + i);
        }
    }
    let l = l.ok_or(NistError::TooShort {
        test: TestId::Universal,
        min: THRESHOLDS[0],
        have: n,
    })?;
    let q = 10 << l;
    let k = n / l - q;
    Ok((l, q, k))
}

/// Universal test: the mean log-distance between repeated L-bit blocks is
/// compared against its reference expectation for a random source.
pub fn maurer_universal(seq: &BitSequence) -> Result<TestResult, NistError> {
    let n = seq.len();
    let (l, q, k) = parameters(n)?;

    let mut last_seen = vec![0u64; 1 << l];
    let block = |i: usize| -> usize {
        // blocks are numbered from 1; block i covers bits [(i-1)L, iL)
        let base = (i - 1) * l;
        let mut v = 0usize;
        for b in 0..l {
            v = v << 1 | seq.bit(base + b) as usize;
        }
        v
    };
    for i in 1..=q {
        last_seen[block(i)] = i as u64;
    }
    let mut sum = 0.0;
    for i in q + 1..=q + k {
        let v = block(i);
        sum += ((i as u64 - last_seen[v]) as f64).log2();
        last_seen[v] = i as u64;
    }
    let fn_stat = sum / k as f64;

    let expected = EXPECTED[l - MIN_L];
    let variance = VARIANCE[l - MIN_L];
    let c = 0.7 - 0.8 / l as f64
        + (4.0 + 32.0 / l as f64) * (k as f64).powf(-3.0 / l as f64) / 15.0;
    let sigma = c * (variance / k as f64).sqrt();
    let p = erfc((fn_stat - expected).abs() / (std::f64::consts::SQRT_2 * sigma));
    Ok(TestResult::new(TestId::Universal, vec![p], vec![fn_stat]))
}
