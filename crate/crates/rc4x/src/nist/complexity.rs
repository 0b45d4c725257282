//! Linear complexity test (NIST SP 800-22 section 2.10): Berlekamp-Massey
//! LFSR lengths of fixed-size blocks against the reference distribution.

use crate::nist::bits::BitSequence;
use crate::nist::special::igamc;
use crate::nist::{NistError, TestId, TestResult};

/// Class probabilities for T = (-1)^M (L - mu) + 2/9 in
/// (-inf,-2.5], (-2.5,-1.5], ..., (1.5,2.5], (2.5,inf).
const PI: [f64; 7] = [0.010_417, 0.031_25, 0.125, 0.5, 0.25, 0.062_5, 0.020_833];

/// dst ^= src << shift (bit shift across words; overflow bits are dropped).
fn shl_xor(dst: &mut [u64], src: &[u64], shift: usize) {
    let (words, bits) = (shift / 64, shift % 64);
    for i in (0..dst.len()).rev() {
        if i < words {
            break;
        }
        let mut v = src.get(i - words).copied().unwrap_or(0) << bits;
        if bits > 0 && i > words {
            v |= src.get(i - words - 1).copied().unwrap_or(0) >> (64 - bits);
        }
        dst[i] ^= v;
    }
}

/// dst = src >> shift.
fn shr_into(dst: &mut [u64], src: &[u64], shift: usize) {
    let (words, bits) = (shift / 64, shift % 64);
    for i in 0..dst.len() {
        let mut v = src.get(i + words).copied().unwrap_or(0) >> bits;
        if bits > 0 {
            v |= src.get(i + words + 1).copied().unwrap_or(0) << (64 - bits);
        }
        dst[i] = v;
    }
}

fn parity_and(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).fold(0u64, |acc, (x, y)| acc ^ (x & y)).count_ones() as u64 & 1
}

/// Length of the shortest LFSR generating `bits` (values 0/1), computed
/// with word-packed polynomial arithmetic. The discrepancy at step N is
/// the parity of C AND the reversed bit window, so the input is kept
/// bit-reversed and realigned by shifting.
pub fn berlekamp_massey(bits: &[u8]) -> usize {
    let n = bits.len();
    if n == 0 {
        return 0;
    }
    let words = n / 64 + 1;
    let mut s_rev = vec![0u64; words]; // bit k = bits[n - 1 - k]
    for (k, &b) in bits.iter().rev().enumerate() {
        debug_assert!(b <= 1);
        s_rev[k / 64] |= (b as u64) << (k % 64);
    }

    let mut c = vec![0u64; words];
    let mut b = vec![0u64; words];
    let mut window = vec![0u64; words];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut gap = 1usize; // steps since the last length change
    for step in 0..n {
        // window bit i = bits[step - i]; discrepancy = parity(C & window)
        shr_into(&mut window, &s_rev, n - 1 - step);
        if parity_and(&c, &window) == 1 {
            if 2 * l <= step {
                let t = c.clone();
                shl_xor(&mut c, &b, gap);
                b = t;
                l = step + 1 - l;
                gap = 1;
            } else {
                shl_xor(&mut c, &b, gap);
                gap += 1;
            }
        } else {
            gap += 1;
        }
    }
    l
}

/// Expected linear complexity of a random `m`-bit block:
/// m/2 + (9 + (−1)^{m+1})/36 − (m/3 + 2/9)/2^m.
fn expected_complexity(m: usize) -> f64 {
    let parity = if m % 2 == 0 { -1.0 } else { 1.0 }; // (−1)^{m+1}
    m as f64 / 2.0 + (9.0 + parity) / 36.0 - (m as f64 / 3.0 + 2.0 / 9.0) / 2f64.powi(m as i32)
}

/// Linear complexity test over `n / m` disjoint blocks of `m` bits.
pub fn linear_complexity(seq: &BitSequence, m: usize) -> Result<TestResult, NistError> {
    let n = seq.len();
    if !(4..=8192).contains(&m) {
        return Err(NistError::BadParameter {
            test: TestId::LinearComplexity,
            msg: format!("block length {m} out of range"),
        });
    }
    let blocks = n / m;
    if blocks == 0 {
        return Err(NistError::TooShort { test: TestId::LinearComplexity, min: m, have: n });
    }
    // T uses (−1)^m; the mean's parity term uses (−1)^{m+1}, the opposite.
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let mu = expected_complexity(m);

    let mut nu = [0u64; 7];
    let mut block_bits = vec![0u8; m];
    for b in 0..blocks {
        for (i, bit) in block_bits.iter_mut().enumerate() {
            *bit = seq.bit(b * m + i);
        }
        let l = berlekamp_massey(&block_bits);
        let t = sign * (l as f64 - mu) + 2.0 / 9.0;
        let class = if t <= -2.5 {
            0
        } else if t <= -1.5 {
            1
        } else if t <= -0.5 {
            2
        } else if t <= 0.5 {
            3
        } else if t <= 1.5 {
            4
        } else if t <= 2.5 {
            5
        } else {
            6
        };
        nu[class] += 1;
    }
    let mut chi2 = 0.0;
    for (count, prob) in nu.iter().zip(PI) {
        let expect = blocks as f64 * prob;
        chi2 += (*count as f64 - expect) * (*count as f64 - expect) / expect;
    }
    let p = igamc(3.0, chi2 / 2.0);
    Ok(TestResult::new(TestId::LinearComplexity, vec![p], vec![chi2]))
}
