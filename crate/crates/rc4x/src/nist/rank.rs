//! Binary matrix rank test: GF(2) rank distribution of 32x32 matrices built
//! from consecutive bits (NIST SP 800-22 section 2.5).

use crate::nist::bits::BitSequence;
use crate::nist::{NistError, TestId, TestResult};

const M: usize = 32;
const BITS_PER_MATRIX: usize = M * M;

/// Rank of a matrix over GF(2); each `u32` is one row.
fn rank32(mut rows: [u32; M]) -> usize {
    let mut rank = 0;
    for col in 0..M {
        let bit = 1u32 << (M - 1 - col);
        if let Some(pivot) = (rank..M).find(|&r| rows[r] & bit != 0) {
            rows.swap(rank, pivot);
            let pivot_row = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Probability that a random 32x32 GF(2) matrix has rank `32 - deficiency`.
fn rank_probability(deficiency: usize) -> f64 {
    let r = (M - deficiency) as i32;
    let m = M as i32;
    // 2^(r*(2M - r) - M^2) * prod_{i=0}^{r-1} (1 - 2^{i-M})^2 / (1 - 2^{i-r})
    let mut p = ((r * (2 * m - r) - m * m) as f64).exp2();
    for i in 0..r {
        let num = 1.0 - ((i - m) as f64).exp2();
        p *= num * num / (1.0 - ((i - r) as f64).exp2());
    }
    p
}

/// Binary matrix rank test over `n / 1024` disjoint 32x32 matrices.
pub fn binary_matrix_rank(seq: &BitSequence) -> Result<TestResult, NistError> {
    let n = seq.len();
    let matrices = n / BITS_PER_MATRIX;
    if matrices == 0 {
        return Err(NistError::TooShort { test: TestId::MatrixRank, min: BITS_PER_MATRIX, have: n });
    }
    let mut full = 0u64;
    let mut minus_one = 0u64;
    for k in 0..matrices {
        let mut rows = [0u32; M];
        let base = k * BITS_PER_MATRIX;
        for (r, row) in rows.iter_mut().enumerate() {
            for c in 0..M {
                *row = (*row << 1) | seq.bit(base + r * M + c) as u32;
            }
        }
        match rank32(rows) {
            32 => full += 1,
            31 => minus_one += 1,
            _ => {}
        }
    }
    let rest = matrices - (full + minus_one) as usize;
    let p_full = rank_probability(0);
    let p_minus_one = rank_probability(1);
    let p_rest = 1.0 - p_full - p_minus_one;

    let nf = matrices as f64;
    let mut chi2 = 0.0;
    for (observed, expected) in [
        (full as f64, nf * p_full),
        (minus_one as f64, nf * p_minus_one),
        (rest as f64, nf * p_rest),
    ] {
        chi2 += (observed - expected) * (observed - expected) / expected;
    }
    let p = (-chi2 / 2.0).exp();
    Ok(TestResult::new(TestId::MatrixRank, vec![p], vec![chi2]))
}
