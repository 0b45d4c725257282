//! Discrete Fourier transform (spectral) test, NIST SP 800-22 section 2.6.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::nist::bits::BitSequence;
use crate::nist::special::erfc;
use crate::nist::{NistError, TestId, TestResult};

/// Spectral test: the fraction of DFT peak magnitudes under the 95%
/// threshold `sqrt(n * ln(1/0.05))` is compared to its expectation.
/// Magnitudes are taken over the first `n/2` bins.
pub fn dft_spectral(seq: &BitSequence) -> Result<TestResult, NistError> {
    let n = seq.len();
    if n < 2 {
        return Err(NistError::TooShort { test: TestId::Spectral, min: 2, have: n });
    }
    let mut buf: Vec<Complex<f64>> =
        (0..n).map(|i| Complex::new(2.0 * seq.bit(i) as f64 - 1.0, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let threshold = (n as f64 * (1.0f64 / 0.05).ln()).sqrt();
    let n0 = 0.95 * n as f64 / 2.0;
    let n1 = buf[..n / 2].iter().filter(|c| c.norm() < threshold).count() as f64;
    let d = (n1 - n0) / (n as f64 * 0.95 * 0.05 / 4.0).sqrt();
    let p = erfc(d.abs() / std::f64::consts::SQRT_2);
    Ok(TestResult::new(TestId::Spectral, vec![p], vec![d, n1]))
}
