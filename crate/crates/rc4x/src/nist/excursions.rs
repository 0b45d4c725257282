//! Random-walk tests (NIST SP 800-22 sections 2.13-2.15): cumulative sums,
//! random excursions, and the random excursions variant. All three walk the
//! partial sums of the +/-1-mapped sequence.

use crate::nist::bits::BitSequence;
use crate::nist::special::{erfc, igamc, normal_cdf};
use crate::nist::{NistError, TestId, TestResult};

/// States tracked by the excursions test, in reporting order.
const EXCURSION_STATES: [i64; 8] = [-4, -3, -2, -1, 1, 2, 3, 4];
/// Visit-count classes 0..=5 (5 means "5 or more").
const EXCURSION_K: usize = 5;

fn cusum_p(z: u64, n: usize) -> f64 {
    let ni = n as i64;
    let zi = z as i64;
    let zf = z as f64;
    let sqn = (n as f64).sqrt();
    let mut p = 1.0;
    // Series bounds use truncating integer division (toward zero), matching
    // the published example values; the terms this trims off sit at
    // |Phi argument| near sqrt(n) and are zero at f64 precision for any
    // practical length.
    let lo = (-ni / zi + 1) / 4;
    let hi = (ni / zi - 1) / 4;
    for k in lo..=hi {
        let kf = k as f64;
        p -= normal_cdf((4.0 * kf + 1.0) * zf / sqn) - normal_cdf((4.0 * kf - 1.0) * zf / sqn);
    }
    let lo = (-ni / zi - 3) / 4;
    for k in lo..=hi {
        let kf = k as f64;
        p += normal_cdf((4.0 * kf + 3.0) * zf / sqn) - normal_cdf((4.0 * kf + 1.0) * zf / sqn);
    }
    p
}

/// Cumulative sums test, forward and reverse: two P-values from the maximum
/// partial-sum excursion in each direction.
pub fn cumulative_sums(seq: &BitSequence) -> Result<TestResult, NistError> {
    let n = seq.len();
    if n < 2 {
        return Err(NistError::TooShort { test: TestId::CumulativeSums, min: 2, have: n });
    }
    let mut z_fwd = 0u64;
    let mut z_rev = 0u64;
    let mut s_fwd = 0i64;
    let mut s_rev = 0i64;
    for i in 0..n {
        s_fwd += 2 * seq.bit(i) as i64 - 1;
        s_rev += 2 * seq.bit(n - 1 - i) as i64 - 1;
        z_fwd = z_fwd.max(s_fwd.unsigned_abs());
        z_rev = z_rev.max(s_rev.unsigned_abs());
    }
    let p_fwd = cusum_p(z_fwd, n);
    let p_rev = cusum_p(z_rev, n);
    Ok(TestResult::new(
        TestId::CumulativeSums,
        vec![p_fwd, p_rev],
        vec![z_fwd as f64, z_rev as f64],
    ))
}

/// Walk summary shared by the two excursions tests: `cycles` is J, the
/// number of zero-to-zero excursions; `visits[s][k]` counts cycles with
/// exactly k visits to state s (k capped at 5); `totals[s]` counts visits
/// to state s across the whole walk, for states -9..=9 (index s + 9).
struct WalkSummary {
    cycles: u64,
    visits: [[u64; EXCURSION_K + 1]; 8],
    totals: [u64; 19],
}

fn walk(seq: &BitSequence) -> WalkSummary {
    let mut s = 0i64;
    let mut cycles = 0u64;
    let mut visits = [[0u64; EXCURSION_K + 1]; 8];
    let mut in_cycle = [0u64; 8];
    let mut totals = [0u64; 19];
    let close = |counts: &mut [u64; 8], visits: &mut [[u64; EXCURSION_K + 1]; 8]| {
        for (state, &c) in counts.iter().enumerate() {
            visits[state][(c as usize).min(EXCURSION_K)] += 1;
        }
        *counts = [0; 8];
    };
    for i in 0..seq.len() {
        s += 2 * seq.bit(i) as i64 - 1;
        if s == 0 {
            cycles += 1;
            close(&mut in_cycle, &mut visits);
        } else {
            if (-9..=9).contains(&s) {
                totals[(s + 9) as usize] += 1;
            }
            if let Some(idx) = EXCURSION_STATES.iter().position(|&x| x == s) {
                in_cycle[idx] += 1;
            }
        }
    }
    if s != 0 {
        cycles += 1;
        close(&mut in_cycle, &mut visits);
    }
    WalkSummary { cycles, visits, totals }
}

/// Minimum cycle count for the asymptotic distributions to apply.
fn cycles_required(n: usize) -> u64 {
    (0.005 * (n as f64).sqrt()).max(500.0) as u64
}

/// P(exactly k visits to state x within one excursion), k capped at 5.
fn visit_probability(x: i64, k: usize) -> f64 {
    let ax = x.unsigned_abs() as f64;
    let stay = 1.0 - 1.0 / (2.0 * ax);
    match k {
        0 => stay,
        EXCURSION_K => (1.0 / (2.0 * ax)) * stay.powi(EXCURSION_K as i32 - 1),
        _ => (1.0 / (4.0 * ax * ax)) * stay.powi(k as i32 - 1),
    }
}

/// Random excursions test: chi-square on per-cycle visit counts for the
/// eight states nearest the origin. Returns an inconclusive (invalid)
/// result when the walk has too few cycles for the asymptotics.
pub fn random_excursions(seq: &BitSequence) -> Result<TestResult, NistError> {
    let n = seq.len();
    if n < 2 {
        return Err(NistError::TooShort { test: TestId::RandomExcursions, min: 2, have: n });
    }
    let summary = walk(seq);
    let j = summary.cycles;
    if j < cycles_required(n) {
        return Ok(TestResult::invalid(TestId::RandomExcursions, vec![j as f64]));
    }
    let mut p_values = Vec::with_capacity(EXCURSION_STATES.len());
    for (idx, &x) in EXCURSION_STATES.iter().enumerate() {
        let mut chi2 = 0.0;
        for k in 0..=EXCURSION_K {
            let expect = j as f64 * visit_probability(x, k);
            let diff = summary.visits[idx][k] as f64 - expect;
            chi2 += diff * diff / expect;
        }
        p_values.push(igamc(EXCURSION_K as f64 / 2.0, chi2 / 2.0));
    }
    Ok(TestResult::new(TestId::RandomExcursions, p_values, vec![j as f64]))
}

/// Random excursions variant: total visit counts for states -9..=9
/// (excluding 0) against their expectation of J each.
pub fn random_excursions_variant(seq: &BitSequence) -> Result<TestResult, NistError> {
    let n = seq.len();
    if n < 2 {
        return Err(NistError::TooShort {
            test: TestId::RandomExcursionsVariant,
            min: 2,
            have: n,
        });
    }
    let summary = walk(seq);
    let j = summary.cycles;
    if j < cycles_required(n) {
        return Ok(TestResult::invalid(TestId::RandomExcursionsVariant, vec![j as f64]));
    }
    let mut p_values = Vec::with_capacity(18);
    for x in (-9..=9i64).filter(|&x| x != 0) {
        let xi = summary.totals[(x + 9) as usize] as f64;
        let denom = (2.0 * j as f64 * (4.0 * x.unsigned_abs() as f64 - 2.0)).sqrt();
        p_values.push(erfc((xi - j as f64).abs() / denom));
    }
    Ok(TestResult::new(TestId::RandomExcursionsVariant, p_values, vec![j as f64]))
}
