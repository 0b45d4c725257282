//! Shared plumbing for the acceptance criteria: timed pass lines and
//! deterministic key generation.

use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rc4x::KeyMaterial;

/// Asserts the runtime budget (when one is set) and prints the criterion's
/// pass line. Reaching this call at all means every assertion above it held.
pub fn finish(criterion: &str, start: Instant, budget_s: Option<f64>) {
    let dt = start.elapsed().as_secs_f64();
    if let Some(budget) = budget_s {
        assert!(dt < budget, "{criterion}: runtime {dt:.2}s exceeds its {budget:.0}s budget");
    }
    println!("acceptance {criterion}: PASS ({dt:.2}s)");
}

/// Random key with a length drawn from `min..=max` bytes.
pub fn random_key(rng: &mut ChaCha20Rng, min: usize, max: usize) -> KeyMaterial {
    let len = rng.random_range(min..=max);
    let bytes: Vec<u8> = (0..len).map(|_| rng.random()).collect();
    KeyMaterial::new(&bytes).expect("generated key length is in range")
}

/// Random permutation of 0..=255 (Fisher-Yates).
pub fn random_permutation(rng: &mut ChaCha20Rng) -> [u8; 256] {
    let mut s = [0u8; 256];
    for (x, slot) in s.iter_mut().enumerate() {
        *slot = x as u8;
    }
    for k in (1..256).rev() {
        s.swap(k, rng.random_range(0..=k));
    }
    s
}
