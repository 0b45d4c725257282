//! Two-bytes-per-step engine: consecutive RC4 rounds `n` and `n+1` are fused
//! into one update that reads only the state left by round `n-1`.
//!
//! Both rounds' indices come straight from the previous state:
//!
//! ```text
//! i_n  = i_prev + 1            i_next = i_prev + 2
//! j_n  = j_prev + S[i_n]                 (+ K[i_n] during KSA)
//! j_next = j_n + S[i_next]               (+ K[i_next])   if i_next != j_n
//!        = j_n + S[i_n]                  (+ K[i_next])   if i_next == j_n
//! ```
//!
//! The `i_next == j_n` branch compensates for the not-yet-applied first swap:
//! sequentially, round `n+1` would read `S_n[i_next]`, and when that slot was
//! the first swap's target its value is the pre-swap `S[i_n]`.
//!
//! The two swaps collapse into one net permutation chosen by the three
//! collision predicates `i_next == j_n`, `i_n == j_next`, `j_next == j_n`
//! ([`SwapPattern`]). All three holding at once would force
//! `i_n == i_next`, which single-stepping cannot produce.

use crate::rc4::{is_permutation, KeyMaterial, Phase, SBOX_LEN};
use crate::Rc4Error;

/// Indices of a fused round pair, all mod 256.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PairIndices {
    pub i_n: u8,
    pub j_n: u8,
    pub i_next: u8,
    pub j_next: u8,
}

/// Net data movement of the two fused swaps.
///
/// `Cycle*` variants are 3-cycles (three loads, three stores); the table
/// below gives the movement with `x -> y` meaning "the old value at `x` ends
/// up at `y`".
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SwapPattern {
    /// No collisions: `swap(i_n, j_n)` and `swap(i_next, j_next)` touch
    /// disjoint cells.
    TwoTranspositions,
    /// `j_next == j_n`: `i_n -> i_next -> j_n -> i_n`.
    CycleSharedJ,
    /// `i_n == j_next`: `i_n -> j_n -> i_next -> i_n`.
    CycleFirstSlot,
    /// `i_n == j_n == j_next`: first swap degenerates; net `swap(i_n, i_next)`.
    EndpointSwap,
    /// `i_next == j_n`: `i_n -> j_next -> j_n -> i_n`.
    CycleChained,
    /// `i_next == j_n == j_next`: second swap degenerates; net `swap(i_n, j_n)`.
    SingleTransposition,
    /// `i_next == j_n` and `i_n == j_next`: the second swap undoes the first.
    Cancelling,
}

impl SwapPattern {
    /// Stable 1-based index over the predicate truth table, `Cancelling` = 7.
    /// The all-predicates-true row would be 8 and is unreachable.
    pub fn index(self) -> u8 {
        match self {
            SwapPattern::TwoTranspositions => 1,
            SwapPattern::CycleSharedJ => 2,
            SwapPattern::CycleFirstSlot => 3,
            SwapPattern::EndpointSwap => 4,
            SwapPattern::CycleChained => 5,
            SwapPattern::SingleTransposition => 6,
            SwapPattern::Cancelling => 7,
        }
    }
}

/// Classifies the fused swap by its collision predicates. The combination
/// with all three predicates true implies `i_n == i_next` and is rejected.
pub fn classify_swap(ix: PairIndices) -> Result<SwapPattern, Rc4Error> {
    let chained = ix.i_next == ix.j_n;
    let back = ix.i_n == ix.j_next;
    let shared = ix.j_next == ix.j_n;
    Ok(match (chained, back, shared) {
        (false, false, false) => SwapPattern::TwoTranspositions,
        (false, false, true) => SwapPattern::CycleSharedJ,
        (false, true, false) => SwapPattern::CycleFirstSlot,
        (false, true, true) => SwapPattern::EndpointSwap,
        (true, false, false) => SwapPattern::CycleChained,
        (true, false, true) => SwapPattern::SingleTransposition,
        (true, true, false) => SwapPattern::Cancelling,
        (true, true, true) => return Err(Rc4Error::ContradictorySwap),
    })
}

/// Computes both rounds' indices from the previous state, without mutating
/// `s`. `kbox` adds the key terms used during KSA.
pub fn compute_pair_indices(
    s: &[u8; SBOX_LEN],
    i_prev: u8,
    j_prev: u8,
    kbox: Option<&[u8; SBOX_LEN]>,
) -> PairIndices {
    let i_n = i_prev.wrapping_add(1);
    let i_next = i_prev.wrapping_add(2);
    let (k_n, k_next) = match kbox {
        Some(k) => (k[i_n as usize], k[i_next as usize]),
        None => (0, 0),
    };
    let j_n = j_prev.wrapping_add(s[i_n as usize]).wrapping_add(k_n);
    let feed = if i_next == j_n { s[i_n as usize] } else { s[i_next as usize] };
    let j_next = j_n.wrapping_add(feed).wrapping_add(k_next);
    PairIndices { i_n, j_n, i_next, j_next }
}

/// Applies the net permutation of both swaps in one shot.
pub fn swap_pair(s: &mut [u8; SBOX_LEN], ix: PairIndices) -> Result<SwapPattern, Rc4Error> {
    let pattern = classify_swap(ix)?;
    let (i_n, j_n, i_next, j_next) =
        (ix.i_n as usize, ix.j_n as usize, ix.i_next as usize, ix.j_next as usize);
    match pattern {
        SwapPattern::TwoTranspositions => {
            s.swap(i_n, j_n);
            s.swap(i_next, j_next);
        }
        SwapPattern::CycleSharedJ => {
            let (a, b, c) = (s[i_n], s[i_next], s[j_n]);
            s[i_next] = a;
            s[j_n] = b;
            s[i_n] = c;
        }
        SwapPattern::CycleFirstSlot => {
            let (a, b, c) = (s[i_n], s[j_n], s[i_next]);
            s[j_n] = a;
            s[i_next] = b;
            s[i_n] = c;
        }
        SwapPattern::EndpointSwap => s.swap(i_n, i_next),
        SwapPattern::CycleChained => {
            let (a, b, c) = (s[i_n], s[j_n], s[j_next]);
            s[j_next] = a;
            s[i_n] = b;
            s[j_n] = c;
        }
        SwapPattern::SingleTransposition => s.swap(i_n, j_n),
        SwapPattern::Cancelling => {}
    }
    Ok(pattern)
}

/// Result of one fused step: the indices it used, the swap pattern it
/// applied, and the two output bytes when extraction was requested.
#[derive(Clone, Copy, Debug)]
pub struct PairStep {
    pub indices: PairIndices,
    pub pattern: SwapPattern,
    pub z: Option<(u8, u8)>,
}

/// Advances the state by two rounds in one step.
///
/// The first output byte is derived from the *pre-swap* permutation: the
/// extraction index is `t_n = S[i_n] + S[j_n]` (insensitive to the first
/// swap because addition commutes) and the value read compensates for the
/// swap that sequential stepping would already have applied:
///
/// - `t_n == i_n`: the slot now holds the old `S[j_n]`;
/// - `t_n == j_n`: the slot now holds the old `S[i_n]`;
/// - `t_n == i_n == j_n` (degenerate self-swap) or no collision: `S[t_n]`.
///
/// The second byte reads the fully updated permutation directly.
pub fn pair_step(
    s: &mut [u8; SBOX_LEN],
    i_prev: u8,
    j_prev: u8,
    kbox: Option<&[u8; SBOX_LEN]>,
    extract: bool,
) -> Result<PairStep, Rc4Error> {
    let ix = compute_pair_indices(s, i_prev, j_prev, kbox);
    let z_n = if extract {
        let t_n = s[ix.i_n as usize].wrapping_add(s[ix.j_n as usize]);
        let v = if t_n == ix.i_n && t_n != ix.j_n {
            s[ix.j_n as usize]
        } else if t_n == ix.j_n && t_n != ix.i_n {
            s[ix.i_n as usize]
        } else {
            s[t_n as usize]
        };
        Some(v)
    } else {
        None
    };
    let pattern = swap_pair(s, ix)?;
    let z = z_n.map(|z_n| {
        let t_next = s[ix.i_next as usize].wrapping_add(s[ix.j_next as usize]);
        (z_n, s[t_next as usize])
    });
    Ok(PairStep { indices: ix, pattern, z })
}

/// Two-rounds-per-step engine with the same phase machine as the byte-wise
/// one. `i_prev`/`j_prev` always hold the indices of the last completed
/// round, so a fresh phase starts from `i_prev = 0` and the KSA from
/// `i_prev = 255` (one below the first index it processes, mod 256).
#[derive(Clone, Copy)]
pub struct PairEngine {
    s: [u8; SBOX_LEN],
    i_prev: u8,
    j_prev: u8,
    phase: Phase,
}

impl PairEngine {
    /// Runs the full KSA as 128 fused rounds.
    pub fn ksa(key: &KeyMaterial) -> Self {
        let mut s = [0u8; SBOX_LEN];
        for (v, e) in s.iter_mut().enumerate() {
            *e = v as u8;
        }
        let (mut i_prev, mut j_prev) = (255u8, 0u8);
        for _ in 0..SBOX_LEN / 2 {
            let step = pair_step(&mut s, i_prev, j_prev, Some(key.kbox()), false)
                .expect("single-step index model");
            i_prev = step.indices.i_next;
            j_prev = step.indices.j_next;
        }
        Self { s, i_prev, j_prev, phase: Phase::Ksa }
    }

    /// Builds a PRGA-ready engine over an existing permutation.
    pub fn over(s: [u8; SBOX_LEN]) -> Self {
        debug_assert!(is_permutation(&s));
        Self { s, i_prev: 0, j_prev: 0, phase: Phase::Prga }
    }

    pub fn s(&self) -> &[u8; SBOX_LEN] {
        &self.s
    }

    pub fn i_prev(&self) -> u8 {
        self.i_prev
    }

    pub fn j_prev(&self) -> u8 {
        self.j_prev
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn begin_pkrs(&mut self) -> Result<(), Rc4Error> {
        if self.phase != Phase::Ksa {
            return Err(Rc4Error::WrongPhase { expected: Phase::Ksa, actual: self.phase });
        }
        self.i_prev = 0;
        self.j_prev = 0;
        self.phase = Phase::Pkrs;
        Ok(())
    }

    pub fn begin_prga(&mut self) -> Result<(), Rc4Error> {
        match self.phase {
            Phase::Ksa | Phase::Pkrs => {
                self.i_prev = 0;
                self.j_prev = 0;
                self.phase = Phase::Prga;
                Ok(())
            }
            actual => Err(Rc4Error::WrongPhase { expected: Phase::Ksa, actual }),
        }
    }

    /// Runs `rounds` fused PKRS rounds (two swaps each), no extraction.
    pub fn pkrs_rounds(&mut self, rounds: usize) -> Result<(), Rc4Error> {
        if self.phase != Phase::Pkrs {
            return Err(Rc4Error::WrongPhase { expected: Phase::Pkrs, actual: self.phase });
        }
        for _ in 0..rounds {
            self.advance(false);
        }
        Ok(())
    }

    /// One fused PRGA round: two keystream bytes.
    pub fn prga_pair(&mut self) -> Result<(u8, u8), Rc4Error> {
        if self.phase != Phase::Prga {
            return Err(Rc4Error::WrongPhase { expected: Phase::Prga, actual: self.phase });
        }
        Ok(self.advance(true).unwrap_or((0, 0)))
    }

    fn advance(&mut self, extract: bool) -> Option<(u8, u8)> {
        let step = pair_step(&mut self.s, self.i_prev, self.j_prev, None, extract)
            .expect("single-step index model");
        self.i_prev = step.indices.i_next;
        self.j_prev = step.indices.j_next;
        step.z
    }

    /// Fills `out`, discarding the trailing byte of the final pair when the
    /// requested length is odd.
    pub fn prga_fill(&mut self, out: &mut [u8]) -> Result<(), Rc4Error> {
        if self.phase != Phase::Prga {
            return Err(Rc4Error::WrongPhase { expected: Phase::Prga, actual: self.phase });
        }
        let mut chunks = out.chunks_exact_mut(2);
        for pair in &mut chunks {
            let (a, b) = self.advance(true).expect("extraction requested");
            pair[0] = a;
            pair[1] = b;
        }
        if let [last] = chunks.into_remainder() {
            let (a, _) = self.advance(true).expect("extraction requested");
            *last = a;
        }
        Ok(())
    }
}

/// Keystream of the fused-round engine: KSA (128 fused rounds), PKRS
/// (512 fused rounds = 1024 swaps), then extraction. Byte-for-byte equal to
/// [`crate::rc4::keystream_shuffled`].
pub fn keystream_pairwise(key: &KeyMaterial, n: usize) -> Vec<u8> {
    let mut engine = PairEngine::ksa(key);
    engine.begin_pkrs().expect("fresh KSA state");
    engine.pkrs_rounds(crate::rc4::PKRS_SWAPS / 2).expect("state is in PKRS phase");
    engine.begin_prga().expect("PKRS state");
    let mut out = vec![0u8; n];
    engine.prga_fill(&mut out).expect("state is in PRGA phase");
    out
}
