//! Byte-at-a-time RC4 engine with an explicit phase machine.
//!
//! The engine runs up to three phases over one 256-entry S-box:
//!
//! 1. **KSA** — 256 key-driven swaps.
//! 2. **PKRS** (optional) — extra key-free swaps between KSA and PRGA.
//!    Each iteration is a PRGA step without output extraction, so the
//!    permutation keeps churning but no keystream byte is derived.
//! 3. **PRGA** — keystream extraction.
//!
//! `i` and `j` are reset to zero on every phase transition. All index
//! arithmetic is mod 256.

use crate::Rc4Error;

/// Number of S-box entries.
pub const SBOX_LEN: usize = 256;

/// PKRS iteration count used by the shuffled engine variants: 1024 swaps,
/// i.e. four full passes of `i` over the S-box.
pub const PKRS_SWAPS: usize = 1024;

/// Phase of the RC4 state machine. Transitions only move forward:
/// `Init → Ksa → (Pkrs →) Prga`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Phase {
    Init,
    Ksa,
    Pkrs,
    Prga,
}

/// Secret key of 1..=256 bytes plus its expansion into a 256-entry K-box,
/// so `K[i]` lookups need no modular reduction by the key length.
#[derive(Clone)]
pub struct KeyMaterial {
    bytes: Vec<u8>,
    kbox: [u8; SBOX_LEN],
}

// Redacted so key bytes never land in logs via derived Debug on containers.
impl std::fmt::Debug for KeyMaterial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KeyMaterial").field("len", &self.bytes.len()).finish_non_exhaustive()
    }
}

impl KeyMaterial {
    pub fn new(bytes: &[u8]) -> Result<Self, Rc4Error> {
        if bytes.is_empty() || bytes.len() > SBOX_LEN {
            return Err(Rc4Error::InvalidKeyLength { len: bytes.len() });
        }
        let mut kbox = [0u8; SBOX_LEN];
        for (i, k) in kbox.iter_mut().enumerate() {
            *k = bytes[i % bytes.len()];
        }
        Ok(Self { bytes: bytes.to_vec(), kbox })
    }

    /// Parses a hex string (even number of digits, no separators).
    pub fn from_hex(s: &str) -> Result<Self, Rc4Error> {
        let bytes = hex::decode(s.trim()).map_err(|_| Rc4Error::InvalidHexKey)?;
        Self::new(&bytes)
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// The key repeated to fill all 256 positions: `kbox[i] = key[i % len]`.
    pub fn kbox(&self) -> &[u8; SBOX_LEN] {
        &self.kbox
    }
}

/// S-box permutation plus the `i`/`j` indices and the current phase.
#[derive(Clone, Copy)]
pub struct SBoxState {
    s: [u8; SBOX_LEN],
    i: u8,
    j: u8,
    phase: Phase,
}

impl SBoxState {
    /// Identity permutation, `i = j = 0`, phase `Init`.
    pub fn identity() -> Self {
        let mut s = [0u8; SBOX_LEN];
        for (v, e) in s.iter_mut().enumerate() {
            *e = v as u8;
        }
        Self { s, i: 0, j: 0, phase: Phase::Init }
    }

    /// Assembles a state from raw parts. `s` must be a permutation of
    /// 0..=255; this is only checked in debug builds.
    pub fn from_parts(s: [u8; SBOX_LEN], i: u8, j: u8, phase: Phase) -> Self {
        debug_assert!(is_permutation(&s));
        Self { s, i, j, phase }
    }

    pub fn s(&self) -> &[u8; SBOX_LEN] {
        &self.s
    }

    pub fn i(&self) -> u8 {
        self.i
    }

    pub fn j(&self) -> u8 {
        self.j
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    fn require(&self, phase: Phase) -> Result<(), Rc4Error> {
        if self.phase == phase {
            Ok(())
        } else {
            Err(Rc4Error::WrongPhase { expected: phase, actual: self.phase })
        }
    }

    /// Enters the PKRS phase, resetting `i` and `j`.
    pub fn begin_pkrs(&mut self) -> Result<(), Rc4Error> {
        self.require(Phase::Ksa)?;
        debug_assert!(is_permutation(&self.s));
        self.i = 0;
        self.j = 0;
        self.phase = Phase::Pkrs;
        Ok(())
    }

    /// Enters the PRGA phase (from KSA or PKRS), resetting `i` and `j`.
    pub fn begin_prga(&mut self) -> Result<(), Rc4Error> {
        match self.phase {
            Phase::Ksa | Phase::Pkrs => {
                debug_assert!(is_permutation(&self.s));
                self.i = 0;
                self.j = 0;
                self.phase = Phase::Prga;
                Ok(())
            }
            actual => Err(Rc4Error::WrongPhase { expected: Phase::Ksa, actual }),
        }
    }

    /// Runs `iters` key-free swaps: `i += 1; j += S[i]; swap(S[i], S[j])`.
    pub fn pkrs(&mut self, iters: usize) -> Result<(), Rc4Error> {
        self.require(Phase::Pkrs)?;
        for _ in 0..iters {
            self.i = self.i.wrapping_add(1);
            self.j = self.j.wrapping_add(self.s[self.i as usize]);
            self.s.swap(self.i as usize, self.j as usize);
        }
        Ok(())
    }

    /// One PRGA step: advance `i` and `j`, swap, and extract
    /// `Z = S[S[i] + S[j]]`.
    pub fn prga_step(&mut self) -> Result<u8, Rc4Error> {
        self.require(Phase::Prga)?;
        Ok(self.prga_step_unchecked())
    }

    #[inline]
    fn prga_step_unchecked(&mut self) -> u8 {
        self.i = self.i.wrapping_add(1);
        self.j = self.j.wrapping_add(self.s[self.i as usize]);
        self.s.swap(self.i as usize, self.j as usize);
        let t = self.s[self.i as usize].wrapping_add(self.s[self.j as usize]);
        self.s[t as usize]
    }

    /// Fills `out` with successive PRGA bytes.
    pub fn prga_fill(&mut self, out: &mut [u8]) -> Result<(), Rc4Error> {
        self.require(Phase::Prga)?;
        for b in out.iter_mut() {
            *b = self.prga_step_unchecked();
        }
        Ok(())
    }
}

/// One KSA round: `j += S[i] + K[i]`, then swap. Returns the new `j`.
#[inline]
fn ksa_round(s: &mut [u8; SBOX_LEN], i: usize, j: u8, kbox: &[u8; SBOX_LEN]) -> u8 {
    let j = j.wrapping_add(s[i]).wrapping_add(kbox[i]);
    s.swap(i, j as usize);
    j
}

/// Runs the full KSA over the identity permutation. The returned state is in
/// phase `Ksa`; call [`SBoxState::begin_pkrs`] or [`SBoxState::begin_prga`]
/// to continue.
pub fn ksa(key: &KeyMaterial) -> SBoxState {
    let mut state = SBoxState::identity();
    let mut j = 0u8;
    for i in 0..SBOX_LEN {
        j = ksa_round(&mut state.s, i, j, key.kbox());
    }
    state.i = (SBOX_LEN - 1) as u8;
    state.j = j;
    state.phase = Phase::Ksa;
    state
}

/// Plain RC4 keystream: KSA followed by `n` PRGA steps.
pub fn keystream_plain(key: &KeyMaterial, n: usize) -> Vec<u8> {
    let mut state = ksa(key);
    state.begin_prga().expect("fresh KSA state");
    let mut out = vec![0u8; n];
    state.prga_fill(&mut out).expect("state is in PRGA phase");
    out
}

/// Shuffled RC4 keystream: KSA, then [`PKRS_SWAPS`] key-free swaps, then
/// `n` PRGA steps.
pub fn keystream_shuffled(key: &KeyMaterial, n: usize) -> Vec<u8> {
    let mut state = ksa(key);
    state.begin_pkrs().expect("fresh KSA state");
    state.pkrs(PKRS_SWAPS).expect("state is in PKRS phase");
    state.begin_prga().expect("PKRS state");
    let mut out = vec![0u8; n];
    state.prga_fill(&mut out).expect("state is in PRGA phase");
    out
}

/// True if `s` contains each of 0..=255 exactly once.
pub fn is_permutation(s: &[u8; SBOX_LEN]) -> bool {
    let mut seen = [false; SBOX_LEN];
    for &v in s.iter() {
        if seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    true
}
