//! The seven keystream engine designs and their shared configuration.
//!
//! | id | stepping  | S-boxes | PKRS | bytes/clock |
//! |----|-----------|---------|------|-------------|
//! | d1 | 1-byte    | 1       | no   | 1           |
//! | d2 | 1-byte    | 1       | yes  | 1           |
//! | d3 | 2-byte    | 1       | yes  | 2           |
//! | d4 | 1-byte    | 2       | yes  | 2           |
//! | d5 | 2-byte    | 2       | yes  | 4           |
//! | d6 | 1-byte    | 4       | yes  | 4           |
//! | d7 | 2-byte    | 4       | yes  | 8           |
//!
//! d3 emits the same bytes as d2, d5 the same as d4, and d7 the same as d6:
//! the 2-byte engines are loop-unrolled equivalents, not different ciphers.

use std::fmt;
use std::str::FromStr;

use crate::multibox::{build_ensemble, keystream_interleaved};
use crate::rc4::{keystream_plain, keystream_shuffled, ksa, KeyMaterial, SBoxState, PKRS_SWAPS};
use crate::unrolled::{keystream_pairwise, PairEngine};
use crate::Rc4Error;

/// Identifier of one of the seven engine designs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DesignId {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
}

impl DesignId {
    pub const ALL: [DesignId; 7] = [
        DesignId::D1,
        DesignId::D2,
        DesignId::D3,
        DesignId::D4,
        DesignId::D5,
        DesignId::D6,
        DesignId::D7,
    ];

    /// Wire identifier, 1..=7.
    pub fn as_byte(self) -> u8 {
        match self {
            DesignId::D1 => 1,
            DesignId::D2 => 2,
            DesignId::D3 => 3,
            DesignId::D4 => 4,
            DesignId::D5 => 5,
            DesignId::D6 => 6,
            DesignId::D7 => 7,
        }
    }

    pub fn from_byte(b: u8) -> Option<Self> {
        Self::ALL.get(b.checked_sub(1)? as usize).copied()
    }

    pub fn config(self) -> DesignConfig {
        DesignConfig::of(self)
    }
}

impl fmt::Display for DesignId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.as_byte())
    }
}

impl FromStr for DesignId {
    type Err = Rc4Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let digit = match t.as_bytes() {
            [b'd' | b'D', d] => *d,
            [d] => *d,
            _ => 0,
        };
        digit
            .checked_sub(b'0')
            .and_then(DesignId::from_byte)
            .ok_or_else(|| Rc4Error::UnknownDesign(s.to_string()))
    }
}

/// Static shape of a design: stepping mode, S-box count, PKRS length and the
/// snapshot schedule used to seed the extra S-boxes.
#[derive(Clone, Copy, Debug)]
pub struct DesignConfig {
    pub id: DesignId,
    /// Two-byte (loop-unrolled) stepping instead of one byte per step.
    pub pairwise: bool,
    /// Number of S-boxes the PRGA round-robins over.
    pub boxes: usize,
    /// Key-free swaps between KSA and PRGA.
    pub pkrs_swaps: usize,
    /// `(swap_count, box_slot)` pairs: after `swap_count` PKRS swaps the
    /// current permutation is copied into `boxes[box_slot]`. Slot 0 always
    /// holds the final post-PKRS permutation and never appears here.
    pub snapshots: &'static [(usize, usize)],
}

impl DesignConfig {
    pub fn of(id: DesignId) -> Self {
        match id {
            DesignId::D1 => Self { id, pairwise: false, boxes: 1, pkrs_swaps: 0, snapshots: &[] },
            DesignId::D2 => {
                Self { id, pairwise: false, boxes: 1, pkrs_swaps: PKRS_SWAPS, snapshots: &[] }
            }
            DesignId::D3 => {
                Self { id, pairwise: true, boxes: 1, pkrs_swaps: PKRS_SWAPS, snapshots: &[] }
            }
            DesignId::D4 => Self {
                id,
                pairwise: false,
                boxes: 2,
                pkrs_swaps: PKRS_SWAPS,
                snapshots: &[(512, 1)],
            },
            DesignId::D5 => {
                Self { id, pairwise: true, boxes: 2, pkrs_swaps: PKRS_SWAPS, snapshots: &[(512, 1)] }
            }
            DesignId::D6 => Self {
                id,
                pairwise: false,
                boxes: 4,
                pkrs_swaps: PKRS_SWAPS,
                snapshots: &[(256, 3), (512, 2), (768, 1)],
            },
            DesignId::D7 => Self {
                id,
                pairwise: true,
                boxes: 4,
                pkrs_swaps: PKRS_SWAPS,
                snapshots: &[(256, 3), (512, 2), (768, 1)],
            },
        }
    }

    /// Bytes emitted per clock cycle once the pipeline is full.
    pub fn bytes_per_clock(&self) -> usize {
        self.boxes * if self.pairwise { 2 } else { 1 }
    }
}

/// Generates `n` keystream bytes for any design.
pub fn keystream(design: DesignId, key: &KeyMaterial, n: usize) -> Vec<u8> {
    match design {
        DesignId::D1 => keystream_plain(key, n),
        DesignId::D2 => keystream_shuffled(key, n),
        DesignId::D3 => keystream_pairwise(key, n),
        DesignId::D4 | DesignId::D5 | DesignId::D6 | DesignId::D7 => {
            let ensemble = build_ensemble(key, design).expect("multi-box design");
            keystream_interleaved(&ensemble, n)
        }
    }
}

enum EngineSet {
    Bytewise(Vec<SBoxState>),
    Pairwise(Vec<PairEngine>),
}

/// Incremental keystream generator: emits the same byte sequence as
/// [`keystream`] but across arbitrarily sized pulls, so long-running
/// consumers (the encrypted channel, large file output) never rebuild the
/// stream from the start. Interleaving granularity is hidden by an internal
/// carry buffer of at most `bytes_per_clock` bytes.
pub struct KeystreamCursor {
    set: EngineSet,
    carry: [u8; 8],
    carry_len: usize,
    drawn: u64,
}

impl KeystreamCursor {
    pub fn new(design: DesignId, key: &KeyMaterial) -> Self {
        let cfg = design.config();
        let set = if cfg.boxes > 1 {
            let ensemble = build_ensemble(key, design).expect("multi-box design");
            if cfg.pairwise {
                EngineSet::Pairwise(
                    ensemble.boxes().iter().map(|b| PairEngine::over(*b.s())).collect(),
                )
            } else {
                EngineSet::Bytewise(ensemble.boxes().to_vec())
            }
        } else if cfg.pairwise {
            let mut engine = PairEngine::ksa(key);
            engine.begin_pkrs().expect("fresh engine");
            engine.pkrs_rounds(cfg.pkrs_swaps / 2).expect("in shuffle phase");
            engine.begin_prga().expect("shuffle done");
            EngineSet::Pairwise(vec![engine])
        } else {
            let mut state = ksa(key);
            if cfg.pkrs_swaps > 0 {
                state.begin_pkrs().expect("fresh state");
                state.pkrs(cfg.pkrs_swaps).expect("in shuffle phase");
            }
            state.begin_prga().expect("schedule done");
            EngineSet::Bytewise(vec![state])
        };
        Self { set, carry: [0; 8], carry_len: 0, drawn: 0 }
    }

    /// Smallest pull the engines support natively: one output byte per box
    /// per (half-)round.
    fn granule(&self) -> usize {
        match &self.set {
            EngineSet::Bytewise(boxes) => boxes.len(),
            EngineSet::Pairwise(engines) => 2 * engines.len(),
        }
    }

    /// Keystream bytes handed out so far.
    pub fn drawn(&self) -> u64 {
        self.drawn
    }

    /// Fills `out`, `out.len() % granule == 0`, engine-by-engine.
    fn fill_granules(&mut self, out: &mut [u8]) {
        match &mut self.set {
            EngineSet::Bytewise(boxes) if boxes.len() == 1 => {
                boxes[0].prga_fill(out).expect("prga phase")
            }
            EngineSet::Bytewise(boxes) => {
                for chunk in out.chunks_exact_mut(boxes.len()) {
                    for (slot, state) in chunk.iter_mut().zip(boxes.iter_mut()) {
                        *slot = state.prga_step().expect("prga phase");
                    }
                }
            }
            EngineSet::Pairwise(engines) if engines.len() == 1 => {
                engines[0].prga_fill(out).expect("prga phase")
            }
            EngineSet::Pairwise(engines) => {
                let m = engines.len();
                for chunk in out.chunks_exact_mut(2 * m) {
                    for (b, engine) in engines.iter_mut().enumerate() {
                        let (z0, z1) = engine.prga_pair().expect("prga phase");
                        chunk[b] = z0;
                        chunk[m + b] = z1;
                    }
                }
            }
        }
    }

    /// Fills `out` with the next `out.len()` keystream bytes.
    pub fn pull(&mut self, out: &mut [u8]) {
        let n = out.len();
        self.drawn += n as u64;
        // Drain buffered bytes from the previous partial granule first.
        let from_carry = self.carry_len.min(n);
        out[..from_carry].copy_from_slice(&self.carry[..from_carry]);
        self.carry.copy_within(from_carry..self.carry_len, 0);
        self.carry_len -= from_carry;
        let out = &mut out[from_carry..];

        let g = self.granule();
        let full = out.len() / g * g;
        self.fill_granules(&mut out[..full]);

        let tail = out.len() - full;
        if tail > 0 {
            debug_assert_eq!(self.carry_len, 0);
            let mut last = [0u8; 8];
            self.fill_granules(&mut last[..g]);
            out[full..].copy_from_slice(&last[..tail]);
            self.carry[..g - tail].copy_from_slice(&last[tail..g]);
            self.carry_len = g - tail;
        }
    }
}
