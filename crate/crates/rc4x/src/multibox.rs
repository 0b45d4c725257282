//! Multi-S-box ensembles: one KSA+PKRS pass seeds several independent
//! PRGA units whose outputs interleave round-robin.
//!
//! During PKRS the evolving permutation is photographed at fixed swap counts
//! (see [`DesignConfig::snapshots`]); each snapshot seeds one extra S-box,
//! and the final post-PKRS permutation seeds box 0. Every box then runs its
//! own PRGA from `i = j = 0`, and round `r` of the combined stream emits one
//! byte from each box in slot order:
//!
//! ```text
//! out[r * m + b] = byte r of box b's PRGA stream      (m = box count)
//! ```
//!
//! The pairwise designs (d5, d7) build the same ensembles with fused
//! two-swap PKRS rounds — every snapshot count is even, so the photographs
//! land on fused-round boundaries — and drive each box with the fused PRGA.
//! The interleaved stream is byte-for-byte that of the bytewise twin.

use crate::design::DesignId;
use crate::rc4::{ksa, KeyMaterial, Phase, SBoxState, SBOX_LEN};
use crate::unrolled::PairEngine;
use crate::Rc4Error;

/// PRGA-ready S-boxes, slot 0 first. Every box starts at `i = j = 0`.
#[derive(Clone)]
pub struct BoxEnsemble {
    boxes: Vec<SBoxState>,
    pairwise: bool,
    design: DesignId,
}

impl BoxEnsemble {
    pub fn boxes(&self) -> &[SBoxState] {
        &self.boxes
    }

    pub fn design(&self) -> DesignId {
        self.design
    }

    pub fn pairwise(&self) -> bool {
        self.pairwise
    }
}

/// Runs KSA and PKRS for a multi-box design (d4..d7), photographing the
/// permutation per the design's snapshot schedule.
pub fn build_ensemble(key: &KeyMaterial, design: DesignId) -> Result<BoxEnsemble, Rc4Error> {
    let cfg = design.config();
    if cfg.boxes < 2 {
        return Err(Rc4Error::NotMultiBox(design));
    }
    let mut shots: Vec<[u8; SBOX_LEN]> = vec![[0; SBOX_LEN]; cfg.boxes];
    if cfg.pairwise {
        let mut engine = PairEngine::ksa(key);
        engine.begin_pkrs()?;
        let mut swaps = 0usize;
        for &(at, slot) in cfg.snapshots {
            debug_assert!(at % 2 == 0, "snapshot must land on a fused-round boundary");
            engine.pkrs_rounds((at - swaps) / 2)?;
            swaps = at;
            shots[slot] = *engine.s();
        }
        engine.pkrs_rounds((cfg.pkrs_swaps - swaps) / 2)?;
        shots[0] = *engine.s();
    } else {
        let mut state = ksa(key);
        state.begin_pkrs()?;
        let mut swaps = 0usize;
        for &(at, slot) in cfg.snapshots {
            state.pkrs(at - swaps)?;
            swaps = at;
            shots[slot] = *state.s();
        }
        state.pkrs(cfg.pkrs_swaps - swaps)?;
        shots[0] = *state.s();
    }
    let boxes = shots
        .into_iter()
        .map(|s| SBoxState::from_parts(s, 0, 0, Phase::Prga))
        .collect();
    Ok(BoxEnsemble { boxes, pairwise: cfg.pairwise, design })
}

/// Interleaves `n` bytes from the ensemble's PRGA units in slot order.
/// The ensemble itself is not consumed; emission runs on copies, so the
/// call is repeatable.
pub fn keystream_interleaved(ensemble: &BoxEnsemble, n: usize) -> Vec<u8> {
    let m = ensemble.boxes.len();
    let per_box = n.div_ceil(m);
    let mut streams: Vec<Vec<u8>> = Vec::with_capacity(m);
    for seed in &ensemble.boxes {
        let mut stream = vec![0u8; per_box];
        if ensemble.pairwise {
            let mut engine = PairEngine::over(*seed.s());
            engine.prga_fill(&mut stream).expect("engine is PRGA-ready");
        } else {
            let mut state = *seed;
            state.prga_fill(&mut stream).expect("box is PRGA-ready");
        }
        streams.push(stream);
    }
    let mut out = vec![0u8; n];
    for (pos, byte) in out.iter_mut().enumerate() {
        *byte = streams[pos % m][pos / m];
    }
    out
}
