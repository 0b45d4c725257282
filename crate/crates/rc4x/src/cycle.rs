//! Clock-cycle cost model and half-clock event traces for the hardware
//! realization of each design.
//!
//! The cost model is exact rational arithmetic over the published pipeline
//! structure: one init clock per phase, one clock per KSA/PKRS iteration
//! (fused designs do two swaps per clock), a two-clock PRGA pipeline fill,
//! and a steady state of `bytes_per_clock` bytes per clock:
//!
//! | design | setup (init+KSA+PKRS) | total clocks for n bytes |
//! |--------|-----------------------|--------------------------|
//! | d1     | 257                   | 257 + 2 + n              |
//! | d2     | 1282                  | 1282 + 2 + n             |
//! | d3     | 642                   | 642 + 2 + n/2            |
//! | d4     | 1282                  | 1282 + 2 + n/2           |
//! | d5     | 642                   | 642 + 2 + n/4            |
//! | d6     | 1282                  | 1282 + 2 + n/4           |
//! | d7     | 642                   | 642 + 2 + n/8            |
//!
//! The trace models the PRGA pipeline on both clock edges. Cycles are
//! numbered from 1. Bytewise designs run a 4-stage schedule whose first
//! output lands on the rising edge of cycle 3; fused designs run a 3-stage
//! schedule emitting on both edges from the falling edge of cycle 2.

use std::fmt;

use num_rational::Ratio;

use crate::design::DesignId;
use crate::Rc4Error;

/// Exact clock count, possibly fractional for the fused/multi-box designs.
pub type Clocks = Ratio<u64>;

/// Per-phase clock budget of a design.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClockBudget {
    pub design: DesignId,
    /// One clock to latch initial indices before the KSA.
    pub ksa_init: u64,
    /// KSA iteration clocks (two swaps per clock when fused).
    pub ksa: u64,
    /// One clock to reset indices before PKRS; zero when the design skips it.
    pub pkrs_init: u64,
    /// PKRS iteration clocks.
    pub pkrs: u64,
    /// PRGA pipeline fill before the first byte emerges.
    pub fill: u64,
    /// Steady-state bytes per clock once the pipeline is full.
    pub bytes_per_clock: u64,
}

impl ClockBudget {
    pub fn of(design: DesignId) -> Self {
        let cfg = design.config();
        let half = if cfg.pairwise { 2 } else { 1 };
        let (pkrs_init, pkrs) =
            if cfg.pkrs_swaps == 0 { (0, 0) } else { (1, (cfg.pkrs_swaps / half) as u64) };
        Self {
            design,
            ksa_init: 1,
            ksa: (256 / half) as u64,
            pkrs_init,
            pkrs,
            fill: 2,
            bytes_per_clock: cfg.bytes_per_clock() as u64,
        }
    }

    /// Clocks spent before the first keystream byte can be scheduled.
    pub fn setup(&self) -> u64 {
        self.ksa_init + self.ksa + self.pkrs_init + self.pkrs
    }

    /// Total clocks to produce `n` bytes: `setup + fill + n / bytes_per_clock`.
    pub fn total(&self, n: u64) -> Clocks {
        Ratio::from_integer(self.setup() + self.fill) + Ratio::new(n, self.bytes_per_clock)
    }
}

/// Exact clock count for `n` bytes of keystream.
pub fn clock_count(design: DesignId, n: u64) -> Clocks {
    ClockBudget::of(design).total(n)
}

/// Clocks per byte at length `n`; errors on `n = 0`.
pub fn per_byte_cost(design: DesignId, n: u64) -> Result<Clocks, Rc4Error> {
    if n == 0 {
        return Err(Rc4Error::ZeroLength);
    }
    Ok(clock_count(design, n) / Ratio::from_integer(n))
}

/// Throughput in bits per second at clock frequency `mhz`, using the
/// steady-state rate (setup amortized away).
pub fn steady_throughput_bps(design: DesignId, mhz: f64) -> f64 {
    ClockBudget::of(design).bytes_per_clock as f64 * 8.0 * mhz * 1e6
}

/// Clock edge within one cycle; every cycle has a rising then falling edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Edge {
    Rising,
    Falling,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Edge::Rising => "rising",
            Edge::Falling => "falling",
        })
    }
}

/// One scheduled action of the PRGA pipeline.
#[derive(Clone, Debug)]
pub struct TraceEvent {
    pub cycle: u64,
    pub edge: Edge,
    pub action: String,
}

/// Event schedule of a design's PRGA pipeline over both clock edges.
#[derive(Clone, Debug)]
pub struct HalfClockTrace {
    pub design: DesignId,
    pub events: Vec<TraceEvent>,
}

impl HalfClockTrace {
    /// Keystream bytes emitted across the trace.
    pub fn bytes_emitted(&self) -> u64 {
        let per_event = self.design.config().boxes as u64;
        self.events.iter().filter(|e| e.action.contains('Z')).count() as u64 * per_event
    }

    /// Cycle count consumed by the trace (cycle of the last event).
    pub fn cycles(&self) -> u64 {
        self.events.last().map_or(0, |e| e.cycle)
    }
}

impl fmt::Display for HalfClockTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "cycle {} {}: {}", e.cycle, e.edge, e.action)?;
        }
        Ok(())
    }
}

fn z_label(first: u64, count: u64) -> String {
    if count == 1 {
        format!("Z{first}")
    } else {
        format!("Z{first}..Z{}", first + count - 1)
    }
}

/// Emits the PRGA pipeline schedule for `rounds` pipeline rounds.
///
/// A round is one pipeline advance: one byte per S-box for bytewise
/// designs, two bytes per S-box for fused designs. `rounds = 0` yields only
/// the initialization event.
pub fn trace(design: DesignId, rounds: u64) -> HalfClockTrace {
    let cfg = design.config();
    let m = cfg.boxes as u64;
    let mut events = vec![TraceEvent {
        cycle: 1,
        edge: Edge::Rising,
        action: "i0=0 j0=0".to_string(),
    }];
    if rounds == 0 {
        return HalfClockTrace { design, events };
    }
    if !cfg.pairwise {
        // 4-stage bytewise pipeline. Round r: j_r computed on rising edge of
        // cycle r+1, swap on falling edge of r+1, output on rising of r+2.
        let last_cycle = rounds + 2;
        for c in 1..=last_cycle {
            if c >= 2 {
                let mut action = format!("j{}=j{}+S[i{}]", c - 1, c - 2, c - 1);
                if c >= 3 {
                    action.push_str("; ");
                    action.push_str(&z_label((c - 3) * m + 1, m));
                }
                events.push(TraceEvent { cycle: c, edge: Edge::Rising, action });
            }
            if c == last_cycle {
                break; // the closing rising edge carries the final output
            }
            let mut action = format!("i{c}={}", c % 256);
            if c >= 2 {
                action.push_str(&format!("; swap S[i{}]<->S[j{}]", c - 1, c - 1));
            }
            events.push(TraceEvent { cycle: c, edge: Edge::Falling, action });
        }
    } else {
        // 3-stage fused pipeline: two emission events per full cycle, one on
        // each edge, each carrying one byte per S-box.
        let emissions = 2 * rounds;
        let mut emitted = 0u64;
        let mut c = 1u64;
        loop {
            if c >= 2 {
                let mut action = format!(
                    "j{}=j{}+S[i{}] j{}=j{}+S'[i{}]",
                    2 * c - 3,
                    2 * c - 4,
                    2 * c - 3,
                    2 * c - 2,
                    2 * c - 3,
                    2 * c - 2
                );
                if c >= 3 {
                    action.push_str("; ");
                    action.push_str(&z_label(emitted * m + 1, m));
                    emitted += 1;
                }
                events.push(TraceEvent { cycle: c, edge: Edge::Rising, action });
                if emitted == emissions {
                    break;
                }
            }
            let mut action = format!("i{}={} i{}={}", 2 * c - 1, (2 * c - 1) % 256, 2 * c, (2 * c) % 256);
            if c >= 2 {
                action.push_str(&format!("; swap-pair {}", c - 1));
                action.push_str("; ");
                action.push_str(&z_label(emitted * m + 1, m));
                emitted += 1;
            }
            events.push(TraceEvent { cycle: c, edge: Edge::Falling, action });
            if emitted == emissions {
                break;
            }
            c += 1;
        }
    }
    HalfClockTrace { design, events }
}
