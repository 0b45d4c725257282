//! Bounded blocking byte queue between the keystream producer thread and
//! the frame-processing consumer.

use std::collections::VecDeque;
use std::sync::{Condvar, Mutex};

/// The queue was closed; no further bytes will flow.
#[derive(Debug, PartialEq, Eq)]
pub struct Closed;

struct Inner {
    buf: VecDeque<u8>,
    closed: bool,
}

/// Fixed-capacity byte FIFO. `push_all` blocks while full, `pop_exact`
/// blocks while empty; `close` wakes both sides. The consumer may drain
/// bytes that were queued before the close.
pub struct ByteFifo {
    inner: Mutex<Inner>,
    not_full: Condvar,
    not_empty: Condvar,
    capacity: usize,
}

impl ByteFifo {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "fifo capacity must be positive");
        Self {
            inner: Mutex::new(Inner { buf: VecDeque::with_capacity(capacity), closed: false }),
            not_full: Condvar::new(),
            not_empty: Condvar::new(),
            capacity,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Queues every byte of `bytes`, blocking whenever the queue is at
    /// capacity. The producer never runs more than `capacity` bytes ahead.
    pub fn push_all(&self, bytes: &[u8]) -> Result<(), Closed> {
        let mut remaining = bytes;
        let mut inner = self.inner.lock().unwrap();
        while !remaining.is_empty() {
            while inner.buf.len() == self.capacity && !inner.closed {
                inner = self.not_full.wait(inner).unwrap();
            }
            if inner.closed {
                return Err(Closed);
            }
            let space = self.capacity - inner.buf.len();
            let take = space.min(remaining.len());
            inner.buf.extend(&remaining[..take]);
            remaining = &remaining[take..];
            self.not_empty.notify_one();
        }
        Ok(())
    }

    /// Fills `out` completely, blocking until enough bytes arrive. Returns
    /// `Closed` only when the queue is closed *and* drained.
    pub fn pop_exact(&self, out: &mut [u8]) -> Result<(), Closed> {
        let mut filled = 0;
        let mut inner = self.inner.lock().unwrap();
        while filled < out.len() {
            while inner.buf.is_empty() && !inner.closed {
                inner = self.not_empty.wait(inner).unwrap();
            }
            if inner.buf.is_empty() {
                return Err(Closed);
            }
            let take = inner.buf.len().min(out.len() - filled);
            for slot in &mut out[filled..filled + take] {
                *slot = inner.buf.pop_front().unwrap();
            }
            filled += take;
            self.not_full.notify_one();
        }
        Ok(())
    }

    /// Closes both ends. Blocked producers fail; consumers may still drain.
    pub fn close(&self) {
        self.inner.lock().unwrap().closed = true;
        self.not_full.notify_all();
        self.not_empty.notify_all();
    }
}
