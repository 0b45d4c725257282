//! Bit sequences under test: packed storage, MSB-first byte expansion, and
//! parsing of both raw binary and ASCII `0`/`1` files.

use crate::nist::NistError;

/// An immutable bit sequence. Bit `i` of a byte stream is bit `7 - i % 8`
/// of byte `i / 8`, i.e. bytes expand most-significant-bit first.
#[derive(Clone, PartialEq, Eq)]
pub struct BitSequence {
    bytes: Vec<u8>,
    n: usize,
}

impl BitSequence {
    /// Wraps a byte stream; every bit becomes part of the sequence.
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        let n = bytes.len() * 8;
        Self { bytes, n }
    }

    /// Wraps a byte stream truncated to its first `n` bits.
    pub fn from_bytes_truncated(bytes: Vec<u8>, n: usize) -> Result<Self, NistError> {
        if n == 0 || n > bytes.len() * 8 {
            return Err(NistError::BadLength { have: bytes.len() * 8, want: n });
        }
        Self { bytes, n }.compacted()
    }

    /// Builds a sequence from single-bit values (test helper).
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut bytes = vec![0u8; bits.len().div_ceil(8)];
        for (i, &b) in bits.iter().enumerate() {
            debug_assert!(b <= 1);
            bytes[i / 8] |= (b & 1) << (7 - i % 8);
        }
        Self { bytes, n: bits.len() }
    }

    /// Parses ASCII text of `0`/`1` digits; whitespace is ignored.
    pub fn from_ascii(data: &[u8]) -> Result<Self, NistError> {
        let mut bytes = Vec::with_capacity(data.len() / 8 + 1);
        let mut n = 0usize;
        let mut cur = 0u8;
        for &c in data {
            let bit = match c {
                b'0' => 0,
                b'1' => 1,
                c if c.is_ascii_whitespace() => continue,
                c => return Err(NistError::BadDigit { byte: c, offset: n }),
            };
            cur |= bit << (7 - n % 8);
            n += 1;
            if n % 8 == 0 {
                bytes.push(cur);
                cur = 0;
            }
        }
        if n % 8 != 0 {
            bytes.push(cur);
        }
        if n == 0 {
            return Err(NistError::Empty);
        }
        Ok(Self { bytes, n })
    }

    /// Parses a file image, autodetecting the format: if every byte is an
    /// ASCII `0`, `1` or whitespace the content is read as text, otherwise
    /// as raw binary expanded MSB-first.
    pub fn parse(data: &[u8]) -> Result<Self, NistError> {
        if data.is_empty() {
            return Err(NistError::Empty);
        }
        let ascii = data
            .iter()
            .all(|&c| matches!(c, b'0' | b'1') || c.is_ascii_whitespace());
        if ascii {
            Self::from_ascii(data)
        } else {
            Ok(Self::from_bytes(data.to_vec()))
        }
    }

    /// Number of bits.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Bit at position `i` as 0 or 1.
    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        debug_assert!(i < self.n);
        (self.bytes[i / 8] >> (7 - i % 8)) & 1
    }

    /// Number of one bits.
    pub fn ones(&self) -> u64 {
        let full = self.n / 8;
        let mut count: u64 = self.bytes[..full].iter().map(|b| b.count_ones() as u64).sum();
        let tail = self.n % 8;
        if tail > 0 {
            let mask = !0u8 << (8 - tail);
            count += (self.bytes[full] & mask).count_ones() as u64;
        }
        count
    }

    /// Iterates bits as 0/1 values.
    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.n).map(move |i| self.bit(i))
    }

    /// Zeroes any padding bits beyond `n` so equality and popcounts are
    /// well-defined after truncation.
    fn compacted(mut self) -> Result<Self, NistError> {
        self.bytes.truncate(self.n.div_ceil(8));
        let tail = self.n % 8;
        if tail > 0 {
            let last = self.bytes.len() - 1;
            self.bytes[last] &= !0u8 << (8 - tail);
        }
        Ok(self)
    }
}

impl std::fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitSequence({} bits)", self.n)
    }
}
