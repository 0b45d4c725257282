//! Wire format: the 14-byte session hello and length-prefixed frames.
//!
//! Hello layout (bit-exact): magic `52 43 34 58` ("RC4X"), version `01`,
//! design id `01`..`07`, then an 8-byte digest of the discarded keystream
//! prefix. Frames are a `u32` big-endian payload length followed by that
//! many ciphertext bytes.

use crate::channel::ChannelError;

pub const MAGIC: [u8; 4] = *b"RC4X";
pub const VERSION: u8 = 1;
/// Frame payloads are capped at 16 MiB.
pub const MAX_FRAME: usize = 1 << 24;
pub const HELLO_LEN: usize = 14;

/// Decoded session hello. `version` and `design` are carried raw; the
/// session layer decides whether it can talk to them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hello {
    pub version: u8,
    pub design: u8,
    pub digest: [u8; 8],
}

impl Hello {
    pub fn encode(&self) -> [u8; HELLO_LEN] {
        let mut out = [0u8; HELLO_LEN];
        out[..4].copy_from_slice(&MAGIC);
        out[4] = self.version;
        out[5] = self.design;
        out[6..].copy_from_slice(&self.digest);
        out
    }

    /// Parses a hello, validating length and magic only.
    pub fn decode(buf: &[u8]) -> Result<Hello, ChannelError> {
        if buf.len() != HELLO_LEN {
            return Err(ChannelError::BadHello { len: buf.len() });
        }
        let mut magic = [0u8; 4];
        magic.copy_from_slice(&buf[..4]);
        if magic != MAGIC {
            return Err(ChannelError::BadMagic(magic));
        }
        let mut digest = [0u8; 8];
        digest.copy_from_slice(&buf[6..]);
        Ok(Hello { version: buf[4], design: buf[5], digest })
    }
}

/// Validates a frame header and returns the payload length.
pub fn frame_len(header: [u8; 4]) -> Result<usize, ChannelError> {
    let len = u32::from_be_bytes(header) as usize;
    if len > MAX_FRAME {
        return Err(ChannelError::FrameTooLarge(len));
    }
    Ok(len)
}

pub fn encode_frame_header(len: usize) -> [u8; 4] {
    debug_assert!(len <= MAX_FRAME);
    (len as u32).to_be_bytes()
}

/// Splits one frame off the front of `buf`: `Ok(None)` means more bytes are
/// needed, `Ok(Some((payload, rest)))` consumes the frame.
pub fn decode_frame(buf: &[u8]) -> Result<Option<(&[u8], &[u8])>, ChannelError> {
    if buf.len() < 4 {
        return Ok(None);
    }
    let len = frame_len([buf[0], buf[1], buf[2], buf[3]])?;
    if buf.len() - 4 < len {
        return Ok(None);
    }
    let (frame, rest) = buf[4..].split_at(len);
    Ok(Some((frame, rest)))
}
