//! Encrypted point-to-point channel: two endpoints with the same key and
//! design derive identical keystreams and XOR frames against them in
//! lockstep. A producer thread keeps a bounded FIFO of keystream bytes
//! filled; the caller's thread consumes it for both directions, so the wire
//! protocol is strictly sequential and each keystream byte is used exactly
//! once.
//!
//! The handshake proves key/design agreement without revealing the key: both
//! sides generate and discard an initial keystream prefix (64 bytes by
//! default) and exchange a truncated SHA-256 digest of it.

mod fifo;
mod wire;

pub use fifo::ByteFifo;
pub use wire::{decode_frame, Hello, HELLO_LEN, MAGIC, MAX_FRAME, VERSION};

use std::io::{Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::Arc;
use std::thread::JoinHandle;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::design::{DesignId, KeystreamCursor};
use crate::rc4::KeyMaterial;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("hello must be {HELLO_LEN} bytes, got {len}")]
    BadHello { len: usize },
    #[error("bad magic {0:02x?}, peer is not speaking this protocol")]
    BadMagic([u8; 4]),
    #[error("protocol version mismatch: ours {ours}, peer {theirs}")]
    VersionMismatch { ours: u8, theirs: u8 },
    #[error("design mismatch: ours d{ours}, peer d{theirs}")]
    DesignMismatch { ours: u8, theirs: u8 },
    #[error("handshake digest mismatch: peer has a different key or design")]
    DigestMismatch,
    #[error("frame length {0} exceeds the 16 MiB cap")]
    FrameTooLarge(usize),
    #[error("short read: wanted {wanted} bytes, got {got} at stream offset {stream_offset}")]
    ShortRead { wanted: usize, got: usize, stream_offset: u64 },
    #[error("keystream queue closed")]
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Bind the address and accept one connection.
    Listener,
    /// Connect to a listening peer.
    Initiator,
}

/// Everything an endpoint needs to establish a session. Both endpoints must
/// configure the same key and design; the handshake digest enforces it.
#[derive(Clone, Debug)]
pub struct ChannelConfig {
    pub role: Role,
    pub addr: String,
    pub key: KeyMaterial,
    pub design: DesignId,
    /// Keystream FIFO capacity in bytes.
    pub fifo_capacity: usize,
    /// Keystream bytes generated, hashed into the handshake digest, and
    /// discarded before any payload.
    pub discard: usize,
}

impl ChannelConfig {
    pub fn new(role: Role, addr: impl Into<String>, key: KeyMaterial, design: DesignId) -> Self {
        Self { role, addr: addr.into(), key, design, fifo_capacity: 4096, discard: 64 }
    }
}

/// Digest exchanged during the handshake: the first 8 bytes of SHA-256 over
/// the discarded keystream prefix.
pub fn handshake_digest(design: DesignId, key: &KeyMaterial, discard: usize) -> [u8; 8] {
    let mut cursor = KeystreamCursor::new(design, key);
    let mut prefix = vec![0u8; discard];
    cursor.pull(&mut prefix);
    let hash = Sha256::digest(&prefix);
    hash[..8].try_into().unwrap()
}

/// An established encrypted session. Dropping it closes the keystream queue
/// and joins the producer thread.
pub struct Session {
    stream: TcpStream,
    fifo: Arc<ByteFifo>,
    producer: Option<JoinHandle<()>>,
    design: DesignId,
    consumed: u64,
}

impl std::fmt::Debug for Session {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Session")
            .field("design", &self.design)
            .field("consumed", &self.consumed)
            .finish_non_exhaustive()
    }
}

/// Establishes a session per the config's role: listeners bind and accept
/// one connection, initiators connect.
pub fn establish(config: &ChannelConfig) -> Result<Session, ChannelError> {
    match config.role {
        Role::Listener => {
            let listener = TcpListener::bind(&config.addr)?;
            listen_on(&listener, config)
        }
        Role::Initiator => {
            let stream = TcpStream::connect(&config.addr)?;
            Session::over(stream, config)
        }
    }
}

/// Accepts one connection on an already-bound listener and runs the
/// handshake over it.
pub fn listen_on(listener: &TcpListener, config: &ChannelConfig) -> Result<Session, ChannelError> {
    let (stream, _peer) = listener.accept()?;
    Session::over(stream, config)
}

impl Session {
    /// Runs the handshake over an established TCP stream and starts the
    /// keystream producer.
    pub fn over(stream: TcpStream, config: &ChannelConfig) -> Result<Session, ChannelError> {
        let mut stream = stream;
        stream.set_nodelay(true)?;

        // Generate and hash the discarded keystream prefix; the cursor then
        // continues from there for payload bytes.
        let mut cursor = KeystreamCursor::new(config.design, &config.key);
        let mut prefix = vec![0u8; config.discard];
        cursor.pull(&mut prefix);
        let digest: [u8; 8] = Sha256::digest(&prefix)[..8].try_into().unwrap();

        let ours = Hello { version: VERSION, design: config.design.as_byte(), digest };
        stream.write_all(&ours.encode())?;
        let mut buf = [0u8; HELLO_LEN];
        read_full(&mut stream, &mut buf, 0)?;
        let theirs = Hello::decode(&buf)?;
        if theirs.version != VERSION {
            return Err(ChannelError::VersionMismatch { ours: VERSION, theirs: theirs.version });
        }
        if theirs.design != ours.design {
            return Err(ChannelError::DesignMismatch { ours: ours.design, theirs: theirs.design });
        }
        if theirs.digest != ours.digest {
            return Err(ChannelError::DigestMismatch);
        }

        let fifo = Arc::new(ByteFifo::new(config.fifo_capacity));
        let producer = {
            let fifo = Arc::clone(&fifo);
            std::thread::spawn(move || {
                let mut chunk = [0u8; 1024];
                loop {
                    cursor.pull(&mut chunk);
                    if fifo.push_all(&chunk).is_err() {
                        return; // session dropped
                    }
                }
            })
        };
        Ok(Session {
            stream,
            fifo,
            producer: Some(producer),
            design: config.design,
            consumed: config.discard as u64,
        })
    }

    pub fn design(&self) -> DesignId {
        self.design
    }

    /// Total keystream bytes consumed: the discarded handshake prefix plus
    /// every payload byte sent or received.
    pub fn keystream_consumed(&self) -> u64 {
        self.consumed
    }

    fn next_keystream(&mut self, n: usize) -> Result<Vec<u8>, ChannelError> {
        let mut ks = vec![0u8; n];
        self.fifo.pop_exact(&mut ks).map_err(|_| ChannelError::Closed)?;
        self.consumed += n as u64;
        Ok(ks)
    }

    /// Encrypts and sends one frame. Payloads above [`MAX_FRAME`] are
    /// refused; callers stream large transfers as multiple frames.
    pub fn send(&mut self, payload: &[u8]) -> Result<(), ChannelError> {
        if payload.len() > MAX_FRAME {
            return Err(ChannelError::FrameTooLarge(payload.len()));
        }
        self.stream.write_all(&wire::encode_frame_header(payload.len()))?;
        if !payload.is_empty() {
            let mut body = self.next_keystream(payload.len())?;
            for (slot, &pt) in body.iter_mut().zip(payload) {
                *slot ^= pt;
            }
            self.stream.write_all(&body)?;
        }
        Ok(())
    }

    /// Receives and decrypts one frame.
    pub fn recv(&mut self) -> Result<Vec<u8>, ChannelError> {
        let mut header = [0u8; 4];
        read_full(&mut self.stream, &mut header, self.consumed)?;
        let len = wire::frame_len(header)?;
        let mut body = vec![0u8; len];
        read_full(&mut self.stream, &mut body, self.consumed)?;
        if len > 0 {
            let ks = self.next_keystream(len)?;
            for (slot, k) in body.iter_mut().zip(ks) {
                *slot ^= k;
            }
        }
        Ok(body)
    }
}

impl Drop for Session {
    fn drop(&mut self) {
        self.fifo.close();
        if let Some(handle) = self.producer.take() {
            let _ = handle.join();
        }
    }
}

/// `read_exact` that reports how far it got; `stream_offset` is the
/// session's keystream position, for resync diagnostics.
fn read_full(
    stream: &mut TcpStream,
    buf: &mut [u8],
    stream_offset: u64,
) -> Result<(), ChannelError> {
    let mut got = 0;
    while got < buf.len() {
        match stream.read(&mut buf[got..]) {
            Ok(0) => return Err(ChannelError::ShortRead { wanted: buf.len(), got, stream_offset }),
            Ok(k) => got += k,
            Err(e) if e.kind() == std::io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}
