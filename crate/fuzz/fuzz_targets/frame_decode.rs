#![no_main]

use libfuzzer_sys::fuzz_target;
use rc4x::channel::{decode_frame, MAX_FRAME};

fuzz_target!(|data: &[u8]| {
    // Walk frames off the front the way a stream consumer would.
    let mut rest = data;
    let mut consumed = 0usize;
    while let Ok(Some((payload, tail))) = decode_frame(rest) {
        assert!(payload.len() <= MAX_FRAME);
        assert_eq!(4 + payload.len() + tail.len(), rest.len());
        let claimed = u32::from_be_bytes([rest[0], rest[1], rest[2], rest[3]]) as usize;
        assert_eq!(claimed, payload.len());
        consumed += 4 + payload.len();
        rest = tail;
    }
    match decode_frame(rest) {
        Ok(Some(_)) => unreachable!("loop exited on Some"),
        // Starved: no full header, or fewer payload bytes than it claims.
        Ok(None) => assert!(
            rest.len() < 4
                || rest.len() - 4
                    < u32::from_be_bytes([rest[0], rest[1], rest[2], rest[3]]) as usize
        ),
        // Rejected: only an over-cap length does this, and it needs a header.
        Err(_) => {
            assert!(
                u32::from_be_bytes([rest[0], rest[1], rest[2], rest[3]]) as usize > MAX_FRAME
            );
        }
    }
    assert_eq!(consumed + rest.len(), data.len());
});
