#![no_main]

use libfuzzer_sys::fuzz_target;
use rc4x::nist::BitSequence;

fuzz_target!(|data: &[u8]| {
    match BitSequence::parse(data) {
        Ok(seq) => {
            assert!(!seq.is_empty());
            let popcount: u64 = seq.iter().map(u64::from).sum();
            assert_eq!(popcount, seq.ones());
            // Expanding to single bits and rebuilding is lossless.
            let bits: Vec<u8> = seq.iter().collect();
            let rebuilt = BitSequence::from_bits(&bits);
            assert_eq!(rebuilt.len(), seq.len());
            assert!(rebuilt.iter().eq(seq.iter()));
        }
        // parse() only rejects input with no bits in it: empty, or text
        // classified as ASCII that contains no digits. Anything with a
        // non-0/1/whitespace byte takes the raw-binary path and succeeds.
        Err(_) => assert!(data.iter().all(|c| c.is_ascii_whitespace())),
    }

    // Truncation accepts exactly the lengths the byte stream covers.
    if !data.is_empty() {
        let n = usize::from(data[0]) * 8 + 1;
        let ok = BitSequence::from_bytes_truncated(data.to_vec(), n).is_ok();
        assert_eq!(ok, n <= data.len() * 8);
    }
});
