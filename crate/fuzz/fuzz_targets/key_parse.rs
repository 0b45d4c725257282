#![no_main]

use libfuzzer_sys::fuzz_target;
use rc4x::KeyMaterial;

fuzz_target!(|data: &[u8]| {
    // Raw constructor: accepts exactly 1..=256 bytes, and the K-box is the
    // key cycled out to 256 entries.
    match KeyMaterial::new(data) {
        Ok(key) => {
            assert!((1..=256).contains(&data.len()));
            assert_eq!(key.bytes(), data);
            for (i, &k) in key.kbox().iter().enumerate() {
                assert_eq!(k, data[i % data.len()]);
            }
        }
        Err(_) => assert!(data.is_empty() || data.len() > 256),
    }

    // Hex parser: agrees with an independent decode of the same text.
    if let Ok(text) = std::str::from_utf8(data) {
        match KeyMaterial::from_hex(text) {
            Ok(key) => {
                let decoded = hex::decode(text.trim()).expect("accepted hex must decode");
                assert_eq!(key.bytes(), decoded);
            }
            Err(_) => {
                let invalid = match hex::decode(text.trim()) {
                    Ok(bytes) => bytes.is_empty() || bytes.len() > 256,
                    Err(_) => true,
                };
                assert!(invalid);
            }
        }
    }
});
