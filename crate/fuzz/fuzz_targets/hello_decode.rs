#![no_main]

use libfuzzer_sys::fuzz_target;
use rc4x::channel::{Hello, HELLO_LEN, MAGIC};

fuzz_target!(|data: &[u8]| {
    match Hello::decode(data) {
        Ok(hello) => {
            // Exactly the well-formed inputs parse, and re-encoding them is
            // bit-exact.
            assert_eq!(data.len(), HELLO_LEN);
            assert_eq!(data[..4], MAGIC);
            assert_eq!(hello.encode().as_slice(), data);
        }
        Err(_) => assert!(data.len() != HELLO_LEN || data[..4] != MAGIC),
    }
});
