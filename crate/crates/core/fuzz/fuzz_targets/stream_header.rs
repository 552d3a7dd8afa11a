#![no_main]
use libfuzzer_sys::fuzz_target;

use zz_core::codec::{StreamHeader, HEADER_LEN};

fuzz_target!(|data: &[u8]| {
    if let Ok(h) = StreamHeader::parse(data) {
        assert_eq!(&h.to_bytes()[..], &data[..HEADER_LEN]);
    }
});
