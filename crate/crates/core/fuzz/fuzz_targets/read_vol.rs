#![no_main]
use libfuzzer_sys::fuzz_target;

use zz_core::volume_io::{read_vol, write_vol};

fuzz_target!(|data: &[u8]| {
    if let Ok(v) = read_vol(data) {
        assert_eq!(write_vol(&v), data);
    }
});
