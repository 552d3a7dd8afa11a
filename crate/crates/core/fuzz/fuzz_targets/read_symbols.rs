#![no_main]
use libfuzzer_sys::fuzz_target;

use zz_core::codec::{read_symbols, rle_decode, write_symbols};

// First byte picks the block count, second the block side; the rest is the
// bit payload.
fuzz_target!(|data: &[u8]| {
    let [count, side, payload @ ..] = data else {
        return;
    };
    let block_count = *count as usize;
    let side = [2usize, 4, 8, 16][(*side % 4) as usize];
    let volume = side * side * side;
    if let Ok(blocks) = read_symbols(payload, block_count, volume) {
        assert_eq!(blocks.len(), block_count);
        for b in &blocks {
            rle_decode(b, volume).expect("validated block expands");
        }
        assert_eq!(write_symbols(&blocks).as_bytes(), payload);
    }
});
