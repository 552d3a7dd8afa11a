#![no_main]
use libfuzzer_sys::fuzz_target;

use zz_core::volume_io::{decode_pgm, encode_pgm, volume_from_frames};

fuzz_target!(|data: &[u8]| {
    if let Ok(frame) = decode_pgm("fuzz", data) {
        assert_eq!(frame.samples.len(), frame.rows * frame.cols);
        let canonical = encode_pgm(frame.rows, frame.cols, &frame.samples);
        assert_eq!(decode_pgm("canonical", &canonical).unwrap(), frame);
        let v = volume_from_frames(&[("a", data), ("b", &canonical)]).unwrap();
        assert_eq!(v.bands(), 2);
    }
});
