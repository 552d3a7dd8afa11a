#![no_main]
use libfuzzer_sys::fuzz_target;

use zz_core::codec::{decode_volume, encode_volume, StreamHeader};

fuzz_target!(|data: &[u8]| {
    if let Ok(volume) = decode_volume(data) {
        // Anything that decodes must have come with a valid header, and
        // re-encoding the output with that header's config must decode again.
        let header = StreamHeader::parse(data).expect("decoded stream has a valid header");
        assert_eq!(
            volume.dims(),
            (header.rows as usize, header.cols as usize, header.bands as usize)
        );
        let again = encode_volume(&volume, &header.config).expect("re-encode");
        assert_eq!(decode_volume(&again).expect("re-decode").dims(), volume.dims());
    }
});
