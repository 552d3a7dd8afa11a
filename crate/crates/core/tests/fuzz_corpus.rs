//! Replays the checked-in fuzz corpus, plus single-bit flips and truncations
//! of every seed, through the same checks the fuzz targets make. Runs on the
//! stable toolchain without libFuzzer. Seeds named `regress_*` are inputs
//! that once crashed a target and are expected to be rejected.

use std::fs;
use std::path::PathBuf;

use zz_core::codec::*;
use zz_core::volume_io::*;

fn corpus(target: &str) -> Vec<Vec<u8>> {
    corpus_files(target)
        .into_iter()
        .map(|(_, bytes)| bytes)
        .collect()
}

/// Seeds that are well-formed inputs.
fn valid_seeds(target: &str) -> Vec<Vec<u8>> {
    corpus_files(target)
        .into_iter()
        .filter(|(name, _)| !name.starts_with("regress_"))
        .map(|(_, bytes)| bytes)
        .collect()
}

fn corpus_files(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty(), "empty corpus for {target}");
    files
        .iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read(p).unwrap())
        })
        .collect()
}

/// The seed itself, every single-bit flip, and every proper prefix.
fn mutations(seed: &[u8]) -> impl Iterator<Item = Vec<u8>> + '_ {
    let flips = (0..seed.len() * 8).map(move |bit| {
        let mut m = seed.to_vec();
        m[bit / 8] ^= 0x80 >> (bit % 8);
        m
    });
    let cuts = (0..seed.len()).map(move |n| seed[..n].to_vec());
    std::iter::once(seed.to_vec()).chain(flips).chain(cuts)
}

fn check_decode_stream(data: &[u8]) {
    if let Ok(volume) = decode_volume(data) {
        let header = StreamHeader::parse(data).unwrap();
        assert_eq!(
            volume.dims(),
            (
                header.rows as usize,
                header.cols as usize,
                header.bands as usize
            )
        );
        let again = encode_volume(&volume, &header.config).unwrap();
        assert_eq!(decode_volume(&again).unwrap().dims(), volume.dims());
    }
}

fn check_read_vol(data: &[u8]) {
    if let Ok(v) = read_vol(data) {
        assert_eq!(write_vol(&v), data);
    }
}

fn check_decode_pgm(data: &[u8]) {
    if let Ok(frame) = decode_pgm("fuzz", data) {
        assert_eq!(frame.samples.len(), frame.rows * frame.cols);
        let canonical = encode_pgm(frame.rows, frame.cols, &frame.samples);
        assert_eq!(decode_pgm("canonical", &canonical).unwrap(), frame);
    }
}

fn check_read_symbols(data: &[u8]) {
    let [count, side, payload @ ..] = data else {
        return;
    };
    let side = [2usize, 4, 8, 16][(*side % 4) as usize];
    let volume = side * side * side;
    if let Ok(blocks) = read_symbols(payload, *count as usize, volume) {
        for b in &blocks {
            rle_decode(b, volume).unwrap();
        }
        assert_eq!(write_symbols(&blocks).as_bytes(), payload);
    }
}

fn check_stream_header(data: &[u8]) {
    if let Ok(h) = StreamHeader::parse(data) {
        assert_eq!(&h.to_bytes()[..], &data[..HEADER_LEN]);
    }
}

fn replay(target: &str, check: fn(&[u8])) -> usize {
    let mut runs = 0;
    for seed in corpus(target) {
        for m in mutations(&seed) {
            check(&m);
            runs += 1;
        }
    }
    runs
}

#[test]
fn seeds_are_valid_inputs() {
    for s in valid_seeds("decode_stream") {
        decode_volume(&s).unwrap();
    }
    for s in valid_seeds("read_vol") {
        read_vol(&s).unwrap();
    }
    for s in valid_seeds("decode_pgm") {
        decode_pgm("seed", &s).unwrap();
    }
    for s in valid_seeds("stream_header") {
        StreamHeader::parse(&s).unwrap();
    }
    for s in valid_seeds("read_symbols") {
        let side = [2usize, 4, 8, 16][(s[1] % 4) as usize];
        read_symbols(&s[2..], s[0] as usize, side.pow(3)).unwrap();
    }
}

#[test]
fn decode_stream_mutations() {
    assert!(replay("decode_stream", check_decode_stream) > 1000);
}

#[test]
fn regression_seeds_are_rejected() {
    let regress: Vec<_> = corpus_files("read_vol")
        .into_iter()
        .filter(|(name, _)| name.starts_with("regress_"))
        .collect();
    assert!(!regress.is_empty());
    for (name, bytes) in regress {
        assert!(read_vol(&bytes).is_err(), "{name}");
    }
}

#[test]
fn read_vol_mutations() {
    replay("read_vol", check_read_vol);
}

#[test]
fn decode_pgm_mutations() {
    replay("decode_pgm", check_decode_pgm);
}

#[test]
fn read_symbols_mutations() {
    replay("read_symbols", check_read_symbols);
}

#[test]
fn stream_header_mutations() {
    replay("stream_header", check_stream_header);
}
