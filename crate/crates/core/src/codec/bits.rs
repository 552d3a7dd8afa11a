//! MSB-first bit packing and Exp-Golomb codes.

use crate::error::{Error, Result, Stage};

/// Longest Exp-Golomb prefix accepted when reading; enough for any `u32`.
const MAX_LEADING_ZEROS: u32 = 32;

/// Append-only bit buffer, most significant bit of each byte first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitWriter {
    bytes: Vec<u8>,
    bit_len: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    pub fn write_bit(&mut self, bit: bool) {
        let used = self.bit_len % 8;
        if used == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().expect("byte pushed above") |= 0x80 >> used;
        }
        self.bit_len += 1;
    }

    /// Writes the low `count` bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, count: u32) {
        debug_assert!(count <= 64);
        for i in (0..count).rev() {
            self.write_bit((value >> i) & 1 == 1);
        }
    }

    /// Unsigned Exp-Golomb: `lz` zeros, then `value + 1` in `lz + 1` bits.
    pub fn write_ue(&mut self, value: u32) {
        let code = value as u64 + 1;
        let len = 64 - code.leading_zeros();
        self.write_bits(0, len - 1);
        self.write_bits(code, len);
    }

    /// Signed Exp-Golomb: `x > 0` maps to `2x - 1`, `x <= 0` to `-2x`.
    pub fn write_se(&mut self, value: i32) {
        let v = value as i64;
        let code_num = if v > 0 { 2 * v - 1 } else { -2 * v };
        // |i32::MIN| * 2 does not fit a u32 code number; callers never produce it.
        self.write_ue(u32::try_from(code_num).expect("signed value within code range"));
    }

    /// Bytes with the final partial byte zero-padded.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    /// The written bits as a `0`/`1` string.
    pub fn to_bit_string(&self) -> String {
        (0..self.bit_len)
            .map(|i| {
                if self.bytes[i / 8] & (0x80 >> (i % 8)) != 0 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        BitReader { bytes, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bytes.len() * 8 - self.pos
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        let byte = self
            .bytes
            .get(self.pos / 8)
            .ok_or_else(|| Error::corrupt(Stage::Entropy, "unexpected end of payload"))?;
        let bit = byte & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        Ok(bit)
    }

    pub fn read_bits(&mut self, count: u32) -> Result<u64> {
        debug_assert!(count <= 64);
        let mut v = 0u64;
        for _ in 0..count {
            v = (v << 1) | self.read_bit()? as u64;
        }
        Ok(v)
    }

    pub fn read_ue(&mut self) -> Result<u32> {
        let mut zeros = 0;
        while !self.read_bit()? {
            zeros += 1;
            if zeros > MAX_LEADING_ZEROS {
                return Err(Error::corrupt(Stage::Entropy, "Exp-Golomb prefix too long"));
            }
        }
        let suffix = self.read_bits(zeros)?;
        let value = ((1u64 << zeros) | suffix) - 1;
        u32::try_from(value)
            .map_err(|_| Error::corrupt(Stage::Entropy, "Exp-Golomb value out of range"))
    }

    pub fn read_se(&mut self) -> Result<i32> {
        let code_num = self.read_ue()? as i64;
        let v = if code_num % 2 == 1 {
            (code_num + 1) / 2
        } else {
            -(code_num / 2)
        };
        i32::try_from(v).map_err(|_| Error::corrupt(Stage::Entropy, "signed value out of range"))
    }

    /// Succeeds when only zero padding, shorter than a byte, is left.
    pub fn expect_padding(&mut self) -> Result<()> {
        let left = self.remaining();
        if left >= 8 {
            return Err(Error::corrupt(
                Stage::Entropy,
                format!("{left} unread bits after the last block"),
            ));
        }
        if self.read_bits(left as u32)? != 0 {
            return Err(Error::corrupt(Stage::Entropy, "non-zero padding bits"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ue(v: u32) -> String {
        let mut w = BitWriter::new();
        w.write_ue(v);
        w.to_bit_string()
    }

    fn se(v: i32) -> String {
        let mut w = BitWriter::new();
        w.write_se(v);
        w.to_bit_string()
    }

    #[test]
    fn unsigned_codes() {
        assert_eq!(ue(0), "1");
        assert_eq!(ue(1), "010");
        assert_eq!(ue(2), "011");
        assert_eq!(ue(4), "00101");
        assert_eq!(ue(9), "0001010");
    }

    #[test]
    fn signed_codes() {
        assert_eq!(se(0), "1");
        assert_eq!(se(1), "010");
        assert_eq!(se(-1), "011");
        assert_eq!(se(3), "00110");
        assert_eq!(se(5), "0001010");
    }

    #[test]
    fn extremes_round_trip() {
        let mut w = BitWriter::new();
        w.write_ue(u32::MAX);
        w.write_se(i32::MAX);
        w.write_se(i32::MIN + 1);
        let bytes = w.into_bytes();
        let mut r = BitReader::new(&bytes);
        assert_eq!(r.read_ue().unwrap(), u32::MAX);
        assert_eq!(r.read_se().unwrap(), i32::MAX);
        assert_eq!(r.read_se().unwrap(), i32::MIN + 1);
    }

    #[test]
    fn msb_first_packing() {
        let mut w = BitWriter::new();
        w.write_bits(0b101, 3);
        assert_eq!(w.as_bytes(), &[0b1010_0000]);
        w.write_bits(0xFF, 8);
        assert_eq!(w.as_bytes(), &[0b1011_1111, 0b1110_0000]);
        assert_eq!(w.bit_len(), 11);
    }

    #[test]
    fn truncated_and_overlong() {
        assert!(BitReader::new(&[0b0000_0000]).read_ue().is_err());
        assert!(BitReader::new(&[0; 8]).read_ue().is_err());
        // 33 zeros followed by a one: prefix longer than any u32 code.
        let mut w = BitWriter::new();
        w.write_bits(0, 33);
        w.write_bits(1, 1);
        w.write_bits(0, 33);
        assert!(BitReader::new(w.as_bytes()).read_ue().is_err());
    }

    #[test]
    fn padding_checks() {
        let mut r = BitReader::new(&[0b1000_0000]);
        assert_eq!(r.read_ue().unwrap(), 0);
        assert!(r.expect_padding().is_ok());

        let mut r = BitReader::new(&[0b1000_0001]);
        r.read_ue().unwrap();
        assert!(r.expect_padding().is_err());

        let mut r = BitReader::new(&[0b1000_0000, 0]);
        r.read_ue().unwrap();
        assert!(r.expect_padding().is_err());
    }
}
