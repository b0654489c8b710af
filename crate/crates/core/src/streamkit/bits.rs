//! Bit-granular canonical encoding used to measure algorithm state.
//!
//! The format is self-delimiting: unsigned integers are LEB128-style groups of
//! seven payload bits plus a continuation bit, big integers carry a
//! varint bit-length prefix, and coordinates are a numerator followed by an
//! optional denominator.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::geometry::{Coord, Interval, UnitRect};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("unexpected end of input at bit {0}")]
    Truncated(u64),
    #[error("varint longer than 64 bits at bit {0}")]
    VarintOverflow(u64),
    #[error("malformed value at bit {at}: {what}")]
    Malformed { at: u64, what: &'static str },
}

#[derive(Default, Clone, Debug)]
pub struct BitWriter {
    bytes: Vec<u8>,
    len: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len_bits(&self) -> u64 {
        self.len
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn write_bit(&mut self, bit: bool) {
        let offset = (self.len % 8) as u8;
        if offset == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().expect("byte pushed above") |= 1 << offset;
        }
        self.len += 1;
    }

    /// Writes the low `width` bits of `value`, least significant first.
    pub fn write_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        for i in 0..width {
            self.write_bit((value >> i) & 1 == 1);
        }
    }

    pub fn write_varint(&mut self, mut value: u64) {
        loop {
            let group = value & 0x7f;
            value >>= 7;
            self.write_bits(group, 7);
            self.write_bit(value != 0);
            if value == 0 {
                break;
            }
        }
    }

    pub fn write_biguint(&mut self, value: &BigUint) {
        let bits = value.bits();
        self.write_varint(bits);
        for i in 0..bits {
            self.write_bit(value.bit(i));
        }
    }

    /// Sign bit, then the magnitude.
    pub fn write_bigint(&mut self, value: &BigInt) {
        self.write_bit(value.sign() == Sign::Minus);
        self.write_biguint(value.magnitude());
    }

    pub fn write_coord(&mut self, c: &Coord) {
        self.write_bigint(c.numer());
        let integral = c.denom().is_one();
        self.write_bit(!integral);
        if !integral {
            self.write_biguint(c.denom().magnitude());
        }
    }
}

pub struct BitReader<'a> {
    bytes: &'a [u8],
    len: u64,
    pos: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(writer: &'a BitWriter) -> Self {
        BitReader { bytes: &writer.bytes, len: writer.len, pos: 0 }
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn is_exhausted(&self) -> bool {
        self.pos == self.len
    }

    pub fn read_bit(&mut self) -> Result<bool, DecodeError> {
        if self.pos >= self.len {
            return Err(DecodeError::Truncated(self.pos));
        }
        let byte = self.bytes[(self.pos / 8) as usize];
        let bit = (byte >> (self.pos % 8)) & 1 == 1;
        self.pos += 1;
        Ok(bit)
    }

    pub fn read_bits(&mut self, width: u32) -> Result<u64, DecodeError> {
        let mut value = 0u64;
        for i in 0..width {
            if self.read_bit()? {
                value |= 1 << i;
            }
        }
        Ok(value)
    }

    pub fn read_varint(&mut self) -> Result<u64, DecodeError> {
        let start = self.pos;
        let mut value = 0u64;
        let mut shift = 0u32;
        loop {
            let group = self.read_bits(7)?;
            if shift >= 64 || (shift == 63 && group > 1) {
                return Err(DecodeError::VarintOverflow(start));
            }
            value |= group << shift;
            shift += 7;
            if !self.read_bit()? {
                return Ok(value);
            }
        }
    }

    pub fn read_biguint(&mut self) -> Result<BigUint, DecodeError> {
        let bits = self.read_varint()?;
        let mut value = BigUint::zero();
        for i in 0..bits {
            if self.read_bit()? {
                value.set_bit(i, true);
            }
        }
        Ok(value)
    }

    pub fn read_bigint(&mut self) -> Result<BigInt, DecodeError> {
        let negative = self.read_bit()?;
        let magnitude = self.read_biguint()?;
        let sign = if magnitude.is_zero() {
            Sign::NoSign
        } else if negative {
            Sign::Minus
        } else {
            Sign::Plus
        };
        Ok(BigInt::from_biguint(sign, magnitude))
    }

    pub fn read_coord(&mut self) -> Result<Coord, DecodeError> {
        let at = self.pos;
        let numer = self.read_bigint()?;
        if !self.read_bit()? {
            return Ok(Coord::from_integer(numer));
        }
        let denom = self.read_biguint()?;
        Coord::ratio(numer, BigInt::from(denom)).map_err(|_| DecodeError::Malformed { at, what: "zero denominator" })
    }
}

/// Canonical binary form of a stored value.
pub trait Encode {
    fn encode(&self, out: &mut BitWriter);

    fn encoded_bits(&self) -> u64 {
        let mut w = BitWriter::new();
        self.encode(&mut w);
        w.len_bits()
    }
}

pub trait Decode: Sized {
    fn decode(input: &mut BitReader<'_>) -> Result<Self, DecodeError>;
}

impl Encode for () {
    fn encode(&self, _out: &mut BitWriter) {}
}

impl Decode for () {
    fn decode(_input: &mut BitReader<'_>) -> Result<Self, DecodeError> {
        Ok(())
    }
}

impl Encode for Coord {
    fn encode(&self, out: &mut BitWriter) {
        out.write_coord(self);
    }
}

impl Decode for Coord {
    fn decode(input: &mut BitReader<'_>) -> Result<Self, DecodeError> {
        input.read_coord()
    }
}

impl Encode for Interval {
    fn encode(&self, out: &mut BitWriter) {
        out.write_coord(self.lo());
        out.write_coord(self.hi());
    }
}

impl Decode for Interval {
    fn decode(input: &mut BitReader<'_>) -> Result<Self, DecodeError> {
        let at = input.position();
        let lo = input.read_coord()?;
        let hi = input.read_coord()?;
        Interval::new(lo, hi).map_err(|_| DecodeError::Malformed { at, what: "inverted interval" })
    }
}

impl Encode for UnitRect {
    fn encode(&self, out: &mut BitWriter) {
        self.x.encode(out);
        out.write_coord(&self.y_bottom);
    }
}

impl Decode for UnitRect {
    fn decode(input: &mut BitReader<'_>) -> Result<Self, DecodeError> {
        let x = Interval::decode(input)?;
        let y = input.read_coord()?;
        Ok(UnitRect::new(x, y))
    }
}

/// Width in bits of the smallest field that holds every value in `0..=max`.
pub fn bit_width(max: u64) -> u32 {
    64 - max.leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn varint_sizes() {
        let bits = |v: u64| {
            let mut w = BitWriter::new();
            w.write_varint(v);
            w.len_bits()
        };
        assert_eq!(bits(0), 8);
        assert_eq!(bits(127), 8);
        assert_eq!(bits(128), 16);
        assert_eq!(bits(u64::MAX), 80);
    }

    #[test]
    fn integer_coord_is_compact() {
        // sign + varint(len=3) + 3 magnitude bits + integral flag
        assert_eq!(Coord::from(5).encoded_bits(), 1 + 8 + 3 + 1);
        assert_eq!(Coord::zero().encoded_bits(), 1 + 8 + 1);
    }

    #[test]
    fn bit_width_matches_log2() {
        assert_eq!(bit_width(0), 0);
        assert_eq!(bit_width(1), 1);
        assert_eq!(bit_width(2), 2);
        assert_eq!(bit_width(3), 2);
        assert_eq!(bit_width(4), 3);
        for m in 1u64..2000 {
            assert_eq!(bit_width(m) as f64, ((m + 1) as f64).log2().ceil());
        }
    }

    #[test]
    fn truncated_input_is_reported() {
        let mut w = BitWriter::new();
        w.write_varint(300);
        let mut r = BitReader::new(&w);
        let mut short = BitWriter::new();
        for _ in 0..10 {
            short.write_bit(r.read_bit().unwrap());
        }
        let mut r = BitReader::new(&short);
        assert!(matches!(r.read_varint(), Err(DecodeError::Truncated(_))));
    }

    proptest! {
        #[test]
        fn mixed_values_round_trip(v in any::<u64>(), n in any::<i64>(), p in any::<i32>(), d in 1i32..i32::MAX, width in 0u32..=64) {
            let big = BigInt::from(n) * BigInt::from(n) * BigInt::from(p);
            let c = Coord::ratio(p, d).unwrap();
            let masked = if width == 64 { v } else { v & ((1u64 << width) - 1) };
            let mut w = BitWriter::new();
            w.write_varint(v);
            w.write_bits(masked, width);
            w.write_bigint(&big);
            w.write_coord(&c);
            let mut r = BitReader::new(&w);
            prop_assert_eq!(r.read_varint().unwrap(), v);
            prop_assert_eq!(r.read_bits(width).unwrap(), masked);
            prop_assert_eq!(r.read_bigint().unwrap(), big);
            prop_assert_eq!(r.read_coord().unwrap(), c);
            prop_assert!(r.is_exhausted());
        }
    }
}
