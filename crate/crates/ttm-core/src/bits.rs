//! Fixed-width bit vectors over GF(2), packed into a single machine word.
//!
//! Index convention follows the usual circuit-diagram reading order: bit 0 is
//! the leftmost character of the binary string (the most significant bit of
//! the packed word), so `Bits::parse("1001")` has bit 0 and bit 3 set. All
//! widths up to 64 are supported.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// An `n`-bit vector, `1 <= n <= 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    word: u64,
    width: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BitsError {
    #[error("width {0} out of range (1..=64)")]
    Width(usize),
    #[error("invalid bit string {0:?}")]
    Parse(String),
}

impl Bits {
    pub fn zero(width: usize) -> Self {
        assert!((1..=64).contains(&width), "width {width} out of range");
        Bits {
            word: 0,
            width: width as u32,
        }
    }

    /// Builds from a packed word whose least significant bit is the
    /// *rightmost* position (so the word reads like the binary string).
    pub fn from_word(word: u64, width: usize) -> Self {
        let mut b = Bits::zero(width);
        b.word = word & b.mask();
        b
    }

    pub fn parse(s: &str) -> Result<Self, BitsError> {
        if s.is_empty() || s.len() > 64 {
            return Err(BitsError::Width(s.len()));
        }
        let mut word = 0u64;
        for c in s.chars() {
            word <<= 1;
            match c {
                '0' => {}
                '1' => word |= 1,
                _ => return Err(BitsError::Parse(s.to_string())),
            }
        }
        Ok(Bits {
            word,
            width: s.len() as u32,
        })
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn word(&self) -> u64 {
        self.word
    }

    fn mask(&self) -> u64 {
        if self.width == 64 {
            u64::MAX
        } else {
            (1 << self.width) - 1
        }
    }

    /// Bit at position `i`, counted from the left (0-based).
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.width as usize);
        (self.word >> (self.width as usize - 1 - i)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.width as usize);
        let bit = 1u64 << (self.width as usize - 1 - i);
        if v {
            self.word |= bit;
        } else {
            self.word &= !bit;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        let cur = self.get(i);
        self.set(i, !cur);
    }

    pub fn is_zero(&self) -> bool {
        self.word == 0
    }

    pub fn count_ones(&self) -> u32 {
        self.word.count_ones()
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.width, other.width);
        (self.word & other.word).count_ones() & 1 == 1
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.width, other.width);
        Bits {
            word: self.word ^ other.word,
            width: self.width,
        }
    }

    /// Positions (left-indexed) where `self` and `other` differ.
    pub fn diff_positions(&self, other: &Bits) -> Vec<usize> {
        (0..self.width as usize)
            .filter(|&i| self.get(i) != other.get(i))
            .collect()
    }

    /// Iterates all `2^width` vectors in increasing word order.
    pub fn all(width: usize) -> impl Iterator<Item = Bits> {
        assert!(width <= 32, "exhaustive iteration capped at 32 bits");
        (0..(1u64 << width)).map(move |w| Bits::from_word(w, width))
    }

    /// A unit vector with only position `i` set.
    pub fn unit(width: usize, i: usize) -> Bits {
        let mut b = Bits::zero(width);
        b.set(i, true);
        b
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width as usize {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

impl Serialize for Bits {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}
