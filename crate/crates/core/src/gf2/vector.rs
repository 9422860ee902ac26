use std::fmt;
use std::ops::{Add, AddAssign};

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

pub(crate) type Words = SmallVec<[u64; 2]>;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A vector over GF(2), packed least-significant-bit first.
///
/// Coordinate `j` (zero-based) lives at bit `j % 64` of word `j / 64`.
/// Bits past `len` are always zero, so derived equality and hashing are
/// bitwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Vector {
    len: usize,
    words: Words,
}

impl GF2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: smallvec![0; words_for(len)],
        }
    }

    /// The standard basis vector `e_i` (zero-based).
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.mask_tail();
        v
    }

    /// Builds a vector of length `len <= 64` from the low bits of `bits`.
    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!(len <= 64, "from_u64 needs len <= 64, got {len}");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = bits;
            v.mask_tail();
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: &[u64]) -> Self {
        let n = words_for(len);
        let mut v = Self {
            len,
            words: words[..n].iter().copied().collect(),
        };
        v.mask_tail();
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub(crate) fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot: length mismatch");
        let parity = self
            .words
            .iter()
            .zip(other.words.iter())
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
        parity & 1 == 1
    }

    /// Index of the lowest set coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Indices of set coordinates in ascending order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// The packed value of a vector with `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64, "to_u64 needs len <= 64, got {}", self.len);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = Self::zeros(self.len + other.len);
        for i in self.ones_iter() {
            v.set(i, true);
        }
        for i in other.ones_iter() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Keeps the coordinates listed in `coords`, in that order.
    pub fn select(&self, coords: &[usize]) -> Self {
        let mut v = Self::zeros(coords.len());
        for (dst, &src) in coords.iter().enumerate() {
            if self.get(src) {
                v.set(dst, true);
            }
        }
        v
    }

    /// Coordinates `start..start+len`.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len, "slice out of range");
        let mut v = Self::zeros(len);
        for i in self.ones_iter() {
            if i >= start && i < start + len {
                v.set(i - start, true);
            }
        }
        v
    }

    /// Parses a bitstring `b1b2...bn` (first character is coordinate 1), or a
    /// `0x` hex literal whose integer value has bit `j` equal to coordinate
    /// `j + 1`. Hex literals need `len`.
    pub fn parse_literal(s: &str, len: Option<usize>) -> Result<Self> {
        let s = s.trim();
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            let len = len.ok_or_else(|| {
                Error::format(0, format!("hex literal {s:?} needs an explicit length"))
            })?;
            return Self::from_hex(hex, len);
        }
        if s.is_empty() && len.unwrap_or(0) != 0 {
            return Err(Error::format(0, "empty bitstring"));
        }
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Error::format(0, format!("invalid bit {c:?} in {s:?}"))),
            }
        }
        if let Some(n) = len {
            if n != v.len {
                return Err(Error::format(
                    0,
                    format!("bitstring {s:?} has length {}, expected {n}", v.len),
                ));
            }
        }
        Ok(v)
    }

    /// Parses hex digits (no prefix) as a little-endian packed vector.
    pub fn from_hex(hex: &str, len: usize) -> Result<Self> {
        let mut v = Self::zeros(len);
        let digits: Vec<char> = hex.chars().collect();
        if digits.is_empty() {
            return Err(Error::format(0, "empty hex literal"));
        }
        for (pos, c) in digits.iter().rev().enumerate() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| Error::format(0, format!("invalid hex digit {c:?}")))?;
            for b in 0..4 {
                if (d >> b) & 1 == 1 {
                    let bit = pos * 4 + b;
                    if bit >= len {
                        return Err(Error::format(
                            0,
                            format!("hex literal {hex:?} exceeds length {len}"),
                        ));
                    }
                    v.set(bit, true);
                }
            }
        }
        Ok(v)
    }

    /// Hex rendering with `max(1, ceil(len/4))` digits, no prefix.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        let mut out = String::with_capacity(digits);
        for pos in (0..digits).rev() {
            let mut d = 0u32;
            for b in 0..4 {
                let bit = pos * 4 + b;
                if bit < self.len && self.get(bit) {
                    d |= 1 << b;
                }
            }
            out.push(std::char::from_digit(d, 16).unwrap());
        }
        out
    }
}

impl Add for &GF2Vector {
    type Output = GF2Vector;
    fn add(self, rhs: &GF2Vector) -> GF2Vector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for GF2Vector {
    type Output = GF2Vector;
    fn add(mut self, rhs: GF2Vector) -> GF2Vector {
        self += &rhs;
        self
    }
}

impl AddAssign<&GF2Vector> for GF2Vector {
    fn add_assign(&mut self, rhs: &GF2Vector) {
        assert_eq!(
            self.len, rhs.len,
            "vector length mismatch ({} vs {})",
            self.len, rhs.len
        );
        for (a, b) in self.words.iter_mut().zip(rhs.words.iter()) {
            *a ^= b;
        }
    }
}

impl fmt::Display for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Vector({self})")
    }
}

impl std::str::FromStr for GF2Vector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_literal(s, None)
    }
}
