//! Fixed-width bit-string labels and the prefix/suffix primitives.
//!
//! A [`Label`] of width `n` stores its bits in the low `n` bits of a `u64`.
//! The first written character is the most significant of those bits, so the
//! lexicographic rank of a label equals its integer value.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Smallest supported label width.
pub const MIN_WIDTH: u32 = 2;
/// Largest supported label width.
pub const MAX_WIDTH: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("label width {0} outside supported range {MIN_WIDTH}..={MAX_WIDTH}")]
    WidthOutOfRange(u32),
    #[error("expected {expected} characters, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("illegal character {ch:?} at position {pos}; labels use only '0' and '1'")]
    IllegalChar { ch: char, pos: usize },
    #[error("width mismatch: {0} vs {1}")]
    WidthMismatch(u32, u32),
    #[error("value {bits} does not fit in {width} bits")]
    ValueTooLarge { bits: u64, width: u32 },
}

/// An `n`-bit binary string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    width: u32,
    bits: u64,
}

/// Which of the two trees a leaf position refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LeafOrder {
    /// Lexicographic order.
    Prefix,
    /// Co-lexicographic order.
    Suffix,
}

impl LeafOrder {
    pub const ALL: [LeafOrder; 2] = [LeafOrder::Prefix, LeafOrder::Suffix];

    pub fn as_str(self) -> &'static str {
        match self {
            LeafOrder::Prefix => "prefix",
            LeafOrder::Suffix => "suffix",
        }
    }
}

impl fmt::Display for LeafOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LeafOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prefix" => Ok(LeafOrder::Prefix),
            "suffix" => Ok(LeafOrder::Suffix),
            other => Err(format!(
                "unknown leaf order {other:?} (expected prefix or suffix)"
            )),
        }
    }
}

#[inline]
fn mask(width: u32) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

pub(crate) fn check_width(width: u32) -> Result<(), LabelError> {
    if (MIN_WIDTH..=MAX_WIDTH).contains(&width) {
        Ok(())
    } else {
        Err(LabelError::WidthOutOfRange(width))
    }
}

impl Label {
    pub fn new(width: u32, bits: u64) -> Result<Self, LabelError> {
        check_width(width)?;
        if bits & !mask(width) != 0 {
            return Err(LabelError::ValueTooLarge { bits, width });
        }
        Ok(Label { width, bits })
    }

    /// Caller guarantees `bits < 2^width` and a supported width.
    #[inline]
    pub(crate) fn from_raw(width: u32, bits: u64) -> Self {
        debug_assert!(bits & !mask(width) == 0);
        Label { width, bits }
    }

    pub fn zero(width: u32) -> Result<Self, LabelError> {
        Label::new(width, 0)
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    fn same_width(&self, other: &Label) -> Result<(), LabelError> {
        if self.width == other.width {
            Ok(())
        } else {
            Err(LabelError::WidthMismatch(self.width, other.width))
        }
    }

    /// Length of the longest common prefix, counted from the first character.
    pub fn lcp(&self, other: &Label) -> Result<u32, LabelError> {
        self.same_width(other)?;
        Ok(lcp_raw(self.width, self.bits, other.bits))
    }

    /// Length of the longest common suffix, counted from the last character.
    pub fn lcs(&self, other: &Label) -> Result<u32, LabelError> {
        self.same_width(other)?;
        Ok(lcs_raw(self.width, self.bits, other.bits))
    }

    pub fn xor(&self, other: &Label) -> Result<Label, LabelError> {
        self.same_width(other)?;
        Ok(Label::from_raw(self.width, self.bits ^ other.bits))
    }

    /// The same string written backwards.
    pub fn reverse(&self) -> Label {
        Label::from_raw(self.width, reverse_raw(self.width, self.bits))
    }

    /// Zero-based left-to-right leaf position in the tree of the given order.
    pub fn leaf_index(&self, order: LeafOrder) -> u64 {
        match order {
            LeafOrder::Prefix => self.bits,
            LeafOrder::Suffix => reverse_raw(self.width, self.bits),
        }
    }

    /// Inverse of [`Label::leaf_index`].
    pub fn at_leaf_index(width: u32, order: LeafOrder, index: u64) -> Result<Label, LabelError> {
        let l = Label::new(width, index)?;
        Ok(match order {
            LeafOrder::Prefix => l,
            LeafOrder::Suffix => l.reverse(),
        })
    }
}

#[inline]
pub(crate) fn lcp_raw(width: u32, a: u64, b: u64) -> u32 {
    let d = a ^ b;
    if d == 0 {
        width
    } else {
        d.leading_zeros() - (64 - width)
    }
}

#[inline]
pub(crate) fn lcs_raw(width: u32, a: u64, b: u64) -> u32 {
    let d = a ^ b;
    if d == 0 {
        width
    } else {
        d.trailing_zeros()
    }
}

#[inline]
pub(crate) fn reverse_raw(width: u32, bits: u64) -> u64 {
    bits.reverse_bits() >> (64 - width)
}

/// Parses a label of exactly `n` characters over `{0,1}`.
pub fn parse_label(text: &str, n: u32) -> Result<Label, LabelError> {
    check_width(n)?;
    let len = text.chars().count();
    if len != n as usize {
        return Err(LabelError::WrongLength {
            expected: n as usize,
            found: len,
        });
    }
    let mut bits = 0u64;
    for (pos, ch) in text.chars().enumerate() {
        let b = match ch {
            '0' => 0,
            '1' => 1,
            _ => return Err(LabelError::IllegalChar { ch, pos }),
        };
        bits = (bits << 1) | b;
    }
    Ok(Label::from_raw(n, bits))
}

impl FromStr for Label {
    type Err = LabelError;

    /// Width taken from the text length.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_label(s, s.chars().count() as u32)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.width).rev() {
            f.write_str(if (self.bits >> i) & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}
