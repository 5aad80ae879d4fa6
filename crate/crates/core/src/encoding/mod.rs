//! Bit strings and the self-delimiting codes used in advice.
//!
//! Every code is most-significant-bit first. `concat` doubles each bit and
//! separates parts with `01`, so any sequence of parts can be recovered.

mod advice;
mod tree;

pub use advice::{
    decode_advice, decode_nested_list, decode_trie, encode_advice, encode_nested_list,
    encode_trie, read_advice_file, write_advice_file, AdviceFormat, DecodedAdvice,
};
pub use tree::{decode_labeled_tree, encode_labeled_tree, PortTree, TreeNode, UpLink};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error("malformed: {0}")]
    Malformed(String),
}

pub(crate) fn malformed(msg: impl Into<String>) -> EncodingError {
    EncodingError::Malformed(msg.into())
}

/// An ordered sequence of bits.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        BitString(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn append(&mut self, other: &BitString) {
        self.0.extend_from_slice(&other.0);
    }

    /// Hex digits, four bits per digit, the last digit padded with zeros.
    pub fn to_hex(&self) -> String {
        self.0
            .chunks(4)
            .map(|c| {
                let v = c
                    .iter()
                    .chain(std::iter::repeat(&false))
                    .take(4)
                    .fold(0u32, |acc, &b| (acc << 1) | b as u32);
                char::from_digit(v, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(hex: &str, len: usize) -> Result<Self, EncodingError> {
        if hex.len() != len.div_ceil(4) {
            return Err(malformed(format!(
                "{} hex digits cannot hold exactly {len} bits",
                hex.len()
            )));
        }
        let mut bits = Vec::with_capacity(hex.len() * 4);
        for ch in hex.chars() {
            let v = ch
                .to_digit(16)
                .ok_or_else(|| malformed(format!("bad hex digit `{ch}`")))?;
            for shift in (0..4).rev() {
                bits.push(v >> shift & 1 == 1);
            }
        }
        if bits[len..].iter().any(|&b| b) {
            return Err(malformed("nonzero hex padding"));
        }
        bits.truncate(len);
        Ok(BitString(bits))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = EncodingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(malformed(format!("`{other}` is not a bit"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }
}

/// Doubles every bit of every part and puts `01` between consecutive parts.
pub fn concat<I, B>(parts: I) -> BitString
where
    I: IntoIterator<Item = B>,
    B: AsRef<BitString>,
{
    let mut out = Vec::new();
    for (i, part) in parts.into_iter().enumerate() {
        if i > 0 {
            out.extend([false, true]);
        }
        for &b in part.as_ref().bits() {
            out.extend([b, b]);
        }
    }
    BitString(out)
}

impl AsRef<BitString> for BitString {
    fn as_ref(&self) -> &BitString {
        self
    }
}

/// Inverse of [`concat`]. The empty string decodes to a single empty part.
pub fn decode(s: &BitString) -> Result<Vec<BitString>, EncodingError> {
    let bits = s.bits();
    if !bits.len().is_multiple_of(2) {
        return Err(malformed("odd number of bits in a concatenation"));
    }
    let mut parts = vec![BitString::new()];
    for (i, pair) in bits.chunks(2).enumerate() {
        match (pair[0], pair[1]) {
            (false, false) => parts.last_mut().unwrap().push(false),
            (true, true) => parts.last_mut().unwrap().push(true),
            (false, true) => parts.push(BitString::new()),
            (true, false) => {
                return Err(malformed(format!("`10` at bit offset {}", 2 * i)));
            }
        }
    }
    Ok(parts)
}

/// Binary representation, most significant bit first; `bin(0)` is `0`.
pub fn bin_int(x: u64) -> BitString {
    if x == 0 {
        return BitString(vec![false]);
    }
    let width = 64 - x.leading_zeros();
    BitString((0..width).rev().map(|i| x >> i & 1 == 1).collect())
}

/// Inverse of [`bin_int`]; only canonical codes (no leading zeros) are accepted.
pub fn parse_int(s: &BitString) -> Result<u64, EncodingError> {
    let bits = s.bits();
    match bits {
        [] => Err(malformed("empty integer code")),
        [false] => Ok(0),
        [false, ..] => Err(malformed("integer code with a leading zero")),
        _ if bits.len() > 64 => Err(malformed("integer code wider than 64 bits")),
        _ => Ok(bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)),
    }
}

/// Concatenation of integer codes.
pub fn concat_ints(xs: &[u64]) -> BitString {
    concat(xs.iter().map(|&x| bin_int(x)))
}

/// Splits `s` into integers; the empty string decodes to the empty list.
pub fn decode_ints(s: &BitString) -> Result<Vec<u64>, EncodingError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    decode(s)?.iter().map(parse_int).collect()
}

/// Decodes exactly `k` parts.
pub(crate) fn decode_exact(s: &BitString, k: usize, what: &str) -> Result<Vec<BitString>, EncodingError> {
    let parts = decode(s)?;
    if parts.len() != k {
        return Err(malformed(format!(
            "{what}: expected {k} parts, found {}",
            parts.len()
        )));
    }
    Ok(parts)
}
