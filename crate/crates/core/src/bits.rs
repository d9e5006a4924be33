//! Fixed-width bit strings used for packet headers and failure instances.
//!
//! Bit `i` is qubit `i` and the `i`-th least significant bit of the value.
//! Strings print the highest bit first, so bit `i` sits at position `i` from
//! the right (`x2 x1 x0`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_BITS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    width: u8,
    value: u64,
}

/// A packet header on the data plane.
pub type Header = Bits;
/// Link states on the control plane; bit `i` is 1 when edge `i` is operational.
pub type FailureInstance = Bits;

impl Bits {
    pub fn new(width: usize, value: u64) -> Result<Self> {
        if width > MAX_BITS {
            return Err(Error::ResourceLimit {
                what: "bit string",
                requested: width,
                limit: MAX_BITS,
            });
        }
        if value >> width != 0 {
            return Err(Error::InvalidArgument(format!(
                "value {value} does not fit in {width} bits"
            )));
        }
        Ok(Self {
            width: width as u8,
            value,
        })
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.value >> i) & 1 == 1
    }

    pub fn count_ones(&self) -> u32 {
        self.value.count_ones()
    }

    pub fn count_zeros(&self) -> u32 {
        self.width as u32 - self.value.count_ones()
    }

    pub fn check_width(&self, expected: usize) -> Result<()> {
        if self.width() != expected {
            return Err(Error::WidthMismatch {
                expected,
                found: self.width(),
            });
        }
        Ok(())
    }
}

/// Renders `value` as a `width`-character string, highest bit first.
pub fn format_bits(value: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|i| if (value >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_bits(self.value, self.width()))
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_BITS {
            return Err(Error::ResourceLimit {
                what: "bit string",
                requested: s.len(),
                limit: MAX_BITS,
            });
        }
        let mut value = 0u64;
        for c in s.chars() {
            let bit = match c {
                '0' => 0,
                '1' => 1,
                _ => return Err(Error::InvalidPattern(s.to_string())),
            };
            value = (value << 1) | bit;
        }
        Bits::new(s.len(), value)
    }
}

impl Serialize for Bits {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
