use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Significand width, in bits, used for every floating-point computation.
///
/// Anything narrower than an IEEE double is rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const DOUBLE: Precision = Precision(53);
    pub const QUAD: Precision = Precision(113);
    const MAX_BITS: u32 = 1 << 16;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < 53 {
            return Err(Error::BadPrecision(bits));
        }
        if bits > Self::MAX_BITS {
            return Err(Error::BadParameter(format!(
                "precision {bits} exceeds the supported maximum of {} bits",
                Self::MAX_BITS
            )));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Same precision widened by `extra` guard bits.
    pub fn widened(self, extra: u32) -> Precision {
        Precision(self.0.saturating_add(extra))
    }

    /// Unit roundoff `2^-(bits-1)`, as an `f64` (underflows to zero for very wide settings).
    pub fn epsilon(self) -> f64 {
        2f64.powi(1 - self.0 as i32)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DOUBLE
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

impl FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: u32 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid precision '{s}'")))?;
        Precision::new(bits)
    }
}
