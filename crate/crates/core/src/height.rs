//! Fixed-point bar heights.
//!
//! Heights are stored as integer multiples of 10^-9 so that capacity checks are
//! exact integer comparisons. Decimal text is parsed digit by digit; anything
//! past the ninth fractional digit is rounded half-up.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};

use crate::error::{Error, Result};

/// Number of fixed-point units in one strip height.
pub const SCALE: u64 = 1_000_000_000;
const FRACTION_DIGITS: i32 = 9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Height(u64);

impl Height {
    pub const ZERO: Height = Height(0);
    /// The strip capacity (height 1 after normalization).
    pub const FULL: Height = Height(SCALE);
    pub const HALF: Height = Height(SCALE / 2);
    /// Smallest positive representable height.
    pub const EPSILON: Height = Height(1);

    pub const fn from_units(units: u64) -> Self {
        Height(units)
    }

    pub const fn units(self) -> u64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / SCALE as f64
    }

    /// Parses non-negative decimal text such as `0.6`, `1`, `2.5e-1`.
    pub fn parse(text: &str) -> Result<Self> {
        match parse_signed_units(text)? {
            u if u < 0 => Err(Error::InvalidDecimal(text.to_string())),
            u => u64::try_from(u).map(Height).map_err(|_| Error::InvalidDecimal(text.to_string())),
        }
    }

    /// Converts a binary float through its shortest round-trip decimal form,
    /// then rounds half-up to the fixed-point grid.
    pub fn from_f64(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidDecimal(value.to_string()));
        }
        Height::parse(&format!("{value:?}"))
    }

    pub fn is_big(self) -> bool {
        self > Height::HALF
    }

    pub fn saturating_sub(self, other: Height) -> Height {
        Height(self.0.saturating_sub(other.0))
    }

    /// `self / divisor` on the fixed-point grid, rounded half-up.
    pub fn scale_down(self, divisor: Height) -> Height {
        debug_assert!(divisor.0 > 0);
        let num = self.0 as u128 * SCALE as u128;
        let d = divisor.0 as u128;
        Height(((2 * num + d) / (2 * d)) as u64)
    }

    /// Smallest integer number of strip cells whose capacity covers `self`.
    pub fn ceil_cells(self) -> u32 {
        self.0.div_ceil(SCALE) as u32
    }
}

/// Parses decimal text into signed fixed-point units.
pub(crate) fn parse_signed_units(text: &str) -> Result<i128> {
    let bad = || Error::InvalidDecimal(text.to_string());
    let s = text.trim();
    let (negative, s) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }

    // value = digits * 10^(shift - 9) in units
    let digits: Vec<u8> = int_part.bytes().chain(frac_part.bytes()).map(|b| b - b'0').collect();
    let shift = FRACTION_DIGITS + exponent - frac_part.len() as i32;

    let mut units: i128 = 0;
    let keep = if shift >= 0 {
        digits.len()
    } else {
        let drop = (-shift) as usize;
        digits.len().saturating_sub(drop)
    };
    for &d in &digits[..keep] {
        units = units.checked_mul(10).and_then(|u| u.checked_add(d as i128)).ok_or_else(bad)?;
    }
    if shift > 0 {
        for _ in 0..shift {
            units = units.checked_mul(10).ok_or_else(bad)?;
        }
    } else if shift < 0 {
        let drop = (-shift) as usize;
        // first dropped digit decides the rounding; a missing digit counts as 0
        let first_dropped = if drop <= digits.len() { digits.get(keep).copied().unwrap_or(0) } else { 0 };
        if first_dropped >= 5 {
            units += 1;
        }
    }
    Ok(if negative { -units } else { units })
}

impl Add for Height {
    type Output = Height;
    fn add(self, rhs: Height) -> Height {
        Height(self.0 + rhs.0)
    }
}

impl AddAssign for Height {
    fn add_assign(&mut self, rhs: Height) {
        self.0 += rhs.0;
    }
}

impl Sub for Height {
    type Output = Height;
    fn sub(self, rhs: Height) -> Height {
        Height(self.0 - rhs.0)
    }
}

impl Sum for Height {
    fn sum<I: Iterator<Item = Height>>(iter: I) -> Height {
        iter.fold(Height::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Height> for Height {
    fn sum<I: Iterator<Item = &'a Height>>(iter: I) -> Height {
        iter.copied().sum()
    }
}

/// Shortest exact decimal form, e.g. `0.6`, `1`, `0.000000001`.
impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int = self.0 / SCALE;
        let frac = self.0 % SCALE;
        if frac == 0 {
            write!(f, "{int}")
        } else {
            let digits = format!("{frac:09}");
            write!(f, "{int}.{}", digits.trim_end_matches('0'))
        }
    }
}
