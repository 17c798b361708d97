//! Exact decimal numbers for vertex coordinates.
//!
//! Coordinates are presentation metadata only; the math core never touches
//! them. They are kept exact (an integer mantissa over a power of ten) so
//! that chart files round-trip byte-identically.

use std::fmt;
use std::str::FromStr;

/// A decimal rational `mantissa / 10^scale`, normalized so that the mantissa
/// is not divisible by 10 unless it is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dec {
    mantissa: i128,
    scale: u32,
}

impl Dec {
    pub fn new(mantissa: i128, scale: u32) -> Self {
        let mut d = Dec { mantissa, scale };
        d.normalize();
        d
    }

    pub fn from_int(v: i64) -> Self {
        Dec::new(v as i128, 0)
    }

    /// Value as `mantissa / 10^scale`.
    pub fn parts(&self) -> (i128, u32) {
        (self.mantissa, self.scale)
    }

    pub fn to_f64(&self) -> f64 {
        self.mantissa as f64 / 10f64.powi(self.scale as i32)
    }

    fn normalize(&mut self) {
        if self.mantissa == 0 {
            self.scale = 0;
            return;
        }
        while self.scale > 0 && self.mantissa % 10 == 0 {
            self.mantissa /= 10;
            self.scale -= 1;
        }
    }
}

impl fmt::Display for Dec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.mantissa);
        }
        let sign = if self.mantissa < 0 { "-" } else { "" };
        let abs = self.mantissa.unsigned_abs();
        let pow = 10u128.pow(self.scale);
        let int = abs / pow;
        let frac = abs % pow;
        write!(f, "{}{}.{:0width$}", sign, int, frac, width = self.scale as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDecError(pub String);

impl fmt::Display for ParseDecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid decimal `{}`", self.0)
    }
}

impl std::error::Error for ParseDecError {}

impl FromStr for Dec {
    type Err = ParseDecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseDecError(s.to_string());
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        if body.is_empty() {
            return Err(err());
        }
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() || body.contains('.') && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(err());
        }
        if frac_part.len() > 18 || int_part.len() > 18 {
            return Err(err());
        }
        let mut mantissa: i128 = int_part.parse().map_err(|_| err())?;
        for b in frac_part.bytes() {
            mantissa = mantissa * 10 + (b - b'0') as i128;
        }
        if neg {
            mantissa = -mantissa;
        }
        Ok(Dec::new(mantissa, frac_part.len() as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "1", "-1", "2.5", "-0.25", "10", "123.456"] {
            let d: Dec = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
    }

    #[test]
    fn normalizes_trailing_zeros() {
        let d: Dec = "2.50".parse().unwrap();
        assert_eq!(d.to_string(), "2.5");
        assert_eq!(d, "2.5".parse().unwrap());
        let z: Dec = "-0.0".parse().unwrap();
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "-", "1.", ".5", "1.2.3", "a", "1e3", "--2"] {
            assert!(s.parse::<Dec>().is_err(), "should reject {s:?}");
        }
    }
}
