//! The grading group ℤ₂ and Koszul signs.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::solver::Q;

/// A ℤ₂-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub const ALL: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn from_bit(bit: u8) -> Option<Parity> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn index(self) -> usize {
        self.bit() as usize
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^(self * other)` as an integer.
    pub fn koszul(self, other: Parity) -> i32 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }

    /// `(-1)^(self * other)` as a rational.
    pub fn sign(self, other: Parity) -> Q {
        Q::from_integer(self.koszul(other) as i128)
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.bit())
    }
}

impl<'de> Deserialize<'de> for Parity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let bit = u8::deserialize(d)?;
        Parity::from_bit(bit)
            .ok_or_else(|| serde::de::Error::custom(format!("degree must be 0 or 1, got {bit}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addition_is_xor() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd + Parity::Even, Parity::Odd);
        assert_eq!(Parity::Even + Parity::Even, Parity::Even);
    }

    #[test]
    fn koszul_sign_only_for_two_odds() {
        assert_eq!(Parity::Odd.koszul(Parity::Odd), -1);
        assert_eq!(Parity::Odd.koszul(Parity::Even), 1);
        assert_eq!(Parity::Even.koszul(Parity::Even), 1);
    }
}
