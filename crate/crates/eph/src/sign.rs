//! Signatures of the point space, cycle space and centre flavour.

use std::fmt;

use crate::scalar::Scalar;

/// One of −1, 0, +1: elliptic, parabolic, hyperbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Minus, Sign::Zero, Sign::Plus];
    pub const ELLIPTIC: Sign = Sign::Minus;
    pub const PARABOLIC: Sign = Sign::Zero;
    pub const HYPERBOLIC: Sign = Sign::Plus;

    pub fn value(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Zero => 0,
            Sign::Plus => 1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            -1 => Some(Sign::Minus),
            0 => Some(Sign::Zero),
            1 => Some(Sign::Plus),
            _ => None,
        }
    }

    pub fn as_scalar<T: Scalar>(self) -> T {
        T::from_int(self.value())
    }

    pub fn neg(self) -> Sign {
        Sign::from_value(-self.value()).unwrap()
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::from_value(self.value() * other.value()).unwrap()
    }

    /// Heaviside step: +1 for t ≥ 0, −1 otherwise.
    pub fn chi(self) -> Sign {
        if self.value() >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heaviside() {
        assert_eq!(Sign::Minus.chi(), Sign::Minus);
        assert_eq!(Sign::Zero.chi(), Sign::Plus);
        assert_eq!(Sign::Plus.chi(), Sign::Plus);
    }

    #[test]
    fn round_trip() {
        for s in Sign::ALL {
            assert_eq!(Sign::from_value(s.value()), Some(s));
        }
        assert_eq!(Sign::from_value(2), None);
    }
}
