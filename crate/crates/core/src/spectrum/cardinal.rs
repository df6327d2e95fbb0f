use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};

/// Dimension of an eigenspace. A multiplicity of zero is never stored; the
/// point is simply absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub const ONE: Multiplicity = Multiplicity::Finite(1);

    /// Returns `None` for a zero count.
    pub fn finite(count: u64) -> Option<Self> {
        (count > 0).then_some(Multiplicity::Finite(count))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }

    pub fn count(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(c) => Some(c),
            Multiplicity::Infinite => None,
        }
    }
}

impl Add for Multiplicity {
    type Output = Multiplicity;

    fn add(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => a
                .checked_add(b)
                .map_or(Multiplicity::Infinite, Multiplicity::Finite),
            _ => Multiplicity::Infinite,
        }
    }
}

impl Mul for Multiplicity {
    type Output = Multiplicity;

    fn mul(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => a
                .checked_mul(b)
                .map_or(Multiplicity::Infinite, Multiplicity::Finite),
            _ => Multiplicity::Infinite,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(c) => write!(f, "{c}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

/// Cardinality of a (possibly trivial) Hilbert space basis: 0, a positive
/// count, or countably infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum ExtendedCardinal {
    #[default]
    Zero,
    Finite(u64),
    Infinite,
}

impl ExtendedCardinal {
    /// Normalizes `Finite(0)` to `Zero`.
    pub fn from_count(count: u64) -> Self {
        if count == 0 {
            ExtendedCardinal::Zero
        } else {
            ExtendedCardinal::Finite(count)
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, ExtendedCardinal::Zero | ExtendedCardinal::Finite(0))
    }

    /// The nonzero cardinal as a multiplicity.
    pub fn as_multiplicity(self) -> Option<Multiplicity> {
        match self {
            ExtendedCardinal::Zero => None,
            ExtendedCardinal::Finite(c) => Multiplicity::finite(c),
            ExtendedCardinal::Infinite => Some(Multiplicity::Infinite),
        }
    }
}

impl From<Multiplicity> for ExtendedCardinal {
    fn from(m: Multiplicity) -> Self {
        match m {
            Multiplicity::Finite(c) => ExtendedCardinal::from_count(c),
            Multiplicity::Infinite => ExtendedCardinal::Infinite,
        }
    }
}

impl Add for ExtendedCardinal {
    type Output = ExtendedCardinal;

    fn add(self, rhs: ExtendedCardinal) -> ExtendedCardinal {
        use ExtendedCardinal::*;
        match (self, rhs) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Zero, x) | (x, Zero) => x,
            (Finite(a), Finite(b)) => a
                .checked_add(b)
                .map_or(Infinite, ExtendedCardinal::from_count),
        }
    }
}

impl Mul for ExtendedCardinal {
    type Output = ExtendedCardinal;

    fn mul(self, rhs: ExtendedCardinal) -> ExtendedCardinal {
        use ExtendedCardinal::*;
        if self.is_zero() || rhs.is_zero() {
            return Zero;
        }
        match (self, rhs) {
            (Finite(a), Finite(b)) => a.checked_mul(b).map_or(Infinite, Finite),
            _ => Infinite,
        }
    }
}

impl Sum for ExtendedCardinal {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExtendedCardinal::Zero, Add::add)
    }
}

impl fmt::Display for ExtendedCardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedCardinal::Zero => f.write_str("0"),
            ExtendedCardinal::Finite(c) => write!(f, "{c}"),
            ExtendedCardinal::Infinite => f.write_str("inf"),
        }
    }
}
