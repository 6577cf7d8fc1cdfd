//! Absolute values in the degree domain: `|f| = e^deg`, `|0| = 0`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::rational::Rational;

/// An integer degree or minus infinity (the degree of zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Deg {
    NegInf,
    Fin(i64),
}

impl Deg {
    pub fn finite(self) -> Option<i64> {
        match self {
            Deg::NegInf => None,
            Deg::Fin(l) => Some(l),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, Deg::NegInf)
    }

    /// Degree of a product: degrees add, zero absorbs.
    pub fn plus(self, other: Deg) -> Deg {
        match (self, other) {
            (Deg::Fin(a), Deg::Fin(b)) => Deg::Fin(a + b),
            _ => Deg::NegInf,
        }
    }

    pub fn shift(self, by: i64) -> Deg {
        match self {
            Deg::Fin(a) => Deg::Fin(a + by),
            Deg::NegInf => Deg::NegInf,
        }
    }

    /// Integer multiple, as in `‖y‖^m`.
    pub fn times(self, k: i64) -> Deg {
        match self {
            Deg::Fin(a) => Deg::Fin(a * k),
            Deg::NegInf if k == 0 => Deg::Fin(0),
            Deg::NegInf => Deg::NegInf,
        }
    }

    /// `e^self < e^bound`, with `e^{-inf} = 0`.
    pub fn lt_rational(self, bound: Rational) -> bool {
        match self {
            Deg::NegInf => true,
            Deg::Fin(a) => Rational::from_integer(a) < bound,
        }
    }

    pub fn le_rational(self, bound: Rational) -> bool {
        match self {
            Deg::NegInf => true,
            Deg::Fin(a) => Rational::from_integer(a) <= bound,
        }
    }
}

impl fmt::Display for Deg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deg::NegInf => write!(f, "-inf"),
            Deg::Fin(l) => write!(f, "{l}"),
        }
    }
}

impl Serialize for Deg {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Deg::NegInf => s.serialize_str("-inf"),
            Deg::Fin(l) => s.serialize_i64(*l),
        }
    }
}

/// A degree together with a censoring flag.
///
/// When `censored` is set the true degree is only known to be `<= deg`:
/// the digits that would decide it lie below a precision floor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DegValue {
    pub deg: Deg,
    pub censored: bool,
}

impl DegValue {
    pub const NEG_INF: DegValue = DegValue {
        deg: Deg::NegInf,
        censored: false,
    };

    pub fn exact(deg: Deg) -> Self {
        DegValue {
            deg,
            censored: false,
        }
    }

    pub fn fin(l: i64) -> Self {
        DegValue::exact(Deg::Fin(l))
    }

    /// Upper bound `<= l` only.
    pub fn at_most(l: i64) -> Self {
        DegValue {
            deg: Deg::Fin(l),
            censored: true,
        }
    }

    pub fn is_neg_inf(&self) -> bool {
        !self.censored && self.deg.is_neg_inf()
    }

    /// Sum of degrees (absolute value of a product).
    ///
    /// An exact zero factor makes the product exactly zero even when the
    /// other factor is censored.
    pub fn plus(self, other: DegValue) -> DegValue {
        if self.is_neg_inf() || other.is_neg_inf() {
            return DegValue::NEG_INF;
        }
        DegValue {
            deg: self.deg.plus(other.deg),
            censored: self.censored || other.censored,
        }
    }

    pub fn shift(self, by: i64) -> DegValue {
        DegValue {
            deg: self.deg.shift(by),
            censored: self.censored,
        }
    }

    pub fn times(self, k: i64) -> DegValue {
        DegValue {
            deg: self.deg.times(k),
            censored: self.censored,
        }
    }

    /// Maximum (absolute value of a sup norm). A censored bound only decides
    /// the maximum when it exceeds every exact entry.
    pub fn max(self, other: DegValue) -> DegValue {
        match self.deg.cmp(&other.deg) {
            Ordering::Greater => self,
            Ordering::Less => other,
            Ordering::Equal => DegValue {
                deg: self.deg,
                censored: self.censored && other.censored,
            },
        }
    }
}

impl fmt::Display for DegValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.censored {
            write!(f, "<={}", self.deg)
        } else {
            write!(f, "{}", self.deg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn neg_inf_is_least() {
        assert!(Deg::NegInf < Deg::Fin(i64::MIN / 2));
        assert!(Deg::Fin(-3) < Deg::Fin(2));
        assert!(Deg::NegInf.lt_rational(rat(-1000, 1)));
        assert!(!Deg::Fin(-1).lt_rational(rat(-1, 1)));
        assert!(Deg::Fin(-1).lt_rational(rat(-1, 2)));
    }

    #[test]
    fn censoring_in_max_and_plus() {
        let exact = DegValue::fin(-3);
        let cens = DegValue::at_most(-5);
        assert_eq!(exact.max(cens), exact);
        assert_eq!(DegValue::at_most(-2).max(exact), DegValue::at_most(-2));
        assert_eq!(DegValue::at_most(-3).max(exact), exact);
        assert!(exact.plus(cens).censored);
        assert_eq!(DegValue::NEG_INF.plus(cens), DegValue::NEG_INF);
    }
}
