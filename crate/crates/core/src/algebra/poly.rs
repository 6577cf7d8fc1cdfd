//! Polynomials over F_q: the ring Λ = F_q[X].

use serde::Serialize;

use super::deg::Deg;
use super::field::{Field, FieldElement};
use crate::error::{Error, Result};

/// Coefficients lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// `c X^k`.
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        Polynomial::from_coeffs(coeffs)
    }

    pub fn x() -> Self {
        Polynomial::monomial(FieldElement::ONE, 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Deg {
        match self.coeffs.len() {
            0 => Deg::NegInf,
            n => Deg::Fin(n as i64 - 1),
        }
    }

    /// Degree as an index, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn add(&self, other: &Polynomial, f: &Field) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::from_coeffs(
            (0..n)
                .map(|k| f.add(self.coeff(k), other.coeff(k)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &Field) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial, f: &Field) -> Polynomial {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: FieldElement, f: &Field) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Polynomial, f: &Field) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Polynomial::from_coeffs(out)
    }

    /// Euclidean division: `self = quot * divisor + rem`, `deg rem < deg divisor`.
    pub fn divmod(&self, divisor: &Polynomial, f: &Field) -> Result<(Polynomial, Polynomial)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - db];
        for shift in (0..quot.len()).rev() {
            let lead = rem[shift + db];
            if lead.is_zero() {
                continue;
            }
            let factor = f.mul(lead, inv_lead);
            quot[shift] = factor;
            for (k, &b) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] = f.sub(rem[shift + k], f.mul(factor, b));
            }
        }
        Ok((Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem)))
    }

    /// Literal form, highest degree first, e.g. `X^3 + 2*X + 1`.
    pub fn format(&self, f: &Field) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, &c)| super::series::format_term(f, c, k as i64))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Field, c: &[u32]) -> Polynomial {
        Polynomial::from_coeffs(c.iter().map(|&i| f.element(i).unwrap()).collect())
    }

    #[test]
    fn divmod_over_f3() {
        let f = Field::prime(3).unwrap();
        // (X^3 + 2X + 1) / (X^2 + 1) = X rem X + 1
        let a = poly(&f, &[1, 2, 0, 1]);
        let b = poly(&f, &[1, 0, 1]);
        let (q, r) = a.divmod(&b, &f).unwrap();
        assert_eq!(q, poly(&f, &[0, 1]));
        assert_eq!(r, poly(&f, &[1, 1]));
    }

    #[test]
    fn divmod_identity_and_small_cases() {
        let f = Field::prime(2).unwrap();
        let x = Polynomial::x();
        let (q, r) = x.divmod(&x, &f).unwrap();
        assert_eq!((q, r), (Polynomial::one(), Polynomial::zero()));
        let (q, r) = Polynomial::one().divmod(&x, &f).unwrap();
        assert_eq!((q, r), (Polynomial::zero(), Polynomial::one()));
        assert_eq!(
            x.divmod(&Polynomial::zero(), &f),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn degree_is_additive() {
        let f = Field::prime(5).unwrap();
        let a = poly(&f, &[1, 4, 3]);
        let b = poly(&f, &[2, 0, 0, 1]);
        assert_eq!(a.mul(&b, &f).deg(), Deg::Fin(5));
        assert_eq!(a.mul(&Polynomial::zero(), &f).deg(), Deg::NegInf);
        assert_eq!(a.format(&f), "3*X^2 + 4*X + 1");
    }
}
