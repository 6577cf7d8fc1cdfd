//! Truncated Laurent series in X^{-1} with precision tracking.
//!
//! A series is stored most-significant digit first. `floor` is the lowest
//! exponent whose digit is known; digits below it are unknown. A series with
//! no floor is exact (all omitted digits are zero). Every operation
//! propagates floors so that no digit below the result floor is ever
//! reported as known.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::deg::{Deg, DegValue};
use super::field::{Field, FieldElement};
use super::poly::Polynomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    /// Exponent of `coeffs[0]`; meaningless when `coeffs` is empty.
    top: i64,
    /// Digits for exponents `top, top-1, ...`; first and last are nonzero.
    coeffs: Vec<FieldElement>,
    floor: Option<i64>,
}

fn max_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LaurentSeries {
    pub fn zero() -> Self {
        LaurentSeries {
            top: 0,
            coeffs: Vec::new(),
            floor: None,
        }
    }

    /// Zero on every digit at or above `floor`, unknown below.
    pub fn zero_to(floor: i64) -> Self {
        LaurentSeries {
            top: 0,
            coeffs: Vec::new(),
            floor: Some(floor),
        }
    }

    pub fn one() -> Self {
        LaurentSeries::monomial(FieldElement::ONE, 0)
    }

    /// Exact `c X^k`.
    pub fn monomial(c: FieldElement, k: i64) -> Self {
        LaurentSeries::from_desc(k, vec![c], None)
    }

    /// Builds from digits for exponents `hi, hi-1, ...`, dropping anything
    /// below `floor` and normalizing leading and trailing zeros.
    pub fn from_desc(hi: i64, mut digits: Vec<FieldElement>, floor: Option<i64>) -> Self {
        if let Some(fl) = floor {
            let keep = (hi - fl + 1).clamp(0, digits.len() as i64) as usize;
            digits.truncate(keep);
        }
        while digits.last().is_some_and(|c| c.is_zero()) {
            digits.pop();
        }
        let lead = digits.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentSeries {
                top: 0,
                coeffs: Vec::new(),
                floor,
            },
            Some(k) => LaurentSeries {
                top: hi - k as i64,
                coeffs: digits.split_off(k),
                floor,
            },
        }
    }

    /// Sum of the given `(exponent, coefficient)` terms; repeated exponents add.
    pub fn from_terms(terms: &[(i64, FieldElement)], floor: Option<i64>, f: &Field) -> Self {
        let Some(hi) = terms.iter().map(|t| t.0).max() else {
            return LaurentSeries::from_desc(0, Vec::new(), floor);
        };
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let mut digits = vec![FieldElement::ZERO; (hi - lo + 1) as usize];
        for &(e, c) in terms {
            let k = (hi - e) as usize;
            digits[k] = f.add(digits[k], c);
        }
        LaurentSeries::from_desc(hi, digits, floor)
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        match p.degree() {
            None => LaurentSeries::zero(),
            Some(d) => {
                LaurentSeries::from_desc(d as i64, p.coeffs().iter().rev().copied().collect(), None)
            }
        }
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    /// True when no digit is known to be nonzero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.floor.is_none()
    }

    /// Exponent of the leading nonzero digit.
    pub fn top(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.top)
    }

    /// Exponent of the lowest nonzero digit.
    pub fn lowest(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.top - self.coeffs.len() as i64 + 1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.first().copied().unwrap_or(FieldElement::ZERO)
    }

    /// `|f|` as a degree; censored when every known digit is zero.
    pub fn degree(&self) -> DegValue {
        match (self.top(), self.floor) {
            (Some(t), _) => DegValue::fin(t),
            (None, None) => DegValue::NEG_INF,
            (None, Some(fl)) => DegValue::at_most(fl - 1),
        }
    }

    /// Digit at exponent `e`, or `None` if it lies below the floor.
    #[inline]
    pub fn digit(&self, e: i64) -> Option<FieldElement> {
        if self.floor.is_some_and(|fl| e < fl) {
            return None;
        }
        if self.coeffs.is_empty() || e > self.top {
            return Some(FieldElement::ZERO);
        }
        let k = (self.top - e) as usize;
        Some(self.coeffs.get(k).copied().unwrap_or(FieldElement::ZERO))
    }

    /// Nonzero terms, highest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FieldElement)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, &c)| (self.top - k as i64, c))
    }

    /// Forgets every digit below `floor` (no-op if already coarser).
    pub fn truncate(&self, floor: i64) -> Self {
        let fl = max_floor(self.floor, Some(floor));
        LaurentSeries::from_desc(self.top, self.coeffs.clone(), fl)
    }

    /// Digits from `hi` down to `lo` inclusive (used by dense kernels).
    fn dense(&self, hi: i64, lo: i64, f: &Field, out: &mut [FieldElement], negate: bool) {
        for (e, c) in self.terms() {
            if e <= hi && e >= lo {
                let k = (hi - e) as usize;
                let c = if negate { f.neg(c) } else { c };
                out[k] = f.add(out[k], c);
            }
        }
    }

    fn combine(&self, other: &Self, f: &Field, negate_other: bool) -> Self {
        let floor = max_floor(self.floor, other.floor);
        let tops = [self.top(), other.top()];
        let Some(hi) = tops.iter().flatten().max().copied() else {
            return LaurentSeries::from_desc(0, Vec::new(), floor);
        };
        let lo = [self.lowest(), other.lowest()]
            .iter()
            .flatten()
            .min()
            .copied()
            .unwrap();
        let lo = floor.map_or(lo, |fl| lo.max(fl));
        if lo > hi {
            return LaurentSeries::from_desc(0, Vec::new(), floor);
        }
        let mut digits = vec![FieldElement::ZERO; (hi - lo + 1) as usize];
        self.dense(hi, lo, f, &mut digits, false);
        other.dense(hi, lo, f, &mut digits, negate_other);
        LaurentSeries::from_desc(hi, digits, floor)
    }

    pub fn add(&self, other: &Self, f: &Field) -> Self {
        self.combine(other, f, false)
    }

    pub fn sub(&self, other: &Self, f: &Field) -> Self {
        self.combine(other, f, true)
    }

    pub fn neg(&self, f: &Field) -> Self {
        LaurentSeries {
            top: self.top,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            floor: self.floor,
        }
    }

    pub fn scale(&self, c: FieldElement, f: &Field) -> Self {
        if c.is_zero() {
            return LaurentSeries::zero();
        }
        LaurentSeries {
            top: self.top,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            floor: self.floor,
        }
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            top: self.top + k,
            coeffs: self.coeffs.clone(),
            floor: self.floor.map(|fl| fl + k),
        }
    }

    /// Degree bound used for floor propagation: the top, or `floor - 1` for
    /// a censored zero.
    fn top_bound(&self) -> Option<i64> {
        self.top().or(self.floor.map(|fl| fl - 1))
    }

    pub fn mul(&self, other: &Self, f: &Field) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return LaurentSeries::zero();
        }
        let ta = self.top_bound().unwrap();
        let tb = other.top_bound().unwrap();
        let floor = max_floor(self.floor.map(|fa| fa + tb), other.floor.map(|fb| fb + ta));
        if self.is_zero() || other.is_zero() {
            return LaurentSeries::zero_to(floor.unwrap());
        }
        let mut digits = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        let keep = floor.map_or(digits.len(), |fl| {
            (self.top + other.top - fl + 1).clamp(0, digits.len() as i64) as usize
        });
        for (i, &a) in self.coeffs.iter().enumerate().take(keep) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(keep - i) {
                digits[i + j] = f.add(digits[i + j], f.mul(a, b));
            }
        }
        LaurentSeries::from_desc(self.top + other.top, digits, floor)
    }

    pub fn mul_poly(&self, p: &Polynomial, f: &Field) -> Self {
        self.mul(&LaurentSeries::from_poly(p), f)
    }

    /// The deepest floor to which `1/self` can be determined.
    pub fn inverse_floor_limit(&self) -> Option<i64> {
        let top = self.top()?;
        self.floor.map(|fl| fl - 2 * top)
    }

    /// `1/self` with digits down to `floor`.
    pub fn inverse(&self, floor: i64, f: &Field) -> Result<Self> {
        if self.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        let Some(a) = self.top() else {
            return Err(Error::PrecisionExhausted(
                "inverse of a series with no known nonzero digit".into(),
            ));
        };
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(LaurentSeries::monomial(f.inv(self.coeffs[0])?, -a));
        }
        if let Some(limit) = self.inverse_floor_limit() {
            if floor < limit {
                return Err(Error::PrecisionExhausted(format!(
                    "inverse requested to X^{floor} but input precision supports only X^{limit}"
                )));
            }
        }
        let count = (-a - floor + 1).max(0) as usize;
        let c0_inv = f.inv(self.coeffs[0])?;
        let c = |i: usize| self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO);
        let mut r: Vec<FieldElement> = Vec::with_capacity(count);
        for k in 0..count {
            if k == 0 {
                r.push(c0_inv);
                continue;
            }
            let mut acc = FieldElement::ZERO;
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = f.add(acc, f.mul(c(i), r[k - i]));
            }
            r.push(f.neg(f.mul(c0_inv, acc)));
        }
        Ok(LaurentSeries::from_desc(-a, r, Some(floor)))
    }

    /// Splits into the polynomial part (exponents >= 0) and the fractional
    /// part (exponents <= -1).
    pub fn split_parts(&self) -> (Polynomial, LaurentSeries) {
        let mut poly = Vec::new();
        let mut frac = Vec::new();
        for (e, c) in self.terms() {
            if e >= 0 {
                poly.push((e, c));
            } else {
                frac.push((e, c));
            }
        }
        let mut coeffs = vec![FieldElement::ZERO; poly.first().map_or(0, |t| t.0 as usize + 1)];
        for (e, c) in poly {
            coeffs[e as usize] = c;
        }
        let frac_floor = self.floor.map(|fl| fl.min(0));
        let frac = match frac.first() {
            None => LaurentSeries::from_desc(0, Vec::new(), frac_floor),
            Some(&(hi, _)) => {
                let lo = frac.last().unwrap().0;
                let mut d = vec![FieldElement::ZERO; (hi - lo + 1) as usize];
                for (e, c) in frac {
                    d[(hi - e) as usize] = c;
                }
                LaurentSeries::from_desc(hi, d, frac_floor)
            }
        };
        (Polynomial::from_coeffs(coeffs), frac)
    }

    /// Literal form, e.g. `X^-1 + X^-3`, with `+ O(X^k)` marking unknown digits.
    pub fn format(&self, f: &Field) -> String {
        let mut parts: Vec<String> = self.terms().map(|(e, c)| format_term(f, c, e)).collect();
        if let Some(fl) = self.floor {
            parts.push(format!("O(X^{})", fl - 1));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub(crate) fn format_term(f: &Field, c: FieldElement, e: i64) -> String {
    let coeff = f.format_element(c);
    match (c == FieldElement::ONE, e) {
        (_, 0) => coeff,
        (true, 1) => "X".into(),
        (true, e) => format!("X^{e}"),
        (false, 1) => format!("{coeff}*X"),
        (false, e) => format!("{coeff}*X^{e}"),
    }
}

impl Serialize for LaurentSeries {
    /// Digits are written lowest exponent first, as field element indices.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentSeries", 3)?;
        st.serialize_field("floor", &self.floor)?;
        st.serialize_field("low", &self.lowest())?;
        let digits: Vec<u16> = self.coeffs.iter().rev().map(|c| c.0).collect();
        st.serialize_field("coeffs", &digits)?;
        st.end()
    }
}

impl LaurentSeries {
    pub fn deg(&self) -> Deg {
        self.degree().deg
    }
}
